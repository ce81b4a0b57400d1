"""End-to-end smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import eitmono


def make_layout():
    layout = eitmono.ElectrodeLayout()
    layout.count = 16
    layout.coverage = 0.5
    layout.start_angle = -math.pi / 32.0
    return layout


def make_phantom():
    phantom = eitmono.Phantom()
    phantom.sigma_bg = 1.0
    phantom.eps_bg = 1.0
    phantom.omega = 200.0 * math.pi
    phantom.inclusions = [
        eitmono.Inclusion(eitmono.RegionSpec.disk(5.0, 0.0, 1.5), sigma=1.0, eps=2.0)
    ]
    return phantom


@pytest.fixture(scope="module")
def mesh():
    return eitmono.build_disk_mesh(10.0, make_layout(), 0.5)


def test_mesh_build_and_refine(mesh):
    eitmono.validate_mesh(mesh)
    assert mesh.node_count() == 2561
    assert mesh.triangle_count() == 4992
    assert len(mesh.boundary_edges) == 128
    assert mesh.electrode_count == 16
    assert mesh.total_area() < math.pi * 100.0

    fine = eitmono.refine_mesh(mesh)
    assert fine.triangle_count() == 4 * mesh.triangle_count()
    assert fine.level == mesh.level + 1


def test_contrast_constants():
    constants = eitmono.contrast_constants(make_phantom())
    omega = 200.0 * math.pi
    assert constants.c == pytest.approx(1.0)
    assert constants.alpha == pytest.approx(complex(1.0, omega))
    assert math.floor(constants.beta_max_a * 1e4) / 1e4 == 0.9999
    assert eitmono.applicable_case(constants) == eitmono.TestCase.CaseA
    assert eitmono.modulation_sign_for(eitmono.TestCase.CaseA) == 1


def test_detection_verdicts(mesh):
    phantom = make_phantom()
    constants = eitmono.contrast_constants(phantom)
    case = eitmono.applicable_case(constants)
    beta = eitmono.applicable_beta_max(constants, case)
    patterns = eitmono.adjacent_dipole_patterns(16)

    r_ac = eitmono.simulate_matrix(mesh, phantom, eitmono.FreqMode.AC, None, patterns)
    assert r_ac.entries.shape == (16, 16)
    assert r_ac.symmetry_defect_rel() < 1e-10

    def verdict_for(ball):
        mod = eitmono.Modulation(ball, beta, eitmono.modulation_sign_for(case))
        r_mod = eitmono.simulate_matrix(mesh, phantom, eitmono.FreqMode.DC, mod, patterns)
        diff = eitmono.difference_matrix(r_mod, r_ac, constants.alpha, case)
        assert np.allclose(diff, diff.T)
        report = eitmono.regularized_test(diff, 1e-6, case)
        spectrum = eitmono.eigen_spectrum(diff)
        assert np.all(np.diff(spectrum) >= 0.0)
        assert report.eigenvalues[0] == pytest.approx(spectrum[0])
        return report.verdict

    assert verdict_for(eitmono.RegionSpec.disk(5.0, 0.0, 1.25)) is True
    assert verdict_for(eitmono.RegionSpec.disk(-5.0, 0.0, 1.25)) is False


def test_scan_marks_the_inclusion(mesh):
    phantom = make_phantom()
    constants = eitmono.contrast_constants(phantom)
    case = eitmono.applicable_case(constants)

    config = eitmono.ScanConfig()
    config.ball_radius = 1.25
    config.spacing = 5.0
    config.margin = 0.5
    config.beta = eitmono.applicable_beta_max(constants, case)
    config.delta = 1e-6
    config.test_case = case
    config.threads = 2

    result = eitmono.run_scan(phantom, mesh, eitmono.adjacent_dipole_patterns(16), config)
    assert len(result.balls) == 9
    assert not any(ball.failed for ball in result.balls)

    by_center = {(ball.center_x, ball.center_y): ball.verdict for ball in result.balls}
    assert by_center[(5.0, 0.0)] is True
    assert by_center[(-5.0, 0.0)] is False
    assert by_center[(0.0, 5.0)] is False


def test_error_mapping(mesh):
    phantom = make_phantom()
    patterns = eitmono.adjacent_dipole_patterns(16)
    mod = eitmono.Modulation(eitmono.RegionSpec.disk(5.0, 0.0, 1.0), 0.5, 1)
    with pytest.raises((ValueError, RuntimeError)):
        eitmono.simulate_matrix(mesh, phantom, eitmono.FreqMode.AC, mod, patterns)
    with pytest.raises((ValueError, RuntimeError)):
        eitmono.regularized_test(np.eye(4), -0.5, eitmono.TestCase.CaseA)
    with pytest.raises((ValueError, RuntimeError)):
        eitmono.build_disk_mesh(10.0, make_layout(), 6.0)
