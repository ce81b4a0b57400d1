"""Electrode-model simulation and definiteness-based anomaly detection."""

from ._core import (
    BallResult,
    ContrastConstants,
    DefinitenessReport,
    DrivePatternSet,
    ElectrodeLayout,
    FreqMode,
    Inclusion,
    MatrixProvenance,
    MeasurementMatrix,
    Mesh,
    Modulation,
    Phantom,
    Point2,
    RegionSpec,
    ScanConfig,
    ScanResult,
    TestCase,
    adjacent_dipole_patterns,
    applicable_beta_max,
    applicable_case,
    build_disk_mesh,
    contrast_constants,
    difference_matrix,
    eigen_spectrum,
    element_admittivity,
    elements_in_region,
    modulation_sign_for,
    refine_mesh,
    regularized_test,
    run_scan,
    simulate_matrix,
    validate_mesh,
    weighted_real_part,
)

__all__ = [
    "BallResult",
    "ContrastConstants",
    "DefinitenessReport",
    "DrivePatternSet",
    "ElectrodeLayout",
    "FreqMode",
    "Inclusion",
    "MatrixProvenance",
    "MeasurementMatrix",
    "Mesh",
    "Modulation",
    "Phantom",
    "Point2",
    "RegionSpec",
    "ScanConfig",
    "ScanResult",
    "TestCase",
    "adjacent_dipole_patterns",
    "applicable_beta_max",
    "applicable_case",
    "build_disk_mesh",
    "contrast_constants",
    "difference_matrix",
    "eigen_spectrum",
    "element_admittivity",
    "elements_in_region",
    "modulation_sign_for",
    "refine_mesh",
    "regularized_test",
    "run_scan",
    "simulate_matrix",
    "validate_mesh",
    "weighted_real_part",
]
