#include "eitmono/measurements.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace eitmono {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("measurements: " + what);
}

}  // namespace

DrivePatternSet adjacent_dipole_patterns(int m) {
  if (m < 3) fail("adjacent patterns need at least 3 electrodes");
  DrivePatternSet set;
  set.pairs.reserve(m);
  for (int r = 0; r < m; ++r) set.pairs.emplace_back(r, (r + 1) % m);
  return set;
}

void validate_patterns(const DrivePatternSet& patterns, int electrode_count) {
  if (patterns.pairs.empty()) fail("empty drive pattern set");
  std::set<std::pair<int, int>> seen;
  for (const auto& [j, k] : patterns.pairs) {
    if (j < 0 || j >= electrode_count || k < 0 || k >= electrode_count) {
      fail("pattern electrode index out of range");
    }
    if (j == k) fail("degenerate pattern (j == k)");
    if (!seen.insert({j, k}).second) fail("repeated drive pattern");
  }
}

double MeasurementMatrix::symmetry_defect_rel() const {
  const double scale = entries.norm();
  if (scale == 0.0) return 0.0;
  return (entries - entries.transpose()).norm() / scale;
}

void MeasurementMatrix::symmetrize() {
  entries = 0.5 * (entries + entries.transpose()).eval();
}

Eigen::VectorXcd pattern_currents(const DrivePatternSet& patterns, const Eigen::VectorXcd& g,
                                  int electrode_count) {
  validate_patterns(patterns, electrode_count);
  if (g.size() != patterns.size()) fail("weight vector length != pattern count");
  Eigen::VectorXcd currents = Eigen::VectorXcd::Zero(electrode_count);
  for (int r = 0; r < patterns.size(); ++r) {
    currents[patterns.pairs[r].first] += g[r];
    currents[patterns.pairs[r].second] -= g[r];
  }
  return currents;
}

Eigen::MatrixXcd measurement_entries(const ShuntSystem& system, const DrivePatternSet& patterns) {
  validate_patterns(patterns, system.electrode_count());
  const int n = patterns.size();
  Eigen::MatrixXcd entries(n, n);
  for (int r = 0; r < n; ++r) {
    Eigen::VectorXcd currents = Eigen::VectorXcd::Zero(system.electrode_count());
    currents[patterns.pairs[r].first] = Complex(1.0, 0.0);
    currents[patterns.pairs[r].second] = Complex(-1.0, 0.0);
    const FieldSolution sol = system.solve_drive(currents);
    for (int s = 0; s < n; ++s) {
      entries(r, s) = sol.electrode_potential[patterns.pairs[s].first] -
                      sol.electrode_potential[patterns.pairs[s].second];
    }
  }
  return entries;
}

MeasurementMatrix measurement_matrix(const Mesh& mesh, const std::vector<Complex>& gamma_e,
                                     const DrivePatternSet& patterns) {
  const ShuntSystem system(mesh, gamma_e);
  MeasurementMatrix out;
  out.entries = measurement_entries(system, patterns);
  out.patterns = patterns;
  out.provenance.mesh_level = mesh.level;
  out.provenance.mode = FreqMode::DC;
  for (const auto& g : gamma_e) {
    if (g.imag() != 0.0) {
      out.provenance.mode = FreqMode::AC;
      break;
    }
  }
  return out;
}

MeasurementMatrix simulate_matrix(const Mesh& mesh, const Phantom& phantom, FreqMode mode,
                                  const Modulation* modulation, const DrivePatternSet& patterns) {
  const auto gamma = element_admittivity(phantom, mesh, mode, modulation);
  MeasurementMatrix out = measurement_matrix(mesh, gamma, patterns);
  out.provenance.mode = mode;
  out.provenance.omega = phantom.omega;
  out.provenance.mesh_level = mesh.level;
  if (modulation) out.provenance.modulation = *modulation;
  return out;
}

Eigen::MatrixXd weighted_real_part(const MeasurementMatrix& R, Complex alpha) {
  const Eigen::MatrixXcd weighted = alpha * R.entries;
  return (0.5 * (weighted + weighted.adjoint())).real();
}

SandwichBounds sandwich_check(const Mesh& mesh, const std::vector<Complex>& gamma1_e,
                              const std::vector<Complex>& gamma2_e,
                              const DrivePatternSet& patterns, const Eigen::VectorXcd& g) {
  validate_patterns(patterns, mesh.electrode_count);
  if (g.size() != patterns.size()) fail("weight vector length != pattern count");

  const MeasurementMatrix r1 = measurement_matrix(mesh, gamma1_e, patterns);
  const MeasurementMatrix r2 = measurement_matrix(mesh, gamma2_e, patterns);

  SandwichBounds out;
  const Complex quad = (g.adjoint() * (r2.entries - r1.entries) * g)(0, 0);
  out.middle = quad.real();

  // solution driven by the weighted patterns on gamma2
  const ShuntSystem system2(mesh, gamma2_e);
  const FieldSolution sol = system2.solve_drive(pattern_currents(patterns, g, mesh.electrode_count));
  const auto grad_sq = element_grad_sq(mesh, sol.node_potential);

  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const Complex g1 = gamma1_e[t], g2 = gamma2_e[t];
    const double re_diff = g1.real() - g2.real();
    const double weight = mesh.triangle_area(t) * grad_sq[t];
    out.lower += (g2.real() / g1.real() * re_diff - g2.imag() * g2.imag() / g1.real()) * weight;
    out.upper += (re_diff + g1.imag() * g1.imag() / g1.real()) * weight;
  }
  return out;
}

}  // namespace eitmono
