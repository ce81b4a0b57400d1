#include "eitmono/monotonicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace eitmono {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("monotonicity: " + what);
}

double offdiag_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (int p = 0; p < a.rows(); ++p) {
    for (int q = p + 1; q < a.cols(); ++q) sum += 2.0 * a(p, q) * a(p, q);
  }
  return std::sqrt(sum);
}

}  // namespace

EigenDecomposition eigen_decompose(const Eigen::MatrixXd& A) {
  if (A.rows() != A.cols() || A.rows() == 0) fail("eigensolver needs a square matrix");
  if (!A.allFinite()) fail("non-finite matrix entry");
  const int n = static_cast<int>(A.rows());
  const double scale = A.norm();
  if (scale > 0.0 && (A - A.transpose()).norm() > 1e-8 * scale) {
    fail("matrix symmetry defect above tolerance; symmetrize first");
  }

  Eigen::MatrixXd a = 0.5 * (A + A.transpose());
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);

  // Cyclic Jacobi sweeps; n is small (pattern count), so no pivot strategy
  // is needed. Rotations use the stable tau form.
  constexpr int kMaxSweeps = 64;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_norm(a) <= 1e-15 * scale || scale == 0.0) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int r = p + 1; r < n; ++r) {
        const double apr = a(p, r);
        if (std::abs(apr) <= 1e-300) {
          a(p, r) = 0.0;
          a(r, p) = 0.0;
          continue;
        }
        const double theta = (a(r, r) - a(p, p)) / (2.0 * apr);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 1.0 / (2.0 * theta);
        } else {
          t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= t * apr;
        a(r, r) += t * apr;
        a(p, r) = 0.0;
        a(r, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == r) continue;
          const double akp = a(k, p), akr = a(k, r);
          a(k, p) = akp - s * (akr + tau * akp);
          a(p, k) = a(k, p);
          a(k, r) = akr + s * (akp - tau * akr);
          a(r, k) = a(k, r);
        }
        for (int k = 0; k < n; ++k) {
          const double qkp = q(k, p), qkr = q(k, r);
          q(k, p) = qkp - s * (qkr + tau * qkp);
          q(k, r) = qkr + s * (qkp - tau * qkr);
        }
      }
    }
  }
  if (sweep == kMaxSweeps) fail("eigensolver failed to converge");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.values[i] = a(order[i], order[i]);
    out.vectors.col(i) = q.col(order[i]);
  }
  return out;
}

Eigen::VectorXd eigen_spectrum(const Eigen::MatrixXd& A) { return eigen_decompose(A).values; }

double spectral_norm_sym(const Eigen::MatrixXd& A) {
  const Eigen::VectorXd values = eigen_spectrum(A);
  return std::max(std::abs(values[0]), std::abs(values[values.size() - 1]));
}

Eigen::MatrixXd difference_matrix(const MeasurementMatrix& r_mod, const MeasurementMatrix& r_ac,
                                  Complex alpha, TestCase test_case) {
  if (!r_mod.provenance.modulation.has_value() || r_mod.provenance.mode != FreqMode::DC) {
    fail("first matrix must be modulated DC");
  }
  if (r_mod.provenance.modulation->sign != modulation_sign_for(test_case)) {
    fail("modulation sign does not match the test case");
  }
  if (r_ac.provenance.modulation.has_value() || r_ac.provenance.mode != FreqMode::AC) {
    fail("second matrix must be unmodulated AC");
  }
  if (r_mod.provenance.mesh_level != r_ac.provenance.mesh_level) {
    fail("matrices computed at different mesh levels");
  }
  if (!(r_mod.patterns == r_ac.patterns)) fail("matrices use different pattern sets");
  if (r_mod.entries.rows() != r_ac.entries.rows()) fail("matrix size mismatch");

  const Eigen::MatrixXd mod_real = weighted_real_part(r_mod, Complex(1.0, 0.0));
  const Eigen::MatrixXd ac_real = weighted_real_part(r_ac, alpha);
  return test_case == TestCase::CaseA ? (mod_real - ac_real).eval() : (ac_real - mod_real).eval();
}

DefinitenessReport regularized_test(const Eigen::MatrixXd& A, double delta, TestCase test_case) {
  if (!(delta >= 0.0)) fail("delta must be nonnegative");
  DefinitenessReport report;
  report.eigenvalues = eigen_spectrum(A);
  report.delta = delta;
  report.direction = test_case;
  report.margin = report.eigenvalues[0] + delta;
  report.verdict = report.margin >= 0.0;
  return report;
}

double estimate_delta(
    const std::vector<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>>& level_pairs) {
  if (level_pairs.empty()) fail("delta estimate needs at least one matrix pair");
  double delta = 0.0;
  for (const auto& [coarse, fine] : level_pairs) {
    if (coarse.rows() != fine.rows() || coarse.cols() != fine.cols()) {
      fail("delta estimate pair shape mismatch");
    }
    delta = std::max(delta, spectral_norm_sym(fine - coarse));
  }
  return delta;
}

std::vector<EnergyDiagnosticRow> localized_energy_diagnostic(
    const Mesh& mesh, const std::vector<Complex>& gamma_dc, const DrivePatternSet& patterns,
    const Eigen::MatrixXd& A, const std::vector<int>& focus_only_elems,
    const std::vector<int>& inclusion_elems) {
  const EigenDecomposition eig = eigen_decompose(A);
  if (eig.values.size() != patterns.size()) fail("matrix size does not match pattern count");

  const ShuntSystem system(mesh, gamma_dc);
  std::vector<EnergyDiagnosticRow> rows;
  rows.reserve(eig.values.size());
  for (int i = 0; i < eig.values.size(); ++i) {
    const Eigen::VectorXcd g = eig.vectors.col(i).cast<Complex>();
    const FieldSolution sol =
        system.solve_drive(pattern_currents(patterns, g, mesh.electrode_count));
    EnergyDiagnosticRow row;
    row.eigenvalue = eig.values[i];
    row.energy_focus_only = interior_energy(mesh, sol, focus_only_elems);
    row.energy_inclusion = interior_energy(mesh, sol, inclusion_elems);
    row.ratio = row.energy_inclusion > 0.0 ? row.energy_focus_only / row.energy_inclusion
                                           : std::numeric_limits<double>::infinity();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace eitmono
