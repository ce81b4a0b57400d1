#include "eitmono/scan.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace eitmono {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error("scan: " + what); }

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::vector<RegionSpec> generate_ball_grid(Point2 domain_center, double domain_radius,
                                           const ScanConfig& config) {
  if (!(config.spacing > 0.0)) fail("grid spacing must be positive");
  if (!(config.ball_radius > 0.0)) fail("ball radius must be positive");
  if (!(config.margin >= 0.0)) fail("margin must be nonnegative");

  const double reach = domain_radius - config.margin - config.ball_radius;
  std::vector<RegionSpec> balls;
  if (reach > 0.0) {
    const int span = static_cast<int>(std::floor(reach / config.spacing));
    for (int j = -span; j <= span; ++j) {
      for (int i = -span; i <= span; ++i) {
        const Point2 center{domain_center.x + i * config.spacing,
                            domain_center.y + j * config.spacing};
        if (distance(center, domain_center) <= reach) {
          balls.push_back(RegionSpec::disk(center, config.ball_radius));
        }
      }
    }
  }
  if (balls.empty()) fail("no admissible balls");
  return balls;
}

namespace {

// Everything shared read-only by the per-ball workers.
struct ScanShared {
  const Mesh& mesh;
  const DrivePatternSet& patterns;
  const DofMap& dofs;
  const Eigen::SparseMatrix<Complex>& base_dc;
  const std::vector<Complex>& gamma_dc;
  const Eigen::MatrixXd& weighted_ac;
  Complex mod_factor;  // sign * beta
  double delta;
  TestCase test_case;
};

BallResult evaluate_ball(const ScanShared& shared, int index, const RegionSpec& ball) {
  BallResult result;
  result.index = index;
  result.center = ball.center;
  result.radius = ball.radius;
  try {
    const std::vector<int> elems = elements_in_region(shared.mesh, ball);
    std::vector<Complex> coeff(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
      const Complex updated = shared.gamma_dc[elems[i]] * (1.0 + shared.mod_factor);
      if (updated.real() < kMinRealAdmittivity) {
        throw std::runtime_error("modulated admittivity below positive floor");
      }
      coeff[i] = shared.gamma_dc[elems[i]] * shared.mod_factor;
    }
    const Eigen::SparseMatrix<Complex> update =
        assemble_bordered_update(shared.mesh, shared.dofs, elems, coeff);
    const ShuntSystem system(shared.dofs, shared.base_dc + update);
    const Eigen::MatrixXcd entries = measurement_entries(system, shared.patterns);
    const Eigen::MatrixXd mod_real = (0.5 * (entries + entries.adjoint())).real();
    const Eigen::MatrixXd diff = shared.test_case == TestCase::CaseA
                                     ? (mod_real - shared.weighted_ac).eval()
                                     : (shared.weighted_ac - mod_real).eval();
    const DefinitenessReport report = regularized_test(diff, shared.delta, shared.test_case);
    result.verdict = report.verdict;
    result.margin = report.margin;
    result.min_eigenvalue = report.eigenvalues[0];
  } catch (const std::exception& e) {
    result.failed = true;
    result.error = e.what();
  }
  return result;
}

// Difference of the weighted DC/AC real parts without modulation, used by
// the "auto" delta policy at two consecutive mesh levels.
Eigen::MatrixXd unmodulated_difference(const Mesh& mesh, const Phantom& phantom,
                                       const DrivePatternSet& patterns, Complex alpha,
                                       TestCase test_case) {
  const MeasurementMatrix r_dc = simulate_matrix(mesh, phantom, FreqMode::DC, nullptr, patterns);
  const MeasurementMatrix r_ac = simulate_matrix(mesh, phantom, FreqMode::AC, nullptr, patterns);
  const Eigen::MatrixXd dc_real = weighted_real_part(r_dc, Complex(1.0, 0.0));
  const Eigen::MatrixXd ac_real = weighted_real_part(r_ac, alpha);
  return test_case == TestCase::CaseA ? (dc_real - ac_real).eval() : (ac_real - dc_real).eval();
}

}  // namespace

ScanResult run_scan(const Phantom& phantom, const Mesh& mesh, const DrivePatternSet& patterns,
                    const ScanConfig& config) {
  const auto start = Clock::now();
  const ContrastConstants cc = contrast_constants(phantom);
  const TestCase tc = config.test_case.value_or(applicable_case(cc));
  if (!(config.beta > 0.0)) fail("modulation strength beta must be positive");
  if (!(config.threads >= 1)) fail("thread count must be at least 1");
  validate_patterns(patterns, mesh.electrode_count);

  ScanResult result;
  result.case_used = tc;
  result.beta_used = config.beta;
  result.beta_exceeds_bound = config.beta > applicable_beta_max(cc, tc);
  result.mesh_level = mesh.level;

  const std::vector<RegionSpec> balls = generate_ball_grid(mesh.center, mesh.radius, config);

  // Shared, ball-independent work.
  const MeasurementMatrix r_ac = simulate_matrix(mesh, phantom, FreqMode::AC, nullptr, patterns);
  const Eigen::MatrixXd weighted_ac = weighted_real_part(r_ac, cc.alpha);
  const std::vector<Complex> gamma_dc = element_admittivity(phantom, mesh, FreqMode::DC, nullptr);
  const DofMap dofs = build_dof_map(mesh);
  const Eigen::SparseMatrix<Complex> base_dc = assemble_bordered(mesh, dofs, gamma_dc);

  double delta;
  if (config.delta.has_value()) {
    if (!(*config.delta >= 0.0)) fail("delta must be nonnegative");
    delta = *config.delta;
  } else {
    const Mesh fine = refine_mesh(mesh);
    const Eigen::MatrixXd coarse_diff = unmodulated_difference(mesh, phantom, patterns, cc.alpha, tc);
    const Eigen::MatrixXd fine_diff = unmodulated_difference(fine, phantom, patterns, cc.alpha, tc);
    delta = estimate_delta({{coarse_diff, fine_diff}});
  }
  result.delta_used = delta;

  const ScanShared shared{mesh,        patterns,
                          dofs,        base_dc,
                          gamma_dc,    weighted_ac,
                          Complex(tc == TestCase::CaseA ? config.beta : -config.beta, 0.0),
                          delta,       tc};

  result.balls.resize(balls.size());
  result.seconds_per_ball.assign(balls.size(), 0.0);
  const int worker_count = std::min<int>(config.threads, static_cast<int>(balls.size()));
  if (worker_count <= 1) {
    for (std::size_t i = 0; i < balls.size(); ++i) {
      const auto ball_start = Clock::now();
      result.balls[i] = evaluate_ball(shared, static_cast<int>(i), balls[i]);
      result.seconds_per_ball[i] = seconds_since(ball_start);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (int w = 0; w < worker_count; ++w) {
      workers.emplace_back([&]() {
        for (std::size_t i = next.fetch_add(1); i < balls.size(); i = next.fetch_add(1)) {
          const auto ball_start = Clock::now();
          result.balls[i] = evaluate_ball(shared, static_cast<int>(i), balls[i]);
          result.seconds_per_ball[i] = seconds_since(ball_start);
        }
      });
    }
    for (auto& worker : workers) worker.join();
  }

  result.seconds_total = seconds_since(start);
  return result;
}

}  // namespace eitmono
