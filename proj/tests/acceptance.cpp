// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Each criterion pins its tolerances inline; golden data lives under
// data/golden/ and is compared numerically, not byte-wise.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eitmono/config.hpp"
#include "eitmono/io.hpp"
#include "eitmono/scan.hpp"

using namespace eitmono;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", index, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  g_failures += ok ? 0 : 1;
}

std::string source_path(const std::string& rel) {
  return std::string(EITMONO_SOURCE_DIR) + "/" + rel;
}

Mesh mesh_at_level(const RunConfig& cfg, int level) {
  Mesh mesh = build_disk_mesh(cfg.geometry.radius, cfg.geometry.layout, cfg.geometry.target_h);
  for (int l = 0; l < level; ++l) mesh = refine_mesh(mesh);
  return mesh;
}

// Case-oriented difference matrices for all test regions at one level.
std::vector<Eigen::MatrixXd> region_differences(const Mesh& mesh, const RunConfig& cfg,
                                                const DrivePatternSet& patterns,
                                                const ContrastConstants& cc, TestCase tc,
                                                double beta) {
  const MeasurementMatrix r_ac =
      simulate_matrix(mesh, cfg.phantom, FreqMode::AC, nullptr, patterns);
  std::vector<Eigen::MatrixXd> diffs;
  for (const auto& tr : cfg.test_regions) {
    const Modulation mod{tr.region, beta, modulation_sign_for(tc)};
    const MeasurementMatrix r_mod =
        simulate_matrix(mesh, cfg.phantom, FreqMode::DC, &mod, patterns);
    diffs.push_back(difference_matrix(r_mod, r_ac, cc.alpha, tc));
  }
  return diffs;
}

struct Example1Results {
  double delta = 0.0;
  double seconds = 0.0;
  std::vector<std::string> names;
  std::vector<DefinitenessReport> reports;
};

Example1Results run_example1() {
  const RunConfig cfg = load_config(source_path("configs/example1.cfg"));
  const auto t0 = std::chrono::steady_clock::now();

  const Mesh mesh = mesh_at_level(cfg, cfg.geometry.levels);
  const Mesh fine = refine_mesh(mesh);
  const DrivePatternSet patterns = adjacent_dipole_patterns(mesh.electrode_count);
  const ContrastConstants cc = contrast_constants(cfg.phantom);
  const TestCase tc = applicable_case(cc);
  const double beta = applicable_beta_max(cc, tc);

  const auto coarse_diffs = region_differences(mesh, cfg, patterns, cc, tc, beta);
  const auto fine_diffs = region_differences(fine, cfg, patterns, cc, tc, beta);
  std::vector<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> pairs;
  for (std::size_t i = 0; i < coarse_diffs.size(); ++i) {
    pairs.emplace_back(coarse_diffs[i], fine_diffs[i]);
  }

  Example1Results out;
  out.delta = estimate_delta(pairs);
  for (std::size_t i = 0; i < coarse_diffs.size(); ++i) {
    out.names.push_back(cfg.test_regions[i].name);
    out.reports.push_back(regularized_test(coarse_diffs[i], out.delta, tc));
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::vector<std::vector<double>> parse_numeric_rows(const std::string& csv) {
  std::vector<std::vector<double>> rows;
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      try {
        row.push_back(std::stod(field));
      } catch (const std::exception&) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());  // region name column
      }
    }
    rows.push_back(row);
  }
  return rows;
}

bool numeric_rows_match(const std::vector<std::vector<double>>& a,
                        const std::vector<std::vector<double>>& b, double rel, double abs,
                        std::string& why) {
  if (a.size() != b.size()) {
    why = "row count mismatch";
    return false;
  }
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r].size() != b[r].size()) {
      why = "column count mismatch in row " + std::to_string(r);
      return false;
    }
    for (std::size_t c = 0; c < a[r].size(); ++c) {
      const double x = a[r][c], y = b[r][c];
      if (std::isnan(x) && std::isnan(y)) continue;
      if (std::isnan(x) != std::isnan(y) ||
          std::abs(x - y) > abs + rel * std::max(std::abs(x), std::abs(y))) {
        std::ostringstream os;
        os << "row " << r << " col " << c << ": " << x << " vs " << y;
        why = os.str();
        return false;
      }
    }
  }
  return true;
}

void criterion_1_and_2(const Example1Results& ex1) {
  // criterion 1: exact verdict pattern, bounded runtime
  {
    bool ok = ex1.reports.size() == 5;
    std::ostringstream detail;
    for (std::size_t i = 0; ok && i < ex1.reports.size(); ++i) {
      const bool expected = (ex1.names[i] == "B2");
      ok = ok && (ex1.reports[i].verdict == expected);
    }
    ok = ok && ex1.seconds <= 120.0;
    detail << "verdicts";
    for (std::size_t i = 0; i < ex1.reports.size(); ++i) {
      detail << " " << ex1.names[i] << "=" << (ex1.reports[i].verdict ? 1 : 0);
    }
    detail << ", " << ex1.seconds << " s";
    report(1, "detection verdicts reproduce the reference layout", ok, detail.str());
  }

  // criterion 2: spectrum brackets plus golden regression
  {
    bool ok = true;
    std::ostringstream detail;
    const Eigen::VectorXd* b2 = nullptr;
    const Eigen::VectorXd* b4 = nullptr;
    for (std::size_t i = 0; i < ex1.reports.size(); ++i) {
      if (ex1.names[i] == "B2") b2 = &ex1.reports[i].eigenvalues;
      if (ex1.names[i] == "B4") b4 = &ex1.reports[i].eigenvalues;
    }
    if (b2 == nullptr || b4 == nullptr) {
      report(2, "eigenvalue structure matches the pinned brackets and golden spectra", false,
             "missing B2/B4 regions");
      return;
    }
    const int n = static_cast<int>(b4->size());
    ok = ok && (*b4)[0] >= -0.02 && (*b4)[0] <= -0.005;
    ok = ok && (*b4)[1] >= -0.02 && (*b4)[1] <= -0.005;
    ok = ok && (*b4)[n - 1] >= 0.005 && (*b4)[n - 1] <= 0.03;
    ok = ok && (*b4)[n - 2] >= 0.005 && (*b4)[n - 2] <= 0.03;
    ok = ok && (*b2)[0] >= -ex1.delta && (*b2)[n - 1] <= 0.02;
    detail << "B4 extremes [" << (*b4)[0] << ", " << (*b4)[1] << " | " << (*b4)[n - 2] << ", "
           << (*b4)[n - 1] << "], B2 range [" << (*b2)[0] << ", " << (*b2)[n - 1] << "]";

    // pinned regression: spectra at the fixed working level
    const std::string golden = read_text_file(source_path("data/golden/example1_report.csv"));
    const std::string current = render_report_csv(ex1.names, ex1.reports, {});
    std::string why;
    const bool golden_ok = numeric_rows_match(parse_numeric_rows(golden),
                                              parse_numeric_rows(current), 1e-6, 1e-9, why);
    if (!golden_ok) detail << "; golden drift: " << why;
    ok = ok && golden_ok;

    // the estimate itself is pinned as a regression window
    ok = ok && ex1.delta >= 1e-4 && ex1.delta <= 2e-3;
    detail << "; delta " << ex1.delta;
    report(2, "eigenvalue structure matches the pinned brackets and golden spectra", ok, detail.str());
  }
}

void criterion_3() {
  const double omega = 200.0 * std::numbers::pi;
  const double w2 = omega * omega;

  Phantom ex1;
  ex1.sigma_bg = 1.0;
  ex1.eps_bg = 1.0;
  ex1.omega = omega;
  ex1.inclusions.push_back({RegionSpec::disk({5.0, 0.0}, 1.5), 1.0, 2.0});
  const double beta_a = contrast_constants(ex1).beta_max_a;

  Phantom ex3;
  ex3.sigma_bg = 1.0;
  ex3.eps_bg = 2.0;
  ex3.omega = omega;
  ex3.inclusions.push_back({RegionSpec::disk({3.0, 1.5}, 2.5), 1.0, 1.0});
  const double beta_b = contrast_constants(ex3).beta_max_b;

  const bool formula_a = std::abs(beta_a - w2 / (1.0 + w2)) <= 1e-12;
  const bool formula_b = std::abs(beta_b - w2 / (1.0 + 2.0 * w2)) <= 1e-12;
  const bool four_a = std::floor(beta_a * 1e4) / 1e4 == 0.9999;
  const bool four_b = std::floor(beta_b * 1e4) / 1e4 == 0.4999;

  std::ostringstream detail;
  detail << "beta_max_a " << format_g17(beta_a) << ", beta_max_b " << format_g17(beta_b);
  report(3, "modulation thresholds match their closed forms to 4 decimals",
         formula_a && formula_b && four_a && four_b, detail.str());
}

void criterion_4() {
  std::mt19937_64 rng(0x4c4f54ull);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const ElectrodeLayout layout = load_config(source_path("configs/example1.cfg")).geometry.layout;
  const Mesh coarse = build_disk_mesh(10.0, layout, 0.5);
  const Mesh fine = refine_mesh(coarse);
  const DrivePatternSet patterns = adjacent_dipole_patterns(16);

  int passed = 0;
  const int trials = 20;
  std::ostringstream detail;
  for (int trial = 0; trial < trials; ++trial) {
    Phantom ph;
    ph.sigma_bg = 0.5 + 2.0 * unit(rng);
    ph.eps_bg = 0.5 + 2.0 * unit(rng);
    ph.omega = 50.0 + 500.0 * unit(rng);

    double sigma_d = 0.0, eps_d = 0.0;
    do {
      sigma_d = 0.3 + 2.7 * unit(rng);
      eps_d = 0.3 + 2.7 * unit(rng);
    } while (std::abs(eps_d * ph.sigma_bg - ph.eps_bg * sigma_d) < 0.05);

    const double incl_radius = 1.5 + 1.0 * unit(rng);
    const double incl_dist = unit(rng) * (10.0 - incl_radius - 1.0);
    const double angle = 2.0 * std::numbers::pi * unit(rng);
    const Point2 incl_center{incl_dist * std::cos(angle), incl_dist * std::sin(angle)};
    ph.inclusions.push_back({RegionSpec::disk(incl_center, incl_radius), sigma_d, eps_d});

    // focus ball strictly inside the inclusion, wide enough to catch
    // element centroids at the coarse level
    const double ball_radius = incl_radius * (0.4 + 0.3 * unit(rng));
    const double off = unit(rng) * (incl_radius - ball_radius) * 0.8;
    const double ball_angle = 2.0 * std::numbers::pi * unit(rng);
    const RegionSpec ball = RegionSpec::disk(
        {incl_center.x + off * std::cos(ball_angle), incl_center.y + off * std::sin(ball_angle)},
        ball_radius);

    const ContrastConstants cc = contrast_constants(ph);
    const TestCase tc = applicable_case(cc);
    const double beta = applicable_beta_max(cc, tc);
    const Modulation mod{ball, beta, modulation_sign_for(tc)};

    const auto diff_at = [&](const Mesh& mesh) {
      const MeasurementMatrix r_ac = simulate_matrix(mesh, ph, FreqMode::AC, nullptr, patterns);
      const MeasurementMatrix r_mod = simulate_matrix(mesh, ph, FreqMode::DC, &mod, patterns);
      return difference_matrix(r_mod, r_ac, cc.alpha, tc);
    };

    const Eigen::MatrixXd a_coarse = diff_at(coarse);
    const double delta = estimate_delta({{a_coarse, diff_at(fine)}});
    const DefinitenessReport rep = regularized_test(a_coarse, delta, tc);
    passed += rep.verdict ? 1 : 0;
    if (!rep.verdict && detail.str().empty()) {
      detail << "first failure: trial " << trial << " margin " << rep.margin;
    }
  }
  std::ostringstream head;
  head << passed << "/" << trials << " random focused phantoms accepted";
  if (!detail.str().empty()) head << "; " << detail.str();
  report(4, "focused modulation inside the anomaly is always accepted", passed == trials,
         head.str());
}

void criterion_5() {
  std::mt19937_64 rng(0x5a4edull);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const RunConfig cfg = load_config(source_path("configs/example1.cfg"));
  const Mesh mesh = build_disk_mesh(10.0, cfg.geometry.layout, 0.5);
  const DrivePatternSet patterns = adjacent_dipole_patterns(16);

  int passed = 0;
  const int trials = 20;
  double worst_slack = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const auto random_field = [&]() {
      const RegionSpec blob = RegionSpec::disk(
          {8.0 * (unit(rng) - 0.5), 8.0 * (unit(rng) - 0.5)}, 1.0 + 2.5 * unit(rng));
      const Complex inside(0.2 + 2.8 * unit(rng), 4.0 * (unit(rng) - 0.5));
      const Complex outside(0.2 + 2.8 * unit(rng), 4.0 * (unit(rng) - 0.5));
      std::vector<Complex> gamma(mesh.triangle_count());
      for (int t = 0; t < mesh.triangle_count(); ++t) {
        gamma[t] = blob.contains(mesh.triangle_centroid(t)) ? inside : outside;
      }
      return gamma;
    };
    const std::vector<Complex> gamma1 = random_field();
    const std::vector<Complex> gamma2 = random_field();
    Eigen::VectorXcd g(patterns.size());
    for (int i = 0; i < g.size(); ++i) g[i] = Complex(unit(rng) - 0.5, unit(rng) - 0.5);

    const SandwichBounds b = sandwich_check(mesh, gamma1, gamma2, patterns, g);
    const double gap = b.upper - b.lower;
    const double slack =
        std::max({0.0, b.lower - b.middle, b.middle - b.upper}) / std::max(gap, 1e-300);
    worst_slack = std::max(worst_slack, slack);
    passed += (slack <= 0.05) ? 1 : 0;
  }
  std::ostringstream detail;
  detail << passed << "/" << trials << " brackets hold, worst slack fraction " << worst_slack;
  report(5, "energy bracket encloses the measured form", passed == trials, detail.str());
}

void criterion_6() {
  const RunConfig cfg = load_config(source_path("configs/example1.cfg"));
  const Mesh mesh = build_disk_mesh(10.0, cfg.geometry.layout, 0.5);
  const DrivePatternSet patterns = adjacent_dipole_patterns(16);
  const ContrastConstants cc = contrast_constants(cfg.phantom);
  std::ostringstream detail;
  bool ok = true;

  const auto gamma_ac = element_admittivity(cfg.phantom, mesh, FreqMode::AC);
  const MeasurementMatrix r_ac = measurement_matrix(mesh, gamma_ac, patterns);

  // reciprocity symmetry
  const double sym = r_ac.symmetry_defect_rel();
  ok = ok && sym <= 1e-10;
  detail << "symmetry " << sym;

  // frequency weighting identity
  std::vector<Complex> weighted = gamma_ac;
  for (auto& g : weighted) g /= cc.alpha;
  const MeasurementMatrix r_weighted = measurement_matrix(mesh, weighted, patterns);
  const double alpha_defect = (cc.alpha * r_ac.entries - r_weighted.entries).norm() /
                              r_weighted.entries.norm();
  ok = ok && alpha_defect <= 1e-10;
  detail << ", weighting " << alpha_defect;

  // admittivity scaling
  double worst_scaling = 0.0;
  for (const double k : {0.5, 2.0, 10.0}) {
    std::vector<Complex> scaled = gamma_ac;
    for (auto& g : scaled) g *= k;
    const MeasurementMatrix r_k = measurement_matrix(mesh, scaled, patterns);
    worst_scaling = std::max(
        worst_scaling, (r_k.entries - r_ac.entries / k).norm() / (r_ac.entries.norm() / k));
  }
  ok = ok && worst_scaling <= 1e-10;
  detail << ", scaling " << worst_scaling;

  // real-case monotonicity on nested pairs
  std::mt19937_64 rng(0x6a6bull);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_mono = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> low(mesh.triangle_count(), Complex(0.5 + 2.0 * unit(rng), 0.0));
    const RegionSpec bump = RegionSpec::disk(
        {8.0 * (unit(rng) - 0.5), 8.0 * (unit(rng) - 0.5)}, 1.0 + 2.0 * unit(rng));
    std::vector<Complex> high = low;
    const double factor = 1.2 + 2.0 * unit(rng);
    for (const int t : elements_in_region(mesh, bump)) high[t] *= factor;

    const MeasurementMatrix r_low = measurement_matrix(mesh, low, patterns);
    const MeasurementMatrix r_high = measurement_matrix(mesh, high, patterns);
    const Eigen::MatrixXd diff = (r_low.entries - r_high.entries).real();
    const double min_eig = eigen_spectrum(0.5 * (diff + diff.transpose()))[0];
    worst_mono = std::min(worst_mono, min_eig / r_low.entries.norm());
  }
  ok = ok && worst_mono >= -1e-8;
  detail << ", monotonicity floor " << worst_mono;

  // pointwise identities, reference and random constants
  double worst_identity = 0.0;
  worst_identity = std::max(worst_identity,
                            pointwise_identities(cfg.phantom, 0.5).max_rel_error());
  Phantom ex3 = cfg.phantom;
  ex3.eps_bg = 2.0;
  ex3.inclusions[0].eps = 1.0;
  worst_identity = std::max(worst_identity, pointwise_identities(ex3, 0.25).max_rel_error());
  for (int trial = 0; trial < 3; ++trial) {
    Phantom ph;
    ph.sigma_bg = 0.3 + 2.0 * unit(rng);
    ph.eps_bg = 0.3 + 2.0 * unit(rng);
    ph.omega = 10.0 + 400.0 * unit(rng);
    ph.inclusions.push_back(
        {RegionSpec::disk({1.0, 0.0}, 0.5), 0.3 + 2.0 * unit(rng), 0.3 + 2.0 * unit(rng)});
    if (std::abs(ph.inclusions[0].eps * ph.sigma_bg - ph.eps_bg * ph.inclusions[0].sigma) <
        1e-3) {
      continue;  // skip near-zero contrast draws
    }
    worst_identity =
        std::max(worst_identity, pointwise_identities(ph, unit(rng)).max_rel_error());
  }
  ok = ok && worst_identity <= 1e-12;
  detail << ", identities " << worst_identity;

  report(6, "algebraic invariants hold at their stated tolerances", ok, detail.str());
}

void criterion_7() {
  const RunConfig cfg = load_config(source_path("configs/example3_2d.cfg"));
  const Mesh mesh = mesh_at_level(cfg, cfg.geometry.levels);
  const DrivePatternSet patterns = adjacent_dipole_patterns(mesh.electrode_count);
  const ContrastConstants cc = contrast_constants(cfg.phantom);
  const TestCase tc = applicable_case(cc);

  ScanConfig scan_config;
  scan_config.ball_radius = cfg.scan->ball_radius;
  scan_config.spacing = cfg.scan->spacing;
  scan_config.margin = cfg.scan->margin;
  scan_config.beta = applicable_beta_max(cc, tc);
  scan_config.delta = resolve_delta(cfg.detection.delta);
  scan_config.test_case = tc;

  const auto render = [](const ScanResult& result) { return render_scan_csv(result, {}); };

  scan_config.threads = 1;
  const ScanResult first = run_scan(cfg.phantom, mesh, patterns, scan_config);
  const ScanResult repeat = run_scan(cfg.phantom, mesh, patterns, scan_config);
  scan_config.threads = 4;
  const ScanResult threaded = run_scan(cfg.phantom, mesh, patterns, scan_config);

  const bool reproducible =
      render(first) == render(repeat) && render(first) == render(threaded);

  const std::string golden = read_text_file(source_path("data/golden/example3_scan.csv"));
  std::string golden_why;
  const bool golden_ok = numeric_rows_match(parse_numeric_rows(golden),
                                            parse_numeric_rows(render(first)), 1e-6, 1e-12,
                                            golden_why);

  const RegionSpec& anomaly = cfg.phantom.inclusions[0].region;
  bool inside_ok = true, outside_ok = true;
  int inside_count = 0, outside_count = 0;
  for (const BallResult& ball : first.balls) {
    if (ball.failed) {
      inside_ok = outside_ok = false;
      break;
    }
    const double center_dist = distance(ball.center, anomaly.center);
    if (center_dist + ball.radius <= anomaly.radius) {
      ++inside_count;
      inside_ok = inside_ok && ball.verdict;
    }
    if (center_dist - ball.radius - anomaly.radius > 2.0 * ball.radius) {
      ++outside_count;
      outside_ok = outside_ok && !ball.verdict;
    }
  }

  std::ostringstream detail;
  detail << first.balls.size() << " balls, " << inside_count << " fully inside all marked: "
         << (inside_ok ? "yes" : "no") << ", " << outside_count
         << " far balls all unmarked: " << (outside_ok ? "yes" : "no")
         << ", csv reproducible: " << (reproducible ? "yes" : "no");
  if (!golden_ok) detail << ", golden drift: " << golden_why;
  report(7, "scan marks the anomaly and reproduces byte-identically",
         inside_ok && outside_ok && reproducible && golden_ok && inside_count > 0 &&
             outside_count > 0,
         detail.str());
}

void criterion_8() {
  const RunConfig cfg = load_config(source_path("configs/example1.cfg"));
  const DrivePatternSet patterns = adjacent_dipole_patterns(16);
  const ContrastConstants cc = contrast_constants(cfg.phantom);
  const TestCase tc = applicable_case(cc);
  const double beta = applicable_beta_max(cc, tc);

  std::vector<Eigen::VectorXcd> potentials;
  std::vector<std::vector<Eigen::MatrixXd>> diffs_by_level;
  Mesh mesh = build_disk_mesh(cfg.geometry.radius, cfg.geometry.layout, cfg.geometry.target_h);
  for (int level = 0; level <= 3; ++level) {
    if (level > 0) mesh = refine_mesh(mesh);
    const auto gamma_ac = element_admittivity(cfg.phantom, mesh, FreqMode::AC);
    const ShuntSystem system(mesh, gamma_ac);

    Eigen::VectorXcd dipole = Eigen::VectorXcd::Zero(16);
    dipole[0] = 1.0;
    dipole[1] = -1.0;
    potentials.push_back(system.solve_drive(dipole).electrode_potential);

    MeasurementMatrix r_ac;
    r_ac.entries = measurement_entries(system, patterns);
    r_ac.patterns = patterns;
    r_ac.provenance = {FreqMode::AC, std::nullopt, mesh.level, cfg.phantom.omega};
    std::vector<Eigen::MatrixXd> diffs;
    for (const auto& tr : cfg.test_regions) {
      const Modulation mod{tr.region, beta, modulation_sign_for(tc)};
      const MeasurementMatrix r_mod =
          simulate_matrix(mesh, cfg.phantom, FreqMode::DC, &mod, patterns);
      diffs.push_back(difference_matrix(r_mod, r_ac, cc.alpha, tc));
    }
    diffs_by_level.push_back(std::move(diffs));
  }

  std::vector<double> potential_steps, delta_steps;
  for (int level = 0; level + 1 <= 3; ++level) {
    potential_steps.push_back(
        (potentials[level] - potentials[level + 1]).cwiseAbs().maxCoeff());
    std::vector<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> pairs;
    for (std::size_t i = 0; i < diffs_by_level[level].size(); ++i) {
      pairs.emplace_back(diffs_by_level[level][i], diffs_by_level[level + 1][i]);
    }
    delta_steps.push_back(estimate_delta(pairs));
  }

  bool potentials_decrease = true;
  for (std::size_t i = 0; i + 1 < potential_steps.size(); ++i) {
    potentials_decrease = potentials_decrease && potential_steps[i + 1] < potential_steps[i];
  }
  bool delta_shrinks = true;
  for (std::size_t i = 0; i + 1 < delta_steps.size(); ++i) {
    delta_shrinks = delta_shrinks && delta_steps[i] >= 1.5 * delta_steps[i + 1];
  }

  std::ostringstream detail;
  detail << "potential steps";
  for (const double d : potential_steps) detail << " " << d;
  detail << "; delta steps";
  for (const double d : delta_steps) detail << " " << d;
  report(8, "refinement converges and shrinks the error estimate",
         potentials_decrease && delta_shrinks, detail.str());
}

}  // namespace

int main() {
  const Example1Results ex1 = run_example1();
  criterion_1_and_2(ex1);
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();

  std::printf("%d/8 acceptance criteria passed\n", 8 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
