#include "eitmono/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "eitmono/io.hpp"
#include "eitmono/scan.hpp"

namespace eitmono {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

int working_level(const RunConfig& cfg, const CliOverrides& ov) {
  const int level = ov.mesh_level.value_or(cfg.geometry.levels);
  if (level < 0) fail("mesh level must be nonnegative");
  return level;
}

Mesh build_working_mesh(const RunConfig& cfg, int level) {
  Mesh mesh = build_disk_mesh(cfg.geometry.radius, cfg.geometry.layout, cfg.geometry.target_h);
  for (int l = 0; l < level; ++l) mesh = refine_mesh(mesh);
  return mesh;
}

std::string out_dir(const RunConfig& cfg, const CliOverrides& ov) {
  return ov.out_dir.value_or(cfg.output.dir);
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

HeaderFields base_header(const RunConfig& cfg, int level) {
  HeaderFields h;
  h.emplace_back("config_hash", format_hash(cfg.config_hash));
  h.emplace_back("mesh_level", std::to_string(level));
  h.emplace_back("omega", format_g17(cfg.phantom.omega));
  return h;
}

std::string safe_name(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  }
  return out;
}

DrivePatternSet config_patterns(const RunConfig& cfg, const Mesh& mesh) {
  if (cfg.measurement.patterns != "adjacent") {
    fail("unsupported pattern set '" + cfg.measurement.patterns + "'");
  }
  return adjacent_dipole_patterns(mesh.electrode_count);
}

std::string case_name(TestCase tc) { return tc == TestCase::CaseA ? "a" : "b"; }

}  // namespace

int cmd_mesh(const RunConfig& cfg, const CliOverrides& ov) {
  const int level = working_level(cfg, ov);
  const Mesh mesh = build_working_mesh(cfg, level);
  validate_mesh(mesh);
  const std::string path =
      join_path(out_dir(cfg, ov), "mesh_level" + std::to_string(level) + ".txt");
  write_text_file(path, render_mesh_dump(mesh, base_header(cfg, level)));
  std::cout << "mesh: level " << level << ", " << mesh.node_count() << " nodes, "
            << mesh.triangle_count() << " triangles, " << mesh.boundary_edges.size()
            << " boundary edges, " << mesh.electrode_count << " electrodes -> " << path << "\n";
  return 0;
}

int cmd_simulate(const RunConfig& cfg, const CliOverrides& ov) {
  const int level = working_level(cfg, ov);
  const Mesh mesh = build_working_mesh(cfg, level);
  const DrivePatternSet patterns = config_patterns(cfg, mesh);
  const std::string dir = out_dir(cfg, ov);

  const auto write_matrix = [&](MeasurementMatrix matrix, const std::string& name) {
    if (ov.symmetrize) matrix.symmetrize();
    const std::string path = join_path(dir, name);
    write_text_file(path, render_matrix_csv(matrix, base_header(cfg, level)));
    std::cout << "simulate: wrote " << path
              << " (symmetry defect " << format_g17(matrix.symmetry_defect_rel()) << ")\n";
  };

  write_matrix(simulate_matrix(mesh, cfg.phantom, FreqMode::DC, nullptr, patterns),
               "matrix_dc.csv");
  write_matrix(simulate_matrix(mesh, cfg.phantom, FreqMode::AC, nullptr, patterns),
               "matrix_ac.csv");

  if (!cfg.test_regions.empty()) {
    const ContrastConstants cc = contrast_constants(cfg.phantom);
    const TestCase tc = resolve_case(cfg.detection.case_sel).value_or(applicable_case(cc));
    const int sign = resolve_sign(cfg.modulation.sign, tc);
    const double beta = resolve_beta(ov.beta.value_or(cfg.modulation.beta), cc, tc);
    for (const auto& tr : cfg.test_regions) {
      MeasurementMatrix matrix;
      if (beta == 0.0) {
        // zero-strength modulation leaves the admittivity untouched
        matrix = simulate_matrix(mesh, cfg.phantom, FreqMode::DC, nullptr, patterns);
        matrix.provenance.modulation = Modulation{tr.region, 0.0, sign};
      } else {
        const Modulation mod{tr.region, beta, sign};
        matrix = simulate_matrix(mesh, cfg.phantom, FreqMode::DC, &mod, patterns);
      }
      write_matrix(std::move(matrix), "matrix_mod_" + safe_name(tr.name) + ".csv");
    }
  }
  return 0;
}

namespace {

// Case-oriented difference matrices for every test region at one level,
// plus the shared AC matrix.
std::vector<Eigen::MatrixXd> region_difference_matrices(const Mesh& mesh, const RunConfig& cfg,
                                                        const DrivePatternSet& patterns,
                                                        const ContrastConstants& cc, TestCase tc,
                                                        int sign, double beta, bool symmetrize) {
  MeasurementMatrix r_ac = simulate_matrix(mesh, cfg.phantom, FreqMode::AC, nullptr, patterns);
  if (symmetrize) r_ac.symmetrize();
  std::vector<Eigen::MatrixXd> diffs;
  diffs.reserve(cfg.test_regions.size());
  for (const auto& tr : cfg.test_regions) {
    const Modulation mod{tr.region, beta, sign};
    MeasurementMatrix r_mod = simulate_matrix(mesh, cfg.phantom, FreqMode::DC, &mod, patterns);
    if (symmetrize) r_mod.symmetrize();
    diffs.push_back(difference_matrix(r_mod, r_ac, cc.alpha, tc));
  }
  return diffs;
}

}  // namespace

int cmd_test(const RunConfig& cfg, const CliOverrides& ov) {
  if (cfg.test_regions.empty()) fail("config has no [test_region] blocks to test");
  const int level = working_level(cfg, ov);
  const Mesh mesh = build_working_mesh(cfg, level);
  const DrivePatternSet patterns = config_patterns(cfg, mesh);

  const ContrastConstants cc = contrast_constants(cfg.phantom);
  const TestCase tc = resolve_case(cfg.detection.case_sel).value_or(applicable_case(cc));
  const int sign = resolve_sign(cfg.modulation.sign, tc);
  const double beta = resolve_beta(ov.beta.value_or(cfg.modulation.beta), cc, tc);
  if (!(beta > 0.0)) fail("modulation strength beta must be positive for testing");
  if (beta > applicable_beta_max(cc, tc)) {
    std::cerr << "warning: beta " << format_g17(beta) << " exceeds the proven bound "
              << format_g17(applicable_beta_max(cc, tc)) << "\n";
  }

  const std::vector<Eigen::MatrixXd> diffs =
      region_difference_matrices(mesh, cfg, patterns, cc, tc, sign, beta, ov.symmetrize);

  double delta;
  const std::optional<double> fixed_delta = resolve_delta(ov.delta.value_or(cfg.detection.delta));
  if (fixed_delta.has_value()) {
    delta = *fixed_delta;
  } else {
    // refinement estimate: same difference matrices one level finer
    const Mesh fine = refine_mesh(mesh);
    const std::vector<Eigen::MatrixXd> fine_diffs =
        region_difference_matrices(fine, cfg, patterns, cc, tc, sign, beta, ov.symmetrize);
    std::vector<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> pairs;
    pairs.reserve(diffs.size());
    for (std::size_t i = 0; i < diffs.size(); ++i) pairs.emplace_back(diffs[i], fine_diffs[i]);
    delta = estimate_delta(pairs);
  }

  std::vector<std::string> names;
  std::vector<DefinitenessReport> reports;
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    names.push_back(cfg.test_regions[i].name);
    reports.push_back(regularized_test(diffs[i], delta, tc));
  }

  HeaderFields header = base_header(cfg, level);
  header.emplace_back("beta", format_g17(beta));
  header.emplace_back("delta", format_g17(delta));
  header.emplace_back("case", case_name(tc));
  const std::string path = join_path(out_dir(cfg, ov), "report.csv");
  write_text_file(path, render_report_csv(names, reports, header));

  std::cout << "test: case " << case_name(tc) << ", beta " << format_g17(beta) << ", delta "
            << format_g17(delta) << "\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    std::cout << names[i] << ": verdict=" << (reports[i].verdict ? "PASS" : "FAIL")
              << " margin=" << format_g17(reports[i].margin)
              << " min_eig=" << format_g17(reports[i].eigenvalues[0]) << "\n";
  }
  std::cout << "test: report -> " << path << "\n";
  return 0;
}

int cmd_scan(const RunConfig& cfg, const CliOverrides& ov) {
  if (!cfg.scan.has_value()) fail("config has no [scan] block");
  const int level = working_level(cfg, ov);
  const Mesh mesh = build_working_mesh(cfg, level);
  const DrivePatternSet patterns = config_patterns(cfg, mesh);

  const ContrastConstants cc = contrast_constants(cfg.phantom);
  const TestCase tc = resolve_case(cfg.detection.case_sel).value_or(applicable_case(cc));

  ScanConfig scan_config;
  scan_config.ball_radius = cfg.scan->ball_radius;
  scan_config.spacing = cfg.scan->spacing;
  scan_config.margin = cfg.scan->margin;
  scan_config.beta = resolve_beta(ov.beta.value_or(cfg.modulation.beta), cc, tc);
  scan_config.delta = resolve_delta(ov.delta.value_or(cfg.detection.delta));
  scan_config.test_case = tc;
  scan_config.threads = ov.threads.value_or(1);

  const ScanResult result = run_scan(cfg.phantom, mesh, patterns, scan_config);
  if (result.beta_exceeds_bound) {
    std::cerr << "warning: beta " << format_g17(result.beta_used)
              << " exceeds the proven bound " << format_g17(applicable_beta_max(cc, tc)) << "\n";
  }

  // delta/case/beta/mesh_level come from the renderer itself
  HeaderFields header;
  header.emplace_back("config_hash", format_hash(cfg.config_hash));
  header.emplace_back("omega", format_g17(cfg.phantom.omega));
  header.emplace_back("ball_radius", format_g17(scan_config.ball_radius));
  header.emplace_back("spacing", format_g17(scan_config.spacing));
  header.emplace_back("margin", format_g17(scan_config.margin));

  HeaderFields pgm_header = header;  // the raster has no renderer-side provenance
  pgm_header.emplace_back("mesh_level", std::to_string(level));
  pgm_header.emplace_back("beta", format_g17(result.beta_used));
  pgm_header.emplace_back("delta", format_g17(result.delta_used));
  pgm_header.emplace_back("case", case_name(result.case_used));

  const std::string dir = out_dir(cfg, ov);
  const std::string csv_path = join_path(dir, "scan.csv");
  const std::string pgm_path = join_path(dir, "scan.pgm");
  write_text_file(csv_path, render_scan_csv(result, header));
  write_text_file(pgm_path,
                  render_scan_pgm(result, scan_config.spacing, mesh.center, pgm_header));

  int marked = 0, failed = 0;
  for (const auto& ball : result.balls) {
    marked += (!ball.failed && ball.verdict) ? 1 : 0;
    failed += ball.failed ? 1 : 0;
  }
  std::cout << "scan: " << result.balls.size() << " balls, " << marked << " marked, " << failed
            << " failed, case " << case_name(result.case_used) << ", delta "
            << format_g17(result.delta_used) << "\n";
  std::cout << "scan: results -> " << csv_path << ", " << pgm_path << "\n";
  return 0;
}

namespace {

struct PropertyLog {
  int passed = 0;
  int failed = 0;

  void record(const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << " " << name << " (" << detail << ")\n";
    (ok ? passed : failed) += 1;
  }
};

double rel_defect(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale == 0.0 ? 0.0 : (a - b).norm() / scale;
}

}  // namespace

int cmd_verify(const RunConfig& cfg, const CliOverrides& ov) {
  const int level = working_level(cfg, ov);
  const Mesh mesh = build_working_mesh(cfg, level);
  const DrivePatternSet patterns = config_patterns(cfg, mesh);
  if (cfg.phantom.inclusions.empty()) fail("verify requires a phantom with an inclusion");
  if (!(cfg.phantom.omega > 0.0)) fail("verify requires omega > 0");

  PropertyLog log;
  std::mt19937_64 rng(0x5eed2026ull);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // mesh invariants
  try {
    validate_mesh(mesh);
    log.record("mesh-invariants", true, "all invariants hold");
  } catch (const std::exception& e) {
    log.record("mesh-invariants", false, e.what());
  }

  const auto gamma_dc = element_admittivity(cfg.phantom, mesh, FreqMode::DC, nullptr);
  const auto gamma_ac = element_admittivity(cfg.phantom, mesh, FreqMode::AC, nullptr);
  const MeasurementMatrix r_dc = measurement_matrix(mesh, gamma_dc, patterns);
  const MeasurementMatrix r_ac = measurement_matrix(mesh, gamma_ac, patterns);
  const ContrastConstants cc = contrast_constants(cfg.phantom);

  // reciprocity symmetry
  {
    const double defect = std::max(r_dc.symmetry_defect_rel(), r_ac.symmetry_defect_rel());
    log.record("matrix-symmetry", defect <= 1e-10, "defect " + format_g17(defect));
  }

  // real admittivity gives real measurements
  {
    const double imag_norm = r_dc.entries.imag().norm();
    const double rel = imag_norm / std::max(r_dc.entries.norm(), 1e-300);
    log.record("real-admittivity-real-matrix", rel <= 1e-12, "relative " + format_g17(rel));
  }

  // frequency weighting identity alpha*R(gamma_omega) = R(gamma_omega/alpha)
  {
    std::vector<Complex> gamma_scaled(gamma_ac.size());
    for (std::size_t i = 0; i < gamma_ac.size(); ++i) gamma_scaled[i] = gamma_ac[i] / cc.alpha;
    const MeasurementMatrix r_scaled = measurement_matrix(mesh, gamma_scaled, patterns);
    const double defect = rel_defect(cc.alpha * r_ac.entries, r_scaled.entries);
    log.record("alpha-weighting-identity", defect <= 1e-10, "defect " + format_g17(defect));
  }

  // admittivity scaling
  {
    double worst = 0.0;
    for (const double k : {0.5, 2.0, 10.0}) {
      std::vector<Complex> gamma_k(gamma_dc.size());
      for (std::size_t i = 0; i < gamma_dc.size(); ++i) gamma_k[i] = k * gamma_dc[i];
      const MeasurementMatrix r_k = measurement_matrix(mesh, gamma_k, patterns);
      worst = std::max(worst, rel_defect(r_k.entries, r_dc.entries / k));
    }
    log.record("admittivity-scaling", worst <= 1e-10, "worst defect " + format_g17(worst));
  }

  // real-case monotonicity: raising conductivity in a region lowers R
  {
    std::vector<Complex> gamma_up = gamma_dc;
    for (int t : elements_in_region(mesh, cfg.phantom.inclusions.front().region)) {
      gamma_up[t] *= 1.5;
    }
    const MeasurementMatrix r_up = measurement_matrix(mesh, gamma_up, patterns);
    const Eigen::MatrixXd diff = (r_dc.entries - r_up.entries).real();
    const double min_eig = eigen_spectrum(0.5 * (diff + diff.transpose()))[0];
    const double floor = -1e-8 * r_dc.entries.norm();
    log.record("real-monotonicity", min_eig >= floor,
               "min eigenvalue " + format_g17(min_eig) + " floor " + format_g17(floor));
  }

  // pointwise admittivity identities
  {
    const double err = pointwise_identities(cfg.phantom, 0.3).max_rel_error();
    log.record("pointwise-identities", err <= 1e-12, "max relative error " + format_g17(err));
  }

  // two-sided energy bracket on random pattern weights
  {
    const RegionSpec focus = cfg.test_regions.empty() ? cfg.phantom.inclusions.front().region
                                                      : cfg.test_regions.front().region;
    const TestCase tc = applicable_case(cc);
    const double beta = applicable_beta_max(cc, tc);
    const Modulation mod{focus, beta, modulation_sign_for(tc)};
    const auto gamma_mod = element_admittivity(cfg.phantom, mesh, FreqMode::DC, &mod);
    std::vector<Complex> gamma1(gamma_ac.size());
    for (std::size_t i = 0; i < gamma_ac.size(); ++i) gamma1[i] = gamma_ac[i] / cc.alpha;

    double worst_slack = 0.0;
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXcd g(patterns.size());
      for (int i = 0; i < g.size(); ++i) g[i] = Complex(unit(rng) - 0.5, unit(rng) - 0.5);
      const SandwichBounds b = sandwich_check(mesh, gamma1, gamma_mod, patterns, g);
      const double gap = b.upper - b.lower;
      const double slack =
          std::max({0.0, b.lower - b.middle, b.middle - b.upper}) / std::max(gap, 1e-300);
      worst_slack = std::max(worst_slack, slack);
      ok = ok && slack <= 0.05;
    }
    log.record("energy-bracket", ok, "worst slack fraction " + format_g17(worst_slack));
  }

  // flux balance and gauge
  {
    Eigen::VectorXcd currents = Eigen::VectorXcd::Zero(mesh.electrode_count);
    currents[0] = 1.0;
    currents[mesh.electrode_count / 2] = -1.0;
    const ShuntSystem system(mesh, gamma_ac);
    const FieldSolution sol = system.solve_drive(currents);
    const double defect = system.flux_defect(sol);
    const double gauge = std::abs(sol.electrode_potential.sum());
    const bool ok = defect <= 1e-10 && gauge <= 1e-10;
    log.record("flux-balance-and-gauge", ok,
               "residual " + format_g17(defect) + " gauge " + format_g17(gauge));
  }

  std::cout << "verify: " << log.passed << "/" << (log.passed + log.failed)
            << " properties passed\n";
  return log.failed == 0 ? 0 : 1;
}

}  // namespace eitmono
