#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eitmono/monotonicity.hpp"

namespace eitmono {

struct ScanConfig {
  double ball_radius = 1.0;
  double spacing = 1.0;  // lattice step between ball centers
  double margin = 0.0;   // keep-out distance from the boundary
  double beta = 0.0;     // modulation strength (resolve "max" before calling)
  std::optional<double> delta;        // empty = mesh-refinement estimate
  std::optional<TestCase> test_case;  // empty = from the contrast sign
  int threads = 1;
};

/// Square lattice of ball centers anchored at the domain center, one region
/// per center with distance(center) <= domain_radius - margin - ball_radius.
/// Row-major order: y from low to high, then x from low to high. Throws
/// "no admissible balls" when the filter empties the lattice.
std::vector<RegionSpec> generate_ball_grid(Point2 domain_center, double domain_radius,
                                           const ScanConfig& config);

struct BallResult {
  int index = 0;  // position in the generated grid
  Point2 center{};
  double radius = 0.0;
  bool verdict = false;
  double margin = 0.0;
  double min_eigenvalue = 0.0;
  bool failed = false;  // evaluation error; verdict fields meaningless
  std::string error;
};

struct ScanResult {
  std::vector<BallResult> balls;
  double delta_used = 0.0;
  TestCase case_used = TestCase::CaseA;
  double beta_used = 0.0;
  bool beta_exceeds_bound = false;  // warning only; the bound is sufficient, not necessary
  int mesh_level = 0;
  double seconds_total = 0.0;
  std::vector<double> seconds_per_ball;  // diagnostic; not part of canonical output
};

/// Runs the detection test for every grid ball: the AC matrix, the
/// unmodulated DC assembly, and the dof structure are computed once; each
/// ball applies a local stiffness update on its elements, factorizes,
/// measures, and tests. Per-ball errors are recorded and the scan
/// continues. Results are ordered by grid index regardless of thread count
/// and are identical to a sequential run.
ScanResult run_scan(const Phantom& phantom, const Mesh& mesh, const DrivePatternSet& patterns,
                    const ScanConfig& config);

}  // namespace eitmono
