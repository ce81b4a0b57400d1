#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "eitmono/fem.hpp"
#include "eitmono/mesh.hpp"
#include "eitmono/phantom.hpp"

namespace eitmono {

/// Ordered list of dipole drive pairs (j_r, k_r), 0-based electrode indices.
struct DrivePatternSet {
  std::vector<std::pair<int, int>> pairs;

  int size() const { return static_cast<int>(pairs.size()); }
  bool operator==(const DrivePatternSet&) const = default;
};

/// The adjacent cycle (0,1),(1,2),...,(m-1,0). Requires m >= 3.
DrivePatternSet adjacent_dipole_patterns(int m);

/// Throws if pairs are empty, repeated, degenerate, or out of range.
void validate_patterns(const DrivePatternSet& patterns, int electrode_count);

/// Identifying metadata carried with a measurement matrix so definiteness
/// tests can reject mismatched inputs (different mesh levels, patterns, ...).
struct MatrixProvenance {
  FreqMode mode = FreqMode::DC;
  std::optional<Modulation> modulation;
  int mesh_level = 0;
  double omega = 0.0;
};

/// Dipole-dipole voltage matrix: entry (r,s) = U^<r>_{j_s} - U^<r>_{k_s}
/// where U^<r> is driven by unit current +1 on j_r, -1 on k_r. Complex
/// symmetric (R = R^T without conjugation), real whenever gamma is real.
struct MeasurementMatrix {
  Eigen::MatrixXcd entries;
  DrivePatternSet patterns;
  MatrixProvenance provenance;

  /// Frobenius-norm symmetry defect ||R - R^T|| / ||R||.
  double symmetry_defect_rel() const;

  /// Replaces R by (R + R^T)/2.
  void symmetrize();
};

/// Electrode currents generated by weighting the dipole patterns with g:
/// I_l = sum_{r: j_r=l} g_r - sum_{r: k_r=l} g_r. Always sums to zero.
Eigen::VectorXcd pattern_currents(const DrivePatternSet& patterns, const Eigen::VectorXcd& g,
                                  int electrode_count);

/// One solve per pattern against an already factorized system.
Eigen::MatrixXcd measurement_entries(const ShuntSystem& system, const DrivePatternSet& patterns);

/// Assemble + factorize + measure. Mode in the provenance is inferred from
/// the admittivity (real -> DC); prefer simulate_matrix for full provenance.
MeasurementMatrix measurement_matrix(const Mesh& mesh, const std::vector<Complex>& gamma_e,
                                     const DrivePatternSet& patterns);

/// Samples the phantom in the given mode (with optional modulation),
/// simulates the matrix, and records complete provenance.
MeasurementMatrix simulate_matrix(const Mesh& mesh, const Phantom& phantom, FreqMode mode,
                                  const Modulation* modulation, const DrivePatternSet& patterns);

/// Self-adjoint part of alpha*R: ((alpha R) + (alpha R)^*)/2, returned as a
/// real symmetric matrix (exact for complex symmetric R).
Eigen::MatrixXd weighted_real_part(const MeasurementMatrix& R, Complex alpha);

struct SandwichBounds {
  double lower = 0.0;
  double middle = 0.0;
  double upper = 0.0;
};

/// Two-sided bracket for the definiteness quadratic form. middle is
/// g^* Re[R(gamma2) - R(gamma1)] g from the measurement matrices; lower and
/// upper are the admittivity-weighted energy integrals of the solution
/// driven by g on gamma2, evaluated by the same element quadrature:
///   lower integrand: Re(g2)/Re(g1) * Re(g1 - g2) - Im(g2)^2 / Re(g1)
///   upper integrand: Re(g1 - g2) + Im(g1)^2 / Re(g1)
/// Both admittivities must respect the positive real-part floor.
SandwichBounds sandwich_check(const Mesh& mesh, const std::vector<Complex>& gamma1_e,
                              const std::vector<Complex>& gamma2_e,
                              const DrivePatternSet& patterns, const Eigen::VectorXcd& g);

}  // namespace eitmono
