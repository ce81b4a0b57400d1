#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "eitmono/measurements.hpp"

namespace eitmono {

struct EigenDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns, vectors.col(i) <-> values[i]
};

/// Cyclic Jacobi for small real symmetric matrices. Backward stable:
/// ||A - Q diag Q^T|| <= 1e-12 ||A|| and ||Q^T Q - I|| <= 1e-12. Rejects
/// non-finite input and symmetry defects above 1e-8 * ||A||.
EigenDecomposition eigen_decompose(const Eigen::MatrixXd& A);

/// Ascending eigenvalues only.
Eigen::VectorXd eigen_spectrum(const Eigen::MatrixXd& A);

/// Spectral norm (largest |eigenvalue|) of a symmetric matrix.
double spectral_norm_sym(const Eigen::MatrixXd& A);

/// Forms the real symmetric difference matrix whose nonnegativity is the
/// detection criterion. CaseA (contrast c > 0, modulation sign +):
/// A = Re[R_mod] - Re[alpha R_ac]; CaseB (c < 0, sign -):
/// A = Re[alpha R_ac] - Re[R_mod]. The case-b orientation is flipped so
/// both cases test lambda_min(A) >= -delta. Matrix Re[] means the
/// self-adjoint part. Throws on provenance mismatch: R_mod must be
/// modulated DC with the sign matching the case, R_ac unmodulated AC, both
/// on the same mesh level with the same pattern set.
Eigen::MatrixXd difference_matrix(const MeasurementMatrix& r_mod, const MeasurementMatrix& r_ac,
                                  Complex alpha, TestCase test_case);

struct DefinitenessReport {
  Eigen::VectorXd eigenvalues;  // ascending, of the case-oriented matrix
  double delta = 0.0;
  TestCase direction = TestCase::CaseA;
  bool verdict = false;
  double margin = 0.0;  // lambda_min + delta; verdict = (margin >= 0)
};

/// Regularized one-sided definiteness test A >= -delta I on the
/// case-oriented difference matrix. Ties (margin exactly 0) pass.
DefinitenessReport regularized_test(const Eigen::MatrixXd& A, double delta, TestCase test_case);

/// Noise level from mesh refinement: max over pairs of the spectral norm
/// of (A_fine - A_coarse). Throws on an empty list or shape mismatch.
double estimate_delta(
    const std::vector<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>>& level_pairs);

/// One eigenvector of the difference matrix together with the interior
/// energies of the drive it generates on the unmodulated DC distribution.
struct EnergyDiagnosticRow {
  double eigenvalue = 0.0;
  double energy_focus_only = 0.0;  // energy on elements of B \ D
  double energy_inclusion = 0.0;   // energy on elements of D
  double ratio = 0.0;              // focus_only / inclusion
};

/// Localized-energy diagnostic explaining negative eigenvalues: drives
/// concentrating energy in B outside the inclusion while avoiding D make
/// the quadratic form negative. Rows follow the ascending eigenvalue order
/// of A; the drive for row i is the i-th eigenvector's dipole combination
/// solved on gamma_dc.
std::vector<EnergyDiagnosticRow> localized_energy_diagnostic(
    const Mesh& mesh, const std::vector<Complex>& gamma_dc, const DrivePatternSet& patterns,
    const Eigen::MatrixXd& A, const std::vector<int>& focus_only_elems,
    const std::vector<int>& inclusion_elems);

}  // namespace eitmono
