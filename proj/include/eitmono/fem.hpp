#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "eitmono/mesh.hpp"

namespace eitmono {

/// Smallest admissible real part of an element admittivity.
inline constexpr double kMinRealAdmittivity = 1e-12;

/// Map from mesh nodes to reduced unknowns: interior and insulated-gap
/// boundary nodes keep individual unknowns, all nodes of one electrode arc
/// are condensed to a single shared unknown (perfectly conducting arc).
struct DofMap {
  int node_count = 0;
  int free_count = 0;
  int electrode_count = 0;
  std::vector<int> dof_of_node;        // free dof id, or free_count + electrode id
  std::vector<int> electrode_of_node;  // -1 for non-electrode nodes

  int reduced_size() const { return free_count + electrode_count; }
  int electrode_dof(int e) const { return free_count + e; }
  int gauge_row() const { return reduced_size(); }
};

DofMap build_dof_map(const Mesh& mesh);

/// P1 stiffness of a single triangle with constant coefficient gamma.
Eigen::Matrix3cd p1_local_stiffness(Point2 a, Point2 b, Point2 c, Complex gamma);

/// Assembles the reduced stiffness (electrode arcs condensed) and appends
/// one bordering row/column enforcing the gauge sum(U_e) = 0. The result is
/// complex symmetric and uniquely solvable for zero-sum drive currents.
Eigen::SparseMatrix<Complex> assemble_bordered(const Mesh& mesh, const DofMap& dofs,
                                               const std::vector<Complex>& gamma_e);

/// Stiffness contribution of the listed elements only, with coefficients
/// `coeff` (parallel to `elems`), in the same bordered frame and without
/// gauge entries. Adding this to an assembled matrix applies a local
/// admittivity change gamma -> gamma + coeff on those elements.
Eigen::SparseMatrix<Complex> assemble_bordered_update(const Mesh& mesh, const DofMap& dofs,
                                                      const std::vector<int>& elems,
                                                      const std::vector<Complex>& coeff);

struct FieldSolution {
  Eigen::VectorXcd node_potential;       // per mesh node
  Eigen::VectorXcd electrode_potential;  // per electrode, sums to zero
  Eigen::VectorXcd drive_current;        // the applied currents
  Complex gauge_multiplier{0.0, 0.0};    // bordering unknown; zero up to roundoff
};

/// Factorized forward operator for one admittivity distribution. Immutable
/// once constructed; solve_drive may be called from multiple threads and is
/// internally serialized, so concurrent solves match sequential ones.
class ShuntSystem {
 public:
  /// Assembles and factorizes. Throws if any Re(gamma) falls below the
  /// positive floor or if the factorization breaks down.
  ShuntSystem(const Mesh& mesh, const std::vector<Complex>& gamma_e);

  /// Factorizes a caller-assembled bordered matrix (local-update path).
  ShuntSystem(DofMap dofs, Eigen::SparseMatrix<Complex> bordered);

  ShuntSystem(const ShuntSystem&) = delete;
  ShuntSystem& operator=(const ShuntSystem&) = delete;

  /// Solves for the potentials generated by the given electrode currents.
  /// Currents must sum to zero (within 1e-12 of the largest magnitude).
  FieldSolution solve_drive(const Eigen::VectorXcd& currents) const;

  /// Max-norm residual of the full bordered system for a solution, covering
  /// interior equations, the per-electrode flux balance (discrete current =
  /// drive current), the gauge row, and the gauge multiplier itself.
  double flux_defect(const FieldSolution& sol) const;

  const DofMap& dofs() const { return dofs_; }
  int electrode_count() const { return dofs_.electrode_count; }

 private:
  void factorize();

  DofMap dofs_;
  Eigen::SparseMatrix<Complex> bordered_;
  std::unique_ptr<Eigen::SparseLU<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>>> lu_;
  mutable std::mutex solve_mutex_;
};

/// Squared gradient magnitude |grad u|^2 per element of a nodal field.
std::vector<double> element_grad_sq(const Mesh& mesh, const Eigen::VectorXcd& node_potential);

/// Sum over the region's elements of area * |grad u|^2 (unweighted energy;
/// callers apply admittivity weights where needed).
double interior_energy(const Mesh& mesh, const FieldSolution& solution,
                       const std::vector<int>& region);

/// Weighted energy integral sum_T conj(gamma_T) * area_T * |grad u_T|^2.
Complex admittivity_energy(const Mesh& mesh, const std::vector<Complex>& gamma_e,
                           const Eigen::VectorXcd& node_potential);

}  // namespace eitmono
