#include "eitmono/fem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace eitmono {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error("fem: " + what); }

void check_admittivity(const Mesh& mesh, const std::vector<Complex>& gamma_e) {
  if (gamma_e.size() != static_cast<std::size_t>(mesh.triangle_count())) {
    fail("admittivity vector length does not match element count");
  }
  for (const auto& g : gamma_e) {
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) fail("non-finite admittivity");
    if (g.real() < kMinRealAdmittivity) fail("admittivity real part below positive floor");
  }
}

}  // namespace

DofMap build_dof_map(const Mesh& mesh) {
  if (mesh.electrode_count < 2) fail("gauge requires at least 2 electrodes");
  DofMap dofs;
  dofs.node_count = mesh.node_count();
  dofs.electrode_count = mesh.electrode_count;
  dofs.electrode_of_node = mesh.electrode_of_node();
  dofs.dof_of_node.assign(dofs.node_count, -1);
  int next = 0;
  for (int n = 0; n < dofs.node_count; ++n) {
    if (dofs.electrode_of_node[n] < 0) dofs.dof_of_node[n] = next++;
  }
  dofs.free_count = next;
  for (int n = 0; n < dofs.node_count; ++n) {
    if (dofs.electrode_of_node[n] >= 0) {
      dofs.dof_of_node[n] = dofs.free_count + dofs.electrode_of_node[n];
    }
  }
  return dofs;
}

Eigen::Matrix3cd p1_local_stiffness(Point2 a, Point2 b, Point2 c, Complex gamma) {
  const double area = 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
  if (!(area > 0.0)) fail("degenerate or clockwise triangle in assembly");
  const double bv[3] = {b.y - c.y, c.y - a.y, a.y - b.y};
  const double cv[3] = {c.x - b.x, a.x - c.x, b.x - a.x};
  Eigen::Matrix3cd k;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      k(i, j) = gamma * ((bv[i] * bv[j] + cv[i] * cv[j]) / (4.0 * area));
    }
  }
  return k;
}

namespace {

void append_element_triplets(const Mesh& mesh, const DofMap& dofs, int t, Complex coeff,
                             std::vector<Eigen::Triplet<Complex>>& triplets) {
  const auto& tri = mesh.triangles[t];
  const auto k = p1_local_stiffness(mesh.nodes[tri[0]], mesh.nodes[tri[1]], mesh.nodes[tri[2]], coeff);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      triplets.emplace_back(dofs.dof_of_node[tri[i]], dofs.dof_of_node[tri[j]], k(i, j));
    }
  }
}

}  // namespace

Eigen::SparseMatrix<Complex> assemble_bordered(const Mesh& mesh, const DofMap& dofs,
                                               const std::vector<Complex>& gamma_e) {
  check_admittivity(mesh, gamma_e);
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(9 * mesh.triangle_count() + 2 * dofs.electrode_count);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    append_element_triplets(mesh, dofs, t, gamma_e[t], triplets);
  }
  const int gauge = dofs.gauge_row();
  for (int e = 0; e < dofs.electrode_count; ++e) {
    triplets.emplace_back(gauge, dofs.electrode_dof(e), Complex(1.0, 0.0));
    triplets.emplace_back(dofs.electrode_dof(e), gauge, Complex(1.0, 0.0));
  }
  Eigen::SparseMatrix<Complex> m(gauge + 1, gauge + 1);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

Eigen::SparseMatrix<Complex> assemble_bordered_update(const Mesh& mesh, const DofMap& dofs,
                                                      const std::vector<int>& elems,
                                                      const std::vector<Complex>& coeff) {
  if (elems.size() != coeff.size()) fail("update coefficient list length mismatch");
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(9 * elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const int t = elems[i];
    if (t < 0 || t >= mesh.triangle_count()) fail("update element index out of range");
    append_element_triplets(mesh, dofs, t, coeff[i], triplets);
  }
  const int n = dofs.gauge_row() + 1;
  Eigen::SparseMatrix<Complex> m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

ShuntSystem::ShuntSystem(const Mesh& mesh, const std::vector<Complex>& gamma_e)
    : dofs_(build_dof_map(mesh)), bordered_(assemble_bordered(mesh, dofs_, gamma_e)) {
  factorize();
}

ShuntSystem::ShuntSystem(DofMap dofs, Eigen::SparseMatrix<Complex> bordered)
    : dofs_(std::move(dofs)), bordered_(std::move(bordered)) {
  if (bordered_.rows() != dofs_.gauge_row() + 1 || bordered_.cols() != bordered_.rows()) {
    fail("bordered matrix size does not match dof map");
  }
  bordered_.makeCompressed();
  factorize();
}

void ShuntSystem::factorize() {
  lu_ = std::make_unique<Eigen::SparseLU<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>>>();
  lu_->compute(bordered_);
  if (lu_->info() != Eigen::Success) {
    std::ostringstream os;
    os << "factorization failed (" << lu_->lastErrorMessage() << "); size " << bordered_.rows()
       << ", nnz " << bordered_.nonZeros();
    fail(os.str());
  }
}

FieldSolution ShuntSystem::solve_drive(const Eigen::VectorXcd& currents) const {
  if (currents.size() != dofs_.electrode_count) fail("current vector length != electrode count");
  double max_abs = 0.0;
  Complex sum(0.0, 0.0);
  for (int e = 0; e < currents.size(); ++e) {
    if (!std::isfinite(currents[e].real()) || !std::isfinite(currents[e].imag())) {
      fail("non-finite drive current");
    }
    max_abs = std::max(max_abs, std::abs(currents[e]));
    sum += currents[e];
  }
  if (std::abs(sum) > 1e-12 * max_abs) fail("drive currents must sum to zero");

  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dofs_.reduced_size() + 1);
  for (int e = 0; e < dofs_.electrode_count; ++e) rhs[dofs_.electrode_dof(e)] = currents[e];

  Eigen::VectorXcd x;
  {
    std::lock_guard<std::mutex> lock(solve_mutex_);
    x = lu_->solve(rhs);
    if (lu_->info() != Eigen::Success) fail("triangular solve failed");
  }

  FieldSolution sol;
  sol.drive_current = currents;
  sol.node_potential.resize(dofs_.node_count);
  for (int n = 0; n < dofs_.node_count; ++n) sol.node_potential[n] = x[dofs_.dof_of_node[n]];
  sol.electrode_potential.resize(dofs_.electrode_count);
  for (int e = 0; e < dofs_.electrode_count; ++e) {
    sol.electrode_potential[e] = x[dofs_.electrode_dof(e)];
  }
  sol.gauge_multiplier = x[dofs_.reduced_size()];
  return sol;
}

double ShuntSystem::flux_defect(const FieldSolution& sol) const {
  if (sol.node_potential.size() != dofs_.node_count ||
      sol.electrode_potential.size() != dofs_.electrode_count) {
    fail("solution does not match system dimensions");
  }
  Eigen::VectorXcd x(dofs_.reduced_size() + 1);
  for (int n = 0; n < dofs_.node_count; ++n) x[dofs_.dof_of_node[n]] = sol.node_potential[n];
  for (int e = 0; e < dofs_.electrode_count; ++e) {
    x[dofs_.electrode_dof(e)] = sol.electrode_potential[e];
  }
  x[dofs_.reduced_size()] = sol.gauge_multiplier;

  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dofs_.reduced_size() + 1);
  for (int e = 0; e < dofs_.electrode_count; ++e) rhs[dofs_.electrode_dof(e)] = sol.drive_current[e];

  const Eigen::VectorXcd residual = bordered_ * x - rhs;
  return std::max(residual.cwiseAbs().maxCoeff(), std::abs(sol.gauge_multiplier));
}

std::vector<double> element_grad_sq(const Mesh& mesh, const Eigen::VectorXcd& node_potential) {
  if (node_potential.size() != mesh.node_count()) fail("potential length != node count");
  std::vector<double> out(mesh.triangle_count());
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    const Point2 a = mesh.nodes[tri[0]], b = mesh.nodes[tri[1]], c = mesh.nodes[tri[2]];
    const double area2 = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    const double bv[3] = {b.y - c.y, c.y - a.y, a.y - b.y};
    const double cv[3] = {c.x - b.x, a.x - c.x, b.x - a.x};
    Complex ux(0.0, 0.0), uy(0.0, 0.0);
    for (int i = 0; i < 3; ++i) {
      ux += node_potential[tri[i]] * bv[i];
      uy += node_potential[tri[i]] * cv[i];
    }
    ux /= area2;
    uy /= area2;
    out[t] = std::norm(ux) + std::norm(uy);
  }
  return out;
}

double interior_energy(const Mesh& mesh, const FieldSolution& solution,
                       const std::vector<int>& region) {
  for (int t : region) {
    if (t < 0 || t >= mesh.triangle_count()) fail("energy region element index out of range");
  }
  const auto grad_sq = element_grad_sq(mesh, solution.node_potential);
  double energy = 0.0;
  for (int t : region) energy += mesh.triangle_area(t) * grad_sq[t];
  return energy;
}

Complex admittivity_energy(const Mesh& mesh, const std::vector<Complex>& gamma_e,
                           const Eigen::VectorXcd& node_potential) {
  check_admittivity(mesh, gamma_e);
  const auto grad_sq = element_grad_sq(mesh, node_potential);
  Complex energy(0.0, 0.0);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    energy += std::conj(gamma_e[t]) * (mesh.triangle_area(t) * grad_sq[t]);
  }
  return energy;
}

}  // namespace eitmono
