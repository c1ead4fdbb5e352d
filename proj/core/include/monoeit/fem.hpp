#pragma once

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <functional>
#include <memory>

#include "monoeit/mesh.hpp"
#include "monoeit/spectral_matrix.hpp"

namespace monoeit {

/// Piecewise-affine Galerkin solver for div(gamma grad u) = 0 with Neumann
/// data g and grounding int_boundary u ds = 0, imposed through one scalar
/// Lagrange multiplier. The factorization is shared across right-hand sides.
class NeumannSolver {
 public:
  NeumannSolver(const DiskMesh& mesh, const Phantom& phantom);

  /// Full nodal solution for boundary current density g(theta).
  Eigen::VectorXd solve(const std::function<double(double)>& g) const;

  /// Solution restricted to the boundary vertices (mesh boundary order).
  Eigen::VectorXd solve_trace(const std::function<double(double)>& g) const;

  const DiskMesh& mesh() const { return mesh_; }
  const std::vector<double>& boundary_angles() const {
    return boundary_angles_;
  }

 private:
  const DiskMesh& mesh_;
  std::vector<double> boundary_angles_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
};

/// One-shot variant of NeumannSolver::solve_trace.
Eigen::VectorXd solve_neumann(const DiskMesh& mesh, const Phantom& phantom,
                              const std::function<double(double)>& g);

struct FemDiagnostics {
  double raw_asymmetry = 0.0;      // Hermitian defect before symmetrization
  double raw_centro_defect = 0.0;  // centrohermitian defect before it
};

/// ND matrix entries <R(gamma) f_m, f_n> from 2N finite element solves
/// (cosine/sine pairs). The result is symmetrized to be exactly Hermitian
/// and centrohermitian; the raw defects are reported through `diag`.
SpectralMatrix nd_matrix_fem(const DiskMesh& mesh, const Phantom& phantom,
                             int order, FemDiagnostics* diag = nullptr);

}  // namespace monoeit
