#pragma once

#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>
#include <memory>
#include <stdexcept>

#include "rescurve/mesh.hpp"

namespace rescurve {

/// Discrete operator singular or too ill-conditioned to trust.
class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, double condition)
      : std::runtime_error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

struct LinearSolveOptions {
  /// Reject the solve above this 1-norm condition estimate.
  double max_condition = 1e13;
  /// Required relative residual of the discrete system.
  double residual_tol = 1e-10;
};

/// Solves Lap_h w + a w = b with w = 0 on the boundary (and w'(0) = 0 built
/// into radial meshes). Only interior values of a and b are used.
Field solve_linear(const Field& a, const Field& b, const LinearSolveOptions& options = {});

/// 1-norm condition estimate of the weighted system for coefficient a.
double condition_estimate(const Field& a);

struct DiscreteEigenpair {
  double lambda1 = 0.0;
  Field phi1;
  int iterations = 0;
};

/// Principal eigenpair of -Lap_h by inverse iteration on S x = lambda M x.
/// phi1 is normalized in the mesh inner product and positive inside.
DiscreteEigenpair discrete_eigenpair(const MeshPtr& mesh, int max_iterations = 2000);

/// Column ordering for a bordered matrix: COLAMD on the leading block with
/// the dense border column kept last, which keeps fill at the level of the
/// unbordered operator.
template <typename StorageIndex>
struct BorderLastOrdering {
  using PermutationType = Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, StorageIndex>;

  template <typename MatrixType>
  void operator()(const MatrixType& mat, PermutationType& perm) {
    const Eigen::Index n = mat.cols() - 1;
    Eigen::SparseMatrix<double, Eigen::ColMajor, StorageIndex> lead =
        Eigen::SparseMatrix<double, Eigen::ColMajor, StorageIndex>(mat).topLeftCorner(n, n);
    lead.makeCompressed();
    PermutationType inner;
    Eigen::COLAMDOrdering<StorageIndex>()(lead, inner);
    perm.resize(n + 1);
    for (Eigen::Index i = 0; i < n; ++i) perm.indices()[i] = inner.indices()[i];
    perm.indices()[n] = static_cast<StorageIndex>(n);
  }
};

/// Factorizes [K(a), -M phi; (M phi)^T, 0] with K(a) = -S + M diag(a) on the
/// interior unknowns; solutions (w, s) satisfy Lap_h w + a w - s phi = rhs
/// and inner(w, phi) = t for a right-hand side (rhs, t). The sparsity pattern
/// is analysed once; refactorize() only updates the diagonal.
class BorderedSolver {
 public:
  BorderedSolver(MeshPtr mesh, const Field& phi);

  void refactorize(const Field& a);

  struct Solution {
    Field w;
    double s = 0.0;
  };
  Solution solve(const Field& rhs, double t) const;

 private:
  MeshPtr mesh_;
  Eigen::VectorXd border_;  // M phi on unknowns
  Eigen::VectorXd stiffness_diagonal_;
  double scale_ = 1.0;
  Eigen::SparseMatrix<double> matrix_;
  std::vector<Eigen::Index> diagonal_slots_;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, BorderLastOrdering<int>> lu_;
  bool analysed_ = false;
};

}  // namespace rescurve
