#include "rescurve/linsolve.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <limits>
#include <string>

namespace rescurve {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Lu = Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>;

Eigen::VectorXd interior_weights(const Mesh& mesh) { return restrict_to_interior(mesh, mesh.weights); }

// K(a) = -S + M diag(a) restricted to the unknowns.
SparseMatrix weighted_operator(const Mesh& mesh, const Field& a) {
  SparseMatrix k = -mesh.stiffness;
  const Eigen::VectorXd w = interior_weights(mesh);
  const Eigen::VectorXd ai = restrict_to_interior(mesh, a.values);
  for (Eigen::Index i = 0; i < k.rows(); ++i) k.coeffRef(i, i) += w[i] * ai[i];
  k.makeCompressed();
  return k;
}

double one_norm(const SparseMatrix& k) {
  double best = 0.0;
  for (Eigen::Index c = 0; c < k.outerSize(); ++c) {
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(k, c); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

// Hager's estimate of ||K^{-1}||_1 for symmetric K.
double inverse_one_norm(const Lu& lu, Eigen::Index n) {
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  double estimate = 0.0;
  for (int it = 0; it < 5; ++it) {
    const Eigen::VectorXd y = lu.solve(x);
    if (!y.allFinite()) return std::numeric_limits<double>::infinity();
    estimate = y.lpNorm<1>();
    const Eigen::VectorXd xi = y.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
    const Eigen::VectorXd z = lu.solve(xi);
    Eigen::Index j = 0;
    const double zmax = z.cwiseAbs().maxCoeff(&j);
    if (zmax <= z.dot(x)) break;
    x.setZero();
    x[j] = 1.0;
  }
  return estimate;
}

}  // namespace

double condition_estimate(const Field& a) {
  const Mesh& mesh = *a.mesh;
  const SparseMatrix k = weighted_operator(mesh, a);
  Lu lu;
  lu.compute(k);
  if (lu.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  return one_norm(k) * inverse_one_norm(lu, k.rows());
}

Field solve_linear(const Field& a, const Field& b, const LinearSolveOptions& options) {
  require_same_mesh(a, b);
  const Mesh& mesh = *a.mesh;
  const SparseMatrix k = weighted_operator(mesh, a);
  const Eigen::VectorXd rhs = interior_weights(mesh).cwiseProduct(restrict_to_interior(mesh, b.values));

  Lu lu;
  lu.compute(k);
  if (lu.info() != Eigen::Success)
    throw SolveError("solve_linear: discrete operator is singular", std::numeric_limits<double>::infinity());
  const double condition = one_norm(k) * inverse_one_norm(lu, k.rows());
  if (!(condition <= options.max_condition))
    throw SolveError("solve_linear: condition estimate " + std::to_string(condition) + " exceeds threshold",
                     condition);

  Eigen::VectorXd w = lu.solve(rhs);
  auto backward_error = [&](const Eigen::VectorXd& x) {
    const double scale = one_norm(k) * x.lpNorm<Eigen::Infinity>() + rhs.lpNorm<Eigen::Infinity>();
    return scale == 0.0 ? 0.0 : (k * x - rhs).lpNorm<Eigen::Infinity>() / scale;
  };
  for (int refine = 0; refine < 3 && backward_error(w) > options.residual_tol; ++refine)
    w += lu.solve(rhs - k * w);
  if (!(backward_error(w) <= options.residual_tol))
    throw SolveError("solve_linear: residual above tolerance after refinement", condition);
  return Field(a.mesh, extend_from_interior(mesh, w));
}

DiscreteEigenpair discrete_eigenpair(const MeshPtr& mesh, int max_iterations) {
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(mesh->stiffness);
  if (ldlt.info() != Eigen::Success) throw SolveError("discrete_eigenpair: stiffness factorization failed", 0.0);
  const Eigen::VectorXd w = interior_weights(*mesh);
  auto m_norm = [&](const Eigen::VectorXd& v) { return std::sqrt(v.cwiseProduct(v).dot(w)); };

  Eigen::VectorXd x = Eigen::VectorXd::Ones(w.size());
  x /= m_norm(x);
  double best_change = std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (int it = 1; it <= max_iterations; ++it) {
    Eigen::VectorXd y = ldlt.solve(w.cwiseProduct(x));
    y /= m_norm(y);
    if (y.sum() < 0.0) y = -y;
    const double change = m_norm(y - x);
    x = std::move(y);
    if (change < best_change) {
      best_change = change;
      since_best = 0;
    } else {
      ++since_best;
    }
    // Stagnation at round-off level counts as converged.
    if (change <= 1e-12 || (since_best >= 10 && best_change <= 1e-9)) {
      const double lambda = x.dot(mesh->stiffness * x);
      const Field phi(mesh, extend_from_interior(*mesh, x));
      if (x.minCoeff() <= 0.0) throw SolveError("discrete_eigenpair: eigenvector is not positive", 0.0);
      return {lambda, phi, it};
    }
  }
  throw SolveError("discrete_eigenpair: inverse iteration did not converge", 0.0);
}

BorderedSolver::BorderedSolver(MeshPtr mesh, const Field& phi) : mesh_(std::move(mesh)) {
  if (phi.mesh != mesh_) throw MeshError("bordered solver: phi lives on a different mesh");
  const Mesh& m = *mesh_;
  const auto n = static_cast<Eigen::Index>(m.unknowns());
  border_ = interior_weights(m).cwiseProduct(restrict_to_interior(m, phi.values));
  const double border_max = border_.lpNorm<Eigen::Infinity>();
  if (border_max == 0.0) throw SolveError("bordered solver: phi vanishes on the interior", 0.0);
  stiffness_diagonal_ = m.stiffness.diagonal();
  // Small border entries keep partial pivoting on the diagonal of K.
  scale_ = 1e-2 * m.stiffness.diagonal().cwiseAbs().minCoeff() / border_max;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(m.stiffness.nonZeros() + 3 * n));
  for (Eigen::Index c = 0; c < m.stiffness.outerSize(); ++c)
    for (SparseMatrix::InnerIterator it(m.stiffness, c); it; ++it)
      triplets.emplace_back(it.row(), it.col(), -it.value());
  for (Eigen::Index i = 0; i < n; ++i) {
    triplets.emplace_back(i, i, 0.0);  // keeps the diagonal slot even if S_ii were 0
    triplets.emplace_back(i, n, -scale_ * border_[i]);
    triplets.emplace_back(n, i, scale_ * border_[i]);
  }
  matrix_.resize(n + 1, n + 1);
  matrix_.setFromTriplets(triplets.begin(), triplets.end());
  matrix_.makeCompressed();

  diagonal_slots_.resize(static_cast<std::size_t>(n));
  const int* outer = matrix_.outerIndexPtr();
  const int* inner = matrix_.innerIndexPtr();
  for (Eigen::Index c = 0; c < n; ++c) {
    for (int k = outer[c]; k < outer[c + 1]; ++k) {
      if (inner[k] == c) {
        diagonal_slots_[static_cast<std::size_t>(c)] = k;
        break;
      }
    }
  }
}

void BorderedSolver::refactorize(const Field& a) {
  if (a.mesh != mesh_) throw MeshError("bordered solver: coefficient lives on a different mesh");
  const Mesh& m = *mesh_;
  const Eigen::VectorXd w = interior_weights(m);
  const Eigen::VectorXd ai = restrict_to_interior(m, a.values);
  double* values = matrix_.valuePtr();
  for (std::size_t i = 0; i < diagonal_slots_.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    values[diagonal_slots_[i]] = -stiffness_diagonal_[ii] + w[ii] * ai[ii];
  }
  if (!analysed_) {
    lu_.analyzePattern(matrix_);
    analysed_ = true;
  }
  lu_.factorize(matrix_);
  if (lu_.info() != Eigen::Success)
    throw SolveError("bordered solver: factorization failed", std::numeric_limits<double>::infinity());
}

BorderedSolver::Solution BorderedSolver::solve(const Field& rhs, double t) const {
  if (rhs.mesh != mesh_) throw MeshError("bordered solver: right-hand side lives on a different mesh");
  const Mesh& m = *mesh_;
  const auto n = static_cast<Eigen::Index>(m.unknowns());
  Eigen::VectorXd b(n + 1);
  b.head(n) = interior_weights(m).cwiseProduct(restrict_to_interior(m, rhs.values));
  b[n] = scale_ * t;
  Eigen::VectorXd x = lu_.solve(b);
  x += lu_.solve(b - matrix_ * x);  // one refinement step
  if (!x.allFinite()) throw SolveError("bordered solver: non-finite solution", std::numeric_limits<double>::infinity());
  return {Field(mesh_, extend_from_interior(m, x.head(n))), scale_ * x[n]};
}

}  // namespace rescurve
