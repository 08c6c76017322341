#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rescurve/linsolve.hpp"
#include "rescurve/mesh.hpp"

using namespace rescurve;

namespace {

constexpr double kPi = std::numbers::pi;

double max_interior_error(const Field& got, const std::function<double(std::span<const double>)>& exact) {
  double e = 0.0;
  for (int node : got.mesh->interior) e = std::max(e, std::abs(got.values[node] - exact(got.mesh->point(node))));
  return e;
}

}  // namespace

TEST_SUITE("mesh") {
  TEST_CASE("weights sum to the domain measure") {
    CHECK(make_polar_mesh(33, 32)->weights.sum() == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(make_rect_mesh(1.0, 2.0, 17, 33)->weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    for (int n : {2, 3, 5})
      CHECK(make_radial_mesh(n, 65)->weights.sum() == doctest::Approx(DomainSpec::ball(n).measure()).epsilon(1e-13));
  }

  TEST_CASE("node layout and boundary flags") {
    const MeshPtr polar = make_polar_mesh(5, 8);
    CHECK(polar->size() == 1 + 4 * 8);
    CHECK(polar->unknowns() == 1 + 3 * 8);
    CHECK(polar->radius[0] == 0.0);
    for (std::size_t i = 0; i < polar->size(); ++i)
      CHECK(static_cast<bool>(polar->boundary[i]) == (std::abs(polar->radius[i] - 1.0) < 1e-14));

    const MeshPtr rect = make_rect_mesh(1.0, 2.0, 5, 9);
    CHECK(rect->size() == 45);
    CHECK(rect->unknowns() == 3 * 7);
    const auto p = rect->point(5 * 2 + 3);  // row-major in x
    CHECK(p[0] == doctest::Approx(0.75));
    CHECK(p[1] == doctest::Approx(0.5));

    const MeshPtr radial = make_radial_mesh(3, 11);
    CHECK(radial->unknowns() == 10);
    CHECK(radial->spacing() == doctest::Approx(0.1));
    CHECK(radial->boundary.back());

    for (const MeshPtr& m : {polar, rect, radial})
      for (std::size_t u = 0; u < m->unknowns(); ++u) CHECK(m->unknown_of[static_cast<std::size_t>(m->interior[u])] == static_cast<int>(u));
  }

  TEST_CASE("stiffness is symmetric with zero row sums away from the boundary") {
    for (const MeshPtr& m : {make_polar_mesh(9, 8), make_rect_mesh(1.0, 1.0, 7, 7), make_radial_mesh(2, 9)}) {
      const Eigen::SparseMatrix<double> s = m->stiffness;
      const Eigen::SparseMatrix<double> t = s.transpose();
      CHECK((s - t).norm() < 1e-14 * s.norm());
      const Eigen::VectorXd ones = Eigen::VectorXd::Ones(s.cols());
      const Eigen::VectorXd rows = s * ones;
      CHECK(rows.minCoeff() > -1e-12);  // diagonally dominant
    }
  }

  TEST_CASE("invalid resolutions are rejected") {
    CHECK_THROWS_AS(make_polar_mesh(2, 8), MeshError);
    CHECK_THROWS_AS(make_polar_mesh(9, 2), MeshError);
    CHECK_THROWS_AS(make_rect_mesh(1.0, 1.0, 2, 9), MeshError);
    CHECK_THROWS_AS(make_radial_mesh(3, 2), MeshError);
    CHECK_THROWS_AS(make_mesh(DomainSpec::disk(), {9}), MeshError);
  }

  TEST_CASE("default resolutions stay at desk scale") {
    CHECK(default_resolution(DomainSpec::disk()) == std::vector<int>{129, 128});
    CHECK(default_resolution(DomainSpec::rect(1.0, 2.0)) == std::vector<int>{65, 129});
    const auto ball = default_resolution(DomainSpec::ball(3));
    REQUIRE(ball.size() == 1);
    CHECK(make_mesh(DomainSpec::rect(1.0, 2.0), {})->resolution == std::vector<int>{65, 129});
  }

  TEST_CASE("fields check their mesh") {
    const MeshPtr a = make_radial_mesh(2, 9), b = make_radial_mesh(2, 9);
    CHECK_THROWS_AS(Field(a, Eigen::VectorXd::Zero(3)), MeshError);
    CHECK_THROWS_AS(inner(Field::zeros(a), Field::zeros(b)), MeshError);
    CHECK(Field::zeros(a).is_dirichlet());
    CHECK_FALSE(Field::constant(a, 1.0).is_dirichlet());
    CHECK(norm(Field::constant(a, 2.0)) == doctest::Approx(2.0 * std::sqrt(kPi)));
  }

  TEST_CASE("discrete Laplacian is exact on quadratics in the interior") {
    // Second differences are exact for quadratics on uniform rect grids.
    const MeshPtr rect = make_rect_mesh(1.0, 1.0, 9, 9);
    const Field q = Field::sample(rect, [](std::span<const double> p) { return p[0] * (1 - p[0]) * p[1] * (1 - p[1]); });
    const Field lap = laplacian(q);
    CHECK(max_interior_error(lap, [](std::span<const double> p) {
            return -2.0 * p[1] * (1 - p[1]) - 2.0 * p[0] * (1 - p[0]);
          }) < 1e-12);
    for (std::size_t i = 0; i < rect->size(); ++i)
      if (rect->boundary[i]) CHECK(lap.values[static_cast<Eigen::Index>(i)] == 0.0);
  }

  TEST_CASE("laplacian is self-adjoint in the mesh inner product") {
    const MeshPtr m = make_polar_mesh(17, 16);
    const Field u = Field::sample(m, [](std::span<const double> p) { return (1 - p[0] * p[0] - p[1] * p[1]) * std::exp(p[0]); });
    const Field v = Field::sample(m, [](std::span<const double> p) { return (1 - p[0] * p[0] - p[1] * p[1]) * p[1] * p[1]; });
    CHECK(inner(laplacian(u), v) == doctest::Approx(inner(u, laplacian(v))).epsilon(1e-12));
  }
}

TEST_SUITE("linsolve") {
  TEST_CASE("manufactured solutions converge at second order") {
    auto polar_error = [](int n) {
      const MeshPtr m = make_polar_mesh(n + 1, n);
      const Field w = solve_linear(Field::zeros(m), Field::sample(m, [](std::span<const double> p) { return -12 * p[0] * p[1]; }));
      return max_interior_error(w, [](std::span<const double> p) { return p[0] * p[1] * (1 - p[0] * p[0] - p[1] * p[1]); });
    };
    const double e1 = polar_error(32), e2 = polar_error(64);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
    CHECK(e2 < 2e-4);
  }

  TEST_CASE("helmholtz-type coefficient") {
    // Lap w + 2 w = b with w = sin(pi x) sin(pi y) gives b = (2 - 2 pi^2) w.
    const MeshPtr m = make_rect_mesh(1.0, 1.0, 65, 65);
    const auto exact = [](std::span<const double> p) { return std::sin(kPi * p[0]) * std::sin(kPi * p[1]); };
    const Field b = Field::sample(m, [&](std::span<const double> p) { return (2 - 2 * kPi * kPi) * exact(p); });
    const Field w = solve_linear(Field::constant(m, 2.0), b);
    CHECK(max_interior_error(w, exact) < 1e-3);
    CHECK(w.is_dirichlet());
  }

  TEST_CASE("resonant coefficient is rejected as ill-conditioned") {
    const MeshPtr m = make_radial_mesh(2, 129);
    const DiscreteEigenpair d = discrete_eigenpair(m);
    const Field a = Field::constant(m, d.lambda1);
    CHECK(condition_estimate(a) > 1e13);
    CHECK_THROWS_AS(solve_linear(a, Field::constant(m, 1.0)), SolveError);
    CHECK(condition_estimate(Field::zeros(m)) < 1e6);
  }

  TEST_CASE("discrete eigenpairs approach the continuous ones") {
    const double nu1 = 2.404825557695773;
    CHECK(discrete_eigenpair(make_radial_mesh(2, 1025)).lambda1 == doctest::Approx(nu1 * nu1).epsilon(1e-6));
    CHECK(discrete_eigenpair(make_radial_mesh(3, 257)).lambda1 == doctest::Approx(kPi * kPi).epsilon(1e-4));
    CHECK(discrete_eigenpair(make_rect_mesh(1.0, 2.0, 33, 65)).lambda1 == doctest::Approx(1.25 * kPi * kPi).epsilon(1e-3));
    const DiscreteEigenpair disk = discrete_eigenpair(make_polar_mesh(65, 64));
    CHECK(disk.lambda1 == doctest::Approx(nu1 * nu1).epsilon(1e-3));
    CHECK(norm(disk.phi1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(disk.phi1.is_dirichlet());
    // Eigen-equation residual.
    const Field residual(disk.phi1.mesh, laplacian(disk.phi1).values + disk.lambda1 * disk.phi1.values);
    CHECK(norm(residual) < 1e-8);
  }

  TEST_CASE("bordered solve satisfies both equations") {
    const MeshPtr m = make_polar_mesh(33, 32);
    const DiscreteEigenpair d = discrete_eigenpair(m);
    BorderedSolver solver(m, d.phi1);
    const Field a = Field::constant(m, d.lambda1);  // singular without the border
    solver.refactorize(a);
    const Field rhs = Field::sample(m, [](std::span<const double> p) { return p[0] * p[1] + 0.3 * (1 - p[0] * p[0] - p[1] * p[1]); });
    const auto sol = solver.solve(rhs, 0.7);
    CHECK(inner(sol.w, d.phi1) == doctest::Approx(0.7).epsilon(1e-10));
    const Field phi_s(m, sol.s * d.phi1.values);
    const Field lhs(m, laplacian(sol.w).values + a.values.cwiseProduct(sol.w.values) - phi_s.values);
    double worst = 0.0;
    for (int node : m->interior) worst = std::max(worst, std::abs(lhs.values[node] - rhs.values[node]));
    CHECK(worst < 1e-8);
    // Solvability: s is the projection of -rhs on phi1.
    CHECK(sol.s == doctest::Approx(-inner(rhs, d.phi1)).epsilon(1e-9));
  }

  TEST_CASE("bordered solver rejects foreign meshes") {
    const MeshPtr m = make_radial_mesh(2, 33), other = make_radial_mesh(2, 33);
    const DiscreteEigenpair d = discrete_eigenpair(m);
    BorderedSolver solver(m, d.phi1);
    CHECK_THROWS_AS(solver.refactorize(Field::zeros(other)), MeshError);
    CHECK_THROWS_AS(BorderedSolver(m, Field::zeros(m)), SolveError);
  }
}
