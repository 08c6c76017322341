#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rescurve/oscint.hpp"
#include "rescurve/specfun.hpp"

using namespace rescurve;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("specfun") {
  TEST_CASE("bessel_j matches the Boost oracle for integer and half-integer orders") {
    for (double order : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.5}) {
      for (double x : {1e-6, 0.01, 0.3, 1.0, 2.404825557695773, 5.0, 12.5, 40.0, 150.0}) {
        const double expected = boost::math::cyl_bessel_j(order, x);
        CHECK(bessel_j(order, x) == doctest::Approx(expected).epsilon(1e-11).scale(1.0));
      }
    }
  }

  TEST_CASE("half-integer order one half is sqrt(2/(pi x)) sin x") {
    for (double x : {0.2, 1.0, 3.0, 17.0})
      CHECK(bessel_j(0.5, x) == doctest::Approx(std::sqrt(2.0 / (kPi * x)) * std::sin(x)).epsilon(1e-13));
  }

  TEST_CASE("scaled Bessel function is finite at the origin") {
    // x^{-nu} J_nu(x) -> 1 / (2^nu Gamma(nu + 1))
    for (int twice : {0, 1, 2, 3, 4}) {
      const BesselOrder order = BesselOrder::from_twice(twice);
      const double nu = order.value();
      const double limit = 1.0 / (std::pow(2.0, nu) * boost::math::tgamma(nu + 1.0));
      CHECK(bessel_j_scaled(order, 0.0) == doctest::Approx(limit).epsilon(1e-14));
      CHECK(bessel_j_scaled(order, 1e-4) == doctest::Approx(limit).epsilon(1e-7));
      CHECK(bessel_j_scaled(order, 2.0) ==
            doctest::Approx(boost::math::cyl_bessel_j(nu, 2.0) / std::pow(2.0, nu)).epsilon(1e-12));
    }
  }

  TEST_CASE("first positive roots agree with Boost") {
    for (double order : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
      const double expected = boost::math::cyl_bessel_j_zero(order, 1);
      CHECK(bessel_first_root(order) == doctest::Approx(expected).epsilon(1e-13));
    }
    CHECK(bessel_first_root(0.5) == doctest::Approx(kPi).epsilon(1e-14));
  }

  TEST_CASE("invalid orders and arguments are rejected") {
    CHECK_THROWS_AS(bessel_j(0.3, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(0.0, -1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(0.0, std::nan("")), DomainError);
    CHECK_THROWS_AS(bessel_j(kMaxBesselOrder + 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_first_root(-1.0), DomainError);
    CHECK_THROWS_AS(omega_n(0), DomainError);
  }

  TEST_CASE("unit sphere areas") {
    for (int n = 1; n <= 8; ++n) {
      const double expected = 2.0 * std::pow(kPi, 0.5 * n) / boost::math::tgamma(0.5 * n);
      CHECK(omega_n(n) == doctest::Approx(expected).epsilon(1e-14));
    }
    CHECK(omega_n(2) == doctest::Approx(2.0 * kPi));
    CHECK(omega_n(3) == doctest::Approx(4.0 * kPi));
  }

  TEST_CASE("disk eigenpair constants") {
    const Eigenpair disk = ball_eigenpair(2);
    const double nu1 = boost::math::cyl_bessel_j_zero(0.0, 1);
    const double alpha11 = boost::math::cyl_bessel_j_zero(1.0, 1);
    REQUIRE(disk.nu1);
    REQUIRE(disk.c0);
    REQUIRE(disk.lambda2);
    CHECK(*disk.nu1 == doctest::Approx(nu1).epsilon(1e-14));
    CHECK(disk.lambda1 == doctest::Approx(nu1 * nu1).epsilon(1e-14));
    CHECK(*disk.lambda2 == doctest::Approx(alpha11 * alpha11).epsilon(1e-13));
    CHECK(*disk.lambda2 == doctest::Approx(14.68197064).epsilon(1e-9));
    // int_0^1 J0(nu1 r)^2 r dr = J1(nu1)^2 / 2
    const double c0 = 1.0 / (std::sqrt(kPi) * std::abs(boost::math::cyl_bessel_j(1.0, nu1)));
    CHECK(*disk.c0 == doctest::Approx(c0).epsilon(1e-13));
    CHECK(disk.radial(0.0) == doctest::Approx(c0));
    CHECK(std::abs(disk.radial(1.0)) < 1e-14);
    CHECK(disk.radial_second_derivative_at_origin == doctest::Approx(-0.5 * nu1 * nu1 * c0).epsilon(1e-12));
  }

  TEST_CASE("ball eigenfunctions are normalized") {
    for (int n : {2, 3, 4, 5}) {
      const Eigenpair pair = ball_eigenpair(n);
      const double mass =
          omega_n(n) * integrate([&](double r) { return std::pow(pair.radial(r), 2) * std::pow(r, n - 1); }, 0.0, 1.0, 1e-13);
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(pair.lambda1 == doctest::Approx(std::pow(bessel_first_root(0.5 * (n - 2)), 2)).epsilon(1e-13));
      for (double r : {0.1, 0.5, 0.9})
        CHECK(pair.radial(r) > 0.0);
    }
  }

  TEST_CASE("three-dimensional ball uses nu1 = pi and phi1(0) = sqrt(pi/2)") {
    const Eigenpair ball = ball_eigenpair(3);
    CHECK(*ball.nu1 == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(ball.lambda1 == doctest::Approx(kPi * kPi).epsilon(1e-14));
    CHECK(ball.radial(0.0) == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-13));
  }

  TEST_CASE("radial derivative matches finite differences") {
    const Eigenpair ball = ball_eigenpair(2);
    for (double r : {0.05, 0.3, 0.7, 0.95}) {
      const double h = 1e-6;
      const double fd = (ball.radial(r + h) - ball.radial(r - h)) / (2 * h);
      CHECK(ball.radial_derivative(r) == doctest::Approx(fd).epsilon(1e-7));
    }
    CHECK(ball.radial_derivative(0.0) == doctest::Approx(0.0).scale(1.0));
  }

  TEST_CASE("ball dimension cap") {
    CHECK_THROWS_AS(ball_eigenpair(6), DomainError);
    CHECK_NOTHROW(ball_eigenpair(6, 6));
    CHECK_THROWS_AS(ball_eigenpair(1), DomainError);
  }

  TEST_CASE("rectangle eigenpair") {
    const Eigenpair rect = rect_eigenpair({1.0, 2.0});
    CHECK(rect.lambda1 == doctest::Approx(5.0 * kPi * kPi / 4.0).epsilon(1e-14));
    // Normalized: the product of sines has L2 norm sqrt(ab)/2.
    const double centre[] = {0.5, 1.0};
    CHECK(rect.phi1(centre) == doctest::Approx(2.0 / std::sqrt(2.0)).epsilon(1e-14));
    const double p[] = {0.3, 0.7};
    const double h = 1e-6;
    for (std::size_t axis : {0u, 1u}) {
      double plus[] = {p[0], p[1]}, minus[] = {p[0], p[1]};
      plus[axis] += h;
      minus[axis] -= h;
      CHECK(rect.dphi1(p, axis) == doctest::Approx((rect.phi1(plus) - rect.phi1(minus)) / (2 * h)).epsilon(1e-7));
    }
    const Eigenpair cube = rect_eigenpair({1.0, 1.0, 1.0});
    CHECK(cube.lambda1 == doctest::Approx(3.0 * kPi * kPi));
  }

  TEST_CASE("eigenpair_for dispatches on the domain") {
    CHECK(eigenpair_for(DomainSpec::disk()).lambda1 == doctest::Approx(ball_eigenpair(2).lambda1));
    CHECK(eigenpair_for(DomainSpec::ball(3)).lambda1 == doctest::Approx(kPi * kPi));
    CHECK(eigenpair_for(DomainSpec::rect(1.0, 2.0)).lambda1 == doctest::Approx(5.0 * kPi * kPi / 4.0));
    CHECK(eigenpair_for(DomainSpec::disk()).domain == DomainSpec::disk());
  }
}
