#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rescurve/asym.hpp"

using namespace rescurve;

namespace {

constexpr double kPi = std::numbers::pi;

// Direct Boost quadrature of omega_n int h(xi phi) phi r^{n-1} dr on many panels.
double projection_oracle(double xi, const Nonlinearity& h, const Eigenpair& pair, int n, int panels) {
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = static_cast<double>(k) / panels, hi = static_cast<double>(k + 1) / panels;
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [&](double r) {
          const double phi = pair.radial(r);
          return h.h(xi * phi) * phi * std::pow(r, n - 1);
        },
        lo, hi, 8, 1e-13);
  }
  return omega_n(n) * total;
}

}  // namespace

TEST_SUITE("asym") {
  TEST_CASE("formula names round-trip") {
    for (FormulaId id : {FormulaId::DiskPowerSin, FormulaId::Rect2D, FormulaId::RectND, FormulaId::RadialN2,
                         FormulaId::RadialN3, FormulaId::Projection, FormulaId::Zero})
      CHECK(parse_formula(formula_name(id)) == id);
    CHECK_THROWS_AS(parse_formula("nope"), std::invalid_argument);
  }

  TEST_CASE("disk power-sin closed form") {
    const Eigenpair disk = ball_eigenpair(2);
    const double c0 = *disk.c0, nu1 = *disk.nu1;
    for (double p : {0.5, 1.0})
      for (double xi : {3.0, 17.5, 40.0})
        CHECK(mu_disk_power_sin(xi, p) ==
              doctest::Approx(-4 * kPi * std::pow(xi, p - 1) * std::pow(c0, p) * std::cos(c0 * xi) / (nu1 * nu1))
                  .epsilon(1e-13));
    CHECK(4 * kPi * c0 / (nu1 * nu1) == doctest::Approx(2.3614).epsilon(1e-4));
  }

  TEST_CASE("rectangle closed forms") {
    CHECK(mu_rect_2d(1.0, 1.0, 2.0) ==
          doctest::Approx(4 * std::sqrt(2.0) / kPi * std::sin(2.0 / std::sqrt(2.0) - kPi / 2)).epsilon(1e-14));
    double peak = 0.0;
    for (double xi = 0.01; xi < 50; xi += 0.01) peak = std::max(peak, std::abs(mu_rect_2d(xi, 1.0, 2.0)));
    CHECK(peak <= 4 * std::sqrt(2.0) / kPi * (1 + 1e-14));  // 1.80063
    CHECK(peak == doctest::Approx(4 * std::sqrt(2.0) / kPi).epsilon(1e-4));
    // The n-dimensional form with n = 2 reduces to the 2D one.
    const double dims[] = {1.0, 2.0};
    for (double xi : {0.7, 5.0, 21.0}) CHECK(mu_rect_nd(xi, dims) == doctest::Approx(mu_rect_2d(xi, 1.0, 2.0)).epsilon(1e-13));
    CHECK(mu_rect(3.0, dims) == doctest::Approx(mu_rect_2d(3.0, 1.0, 2.0)));
    const double cube[] = {1.0, 1.0, 1.0};
    CHECK(std::abs(mu_rect_nd(100.0, cube)) < std::abs(mu_rect_nd(1.0, cube)) + 1.0);
    CHECK_THROWS_AS(make_curve(FormulaId::Rect2D, FormulaParams{1.0, {1.0, 2.0, 3.0}, "sqrtusinlog"}), std::invalid_argument);
  }

  TEST_CASE("radial closed forms") {
    const double k = radial_n3_coefficient();
    CHECK(k == doctest::Approx(12 * std::sqrt(3 * std::sqrt(2.0)) / (std::sqrt(2.0) * std::pow(kPi, 1.75))).epsilon(1e-14));
    CHECK(k == doctest::Approx(2.3576).epsilon(1e-4));
    const double w = std::sqrt(kPi / 2);
    for (int j = 0; j < 5; ++j) {
      const double xi = (0.75 * kPi + j * kPi) / w;
      CHECK(std::abs(mu_radial_n3(xi)) < 1e-14);
    }
    CHECK(mu_radial_n2(10.0) == doctest::Approx(mu_disk_power_sin(10.0, 0.0)).epsilon(1e-13));
  }

  TEST_CASE("projection matches direct quadrature") {
    const Eigenpair disk = ball_eigenpair(2);
    const Eigenpair ball3 = ball_eigenpair(3);
    for (const char* id : {"usinu", "sinu", "sqrtusinlog"}) {
      const Nonlinearity h = nonlinearity(id);
      for (double xi : {5.0, 40.0, 300.0}) {
        CHECK(mu_projection(xi, h, disk) == doctest::Approx(projection_oracle(xi, h, disk, 2, 200)).epsilon(1e-8).scale(1.0));
        CHECK(mu_projection(xi, h, ball3) == doctest::Approx(projection_oracle(xi, h, ball3, 3, 200)).epsilon(1e-8).scale(1.0));
      }
    }
  }

  TEST_CASE("projection approaches the closed forms") {
    const Eigenpair disk = ball_eigenpair(2);
    const Nonlinearity usinu = nonlinearity("usinu");
    for (double xi : {60.0, 75.0})
      CHECK(std::abs(mu_projection(xi, usinu, disk) - mu_disk_power_sin(xi, 1.0)) < 0.05);
    const Eigenpair ball3 = ball_eigenpair(3);
    const Nonlinearity sinu = nonlinearity("sinu");
    for (double xi : {80.0, 120.0})
      CHECK(std::abs(mu_projection(xi, sinu, ball3) - mu_radial_n3(xi)) * std::pow(xi, 1.5) < 0.3);
  }

  TEST_CASE("auxiliary functions") {
    const Eigenpair disk = ball_eigenpair(2);
    const AuxFunctions aux = aux_functions(disk, 0.5, 2);
    const double nu1 = *disk.nu1;
    CHECK(aux.f0 == doctest::Approx(-2.0 / (nu1 * nu1)).epsilon(1e-14));
    CHECK(aux.f(1e-7) == doctest::Approx(aux.f0).epsilon(1e-8));
    for (double r : {0.2, 0.5, 0.8}) {
      const double f = r * disk.radial(r) / disk.radial_derivative(r);
      CHECK(aux.f(r) == doctest::Approx(f).epsilon(1e-12));
      const double h = 1e-6;
      CHECK(aux.df(r) == doctest::Approx((aux.f(r + h) - aux.f(r - h)) / (2 * h)).epsilon(1e-6));
      CHECK(aux.df(r) > 0.0);
      CHECK(aux.g(r) == doctest::Approx(std::sqrt(disk.radial(r)) * f).epsilon(1e-12));
    }
    // H' = h for h = sqrt(u) sin ln(u^{3/2} + 1).
    const Nonlinearity h = nonlinearity("sqrtusinlog");
    for (double u : {0.5, 3.0, 250.0}) {
      const double d = 1e-5 * u;
      CHECK((aux.H(u + d) - aux.H(u - d)) / (2 * d) == doctest::Approx(h.h(u)).epsilon(1e-6));
    }
    const AuxFunctions aux3 = aux_functions(ball_eigenpair(3), 1.0, 3);
    CHECK(aux3.f0 == doctest::Approx(-3.0 / (kPi * kPi)));
    CHECK(aux3.f1_0 == 0.0);
  }

  TEST_CASE("curve helpers") {
    const auto g = log_grid(1.0, 1000.0, 4);
    REQUIRE(g.size() == 4);
    CHECK(g[1] == doctest::Approx(10.0));
    CHECK(g[3] == doctest::Approx(1000.0));
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 5), std::invalid_argument);

    std::vector<double> xs, ys;
    for (int i = 0; i <= 1000; ++i) {
      xs.push_back(1.0 + 0.1 * i);
      ys.push_back(std::pow(xs.back(), 0.5) * std::sin(xs.back()));
    }
    const EnvelopeFit fit = fit_envelope(xs, ys);
    CHECK(fit.slope == doctest::Approx(0.5).epsilon(0.05));
    CHECK(fit.maxima >= 30);
    const auto zs = zero_crossings(xs, ys);
    REQUIRE(!zs.empty());
    CHECK(zs.front() == doctest::Approx(kPi).epsilon(1e-3));
    CHECK(count_sign_changes(ys) == static_cast<int>(zs.size()));
    const std::vector<double> with_zero{1.0, 0.0, -1.0, 0.0, 0.0, 2.0};
    CHECK(count_sign_changes(with_zero) == 2);
    const auto peaks = local_maxima(xs, ys);
    REQUIRE(!peaks.empty());
    // First maximum of sqrt(x) sin x solves tan x = -2x.
    CHECK(peaks.front().first == doctest::Approx(1.8366).epsilon(0.03));
  }

  TEST_CASE("asymptotic_for picks the matching formula") {
    CHECK(asymptotic_for(builtin("disk-usinu-xy"))->id == FormulaId::DiskPowerSin);
    CHECK(asymptotic_for(builtin("disk-sqrtusinu-x2y"))->params.p == 0.5);
    CHECK(asymptotic_for(builtin("rect-usinu"))->id == FormulaId::Rect2D);
    CHECK(asymptotic_for(builtin("ball3-sinu"))->id == FormulaId::RadialN3);
    CHECK(asymptotic_for(builtin("ball2-sinu"))->id == FormulaId::RadialN2);
    CHECK(asymptotic_for(builtin("disk-sqrtusinlog-xy"))->id == FormulaId::Projection);
    CHECK(asymptotic_for(builtin("disk-linear-xy"))->id == FormulaId::Zero);
    CHECK((*asymptotic_for(builtin("disk-linear-xy")))(5.0) == 0.0);
  }
}
