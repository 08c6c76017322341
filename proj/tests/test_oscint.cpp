#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "rescurve/oscint.hpp"

using namespace rescurve;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

double gauss(double x) { return std::exp(-x * x); }

// Oscillatory reference by Boost Gauss-Kronrod on many uniform panels.
cd boost_oscillatory(const PhaseProblem& p, int panels) {
  cd total = 0.0;
  const double h = (p.b - p.a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = p.a + k * h, hi = lo + h;
    const double re = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double x) { return p.amplitude(x) * std::cos(p.mu * p.phase(x)); }, lo, hi, 10, 1e-14);
    const double im = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double x) { return p.amplitude(x) * std::sin(p.mu * p.phase(x)); }, lo, hi, 10, 1e-14);
    total += cd(re, im);
  }
  return total;
}

PhaseProblem interior(double mu) {
  return {gauss, [](double x) { return x * x; }, [](double x) { return 2 * x; }, [](double) { return 2.0; }, -1.0, 1.0,
          mu};
}

PhaseProblem endpoint(double mu) {
  return {gauss, [](double x) { return 1 - x * x; }, [](double x) { return -2 * x; }, [](double) { return -2.0; }, 0.0,
          1.0, mu};
}

}  // namespace

TEST_SUITE("oscint") {
  TEST_CASE("smooth integrals to requested tolerance") {
    CHECK(integrate(gauss, 0.0, 2.0, 1e-13) == doctest::Approx(std::sqrt(kPi) / 2 * boost::math::erf(2.0)).epsilon(1e-13));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, kPi, 1e-13) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(integrate([](double x) { return x * x * x; }, -1.0, 2.0, 1e-13) == doctest::Approx(3.75).epsilon(1e-14));
  }

  TEST_CASE("integrable endpoint singularities") {
    CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(integrate([](double x) { return std::log(x); }, 0.0, 1.0, 1e-10) == doctest::Approx(-1.0).epsilon(1e-9));
  }

  TEST_CASE("partition integration reports bookkeeping") {
    const double breaks[] = {0.0, 0.5, 1.0, 3.0};
    QuadratureOptions opts;
    opts.abs_tol = 1e-12;
    const QuadratureResult r = integrate_partition(gauss, breaks, opts);
    CHECK(r.value == doctest::Approx(std::sqrt(kPi) / 2 * boost::math::erf(3.0)).epsilon(1e-12));
    CHECK(r.panels >= 3);
    // Each bisection retires one panel and evaluates two.
    CHECK(r.evaluations == 15 * (2 * r.panels - 3));
    CHECK(r.error <= 1e-12);
  }

  TEST_CASE("invalid partitions and exhausted budgets") {
    const double one[] = {0.0};
    CHECK_THROWS_AS(integrate_partition(gauss, one, {}), std::invalid_argument);
    const double unordered[] = {0.0, 1.0, 0.5};
    CHECK_THROWS_AS(integrate_partition(gauss, unordered, {}), std::invalid_argument);
    CHECK_THROWS_AS(integrate(gauss, 1.0, 0.0, 1e-8), std::invalid_argument);
    QuadratureOptions tight;
    tight.abs_tol = 1e-15;
    tight.max_panels = 4;
    const double breaks[] = {0.0, 1.0};
    CHECK_THROWS_AS(integrate_partition([](double x) { return std::sin(200.0 * x * x); }, breaks, tight), QuadratureError);
  }

  TEST_CASE("oscillatory integral matches a Boost reference") {
    for (double mu : {10.0, 137.0, 800.0}) {
      const PhaseProblem p = interior(mu);
      const cd got = integrate_oscillatory(p, 1e-12);
      const cd ref = boost_oscillatory(p, static_cast<int>(mu) + 8);
      CHECK(std::abs(got - ref) < 1e-11);
    }
    // Linear phase has a closed form.
    const PhaseProblem lin{[](double) { return 1.0; }, [](double x) { return x; }, [](double) { return 1.0; },
                           [](double) { return 0.0; }, 0.0, 1.0, 50.0};
    const cd exact = (std::exp(cd(0, 50.0)) - 1.0) / cd(0, 50.0);
    CHECK(std::abs(integrate_oscillatory(lin, 1e-13) - exact) < 1e-12);
  }

  TEST_CASE("stationary phase leading terms") {
    const double mu = 400.0;
    const cd direct = integrate_oscillatory(interior(mu), 1e-12);
    const cd approx = stationary_phase_interior(interior(mu));
    CHECK(std::abs(approx - direct) < 2.0 / mu);
    CHECK(std::abs(approx - std::exp(cd(0, kPi / 4)) * std::sqrt(kPi / mu)) < 1e-14);

    const cd end_direct = integrate_oscillatory(endpoint(mu), 1e-12);
    const cd end_approx = stationary_phase_endpoint(endpoint(mu));
    CHECK(std::abs(end_approx - end_direct) < 2.0 / mu);

    const QuadraticPhaseProblem q{gauss, 2.0, 0.25, -1.0, 1.0, mu};
    const cd qa = stationary_phase_quadratic(q);
    CHECK(std::abs(qa - std::exp(cd(0, -kPi / 4)) * std::sqrt(kPi / (2.0 * mu)) * gauss(0.25)) < 1e-14);
    CHECK(std::abs(qa - integrate_oscillatory(q.as_phase_problem(), 1e-12)) < 2.0 / mu);
  }

  TEST_CASE("critical point location") {
    PhaseProblem p = interior(10.0);
    CHECK(locate_critical_point(p) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    p.phase = [](double x) { return (x - 0.3) * (x - 0.3); };
    p.dphase = [](double x) { return 2 * (x - 0.3); };
    CHECK(locate_critical_point(p) == doctest::Approx(0.3).epsilon(1e-10));
  }

  TEST_CASE("stationary phase preconditions") {
    PhaseProblem none = interior(10.0);
    none.a = 0.5;
    CHECK_THROWS_AS(stationary_phase_interior(none), StationaryPhaseError);
    PhaseProblem two{gauss, [](double x) { return std::cos(6 * x); }, [](double x) { return -6 * std::sin(6 * x); },
                     [](double x) { return -36 * std::cos(6 * x); }, -1.0, 1.0, 10.0};
    CHECK_THROWS_AS(stationary_phase_interior(two), StationaryPhaseError);
    PhaseProblem at_end = endpoint(10.0);
    CHECK_THROWS_AS(stationary_phase_interior(at_end), StationaryPhaseError);
    PhaseProblem bad_end = interior(10.0);
    bad_end.a = 0.2;
    CHECK_THROWS_AS(stationary_phase_endpoint(bad_end), StationaryPhaseError);
    PhaseProblem bad_mu = interior(-1.0);
    CHECK_THROWS_AS(integrate_oscillatory(bad_mu, 1e-8), StationaryPhaseError);
    const QuadraticPhaseProblem outside{gauss, 1.0, 2.0, -1.0, 1.0, 10.0};
    CHECK_THROWS_AS(stationary_phase_quadratic(outside), StationaryPhaseError);
  }
}
