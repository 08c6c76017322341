#include "rescurve/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rescurve/oscint.hpp"

namespace rescurve {

namespace {

constexpr double kPi = std::numbers::pi;

// Below this argument the ascending series is used for every order.
constexpr double kSeriesLimit = 8.0;

void check_argument(double x) {
  if (!std::isfinite(x) || x < 0.0)
    throw DomainError("bessel_j: argument must be finite and >= 0, got " + std::to_string(x));
}

// x^{-nu} J_nu(x) by its ascending series, nu >= 0.
double scaled_series(double nu, double x) {
  const double q = 0.25 * x * x;
  double term = 1.0 / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
  double sum = term;
  for (int m = 1; m < 200; ++m) {
    term *= -q / (m * (m + nu));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// J_m(x) for integer m >= 0 by Miller's downward recurrence, normalized with
// J_0 + 2 sum_k J_{2k} = 1.
double integer_order_miller(int m, double x) {
  const int top = std::max(m, static_cast<int>(x)) + 40 + static_cast<int>(3.0 * std::cbrt(x));
  const int start = top + (top % 2);
  double above = 0.0;  // J_{k+1}
  double cur = 1e-30;  // J_k, k = start
  double norm = 2.0 * cur;
  double result = (start == m) ? cur : 0.0;
  for (int k = start; k >= 1; --k) {
    const double below = (2.0 * k / x) * cur - above;
    above = cur;
    cur = below;  // J_{k-1}
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      above *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
    const int idx = k - 1;
    if (idx == m) result = cur;
    if (idx > 0 && idx % 2 == 0) norm += 2.0 * cur;
  }
  norm += cur;
  return result / norm;
}

// Spherical Bessel j_k(x) for x > k by upward recurrence.
double spherical_j(int k, double x) {
  const double s = std::sin(x);
  const double c = std::cos(x);
  double jm = s / x;
  if (k == 0) return jm;
  double j = s / (x * x) - c / x;
  for (int l = 1; l < k; ++l) {
    const double next = (2.0 * l + 1.0) / x * j - jm;
    jm = j;
    j = next;
  }
  return j;
}

// Spherical Bessel y_k(x), stable upward for all x > 0.
double spherical_y(int k, double x) {
  const double s = std::sin(x);
  const double c = std::cos(x);
  double ym = -c / x;
  if (k == 0) return ym;
  double y = -c / (x * x) - s / x;
  for (int l = 1; l < k; ++l) {
    const double next = (2.0 * l + 1.0) / x * y - ym;
    ym = y;
    y = next;
  }
  return y;
}

double nonnegative_order(BesselOrder order, double x) {
  const double nu = order.value();
  if (x == 0.0) return order.twice() == 0 ? 1.0 : 0.0;
  if (x <= kSeriesLimit) return std::pow(x, nu) * scaled_series(nu, x);
  if (order.is_integer()) return integer_order_miller(order.twice() / 2, x);
  const int k = (order.twice() - 1) / 2;
  return std::sqrt(2.0 * x / kPi) * spherical_j(k, x);
}

}  // namespace

BesselOrder BesselOrder::from_double(double order) {
  const double twice = 2.0 * order;
  if (!std::isfinite(order) || std::abs(twice - std::round(twice)) > 1e-12)
    throw DomainError("bessel order must be a multiple of 1/2, got " + std::to_string(order));
  return BesselOrder(static_cast<int>(std::lround(twice)));
}

double bessel_j(double order, double x) { return bessel_j(BesselOrder::from_double(order), x); }

double bessel_j(BesselOrder order, double x) {
  check_argument(x);
  if (std::abs(order.value()) > kMaxBesselOrder)
    throw DomainError("bessel order " + std::to_string(order.value()) + " exceeds supported maximum " +
                      std::to_string(kMaxBesselOrder));
  if (order.twice() >= 0) return nonnegative_order(order, x);

  if (order.is_integer()) {
    const int m = -order.twice() / 2;
    const double v = nonnegative_order(BesselOrder::from_twice(2 * m), x);
    return (m % 2 == 0) ? v : -v;
  }
  if (x == 0.0) throw DomainError("bessel_j: negative half-integer order is singular at x = 0");
  const int k = (-order.twice() - 1) / 2;
  const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
  return sign * std::sqrt(2.0 * x / kPi) * spherical_y(k, x);
}

double bessel_j_scaled(BesselOrder order, double x) {
  check_argument(x);
  if (order.twice() < 0) throw DomainError("bessel_j_scaled needs a nonnegative order");
  if (order.value() > kMaxBesselOrder)
    throw DomainError("bessel order " + std::to_string(order.value()) + " exceeds supported maximum");
  const double nu = order.value();
  if (x <= kSeriesLimit) return scaled_series(nu, x);
  return nonnegative_order(order, x) / std::pow(x, nu);
}

double bessel_first_root(double order) {
  const BesselOrder ord = BesselOrder::from_double(order);
  if (ord.twice() < 0) throw DomainError("bessel_first_root needs a nonnegative order");
  const double nu = ord.value();

  constexpr double kStep = 0.1;
  double lo = std::max(nu, kStep);
  double flo = bessel_j(ord, lo);
  double hi = lo + kStep;
  double fhi = bessel_j(ord, hi);
  while (flo * fhi > 0.0) {
    lo = hi;
    flo = fhi;
    hi += kStep;
    fhi = bessel_j(ord, hi);
    if (hi > nu + 50.0) throw DomainError("bessel_first_root: no sign change found");
  }

  // Newton on J with J' = (nu/x) J - J_{nu+1}, falling back to bisection
  // whenever the step leaves the bracket.
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double fx = bessel_j(ord, x);
    if (fx == 0.0) return x;
    if ((fx > 0.0) == (flo > 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double dfx = (nu / x) * fx - bessel_j(ord.plus(1), x);
    double next = x - fx / dfx;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step < 1e-15 * x || hi - lo < 1e-14) break;
  }
  return x;
}

double omega_n(int n) {
  if (n < 1) throw DomainError("omega_n needs n >= 1");
  const double half = 0.5 * n;
  return n * std::pow(kPi, half) / std::tgamma(half + 1.0);
}

Eigenpair ball_eigenpair(int n, int max_dimension) {
  if (n < 2) throw DomainError("ball dimension must be >= 2");
  if (n > max_dimension)
    throw DomainError("ball dimension " + std::to_string(n) + " exceeds the configured cap " +
                      std::to_string(max_dimension));

  const BesselOrder order = BesselOrder::from_twice(n - 2);
  const double nu = order.value();
  const double root = bessel_first_root(nu);

  QuadratureOptions opts;
  opts.abs_tol = 1e-15;
  opts.rel_tol = 1e-13;
  const double breaks[] = {0.0, 0.5, 1.0};
  const auto norm = integrate_partition(
      [&](double r) {
        const double j = bessel_j(order, root * r);
        return j * j * r;
      },
      breaks, opts);
  const double c0 = 1.0 / std::sqrt(omega_n(n) * norm.value);

  Eigenpair pair;
  pair.domain = DomainSpec::ball(n);
  pair.lambda1 = root * root;
  pair.nu1 = root;
  pair.c0 = c0;
  if (n == 2) {
    const double alpha11 = bessel_first_root(1.0);
    pair.lambda2 = alpha11 * alpha11;
  }

  const double value_scale = c0 * std::pow(root, nu);
  const double slope_scale = c0 * std::pow(root, nu + 1.0);
  const BesselOrder next = order.plus(1);
  pair.radial = [=](double r) { return value_scale * bessel_j_scaled(order, root * std::abs(r)); };
  pair.radial_derivative = [=](double r) {
    const double x = root * r;
    return -slope_scale * x * bessel_j_scaled(next, std::abs(x));
  };
  pair.radial_second_derivative_at_origin = -pair.lambda1 * pair.radial(0.0) / n;

  auto radius = [](std::span<const double> p) {
    double s = 0.0;
    for (double v : p) s += v * v;
    return std::sqrt(s);
  };
  auto radial = pair.radial;
  auto radial_derivative = pair.radial_derivative;
  pair.phi1 = [=](std::span<const double> p) { return radial(radius(p)); };
  pair.dphi1 = [=](std::span<const double> p, std::size_t axis) {
    const double r = radius(p);
    if (r == 0.0 || axis >= p.size()) return 0.0;
    return radial_derivative(r) * p[axis] / r;
  };
  return pair;
}

Eigenpair rect_eigenpair(std::vector<double> dims) {
  DomainSpec domain = DomainSpec::rect(dims);
  double volume = 1.0;
  double lambda = 0.0;
  for (double a : dims) {
    volume *= a;
    lambda += kPi * kPi / (a * a);
  }
  const double amplitude = std::pow(2.0, 0.5 * static_cast<double>(dims.size())) / std::sqrt(volume);

  Eigenpair pair;
  pair.domain = domain;
  pair.lambda1 = lambda;
  pair.phi1 = [=](std::span<const double> p) {
    double v = amplitude;
    for (std::size_t k = 0; k < dims.size(); ++k) v *= std::sin(kPi * p[k] / dims[k]);
    return v;
  };
  pair.dphi1 = [=](std::span<const double> p, std::size_t axis) {
    if (axis >= dims.size()) return 0.0;
    double v = amplitude;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const double arg = kPi * p[k] / dims[k];
      v *= (k == axis) ? (kPi / dims[k]) * std::cos(arg) : std::sin(arg);
    }
    return v;
  };
  return pair;
}

Eigenpair eigenpair_for(const DomainSpec& domain) {
  switch (domain.kind) {
    case DomainKind::Disk2D: {
      Eigenpair pair = ball_eigenpair(2);
      pair.domain = domain;
      return pair;
    }
    case DomainKind::BallRadial: return ball_eigenpair(domain.dimension);
    case DomainKind::Rect2D:
    case DomainKind::RectND: return rect_eigenpair(domain.lengths);
  }
  throw DomainError("unknown domain kind");
}

}  // namespace rescurve
