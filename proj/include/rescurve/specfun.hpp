#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rescurve/domain.hpp"

namespace rescurve {

/// Half-integer Bessel order stored as twice its value, so 1/2 is exact.
class BesselOrder {
 public:
  static BesselOrder from_double(double order);
  static constexpr BesselOrder from_twice(int twice) { return BesselOrder(twice); }

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }

  constexpr BesselOrder plus(int k) const { return BesselOrder(twice_ + 2 * k); }

 private:
  constexpr explicit BesselOrder(int twice) : twice_(twice) {}
  int twice_;
};

/// Largest |order| accepted by bessel_j.
inline constexpr double kMaxBesselOrder = 8.0;

/// Largest ball dimension accepted by ball_eigenpair unless the caller raises
/// the cap explicitly.
inline constexpr int kDefaultMaxBallDimension = 5;

/// Bessel function of the first kind J_order(x), x >= 0.
///
/// Standard normalization throughout, so J_{1/2}(x) = sqrt(2/(pi x)) sin x.
/// A profile written as sin(x)/sqrt(x) differs only by a constant factor,
/// which the eigenfunction normalization c0 absorbs.
double bessel_j(double order, double x);
double bessel_j(BesselOrder order, double x);

/// x^{-order} J_order(x), finite at x = 0 for order >= 0.
double bessel_j_scaled(BesselOrder order, double x);

/// Smallest positive zero of J_order, order >= 0.
double bessel_first_root(double order);

/// Surface area of the unit sphere in R^n, n pi^{n/2} / Gamma(n/2 + 1).
double omega_n(int n);

/// Principal Dirichlet eigenpair of -Laplacian on a supported domain.
///
/// For balls the eigenfunction is c0 r^{-nu} J_nu(nu1 r), nu = (n-2)/2, and
/// the radial profile and its derivative are available separately. For
/// rectangles phi1 is the normalized product of sines.
struct Eigenpair {
  DomainSpec domain;
  double lambda1 = 0.0;
  std::optional<double> nu1;
  std::optional<double> c0;
  std::optional<double> lambda2;

  /// Value at a Cartesian point (n coordinates; for balls only |x| matters).
  std::function<double(std::span<const double>)> phi1;
  /// Partial derivative along `axis` at a Cartesian point.
  std::function<double(std::span<const double>, std::size_t)> dphi1;

  /// Ball domains only: r -> phi1(r), r -> phi1'(r), and phi1''(0).
  std::function<double(double)> radial;
  std::function<double(double)> radial_derivative;
  double radial_second_derivative_at_origin = 0.0;
};

Eigenpair ball_eigenpair(int n, int max_dimension = kDefaultMaxBallDimension);
Eigenpair rect_eigenpair(std::vector<double> dims);
Eigenpair eigenpair_for(const DomainSpec& domain);

}  // namespace rescurve
