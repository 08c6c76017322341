#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace rescurve {

using RealFn = std::function<double(double)>;

/// Thrown when adaptive refinement runs out of budget before reaching the
/// requested tolerance. Carries the best estimate so far.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}
  double estimate() const { return estimate_; }
  double error() const { return error_; }

 private:
  double estimate_;
  double error_;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  std::size_t max_panels = 200000;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
/// Nodes are interior, so integrable endpoint singularities are tolerated.
/// Throws QuadratureError when the panel budget is exhausted.
double integrate(const RealFn& f, double a, double b, double tol);

/// Same rule started from an explicit partition; `breaks` must be increasing.
QuadratureResult integrate_partition(const RealFn& f, std::span<const double> breaks,
                                     const QuadratureOptions& options);

/// Integral of f(x) exp(i mu g(x)) over [a, b]; see integrate_oscillatory.
struct PhaseProblem {
  RealFn amplitude;
  RealFn phase;
  RealFn dphase;
  RealFn d2phase;
  double a = 0.0;
  double b = 1.0;
  double mu = 1.0;
};

/// Quadratic phase -alpha (x - x0)^2 with amplitude f on [a, b].
struct QuadraticPhaseProblem {
  RealFn amplitude;
  double alpha = 1.0;
  double x0 = 0.0;
  double a = -1.0;
  double b = 1.0;
  double mu = 1.0;

  PhaseProblem as_phase_problem() const;
};

class StationaryPhaseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Direct evaluation of the oscillatory integral. The interval is split into
/// panels narrower than (b - a) / (mu max|g'|) so each panel sees less than
/// one radian of phase, then refined adaptively.
std::complex<double> integrate_oscillatory(const PhaseProblem& p, double tol);

/// Leading term exp(-i pi/4) sqrt(pi / (alpha mu)) f(x0).
std::complex<double> stationary_phase_quadratic(const QuadraticPhaseProblem& p);

/// Leading term for a unique interior nondegenerate critical point x0:
/// exp(i [mu g(x0) +- pi/4]) sqrt(2 pi / (mu |g''(x0)|)) f(x0),
/// plus sign when g''(x0) > 0.
std::complex<double> stationary_phase_interior(const PhaseProblem& p);

/// Critical point located by the interior variant.
double locate_critical_point(const PhaseProblem& p);

/// Leading term on [0, 1] when g'(0) = 0, g''(0) < 0 and g' < 0 on (0, 1]:
/// exp(i (mu g(0) - pi/4)) sqrt(pi / (2 mu |g''(0)|)) f(0).
std::complex<double> stationary_phase_endpoint(const PhaseProblem& p);

}  // namespace rescurve
