#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rescurve/problems.hpp"
#include "rescurve/specfun.hpp"

namespace rescurve {

enum class FormulaId { DiskPowerSin, Rect2D, RectND, RadialN2, RadialN3, Projection, Zero };

/// Stable names: disk-power-sin, rect2d, rectnd, radial-n2, radial-n3,
/// projection, zero.
std::string_view formula_name(FormulaId id);
FormulaId parse_formula(std::string_view name);

struct FormulaParams {
  double p = 1.0;
  std::vector<double> dims{1.0, 2.0};
  std::string nonlinearity = "sqrtusinlog";
};

/// Leading-order prediction of mu1 as a function of xi1 > 0.
struct AsymptoticCurve {
  FormulaId id = FormulaId::Zero;
  FormulaParams params;
  std::function<double(double)> evaluate;

  double operator()(double xi) const { return evaluate(xi); }
};

AsymptoticCurve make_curve(FormulaId id, const FormulaParams& params = {});

/// Closed-form curve matching a catalog problem, if one exists.
std::optional<AsymptoticCurve> asymptotic_for(const ProblemSpec& spec);

/// -4 pi xi^{p-1} c0^p cos(c0 xi) / nu1^2 with the unit-disk constants.
double mu_disk_power_sin(double xi, double p);

/// (4 sqrt(ab) / pi) sin(2 xi / sqrt(ab) - pi/2).
double mu_rect_2d(double xi, double a, double b);
/// 2^{(n/2)(3-n/2)} (prod a)^{n/4} / pi^{n/2} xi^{1-n/2}
///   sin(2^{n/2} xi / sqrt(prod a) - n pi / 4).
double mu_rect_nd(double xi, std::span<const double> dims);
/// Two lengths use mu_rect_2d, otherwise mu_rect_nd.
double mu_rect(double xi, std::span<const double> dims);

/// -(4 pi / (xi nu1^2)) cos(c0 xi), unit disk constants.
double mu_radial_n2(double xi);
/// -K xi^{-3/2} cos(xi sqrt(pi/2) - pi/4), K = radial_n3_coefficient().
double mu_radial_n3(double xi);
/// 12 sqrt(3 sqrt 2) / (sqrt 2 pi^{7/4}).
double radial_n3_coefficient();

/// omega_n int_0^1 h(xi phi1(r)) phi1(r) r^{n-1} dr for a ball eigenpair,
/// integrated panel by panel with breakpoints at quarter periods of the
/// nonlinearity's phase along r.
double mu_projection(double xi, const Nonlinearity& h, const Eigenpair& pair, double tol = 1e-10);

/// Auxiliary functions of a ball eigenpair with removable singularities at
/// r = 0 resolved analytically:
///   f = r phi1 / phi1', g = phi1^p f, f1 = r^{n-2} f = phi1 r^{n-1} / phi1',
/// and H(u) = (sqrt2/3)(u^{3/2}+1) sin(ln(u^{3/2}+1) - pi/4).
struct AuxFunctions {
  ScalarFn H;
  ScalarFn f;
  ScalarFn df;
  ScalarFn g;
  ScalarFn f1;
  ScalarFn df1;
  double f0 = 0.0;
  double g0 = 0.0;
  double f1_0 = 0.0;
  double df1_0 = 0.0;
};
AuxFunctions aux_functions(const Eigenpair& pair, double p, int n);

/// Log-spaced grid of `count` points on [a, b].
std::vector<double> log_grid(double a, double b, std::size_t count);

/// Interior local maxima (x, |y|) of |y| sampled at xs.
std::vector<std::pair<double, double>> local_maxima(std::span<const double> xs, std::span<const double> ys);

struct EnvelopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t maxima = 0;
};
/// Least-squares line through (log x, log |y|) at the local maxima of |y|.
EnvelopeFit fit_envelope(std::span<const double> xs, std::span<const double> ys);

/// Strict sign changes along ys (zeros are skipped).
int count_sign_changes(std::span<const double> ys);
/// Zero crossings by linear interpolation between samples of opposite sign.
std::vector<double> zero_crossings(std::span<const double> xs, std::span<const double> ys);

}  // namespace rescurve
