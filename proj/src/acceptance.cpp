#include "rescurve/acceptance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "rescurve/asym.hpp"
#include "rescurve/continuation.hpp"
#include "rescurve/linsolve.hpp"
#include "rescurve/oscint.hpp"
#include "rescurve/problems.hpp"
#include "rescurve/specfun.hpp"

namespace rescurve {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

struct Check {
  bool passed = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAIL ") + what;
    passed = passed && ok;
  }
};

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }
bool within_rel(double value, double target, double rel) { return std::abs(value - target) <= rel * std::abs(target); }

struct Samples {
  std::vector<double> xi;
  std::vector<double> mu;
  std::vector<int> iters;
};

SolutionCurve trace(const std::string& problem, double xi_start, double xi_end, double dxi,
                    PredictorMode predictor = PredictorMode::None, std::vector<int> resolution = {}) {
  ContinuationConfig cfg;
  cfg.xi_start = xi_start;
  cfg.xi_end = xi_end;
  cfg.dxi = dxi;
  cfg.predictor = predictor;
  cfg.resolution = std::move(resolution);
  return trace_curve(builtin(problem), cfg);
}

Samples samples(const SolutionCurve& curve, double from = -1e300, double to = 1e300) {
  Samples s;
  for (const CurvePoint& p : curve.points) {
    if (p.xi < from - 1e-12 || p.xi > to + 1e-12) continue;
    s.xi.push_back(p.xi);
    s.mu.push_back(p.mu);
    s.iters.push_back(p.newton_iters);
  }
  return s;
}

// Largest relative deviation of consecutive differences of xs[i + stride] - xs[i] from target.
double worst_spacing(const std::vector<double>& xs, std::size_t stride, double target, std::size_t* count) {
  double worst = 0.0;
  *count = 0;
  for (std::size_t i = 0; i + stride < xs.size(); ++i) {
    worst = std::max(worst, std::abs(xs[i + stride] - xs[i] - target) / target);
    ++*count;
  }
  return worst;
}

CriterionResult constants() {
  Check c;
  const double nu1 = bessel_first_root(0.0);
  const double alpha11 = bessel_first_root(1.0);
  const Eigenpair disk = ball_eigenpair(2);
  c.expect(within(nu1, 2.405, 1e-3), fmt("nu1 = %.10f", nu1));
  c.expect(within(alpha11, 3.83, 1e-2), fmt("alpha11 = %.10f", alpha11));
  c.expect(within(disk.lambda1, 5.78, 0.01), fmt("lambda1 = %.10f", disk.lambda1));
  c.expect(within(*disk.lambda2, 14.62, 0.01), fmt("lambda2 = %.10f (target 14.62)", *disk.lambda2));
  c.expect(within(*disk.c0, 1.09, 0.01), fmt("c0 = %.10f", *disk.c0));

  double lo = 2.0, hi = 3.0;
  const double sign_lo = bessel_j(0.0, lo) > 0.0 ? 1.0 : -1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (bessel_j(0.0, mid) * sign_lo > 0.0 ? lo : hi) = mid;
  }
  const double bisected = 0.5 * (lo + hi);
  c.expect(std::abs(bisected - nu1) <= 1e-9, fmt("|root - bisection| = %.2e", std::abs(bisected - nu1)));
  return {1, "eigen", c.passed, c.detail};
}

CriterionResult null_test() {
  Check c;
  for (const char* id : {"disk-linear-xy", "rect-linear", "ball3-linear"}) {
    const SolutionCurve curve = trace(id, -10.0, 10.0, 1.0);
    double worst = 0.0;
    for (const CurvePoint& p : curve.points) worst = std::max(worst, std::abs(p.mu));
    c.expect(worst <= 1e-6 && curve.points.size() == 21, fmt("%s max|mu| = %.2e", id, worst));
  }
  return {2, "null", c.passed, c.detail};
}

double max_error(const Field& w, const std::function<double(std::span<const double>)>& exact) {
  double e = 0.0;
  for (std::size_t i = 0; i < w.mesh->size(); ++i) e = std::max(e, std::abs(w.values[i] - exact(w.mesh->point(i))));
  return e;
}

CriterionResult solver_order() {
  Check c;
  struct Case {
    const char* name;
    std::function<MeshPtr(int)> mesh;
    std::function<double(std::span<const double>)> exact;
    std::function<double(std::span<const double>)> laplacian;
  };
  const std::vector<Case> cases = {
      {"polar", [](int n) { return make_polar_mesh(n + 1, n); },
       [](std::span<const double> p) { return p[0] * p[1] * (1.0 - p[0] * p[0] - p[1] * p[1]); },
       [](std::span<const double> p) { return -12.0 * p[0] * p[1]; }},
      {"rect", [](int n) { return make_rect_mesh(1.0, 1.0, n + 1, n + 1); },
       [](std::span<const double> p) { return std::sin(kPi * p[0]) * std::sin(kPi * p[1]); },
       [](std::span<const double> p) { return -2.0 * kPi * kPi * std::sin(kPi * p[0]) * std::sin(kPi * p[1]); }},
      {"radial3", [](int n) { return make_radial_mesh(3, n + 1); },
       [](std::span<const double> p) { return std::cos(kPi * p[0] / 2.0); },
       [](std::span<const double> p) {
         const double r = p[0];
         if (r == 0.0) return -0.75 * kPi * kPi;
         return -0.25 * kPi * kPi * std::cos(kPi * r / 2.0) - kPi * std::sin(kPi * r / 2.0) / r;
       }},
  };
  for (const Case& k : cases) {
    std::vector<double> errors;
    for (int n : {32, 64, 128}) {
      const MeshPtr m = k.mesh(n);
      const Field w = solve_linear(Field::zeros(m), Field::sample(m, k.laplacian));
      errors.push_back(max_error(w, k.exact));
    }
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
      const double ratio = errors[i] / errors[i + 1];
      c.expect(within_rel(ratio, 4.0, 0.2), fmt("%s ratio %.3f", k.name, ratio));
    }
  }
  return {3, "solver-order", c.passed, c.detail};
}

CriterionResult disk_usinu_curve() {
  Check c;
  const Eigenpair disk = ball_eigenpair(2);
  const double c0 = *disk.c0, nu1 = *disk.nu1;
  const Samples s = samples(trace("disk-usinu-xy", 10.0, 40.0, 0.1));
  const auto zeros = zero_crossings(s.xi, s.mu);
  std::size_t count = 0;
  const double spacing = kPi / c0;
  const double worst = worst_spacing(zeros, 1, spacing, &count);
  c.expect(count >= 8 && worst <= 0.05, fmt("%zu spacings, worst deviation %.2f%% from %.4f", count, 100 * worst, spacing));
  const double amplitude = 4.0 * kPi * c0 / (nu1 * nu1);
  double worst_ext = 0.0;
  std::size_t n_ext = 0;
  for (auto [x, y] : local_maxima(s.xi, s.mu)) {
    if (x < 20.0) continue;
    worst_ext = std::max(worst_ext, std::abs(y - amplitude) / amplitude);
    ++n_ext;
  }
  c.expect(n_ext >= 5 && worst_ext <= 0.2,
           fmt("%zu extrema, worst deviation %.2f%% from %.4f", n_ext, 100 * worst_ext, amplitude));
  return {4, "disk-usinu", c.passed, c.detail};
}

CriterionResult disk_sqrtusinu_curve() {
  Check c;
  const Eigenpair disk = ball_eigenpair(2);
  const double c0 = *disk.c0, nu1 = *disk.nu1, p = 0.5;
  const Samples s = samples(trace("disk-sqrtusinu-x2y", 5.0, 40.0, 0.1));
  const auto maxima = local_maxima(s.xi, s.mu);
  auto deviation_near = [&](double target, double* at) {
    auto best = std::min_element(maxima.begin(), maxima.end(), [&](const auto& a, const auto& b) {
      return std::abs(a.first - target) < std::abs(b.first - target);
    });
    if (best == maxima.end()) throw std::runtime_error("no extrema found");
    *at = best->first;
    const double predicted = 4.0 * kPi * std::pow(best->first, p - 1.0) * std::pow(c0, p) / (nu1 * nu1);
    return std::abs(best->second - predicted) / predicted;
  };
  double x15 = 0.0, x35 = 0.0;
  const double d15 = deviation_near(15.0, &x15);
  const double d35 = deviation_near(35.0, &x35);
  c.expect(d35 < d15, fmt("deviation %.4f at xi = %.2f, %.4f at xi = %.2f", d15, x15, d35, x35));
  return {5, "disk-sqrtusinu", c.passed, c.detail};
}

CriterionResult rect_usinu_curve() {
  Check c;
  const double period = kPi * std::numbers::sqrt2;
  const Samples s = samples(trace("rect-usinu", 0.0, 30.0, 0.1));
  // Period of the oscillation as a whole: two crossings per period.
  const auto zeros = zero_crossings(s.xi, s.mu);
  std::size_t count = 0;
  const double worst = worst_spacing(zeros, 2, period, &count);
  const double mean = zeros.size() >= 3 ? 2.0 * (zeros.back() - zeros.front()) / static_cast<double>(zeros.size() - 1) : 0.0;
  c.expect(zeros.size() >= 7 && within_rel(mean, period, 0.05),
           fmt("mean period %.4f vs %.4f (%.2f%%) over %zu crossings, single periods within %.2f%%", mean, period,
               100 * std::abs(mean - period) / period, zeros.size(), 100 * worst));
  const double amplitude = 4.0 * std::numbers::sqrt2 / kPi;
  double worst_ext = 0.0;
  std::size_t n_ext = 0;
  for (auto [x, y] : local_maxima(s.xi, s.mu)) {
    if (x < 15.0) continue;
    worst_ext = std::max(worst_ext, std::abs(y - amplitude) / amplitude);
    ++n_ext;
  }
  c.expect(n_ext >= 4 && worst_ext <= 0.1,
           fmt("%zu extrema, worst deviation %.2f%% from %.4f", n_ext, 100 * worst_ext, amplitude));
  return {6, "rect-usinu", c.passed, c.detail};
}

CriterionResult ball3_sinu_curve() {
  Check c;
  const double k = radial_n3_coefficient();
  const double omega = std::sqrt(kPi / 2.0);
  const Samples s = samples(trace("ball3-sinu", 0.0, 60.0, 0.1), 20.0, 60.0);
  std::vector<double> scaled(s.mu.size());
  for (std::size_t i = 0; i < s.mu.size(); ++i) scaled[i] = s.mu[i] * std::pow(s.xi[i], 1.5);
  double worst = 0.0;
  std::size_t n_ext = 0;
  for (auto [x, y] : local_maxima(s.xi, scaled)) {
    worst = std::max(worst, std::abs(y - k) / k);
    ++n_ext;
  }
  c.expect(n_ext >= 10 && worst <= 0.15, fmt("%zu extrema, worst deviation %.2f%% from %.4f", n_ext, 100 * worst, k));

  const double spacing = kPi / omega;
  double worst_shift = 0.0;
  const auto zeros = zero_crossings(s.xi, s.mu);
  for (double z : zeros) {
    const double j = std::round((z * omega - 0.75 * kPi) / kPi);
    const double predicted = (0.75 * kPi + j * kPi) / omega;
    worst_shift = std::max(worst_shift, std::abs(z - predicted) / spacing);
  }
  c.expect(zeros.size() >= 10 && worst_shift <= 0.1,
           fmt("%zu crossings, worst shift %.3f of the spacing", zeros.size(), worst_shift));
  return {7, "ball3-sinu", c.passed, c.detail};
}

CriterionResult log_projection_curve() {
  Check c;
  const Nonlinearity h = nonlinearity("sqrtusinlog");
  const Eigenpair disk = ball_eigenpair(2);
  const auto grid = log_grid(1e2, 1e6, 801);
  std::vector<double> mu(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) mu[i] = mu_projection(grid[i], h, disk);

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1e3 * (1 - 1e-12)) continue;
    xs.push_back(grid[i]);
    ys.push_back(mu[i]);
  }
  const EnvelopeFit fit = fit_envelope(xs, ys);
  c.expect(fit.maxima >= 2 && within(fit.slope, 0.5, 0.05), fmt("envelope slope %.4f from %zu maxima", fit.slope, fit.maxima));
  const int changes = count_sign_changes(mu);
  c.expect(changes >= 8, fmt("%d sign changes on [1e2, 1e6]", changes));
  return {8, "log-projection", c.passed, c.detail};
}

CriterionResult stationary_phase() {
  Check c;
  const RealFn gauss = [](double x) { return std::exp(-x * x); };
  auto ratios = [&](const char* name, auto&& make, auto&& approx) {
    std::vector<double> errors;
    for (double mu : {100.0, 200.0, 400.0, 800.0}) {
      const PhaseProblem p = make(mu);
      errors.push_back(std::abs(approx(p) - integrate_oscillatory(p, 1e-12)));
    }
    std::string list;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
      const double r = errors[i + 1] / errors[i];
      ok = ok && r <= 0.6;
      list += fmt(i ? ", %.3f" : "%.3f", r);
    }
    c.expect(ok, fmt("%s ratios %s", name, list.c_str()));
  };
  ratios(
      "interior",
      [&](double mu) {
        return PhaseProblem{gauss, [](double x) { return x * x; }, [](double x) { return 2.0 * x; },
                            [](double) { return 2.0; }, -1.0, 1.0, mu};
      },
      [](const PhaseProblem& p) { return stationary_phase_interior(p); });
  ratios(
      "endpoint",
      [&](double mu) {
        return PhaseProblem{gauss, [](double x) { return 1.0 - x * x; }, [](double x) { return -2.0 * x; },
                            [](double) { return -2.0; }, 0.0, 1.0, mu};
      },
      [](const PhaseProblem& p) { return stationary_phase_endpoint(p); });
  ratios(
      "quadratic",
      [&](double mu) { return QuadraticPhaseProblem{gauss, 1.0, 0.0, -1.0, 1.0, mu}.as_phase_problem(); },
      [&](const PhaseProblem& p) { return stationary_phase_quadratic(QuadraticPhaseProblem{gauss, 1.0, 0.0, p.a, p.b, p.mu}); });
  return {9, "stationary-phase", c.passed, c.detail};
}

CriterionResult profile() {
  Check c;
  const SolutionCurve curve = trace("disk-sqrtusinu-x2y", 0.0, 80.0, 0.5);
  const double phi_norm = norm(curve.phi1);
  std::vector<double> errors;
  std::string list;
  for (double target : {10.0, 20.0, 40.0, 80.0}) {
    auto it = std::find_if(curve.points.begin(), curve.points.end(),
                           [&](const CurvePoint& p) { return std::abs(p.xi - target) < 1e-9; });
    if (it == curve.points.end()) throw std::runtime_error(fmt("missing xi = %g", target));
    const Field diff(curve.mesh, it->u.values / it->xi - curve.phi1.values);
    errors.push_back(norm(diff) / phi_norm);
    list += fmt(errors.size() > 1 ? ", %.3e" : "%.3e", errors.back());
  }
  bool ok = true;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) ok = ok && errors[i + 1] <= 1.05 * errors[i];
  c.expect(ok, fmt("relative profile errors %s", list.c_str()));
  return {10, "profile", c.passed, c.detail};
}

CriterionResult newton_economy() {
  Check c;
  auto mean_iters = [](const SolutionCurve& curve) {
    double total = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) total += curve.points[i].newton_iters;
    return total / static_cast<double>(curve.points.size() - 1);
  };
  const double plain = mean_iters(trace("disk-usinu-xy", 0.0, 30.0, 0.1, PredictorMode::None));
  const double secant = mean_iters(trace("disk-usinu-xy", 0.0, 30.0, 0.1, PredictorMode::Secant));
  c.expect(secant <= plain && secant <= 12.0, fmt("mean iterations %.3f secant, %.3f without predictor", secant, plain));
  return {11, "newton", c.passed, c.detail};
}

CriterionResult envelope_domination() {
  Check c;
  const Eigenpair disk = ball_eigenpair(2);
  const AuxFunctions aux = aux_functions(disk, 1.0, 2);
  const double nu1 = *disk.nu1;
  const double integral = integrate(
      [&](double r) { return aux.df(r) * std::pow(std::max(bessel_j(0.0, nu1 * r), 0.0), 1.5); }, 0.0, 1.0, 1e-12);
  const double f0 = std::abs(aux.f0);
  c.expect(within_rel(integral, 0.1, 0.1), fmt("integral %.6f", integral));
  c.expect(within_rel(f0, 0.34, 0.1), fmt("|f(0)| = %.6f", f0));
  c.expect(integral < f0, "integral < |f(0)|");
  return {12, "envelope", c.passed, c.detail};
}

using Runner = CriterionResult (*)();

const std::vector<Runner>& runners() {
  static const std::vector<Runner> r = {constants,          null_test,           solver_order,
                                        disk_usinu_curve,   disk_sqrtusinu_curve, rect_usinu_curve,
                                        ball3_sinu_curve,   log_projection_curve, stationary_phase,
                                        profile,            newton_economy,       envelope_domination};
  return r;
}

}  // namespace

const std::vector<CriterionInfo>& criteria() {
  static const std::vector<CriterionInfo> list = {
      {1, "eigen", "Bessel roots and unit-disk eigen constants"},
      {2, "null", "h = 0 traces stay at mu = 0 on every geometry"},
      {3, "solver-order", "second-order convergence of the discrete Laplacian"},
      {4, "disk-usinu", "u sin u on the disk: crossing spacing and extrema"},
      {5, "disk-sqrtusinu", "sqrt(u) sin u on the disk: extrema approach the closed form"},
      {6, "rect-usinu", "u sin u on the 1 x 2 rectangle: period and extrema"},
      {7, "ball3-sinu", "sin u on the unit ball in R^3: scaled envelope and crossings"},
      {8, "log-projection", "projection curve for sqrt(u) sin ln(u^{3/2} + 1)"},
      {9, "stationary-phase", "leading-term error decays like 1/mu"},
      {10, "profile", "u / xi approaches phi1"},
      {11, "newton", "secant predictor reduces Newton iterations"},
      {12, "envelope", "envelope integral is dominated by |f(0)|"},
  };
  return list;
}

CriterionResult run_criterion(int id) {
  if (id < 1 || id > static_cast<int>(runners().size())) throw std::invalid_argument(fmt("no criterion %d", id));
  try {
    return runners()[static_cast<std::size_t>(id - 1)]();
  } catch (const std::exception& e) {
    return {id, criteria()[static_cast<std::size_t>(id - 1)].name, false, std::string("error: ") + e.what()};
  }
}

std::vector<int> suite_criteria(std::string_view suite) {
  if (suite == "all") {
    std::vector<int> ids;
    for (const auto& c : criteria()) ids.push_back(c.id);
    return ids;
  }
  for (const auto& c : criteria())
    if (c.name == suite) return {c.id};
  int id = 0;
  const auto [ptr, ec] = std::from_chars(suite.data(), suite.data() + suite.size(), id);
  if (ec == std::errc() && ptr == suite.data() + suite.size() && id >= 1 && id <= static_cast<int>(criteria().size()))
    return {id};
  throw std::invalid_argument("unknown suite: " + std::string(suite));
}

std::string format_result(const CriterionResult& result) {
  return fmt("%s %2d %-16s %s", result.passed ? "PASS" : "FAIL", result.id, result.name.c_str(), result.detail.c_str());
}

}  // namespace rescurve
