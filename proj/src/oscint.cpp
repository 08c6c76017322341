#include "rescurve/oscint.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

namespace rescurve {

namespace {

constexpr double kPi = std::numbers::pi;

// Kronrod 15-point abscissae (descending, last is the centre) and weights;
// the odd-indexed abscissae carry the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  double abs_value;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class T, class F>
Panel<T> gauss_kronrod(const F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(centre);
  T kronrod = fc * kWgk[7];
  T gauss = fc * kWg[3];
  double abs_sum = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const T f1 = f(centre - dx);
    const T f2 = f(centre + dx);
    kronrod += (f1 + f2) * kWgk[j];
    abs_sum += (std::abs(f1) + std::abs(f2)) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  Panel<T> p{a, b, kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
  return p;
}

template <class T, class F>
T adaptive(const F& f, std::span<const double> breaks, const QuadratureOptions& opt,
           QuadratureResult* stats) {
  if (breaks.size() < 2) throw std::invalid_argument("integrate: need at least two break points");
  std::priority_queue<Panel<T>> heap;
  T total{};
  double error = 0.0;
  double abs_total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1]))
      throw std::invalid_argument("integrate: break points must be strictly increasing");
    auto p = gauss_kronrod<T>(f, breaks[i], breaks[i + 1]);
    total += p.value;
    error += p.error;
    abs_total += p.abs_value;
    heap.push(p);
  }
  std::size_t evaluations = 15 * heap.size();
  constexpr double eps = std::numeric_limits<double>::epsilon();

  auto done = [&] {
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    return error <= target || error <= 50.0 * eps * abs_total;
  };

  while (!done()) {
    if (heap.size() >= opt.max_panels) {
      throw QuadratureError("integrate: panel budget exhausted (estimate " + std::to_string(std::abs(total)) +
                                ", error " + std::to_string(error) + ")",
                            std::abs(total), error);
    }
    Panel<T> worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureError("integrate: interval can no longer be subdivided", std::abs(total), error);
    }
    heap.pop();
    auto left = gauss_kronrod<T>(f, worst.a, mid);
    auto right = gauss_kronrod<T>(f, mid, worst.b);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_total += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the panels to shed the drift of the running updates.
  T sum{};
  double err = 0.0;
  const std::size_t panels = heap.size();
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  if (stats) {
    stats->error = err;
    stats->evaluations = evaluations;
    stats->panels = panels;
  }
  return sum;
}

std::vector<double> uniform_breaks(double a, double b, std::size_t panels) {
  std::vector<double> breaks(panels + 1);
  for (std::size_t i = 0; i <= panels; ++i)
    breaks[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(panels);
  breaks.back() = b;
  return breaks;
}

double max_abs_on_grid(const RealFn& fn, double a, double b, int samples) {
  double m = 0.0;
  for (int i = 0; i <= samples; ++i) m = std::max(m, std::abs(fn(a + (b - a) * i / samples)));
  return m;
}

void require_problem(const PhaseProblem& p) {
  if (!p.amplitude || !p.phase || !p.dphase || !p.d2phase)
    throw StationaryPhaseError("phase problem needs amplitude, phase, and two phase derivatives");
  if (!(p.a < p.b)) throw StationaryPhaseError("phase problem needs a < b");
  if (!(p.mu > 0.0)) throw StationaryPhaseError("phase problem needs mu > 0");
}

}  // namespace

double integrate(const RealFn& f, double a, double b, double tol) {
  if (!(a < b)) throw std::invalid_argument("integrate: need a < b");
  QuadratureOptions opts;
  opts.abs_tol = tol;
  const double breaks[] = {a, b};
  return integrate_partition(f, breaks, opts).value;
}

QuadratureResult integrate_partition(const RealFn& f, std::span<const double> breaks,
                                     const QuadratureOptions& options) {
  QuadratureResult result;
  result.value = adaptive<double>(f, breaks, options, &result);
  return result;
}

PhaseProblem QuadraticPhaseProblem::as_phase_problem() const {
  const double al = alpha;
  const double c = x0;
  PhaseProblem p;
  p.amplitude = amplitude;
  p.phase = [=](double x) { return -al * (x - c) * (x - c); };
  p.dphase = [=](double x) { return -2.0 * al * (x - c); };
  p.d2phase = [=](double) { return -2.0 * al; };
  p.a = a;
  p.b = b;
  p.mu = mu;
  return p;
}

std::complex<double> integrate_oscillatory(const PhaseProblem& p, double tol) {
  require_problem(p);
  const double slope = max_abs_on_grid(p.dphase, p.a, p.b, 1024);
  const double phase_span = p.mu * slope;
  const auto panels = static_cast<std::size_t>(std::min(std::floor(phase_span) + 1.0, 1e7));
  const auto breaks = uniform_breaks(p.a, p.b, panels);

  QuadratureOptions opts;
  opts.abs_tol = tol;
  opts.max_panels = std::max<std::size_t>(opts.max_panels, 8 * panels);
  auto integrand = [&](double x) {
    const double arg = p.mu * p.phase(x);
    return p.amplitude(x) * std::complex<double>(std::cos(arg), std::sin(arg));
  };
  return adaptive<std::complex<double>>(integrand, breaks, opts, nullptr);
}

std::complex<double> stationary_phase_quadratic(const QuadraticPhaseProblem& p) {
  if (!(p.alpha > 0.0)) throw StationaryPhaseError("quadratic phase needs alpha > 0");
  if (!(p.mu > 0.0)) throw StationaryPhaseError("quadratic phase needs mu > 0");
  if (!(p.x0 > p.a && p.x0 < p.b)) throw StationaryPhaseError("critical point must be interior");
  const double magnitude = std::sqrt(kPi / (p.alpha * p.mu)) * p.amplitude(p.x0);
  return std::polar(1.0, -kPi / 4.0) * magnitude;
}

double locate_critical_point(const PhaseProblem& p) {
  require_problem(p);
  constexpr int kSamples = 1024;
  std::vector<double> xs(kSamples + 1);
  std::vector<double> ds(kSamples + 1);
  for (int i = 0; i <= kSamples; ++i) {
    xs[i] = p.a + (p.b - p.a) * i / kSamples;
    ds[i] = p.dphase(xs[i]);
  }
  const double scale = *std::max_element(ds.begin(), ds.end(), [](double u, double v) {
    return std::abs(u) < std::abs(v);
  });
  const double zero_tol = 1e-12 * std::max(1.0, std::abs(scale));
  if (std::abs(ds.front()) <= zero_tol || std::abs(ds.back()) <= zero_tol)
    throw StationaryPhaseError("critical point at an endpoint; use stationary_phase_endpoint");

  int found = -1;
  int count = 0;
  for (int i = 0; i < kSamples; ++i) {
    if (ds[i] == 0.0 || (ds[i] > 0.0) != (ds[i + 1] > 0.0)) {
      if (ds[i] == 0.0 && i > 0 && found == i - 1) continue;
      ++count;
      found = i;
    }
  }
  if (count == 0) throw StationaryPhaseError("no critical point of the phase on the interval");
  if (count > 1) throw StationaryPhaseError("phase has more than one critical point on the interval");
  if (ds[found] == 0.0) return xs[found];

  double lo = xs[found];
  double hi = xs[found + 1];
  const bool lo_positive = ds[found] > 0.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double dm = p.dphase(mid);
    if (dm == 0.0) return mid;
    if ((dm > 0.0) == lo_positive) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::complex<double> stationary_phase_interior(const PhaseProblem& p) {
  const double x0 = locate_critical_point(p);
  const double curvature = p.d2phase(x0);
  if (curvature == 0.0) throw StationaryPhaseError("degenerate critical point (g'' = 0)");
  const double shift = curvature > 0.0 ? kPi / 4.0 : -kPi / 4.0;
  const double magnitude = std::sqrt(2.0 * kPi / (p.mu * std::abs(curvature))) * p.amplitude(x0);
  return std::polar(1.0, p.mu * p.phase(x0) + shift) * magnitude;
}

std::complex<double> stationary_phase_endpoint(const PhaseProblem& p) {
  require_problem(p);
  const double slope = max_abs_on_grid(p.dphase, p.a, p.b, 1024);
  if (std::abs(p.dphase(p.a)) > 1e-8 * std::max(1.0, slope))
    throw StationaryPhaseError("endpoint variant needs g'(a) = 0");
  const double curvature = p.d2phase(p.a);
  if (!(curvature < 0.0)) throw StationaryPhaseError("endpoint variant needs g''(a) < 0");
  constexpr int kSamples = 1024;
  for (int i = 1; i <= kSamples; ++i) {
    const double x = p.a + (p.b - p.a) * i / kSamples;
    if (!(p.dphase(x) < 0.0)) throw StationaryPhaseError("endpoint variant needs g' < 0 on (a, b]");
  }
  const double magnitude = std::sqrt(kPi / (2.0 * p.mu * std::abs(curvature))) * p.amplitude(p.a);
  return std::polar(1.0, p.mu * p.phase(p.a) - kPi / 4.0) * magnitude;
}

}  // namespace rescurve
