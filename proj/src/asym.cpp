#include "rescurve/asym.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rescurve/oscint.hpp"

namespace rescurve {

namespace {

constexpr double kPi = std::numbers::pi;

const Eigenpair& disk_pair() {
  static const Eigenpair pair = ball_eigenpair(2);
  return pair;
}

double product(std::span<const double> dims) {
  return std::accumulate(dims.begin(), dims.end(), 1.0, std::multiplies<>());
}

}  // namespace

std::string_view formula_name(FormulaId id) {
  switch (id) {
    case FormulaId::DiskPowerSin: return "disk-power-sin";
    case FormulaId::Rect2D: return "rect2d";
    case FormulaId::RectND: return "rectnd";
    case FormulaId::RadialN2: return "radial-n2";
    case FormulaId::RadialN3: return "radial-n3";
    case FormulaId::Projection: return "projection";
    case FormulaId::Zero: return "zero";
  }
  return "zero";
}

FormulaId parse_formula(std::string_view name) {
  for (FormulaId id : {FormulaId::DiskPowerSin, FormulaId::Rect2D, FormulaId::RectND, FormulaId::RadialN2,
                       FormulaId::RadialN3, FormulaId::Projection, FormulaId::Zero})
    if (formula_name(id) == name) return id;
  throw std::invalid_argument("unknown formula '" + std::string(name) + "'");
}

double mu_disk_power_sin(double xi, double p) {
  const Eigenpair& pair = disk_pair();
  const double c0 = *pair.c0;
  const double nu1 = *pair.nu1;
  return -4.0 * kPi * std::pow(xi, p - 1.0) * std::pow(c0, p) * std::cos(c0 * xi) / (nu1 * nu1);
}

double mu_rect_2d(double xi, double a, double b) {
  const double s = std::sqrt(a * b);
  return 4.0 * s / kPi * std::sin(2.0 / s * xi - kPi / 2.0);
}

double mu_rect_nd(double xi, std::span<const double> dims) {
  if (dims.empty()) throw std::invalid_argument("mu_rect: dims must be nonempty");
  const double n = static_cast<double>(dims.size());
  const double vol = product(dims);
  const double amplitude = std::pow(2.0, 0.5 * n * (3.0 - 0.5 * n)) * std::pow(vol, n / 4.0) / std::pow(kPi, 0.5 * n);
  return amplitude * std::pow(xi, 1.0 - 0.5 * n) *
         std::sin(std::pow(2.0, 0.5 * n) * xi / std::sqrt(vol) - n * kPi / 4.0);
}

double mu_rect(double xi, std::span<const double> dims) {
  if (dims.size() == 2) return mu_rect_2d(xi, dims[0], dims[1]);
  return mu_rect_nd(xi, dims);
}

double mu_radial_n2(double xi) {
  const Eigenpair& pair = disk_pair();
  const double nu1 = *pair.nu1;
  return -4.0 * kPi / (xi * nu1 * nu1) * std::cos(*pair.c0 * xi);
}

double radial_n3_coefficient() {
  return 12.0 * std::sqrt(3.0 * std::numbers::sqrt2) / (std::numbers::sqrt2 * std::pow(kPi, 1.75));
}

double mu_radial_n3(double xi) {
  return -radial_n3_coefficient() * std::pow(xi, -1.5) * std::cos(xi * std::sqrt(kPi / 2.0) - kPi / 4.0);
}

double mu_projection(double xi, const Nonlinearity& h, const Eigenpair& pair, double tol) {
  if (!pair.radial) throw std::invalid_argument("mu_projection needs a ball eigenpair");
  if (h.is_zero() || xi == 0.0) return 0.0;
  const int n = pair.domain.dimension;
  const auto phase = h.phase ? h.phase : ScalarFn([](double u) { return u; });
  const double base = phase(0.0);

  // Phase along r on a table; it is monotone because phi1 decreases in r.
  constexpr int kTable = 2048;
  std::vector<double> rs(kTable + 1);
  std::vector<double> ts(kTable + 1);
  for (int j = 0; j <= kTable; ++j) {
    rs[j] = static_cast<double>(j) / kTable;
    ts[j] = std::abs(phase(xi * pair.radial(rs[j])) - base);
  }

  std::vector<double> breaks{0.0};
  constexpr double kQuarter = kPi / 2.0;
  int j = 0;
  for (double level = ts[0] - kQuarter; level > ts[kTable]; level -= kQuarter) {
    while (j < kTable && ts[j + 1] > level) ++j;
    if (j >= kTable) break;
    const double span = ts[j] - ts[j + 1];
    const double frac = span > 0.0 ? (ts[j] - level) / span : 0.5;
    const double r = rs[j] + frac * (rs[j + 1] - rs[j]);
    if (r > breaks.back() && r < 1.0) breaks.push_back(r);
  }
  breaks.push_back(1.0);

  const auto& radial = pair.radial;
  auto integrand = [&](double r) {
    const double phi = radial(r);
    return h.h(xi * phi) * phi * std::pow(r, n - 1);
  };
  QuadratureOptions opts;
  opts.abs_tol = tol * std::max(1.0, std::abs(xi));
  opts.rel_tol = tol;
  opts.max_panels = std::max<std::size_t>(opts.max_panels, 16 * breaks.size());
  return omega_n(n) * integrate_partition(integrand, breaks, opts).value;
}

AuxFunctions aux_functions(const Eigenpair& pair, double p, int n) {
  if (!pair.nu1 || !pair.c0 || !pair.radial) throw std::invalid_argument("aux_functions needs a ball eigenpair");
  const double nu1 = *pair.nu1;
  const BesselOrder order = BesselOrder::from_twice(n - 2);
  const BesselOrder next = order.plus(1);
  const BesselOrder next2 = order.plus(2);

  AuxFunctions aux;
  aux.H = [](double u) {
    const double d = u * std::sqrt(u) + 1.0;
    return std::numbers::sqrt2 / 3.0 * d * std::sin(std::log(d) - kPi / 4.0);
  };
  aux.f = [=](double r) {
    const double x = nu1 * r;
    return -bessel_j_scaled(order, x) / (nu1 * nu1 * bessel_j_scaled(next, x));
  };
  aux.df = [=](double r) {
    const double x = nu1 * r;
    const double s1 = bessel_j_scaled(next, x);
    return (x / nu1) * (1.0 - bessel_j_scaled(order, x) * bessel_j_scaled(next2, x) / (s1 * s1));
  };
  const auto radial = pair.radial;
  const auto f = aux.f;
  const auto df = aux.df;
  aux.g = [=](double r) { return std::pow(std::max(radial(r), 0.0), p) * f(r); };
  aux.f1 = [=](double r) { return n == 2 ? f(r) : std::pow(r, n - 2) * f(r); };
  aux.df1 = [=](double r) {
    if (n == 2) return df(r);
    const double lead = (n == 3) ? f(r) : (n - 2) * std::pow(r, n - 3) * f(r);
    return lead + std::pow(r, n - 2) * df(r);
  };
  aux.f0 = -static_cast<double>(n) / (nu1 * nu1);
  aux.g0 = std::pow(pair.radial(0.0), p) * aux.f0;
  aux.f1_0 = (n == 2) ? aux.f0 : 0.0;
  aux.df1_0 = (n == 2) ? 0.0 : (n == 3 ? aux.f0 : 0.0);
  return aux;
}

AsymptoticCurve make_curve(FormulaId id, const FormulaParams& params) {
  AsymptoticCurve curve;
  curve.id = id;
  curve.params = params;
  switch (id) {
    case FormulaId::DiskPowerSin: {
      const double p = params.p;
      curve.evaluate = [p](double xi) { return mu_disk_power_sin(xi, p); };
      break;
    }
    case FormulaId::Rect2D: {
      if (params.dims.size() != 2) throw std::invalid_argument("rect2d needs two lengths");
      const double a = params.dims[0], b = params.dims[1];
      curve.evaluate = [a, b](double xi) { return mu_rect_2d(xi, a, b); };
      break;
    }
    case FormulaId::RectND: {
      if (params.dims.empty()) throw std::invalid_argument("rectnd needs at least one length");
      const auto dims = params.dims;
      curve.evaluate = [dims](double xi) { return mu_rect_nd(xi, dims); };
      break;
    }
    case FormulaId::RadialN2: curve.evaluate = [](double xi) { return mu_radial_n2(xi); }; break;
    case FormulaId::RadialN3: curve.evaluate = [](double xi) { return mu_radial_n3(xi); }; break;
    case FormulaId::Projection: {
      const Nonlinearity h = nonlinearity(params.nonlinearity);
      curve.evaluate = [h](double xi) { return mu_projection(xi, h, disk_pair()); };
      break;
    }
    case FormulaId::Zero: curve.evaluate = [](double) { return 0.0; }; break;
  }
  return curve;
}

std::optional<AsymptoticCurve> asymptotic_for(const ProblemSpec& spec) {
  const std::string& h = spec.nonlinearity.id;
  if (h == "zero") return make_curve(FormulaId::Zero);
  const DomainSpec& d = spec.domain;
  if (d.kind == DomainKind::Disk2D && (h == "usinu" || h == "sqrtusinu") && spec.asymptotic_p) {
    FormulaParams params;
    params.p = *spec.asymptotic_p;
    return make_curve(FormulaId::DiskPowerSin, params);
  }
  if (d.is_rect() && h == "usinu") {
    FormulaParams params;
    params.dims = d.lengths;
    return make_curve(d.lengths.size() == 2 ? FormulaId::Rect2D : FormulaId::RectND, params);
  }
  if (d.kind == DomainKind::BallRadial && h == "sinu") {
    if (d.dimension == 2) return make_curve(FormulaId::RadialN2);
    if (d.dimension == 3) return make_curve(FormulaId::RadialN3);
  }
  if (d.kind == DomainKind::Disk2D && (h == "sqrtusinlog" || h == "usinlog2" || h == "sinlog")) {
    FormulaParams params;
    params.nonlinearity = h;
    return make_curve(FormulaId::Projection, params);
  }
  return std::nullopt;
}

std::vector<double> log_grid(double a, double b, std::size_t count) {
  if (!(a > 0.0 && b > a) || count < 2) throw std::invalid_argument("log_grid needs 0 < a < b and count >= 2");
  std::vector<double> xs(count);
  const double la = std::log(a), lb = std::log(b);
  for (std::size_t i = 0; i < count; ++i)
    xs[i] = std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(count - 1));
  xs.front() = a;
  xs.back() = b;
  return xs;
}

std::vector<std::pair<double, double>> local_maxima(std::span<const double> xs, std::span<const double> ys) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 1; i + 1 < ys.size(); ++i) {
    const double m = std::abs(ys[i]);
    if (m >= std::abs(ys[i - 1]) && m > std::abs(ys[i + 1])) out.emplace_back(xs[i], m);
  }
  return out;
}

EnvelopeFit fit_envelope(std::span<const double> xs, std::span<const double> ys) {
  const auto peaks = local_maxima(xs, ys);
  EnvelopeFit fit;
  fit.maxima = peaks.size();
  if (peaks.size() < 2) return fit;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : peaks) {
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double k = static_cast<double>(peaks.size());
  fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / k;
  return fit;
}

int count_sign_changes(std::span<const double> ys) {
  int changes = 0;
  int last = 0;
  for (double y : ys) {
    const int s = (y > 0.0) - (y < 0.0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::vector<double> zero_crossings(std::span<const double> xs, std::span<const double> ys) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    if ((ys[i] < 0.0 && ys[i + 1] > 0.0) || (ys[i] > 0.0 && ys[i + 1] < 0.0))
      out.push_back(xs[i] - ys[i] * (xs[i + 1] - xs[i]) / (ys[i + 1] - ys[i]));
  }
  return out;
}

}  // namespace rescurve
