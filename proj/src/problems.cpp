#include "rescurve/problems.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rescurve/oscint.hpp"
#include "rescurve/specfun.hpp"

namespace rescurve {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double u) { return std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u; }

double radius_of(std::span<const double> p) {
  double s = 0.0;
  for (double v : p) s += v * v;
  return std::sqrt(s);
}

void need_planar(std::span<const double> p, const char* id) {
  if (p.size() < 2) throw ProblemError(std::string("forcing ") + id + " needs planar coordinates");
}

Nonlinearity usinu() {
  Nonlinearity n;
  n.id = "usinu";
  n.h = [](double u) { return u * std::sin(u); };
  n.dh = [](double u) { return std::sin(u) + u * std::cos(u); };
  n.d2h = [](double u) { return 2.0 * std::cos(u) - u * std::sin(u); };
  n.H = [](double u) { return std::sin(u) - u * std::cos(u); };
  n.growth = 1.0;
  n.phase = [](double u) { return u; };
  return n;
}

Nonlinearity sinu() {
  Nonlinearity n;
  n.id = "sinu";
  n.h = [](double u) { return std::sin(u); };
  n.dh = [](double u) { return std::cos(u); };
  n.d2h = [](double u) { return -std::sin(u); };
  n.H = [](double u) { return -std::cos(u); };
  n.growth = 0.0;
  n.phase = [](double u) { return u; };
  return n;
}

// sqrt(u) sin ln(u^{3/2} + 1) on u >= 0.
Nonlinearity sqrt_sinlog_positive() {
  Nonlinearity n;
  n.id = "sqrtusinlog";
  n.h = [](double u) { return std::sqrt(u) * std::sin(std::log1p(u * std::sqrt(u))); };
  n.dh = [](double u) {
    if (u <= 0.0) return 0.0;
    const double s = std::sqrt(u);
    const double d = u * s + 1.0;
    const double l = std::log1p(u * s);
    return std::sin(l) / (2.0 * s) + 1.5 * u * std::cos(l) / d;
  };
  n.d2h = [](double u) {
    if (u <= 1e-12) return 2.0;
    const double s = std::sqrt(u);
    const double d = u * s + 1.0;
    const double l = std::log1p(u * s);
    const double dl = 1.5 * s / d;
    const double ddl = 0.75 / (s * d) - 2.25 * u / (d * d);
    return -0.25 * std::sin(l) / (u * s) + std::cos(l) * dl / s - s * std::sin(l) * dl * dl +
           s * std::cos(l) * ddl;
  };
  n.H = [](double u) {
    const double d = u * std::sqrt(u) + 1.0;
    return std::numbers::sqrt2 / 3.0 * d * std::sin(std::log(d) - kPi / 4.0);
  };
  n.growth = 0.5;
  n.phase = [](double u) { return std::log1p(std::abs(u) * std::sqrt(std::abs(u))); };
  return n;
}

Nonlinearity usinlog2() {
  Nonlinearity n;
  n.id = "usinlog2";
  n.h = [](double u) { return u * std::sin(std::log1p(u * u)); };
  n.dh = [](double u) {
    const double l = std::log1p(u * u);
    return std::sin(l) + 2.0 * u * u * std::cos(l) / (u * u + 1.0);
  };
  n.d2h = [](double u) {
    const double q = u * u + 1.0;
    const double l = std::log(q);
    return std::cos(l) * 2.0 * u / q + 4.0 * u * std::cos(l) / (q * q) -
           4.0 * u * u * u * std::sin(l) / (q * q);
  };
  n.H = [](double u) {
    const double q = u * u + 1.0;
    const double l = std::log(q);
    return q * (std::sin(l) - std::cos(l)) / 4.0;
  };
  n.growth = 1.0;
  n.phase = [](double u) { return std::log1p(u * u); };
  return n;
}

// sin ln(u + 1) on u >= 0.
Nonlinearity sinlog_positive() {
  Nonlinearity n;
  n.id = "sinlog";
  n.h = [](double u) { return std::sin(std::log1p(u)); };
  n.dh = [](double u) { return std::cos(std::log1p(u)) / (u + 1.0); };
  n.d2h = [](double u) {
    const double l = std::log1p(u);
    return -(std::sin(l) + std::cos(l)) / ((u + 1.0) * (u + 1.0));
  };
  n.H = [](double u) {
    const double l = std::log1p(u);
    return (u + 1.0) * (std::sin(l) - std::cos(l)) / 2.0;
  };
  n.growth = 0.0;
  n.phase = [](double u) { return std::log1p(std::abs(u)); };
  return n;
}

Nonlinearity zero_nonlinearity() {
  Nonlinearity n;
  n.id = "zero";
  n.h = [](double) { return 0.0; };
  n.dh = [](double) { return 0.0; };
  n.d2h = [](double) { return 0.0; };
  n.H = [](double) { return 0.0; };
  n.growth = 0.0;
  n.phase = [](double u) { return u; };
  return n;
}

std::vector<double> default_samples() {
  std::vector<double> s;
  for (int k = 0; k < 60; ++k) s.push_back(-20.0 + 40.0 * (k + 0.5) / 60.0);
  for (int k = 0; k < 40; ++k) s.push_back(20.0 * std::pow(500.0, (k + 0.5) / 40.0));
  return s;
}

}  // namespace

Nonlinearity power_sin(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ProblemError("power_sin needs p in [0, 1]");
  Nonlinearity n;
  n.id = (p == 0.5) ? "sqrtusinu" : "power-sin(" + std::to_string(p) + ")";
  // Sign-symmetric |u|^p sin u keeps the evaluators total.
  n.h = [p](double u) { return std::pow(std::abs(u), p) * std::sin(u); };
  n.dh = [p](double u) {
    const double a = std::pow(std::abs(u), p);
    return p * a * sinc(u) + a * std::cos(u);
  };
  if (p == 1.0) n.d2h = [](double u) { return 2.0 * std::cos(u) - u * std::sin(u); };
  n.growth = p;
  n.phase = [](double u) { return u; };
  return n;
}

Nonlinearity nonlinearity(std::string_view id) {
  if (id == "usinu") return usinu();
  if (id == "sqrtusinu") return power_sin(0.5);
  if (id == "sinu") return sinu();
  if (id == "sqrtusinlog") return extend_h_negative(sqrt_sinlog_positive(), disk_spectral_gap());
  if (id == "usinlog2") return usinlog2();
  if (id == "sinlog") return extend_h_negative(sinlog_positive(), disk_spectral_gap());
  if (id == "zero") return zero_nonlinearity();
  throw ProblemError("unknown nonlinearity '" + std::string(id) + "'");
}

std::vector<std::string> nonlinearity_ids() {
  return {"usinu", "sqrtusinu", "sinu", "sqrtusinlog", "usinlog2", "sinlog", "zero"};
}

Forcing forcing(std::string_view id) {
  Forcing f;
  f.id = std::string(id);
  if (id == "xy") {
    f.e = [](std::span<const double> p) {
      need_planar(p, "xy");
      return p[0] * p[1];
    };
  } else if (id == "x2y-3xy4") {
    f.e = [](std::span<const double> p) {
      need_planar(p, "x2y-3xy4");
      const double x = p[0], y = p[1];
      return x * x * y - 3.0 * x * y * y * y * y;
    };
  } else if (id == "rect-shifted-xy") {
    f.e = [](std::span<const double> p) {
      need_planar(p, "rect-shifted-xy");
      return (p[0] - 0.5) * (p[1] - 1.0);
    };
  } else if (id == "cospir-over-r") {
    f.radial = [](double r) { return std::cos(kPi * r) / r; };
    f.e = [radial = f.radial](std::span<const double> p) { return radial(radius_of(p)); };
    f.singular_at_origin = true;
  } else if (id == "zero") {
    f.radial = [](double) { return 0.0; };
    f.e = [](std::span<const double>) { return 0.0; };
  } else {
    throw ProblemError("unknown forcing '" + std::string(id) + "'");
  }
  return f;
}

Forcing tabulated_forcing(std::vector<std::vector<double>> axes, std::vector<double> values) {
  if (axes.empty()) throw ProblemError("tabulated forcing needs at least one axis");
  std::size_t expected = 1;
  for (const auto& axis : axes) {
    if (axis.size() < 2 || !std::is_sorted(axis.begin(), axis.end()) ||
        std::adjacent_find(axis.begin(), axis.end()) != axis.end())
      throw ProblemError("tabulated forcing axes need at least two strictly increasing coordinates");
    expected *= axis.size();
  }
  if (values.size() != expected)
    throw ProblemError("tabulated forcing has " + std::to_string(values.size()) + " values, expected " +
                       std::to_string(expected));
  for (double v : values)
    if (!std::isfinite(v)) throw ProblemError("tabulated forcing values must be finite");

  const bool one_axis = axes.size() == 1;
  Forcing f;
  f.id = "tabulated";
  f.e = [axes = std::move(axes), values = std::move(values)](std::span<const double> x) {
    const std::size_t dims = axes.size();
    if (x.size() != dims) throw ProblemError("tabulated forcing evaluated at a point of the wrong dimension");
    std::vector<std::size_t> lo(dims);
    std::vector<double> t(dims);
    for (std::size_t k = 0; k < dims; ++k) {
      const auto& axis = axes[k];
      const double xk = std::clamp(x[k], axis.front(), axis.back());
      const auto it = std::upper_bound(axis.begin(), axis.end() - 1, xk);
      lo[k] = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - axis.begin() - 1, 0));
      t[k] = (xk - axis[lo[k]]) / (axis[lo[k] + 1] - axis[lo[k]]);
    }
    double sum = 0.0;
    for (std::size_t corner = 0; corner < (std::size_t{1} << dims); ++corner) {
      double weight = 1.0;
      std::size_t index = 0;
      for (std::size_t k = 0; k < dims; ++k) {
        const bool upper = (corner >> k) & 1U;
        weight *= upper ? t[k] : 1.0 - t[k];
        index = index * axes[k].size() + lo[k] + (upper ? 1 : 0);
      }
      if (weight != 0.0) sum += weight * values[index];
    }
    return sum;
  };
  if (one_axis) {
    f.radial = [e = f.e](double r) {
      const double p[] = {r};
      return e(p);
    };
  }
  return f;
}

std::vector<std::string> forcing_ids() { return {"xy", "x2y-3xy4", "rect-shifted-xy", "cospir-over-r", "zero"}; }

ProblemSpec builtin(std::string_view id) {
  auto make = [&](DomainSpec d, std::string_view h, std::string_view e, std::optional<double> p) {
    return ProblemSpec{std::string(id), std::move(d), nonlinearity(h), forcing(e), p};
  };
  if (id == "disk-usinu-xy") return make(DomainSpec::disk(), "usinu", "xy", 1.0);
  if (id == "disk-sqrtusinu-x2y") return make(DomainSpec::disk(), "sqrtusinu", "x2y-3xy4", 0.5);
  if (id == "rect-usinu") return make(DomainSpec::rect(1.0, 2.0), "usinu", "rect-shifted-xy", 1.0);
  if (id == "ball3-sinu") return make(DomainSpec::ball(3), "sinu", "cospir-over-r", 0.0);
  if (id == "ball2-sinu") return make(DomainSpec::ball(2), "sinu", "zero", 0.0);
  if (id == "disk-sqrtusinlog-xy") return make(DomainSpec::disk(), "sqrtusinlog", "xy", std::nullopt);
  if (id == "disk-linear-xy") return make(DomainSpec::disk(), "zero", "xy", std::nullopt);
  if (id == "rect-linear") return make(DomainSpec::rect(1.0, 2.0), "zero", "rect-shifted-xy", std::nullopt);
  if (id == "ball3-linear") return make(DomainSpec::ball(3), "zero", "cospir-over-r", std::nullopt);
  throw ProblemError("unknown problem '" + std::string(id) + "'");
}

std::vector<std::string> builtin_ids() {
  return {"disk-usinu-xy", "disk-sqrtusinu-x2y", "rect-usinu",     "ball3-sinu",  "ball2-sinu",
          "disk-sqrtusinlog-xy", "disk-linear-xy", "rect-linear", "ball3-linear"};
}

Field sample_forcing(const Forcing& f, const MeshPtr& mesh) {
  if (mesh->kind == MeshKind::Radial && !f.radial)
    throw ProblemError("forcing " + f.id + " is not radial and cannot be sampled on a radial mesh");
  Field out = Field::zeros(mesh);
  for (std::size_t i = 0; i < mesh->size(); ++i) {
    if (f.singular_at_origin && mesh->radius[i] == 0.0) continue;
    out.values[static_cast<Eigen::Index>(i)] = f.e(mesh->point(i));
  }
  if (f.singular_at_origin) {
    // Centre control volume is the ball of radius h/2 (radial and polar alike).
    const int n = mesh->domain.dimension;
    const double edge = 0.5 * mesh->spacing();
    const double weighted = integrate([&](double r) { return f.radial(r) * std::pow(r, n - 1); }, 0.0, edge, 1e-14);
    const double volume = std::pow(edge, n) / n;
    for (std::size_t i = 0; i < mesh->size(); ++i)
      if (mesh->radius[i] == 0.0) out.values[static_cast<Eigen::Index>(i)] = weighted / volume;
  }
  return out;
}

double disk_spectral_gap() {
  static const double gap = [] {
    const Eigenpair pair = ball_eigenpair(2);
    return *pair.lambda2 - pair.lambda1;
  }();
  return gap;
}

Nonlinearity extend_h_negative(const Nonlinearity& base, double gap) {
  if (!base.h || !base.dh || !base.d2h) throw ProblemError("extend_h_negative needs h, h' and h''");
  const double h0 = base.h(0.0);
  const double h1 = base.dh(0.0);
  const double h2 = base.d2h(0.0);
  if (!std::isfinite(h0) || !std::isfinite(h1) || !std::isfinite(h2))
    throw ProblemError("extend_h_negative: h, h', h'' must be finite at 0");

  const double c = h0 - h1 / 2.0 + h2 / 6.0;
  Eigen::Matrix3d m;
  m << 1, 1, 1, 3, 4, 5, 6, 12, 20;
  const Eigen::Vector3d a = m.lu().solve(Eigen::Vector3d(h0 - c, h1, h2));
  const double a3 = a[0], a4 = a[1], a5 = a[2];

  auto q = [=](double s) { return c + s * s * s * (a3 + s * (a4 + s * a5)); };
  auto dq = [=](double s) { return s * s * (3.0 * a3 + s * (4.0 * a4 + s * 5.0 * a5)); };
  auto d2q = [=](double s) { return s * (6.0 * a3 + s * (12.0 * a4 + s * 20.0 * a5)); };
  auto big_q = [=](double s) {
    const double s4 = s * s * s * s;
    return c * s + s4 * (a3 / 4.0 + s * (a4 / 5.0 + s * a5 / 6.0));
  };

  Nonlinearity ext = base;
  ext.h = [=, h = base.h](double u) { return u >= 0.0 ? h(u) : q(std::max(u + 1.0, 0.0)); };
  ext.dh = [=, dh = base.dh](double u) { return u >= 0.0 ? dh(u) : dq(std::max(u + 1.0, 0.0)); };
  ext.d2h = [=, d2h = base.d2h](double u) { return u >= 0.0 ? d2h(u) : d2q(std::max(u + 1.0, 0.0)); };
  if (base.H) {
    const double H0 = base.H(0.0);
    const double Q1 = big_q(1.0);
    ext.H = [=, H = base.H](double u) {
      if (u >= 0.0) return H(u);
      if (u >= -1.0) return H0 - (Q1 - big_q(u + 1.0));
      return H0 - Q1 + c * (u + 1.0);
    };
  }

  // Sampled checks of h' < gap and sublinear growth with slope below gap.
  std::vector<double> samples;
  for (int k = 0; k <= 400; ++k) samples.push_back(-3.0 + 3.0 * k / 400.0);
  for (int k = 0; k <= 2000; ++k) samples.push_back(std::pow(10.0, -6.0 + 12.0 * k / 2000.0));
  double c_hat = 0.0;
  for (double u : samples) {
    const double d = ext.dh(u);
    if (!std::isfinite(d) || !(d < gap))
      throw ProblemError("extend_h_negative: h'(" + std::to_string(u) + ") = " + std::to_string(d) +
                         " is not below the spectral gap");
    if (std::abs(u) <= 1.0) c_hat = std::max(c_hat, std::abs(ext.h(u)));
  }
  double gamma_hat = 0.0;
  for (double u : samples)
    if (std::abs(u) >= 1.0) gamma_hat = std::max(gamma_hat, std::max(0.0, std::abs(ext.h(u)) - c_hat) / std::abs(u));
  if (!(gamma_hat < gap)) throw ProblemError("extend_h_negative: growth slope is not below the spectral gap");
  return ext;
}

double derivative_defect(const Nonlinearity& n, std::span<const double> samples) {
  double worst = 0.0;
  for (double u : samples) {
    const double d = 1e-5 * std::max(1.0, std::abs(u));
    const double fd = (n.h(u + d) - n.h(u - d)) / (2.0 * d);
    const double exact = n.dh(u);
    worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
  }
  return worst;
}

double antiderivative_defect(const Nonlinearity& n, std::span<const double> samples) {
  if (!n.H) return std::numeric_limits<double>::quiet_NaN();
  double worst = 0.0;
  for (double u : samples) {
    const double d = 1e-5 * std::max(1.0, std::abs(u));
    const double fd = (n.H(u + d) - n.H(u - d)) / (2.0 * d);
    const double exact = n.h(u);
    worst = std::max(worst, std::abs(fd - exact) / std::max(1.0, std::abs(exact)));
  }
  return worst;
}

ValidationReport validate(const ProblemSpec& spec, const MeshPtr& mesh) {
  const bool same_shape = spec.domain.kind == DomainKind::Disk2D ? mesh->domain.kind == DomainKind::Disk2D
                                                                 : mesh->domain == spec.domain;
  if (!same_shape) throw ProblemError("validate: mesh domain does not match the problem");
  const Eigenpair pair = eigenpair_for(mesh->domain);
  const Field phi = Field::sample(mesh, pair.phi1);
  const Field e = sample_forcing(spec.forcing, mesh);

  ValidationReport report;
  report.orthogonality_defect = std::abs(inner(e, phi));
  const auto samples = default_samples();
  report.dh_defect = derivative_defect(spec.nonlinearity, samples);
  report.H_defect = antiderivative_defect(spec.nonlinearity, samples);
  return report;
}

}  // namespace rescurve
