#include "rescurve/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace rescurve {

namespace {

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string short_number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 4);
  return std::string(buf, res.ptr);
}

// Up to ~6 round tick values covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (span / step <= 6.0) break;
  }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step)
    out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
  return out;
}

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) return {};
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_curve_csv(std::ostream& out, const SolutionCurve& curve, const AsymptoticCurve* asymptotic) {
  out << kCurveCsvHeader << '\n';
  for (const CurvePoint& p : curve.points) {
    double predicted = std::numeric_limits<double>::quiet_NaN();
    if (asymptotic && p.xi > 0.0) predicted = (*asymptotic)(p.xi);
    out << format_number(p.xi) << ',' << format_number(p.mu) << ',' << format_number(predicted) << ','
        << p.newton_iters << ',' << format_number(p.pde_residual) << ',' << format_number(p.projection_error) << ','
        << format_number(p.min_u) << ',' << format_number(p.max_u) << '\n';
  }
}

void write_asymptotic_csv(std::ostream& out, const AsymptoticTable& table, bool signed_log,
                          std::optional<double> filter_small) {
  out << (signed_log ? "xi,mu,log_xi,signed_log_mu" : "xi,mu") << '\n';
  for (std::size_t i = 0; i < table.xi.size(); ++i) {
    const double xi = table.xi[i];
    const double mu = table.mu[i];
    if (filter_small && std::abs(mu) < *filter_small) continue;
    out << format_number(xi) << ',' << format_number(mu);
    if (signed_log) {
      const double s = (mu > 0.0) - (mu < 0.0);
      out << ',' << format_number(std::log(xi)) << ',' << format_number(s * std::log1p(std::abs(mu)));
    }
    out << '\n';
  }
}

std::string render_svg(std::span<const PlotSeries> series, const std::string& title, const std::string& x_label,
                       const std::string& y_label) {
  constexpr double kWidth = 720, kHeight = 440;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1, ymin -= 1;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

  std::ostringstream svg;
  svg.imbue(std::locale::classic());
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape_xml(title)
      << "</text>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(xmin, xmax)) {
    svg << "<line x1=\"" << sx(t) << "\" y1=\"" << kTop + ph << "\" x2=\"" << sx(t) << "\" y2=\"" << kTop + ph + 5
        << "\" stroke=\"black\"/><text x=\"" << sx(t) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
        << short_number(t) << "</text>\n";
  }
  for (double t : ticks(ymin, ymax)) {
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << sy(t) << "\" x2=\"" << kLeft << "\" y2=\"" << sy(t)
        << "\" stroke=\"black\"/><text x=\"" << kLeft - 8 << "\" y=\"" << sy(t) + 4 << "\" text-anchor=\"end\">"
        << short_number(t) << "</text>\n";
  }
  if (ymin < 0.0 && ymax > 0.0)
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << sy(0) << "\" x2=\"" << kLeft + pw << "\" y2=\"" << sy(0)
        << "\" stroke=\"#bbbbbb\"/>\n";
  svg << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 10 << "\" text-anchor=\"middle\">"
      << escape_xml(x_label) << "</text>\n";
  svg << "<text transform=\"translate(16," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape_xml(y_label) << "</text>\n";

  static constexpr const char* kColors[] = {"#1f4e9c", "#c0392b", "#27ae60", "#8e44ad"};
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    std::string path;
    bool pen_down = false;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        pen_down = false;
        continue;
      }
      path += pen_down ? " L" : " M";
      path += format_number(std::round(sx(s.x[i]) * 100) / 100) + ',' + format_number(std::round(sy(s.y[i]) * 100) / 100);
      pen_down = true;
    }
    const char* color = kColors[k % 4];
    svg << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
        << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    const double ly = kTop + 16 + 16.0 * static_cast<double>(k);
    svg << "<line x1=\"" << kLeft + pw - 150 << "\" y1=\"" << ly << "\" x2=\"" << kLeft + pw - 120 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"" << (s.dashed ? " stroke-dasharray=\"6,4\"" : "")
        << "/><text x=\"" << kLeft + pw - 114 << "\" y=\"" << ly + 4 << "\">" << escape_xml(s.label) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rescurve
