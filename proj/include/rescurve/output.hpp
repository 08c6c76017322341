#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rescurve/asym.hpp"
#include "rescurve/continuation.hpp"

namespace rescurve {

/// Shortest round-trip decimal form, independent of the locale. Non-finite
/// values become the empty string.
std::string format_number(double v);

inline constexpr std::string_view kCurveCsvHeader =
    "xi,mu_computed,mu_asymptotic,newton_iters,pde_residual,projection_error,min_u,max_u";

/// One row per curve point; mu_asymptotic is empty where no prediction is
/// available or it is not finite.
void write_curve_csv(std::ostream& out, const SolutionCurve& curve, const AsymptoticCurve* asymptotic);

struct AsymptoticTable {
  std::vector<double> xi;
  std::vector<double> mu;
};

/// Columns xi,mu; with signed_log also log_xi,signed_log_mu where
/// signed_log_mu = sign(mu) log(1 + |mu|). Rows with |mu| < filter_small are
/// dropped when a filter is given.
void write_asymptotic_csv(std::ostream& out, const AsymptoticTable& table, bool signed_log,
                          std::optional<double> filter_small);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

/// Self-contained SVG line plot; non-finite points break the line.
std::string render_svg(std::span<const PlotSeries> series, const std::string& title, const std::string& x_label,
                       const std::string& y_label);

}  // namespace rescurve
