#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rescurve/domain.hpp"
#include "rescurve/mesh.hpp"

namespace rescurve {

class ProblemError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using ScalarFn = std::function<double(double)>;

/// Nonlinearity h with its derivative and, where known, h'' and an
/// antiderivative H. `phase` is a monotone map Theta of u >= 0 such that h
/// completes one oscillation per 2 pi of Theta; quadrature uses it to place
/// panels. Empty optional evaluators mean "not available".
struct Nonlinearity {
  std::string id;
  ScalarFn h;
  ScalarFn dh;
  ScalarFn d2h;
  ScalarFn H;
  std::optional<double> growth;
  ScalarFn phase;

  bool is_zero() const { return id == "zero"; }
};

/// Forcing term e. Radial forcings also expose their profile, which is used
/// for cell averages where e is singular at the origin.
struct Forcing {
  std::string id;
  std::function<double(std::span<const double>)> e;
  ScalarFn radial;
  bool singular_at_origin = false;

  bool is_zero() const { return id == "zero"; }
};

/// Delta u + lambda1 u + h(u) = mu phi1 + e on `domain`, u = 0 on the
/// boundary.
struct ProblemSpec {
  std::string id;
  DomainSpec domain;
  Nonlinearity nonlinearity;
  Forcing forcing;
  /// Growth exponent p used by the matching closed-form curve, if any.
  std::optional<double> asymptotic_p;
};

/// Catalog nonlinearities: "usinu", "sqrtusinu", "sinu", "sqrtusinlog",
/// "usinlog2", "sinlog", "zero". `power_sin(p)` gives |u|^p sin u.
Nonlinearity nonlinearity(std::string_view id);
Nonlinearity power_sin(double p);
std::vector<std::string> nonlinearity_ids();

/// Catalog forcings: "xy", "x2y-3xy4", "rect-shifted-xy", "cospir-over-r",
/// "zero".
Forcing forcing(std::string_view id);
std::vector<std::string> forcing_ids();

/// Forcing interpolated multilinearly from nodal values on a tensor grid.
/// axes[k] holds increasing coordinates along axis k (a single radius axis
/// for radial meshes); values are row-major with the first axis slowest.
/// Points outside the grid are clamped to it.
Forcing tabulated_forcing(std::vector<std::vector<double>> axes, std::vector<double> values);

ProblemSpec builtin(std::string_view id);
std::vector<std::string> builtin_ids();

/// Samples e on a mesh. Where e is singular at the origin, the centre node
/// takes the r^{n-1}-weighted average of e over its control volume.
Field sample_forcing(const Forcing& forcing, const MeshPtr& mesh);

/// C^2 extension of a nonlinearity given on [0, inf) to the whole line.
/// On [-1, 0) it is the quintic c + a3 s^3 + a4 s^4 + a5 s^5 in s = u + 1
/// matching h, h', h'' at 0 with flat first and second derivatives at -1, and
/// the constant c below -1. Throws ProblemError when the sampled checks
/// h' < gap and |h(u)| < gamma |u| + c with gamma < gap fail.
Nonlinearity extend_h_negative(const Nonlinearity& h, double gap);

/// Spectral gap lambda2 - lambda1 of the unit disk.
double disk_spectral_gap();

struct ValidationReport {
  double orthogonality_defect = 0.0;
  double dh_defect = 0.0;
  /// NaN when the nonlinearity has no antiderivative.
  double H_defect = 0.0;
};

/// Orthogonality of e against the continuous phi1 on the mesh, and the
/// largest finite-difference mismatch of h' and H at sample points.
ValidationReport validate(const ProblemSpec& spec, const MeshPtr& mesh);

/// Finite-difference checks used by validate.
double derivative_defect(const Nonlinearity& h, std::span<const double> samples);
double antiderivative_defect(const Nonlinearity& h, std::span<const double> samples);

}  // namespace rescurve
