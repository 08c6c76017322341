#include "rescurve/domain.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "rescurve/specfun.hpp"

namespace rescurve {

DomainSpec DomainSpec::disk() { return DomainSpec{DomainKind::Disk2D, 2, {}}; }

DomainSpec DomainSpec::ball(int n) {
  if (n < 2) throw DomainError("ball dimension must be >= 2, got " + std::to_string(n));
  return DomainSpec{DomainKind::BallRadial, n, {}};
}

DomainSpec DomainSpec::rect(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("rectangle side lengths must be positive");
  return DomainSpec{DomainKind::Rect2D, 2, {a, b}};
}

DomainSpec DomainSpec::rect(std::vector<double> dims) {
  if (dims.empty()) throw DomainError("rectangle needs at least one side length");
  for (double d : dims)
    if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("rectangle side lengths must be positive");
  if (dims.size() == 2) return rect(dims[0], dims[1]);
  const int n = static_cast<int>(dims.size());
  return DomainSpec{DomainKind::RectND, n, std::move(dims)};
}

double DomainSpec::measure() const {
  if (is_ball()) return omega_n(dimension) / dimension;
  double m = 1.0;
  for (double l : lengths) m *= l;
  return m;
}

std::string DomainSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case DomainKind::Disk2D: os << "disk2d"; break;
    case DomainKind::BallRadial: os << "ball " << dimension; break;
    case DomainKind::Rect2D:
    case DomainKind::RectND:
      os << "rect";
      for (double l : lengths) os << ' ' << l;
      break;
  }
  return os.str();
}

}  // namespace rescurve
