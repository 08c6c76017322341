#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rescurve {

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class DomainKind { Disk2D, BallRadial, Rect2D, RectND };

/// One of the supported domain shapes. Disk2D is the unit disk discretized in
/// polar coordinates (non-radial solutions allowed); BallRadial(n) is the unit
/// ball in R^n restricted to radial functions.
struct DomainSpec {
  DomainKind kind = DomainKind::Disk2D;
  int dimension = 2;
  std::vector<double> lengths;

  static DomainSpec disk();
  static DomainSpec ball(int n);
  static DomainSpec rect(double a, double b);
  static DomainSpec rect(std::vector<double> dims);

  bool is_ball() const { return kind == DomainKind::Disk2D || kind == DomainKind::BallRadial; }
  bool is_rect() const { return kind == DomainKind::Rect2D || kind == DomainKind::RectND; }

  /// Lebesgue measure of the domain.
  double measure() const;
  std::string describe() const;

  bool operator==(const DomainSpec&) const = default;
};

}  // namespace rescurve
