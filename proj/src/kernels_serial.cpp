#include <algorithm>

#include "rescurve/kernels.hpp"

namespace rescurve::kernels::serial {

void csr_apply(const CsrView& a, const double* x, double* y) {
  for (std::ptrdiff_t i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (int k = a.outer[i]; k < a.outer[i + 1]; ++k) s += a.values[k] * x[a.inner[k]];
    y[i] = s;
  }
}

double weighted_dot(std::ptrdiff_t n, const double* w, const double* u, const double* v) {
  double total = 0.0;
  for (std::ptrdiff_t start = 0; start < n; start += kDotBlock) {
    const std::ptrdiff_t stop = std::min(n, start + kDotBlock);
    double s = 0.0;
    for (std::ptrdiff_t i = start; i < stop; ++i) s += w[i] * u[i] * v[i];
    total += s;
  }
  return total;
}

void transform(std::ptrdiff_t n, const double* x, double* y, const ScalarMap& f) {
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] = f(x[i]);
}

}  // namespace rescurve::kernels::serial
