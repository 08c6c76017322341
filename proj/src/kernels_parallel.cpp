#include <algorithm>
#include <cstdlib>
#include <vector>

#include "rescurve/kernels.hpp"

#ifdef RESCURVE_HAVE_OPENMP
#include <omp.h>
#endif

namespace rescurve::kernels {

namespace {

// Below these sizes the fork/join cost dominates.
constexpr std::ptrdiff_t kMinParallelRows = 2048;
constexpr std::ptrdiff_t kMinParallelMap = 256;

}  // namespace

bool parallel_enabled() {
#ifdef RESCURVE_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

int thread_count() {
#ifdef RESCURVE_HAVE_OPENMP
  static const int count = [] {
    if (const char* env = std::getenv("RESCURVE_THREADS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return omp_get_max_threads();
  }();
  return count;
#else
  return 1;
#endif
}

namespace parallel {

void csr_apply(const CsrView& a, const double* x, double* y) {
  if (a.rows < kMinParallelRows || thread_count() == 1) return serial::csr_apply(a, x, y);
#ifdef RESCURVE_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
  for (std::ptrdiff_t i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (int k = a.outer[i]; k < a.outer[i + 1]; ++k) s += a.values[k] * x[a.inner[k]];
    y[i] = s;
  }
}

double weighted_dot(std::ptrdiff_t n, const double* w, const double* u, const double* v) {
  const std::ptrdiff_t blocks = (n + kDotBlock - 1) / kDotBlock;
  if (blocks < 2 || thread_count() == 1) return serial::weighted_dot(n, w, u, v);
  std::vector<double> partial(static_cast<std::size_t>(blocks));
#ifdef RESCURVE_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
  for (std::ptrdiff_t b = 0; b < blocks; ++b) {
    const std::ptrdiff_t start = b * kDotBlock;
    const std::ptrdiff_t stop = std::min(n, start + kDotBlock);
    double s = 0.0;
    for (std::ptrdiff_t i = start; i < stop; ++i) s += w[i] * u[i] * v[i];
    partial[static_cast<std::size_t>(b)] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

void transform(std::ptrdiff_t n, const double* x, double* y, const ScalarMap& f) {
  if (n < kMinParallelMap || thread_count() == 1) return serial::transform(n, x, y, f);
#ifdef RESCURVE_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] = f(x[i]);
}

}  // namespace parallel

}  // namespace rescurve::kernels
