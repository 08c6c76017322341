#pragma once

#include <cstddef>
#include <functional>

namespace rescurve::kernels {

/// Compressed-row view of a sparse matrix. An Eigen column-major matrix that
/// is symmetric can be viewed directly, since its CSC arrays are the CSR
/// arrays of its transpose.
struct CsrView {
  std::ptrdiff_t rows = 0;
  const int* outer = nullptr;
  const int* inner = nullptr;
  const double* values = nullptr;
};

/// Block length of weighted_dot. Partial sums are formed per block and then
/// added in block order, so the result does not depend on the thread count.
inline constexpr std::ptrdiff_t kDotBlock = 4096;

using ScalarMap = std::function<double(double)>;

namespace serial {
void csr_apply(const CsrView& a, const double* x, double* y);
double weighted_dot(std::ptrdiff_t n, const double* w, const double* u, const double* v);
void transform(std::ptrdiff_t n, const double* x, double* y, const ScalarMap& f);
}  // namespace serial

namespace parallel {
void csr_apply(const CsrView& a, const double* x, double* y);
double weighted_dot(std::ptrdiff_t n, const double* w, const double* u, const double* v);
void transform(std::ptrdiff_t n, const double* x, double* y, const ScalarMap& f);
}  // namespace parallel

/// True when the parallel variants were built with OpenMP.
bool parallel_enabled();

/// Thread count used by the parallel variants: RESCURVE_THREADS if set to a
/// positive integer, otherwise the OpenMP default. 1 without OpenMP.
int thread_count();

}  // namespace rescurve::kernels
