// Serial reference kernels against their OpenMP variants on a polar mesh.
//   bench_kernels [radial_nodes] [repetitions]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "rescurve/kernels.hpp"
#include "rescurve/mesh.hpp"

namespace k = rescurve::kernels;

namespace {

double seconds_per_call(int reps, const std::function<void()>& f) {
  f();  // warm-up
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void report(const char* name, double serial, double parallel, double difference) {
  std::printf("%-14s serial %10.3f us  parallel %10.3f us  speedup %6.2fx  max|diff| %.2e\n", name, 1e6 * serial,
              1e6 * parallel, serial / parallel, difference);
}

}  // namespace

int main(int argc, char** argv) {
  const int nodes = argc > 1 ? std::atoi(argv[1]) : 513;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 50;
  if (nodes < 3 || reps < 1) {
    std::fprintf(stderr, "usage: bench_kernels [radial_nodes >= 3] [repetitions >= 1]\n");
    return 2;
  }

  const rescurve::MeshPtr mesh = rescurve::make_polar_mesh(nodes, nodes - 1);
  const auto& s = mesh->stiffness;
  const k::CsrView view{s.rows(), s.outerIndexPtr(), s.innerIndexPtr(), s.valuePtr()};
  const std::ptrdiff_t n = s.rows();
  std::printf("%s, %td unknowns, %td nonzeros, %d threads%s\n", mesh->describe().c_str(), n,
              static_cast<std::ptrdiff_t>(s.nonZeros()), k::thread_count(),
              k::parallel_enabled() ? "" : " (OpenMP disabled)");

  std::vector<double> x(static_cast<std::size_t>(n)), w(x.size()), y1(x.size()), y2(x.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(i)] = std::sin(0.001 * static_cast<double>(i));
    w[static_cast<std::size_t>(i)] = 1.0 + 0.5 * std::cos(0.003 * static_cast<double>(i));
  }

  auto max_diff = [&] {
    double d = 0.0;
    for (std::size_t i = 0; i < y1.size(); ++i) d = std::max(d, std::abs(y1[i] - y2[i]));
    return d;
  };

  const double ts_apply = seconds_per_call(reps, [&] { k::serial::csr_apply(view, x.data(), y1.data()); });
  const double tp_apply = seconds_per_call(reps, [&] { k::parallel::csr_apply(view, x.data(), y2.data()); });
  report("csr_apply", ts_apply, tp_apply, max_diff());

  double ds = 0.0, dp = 0.0;
  const double ts_dot = seconds_per_call(reps, [&] { ds = k::serial::weighted_dot(n, w.data(), x.data(), x.data()); });
  const double tp_dot = seconds_per_call(reps, [&] { dp = k::parallel::weighted_dot(n, w.data(), x.data(), x.data()); });
  report("weighted_dot", ts_dot, tp_dot, std::abs(ds - dp));

  const k::ScalarMap h = [](double u) { return std::sqrt(std::abs(u)) * std::sin(std::log1p(std::abs(u))); };
  const double ts_map = seconds_per_call(reps, [&] { k::serial::transform(n, x.data(), y1.data(), h); });
  const double tp_map = seconds_per_call(reps, [&] { k::parallel::transform(n, x.data(), y2.data(), h); });
  report("transform", ts_map, tp_map, max_diff());
  return 0;
}
