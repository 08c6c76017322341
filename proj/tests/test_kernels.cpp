#include <cmath>
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "rescurve/kernels.hpp"
#include "rescurve/mesh.hpp"

namespace k = rescurve::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(gen);
  return v;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("parallel csr_apply matches the serial reference bit for bit") {
    for (int nodes : {9, 65, 257}) {
      const rescurve::MeshPtr m = rescurve::make_polar_mesh(nodes, nodes - 1);
      const auto& s = m->stiffness;
      const k::CsrView view{s.rows(), s.outerIndexPtr(), s.innerIndexPtr(), s.valuePtr()};
      const auto x = random_vector(static_cast<std::size_t>(s.rows()), 7u + static_cast<std::uint32_t>(nodes));
      std::vector<double> y1(x.size()), y2(x.size());
      k::serial::csr_apply(view, x.data(), y1.data());
      k::parallel::csr_apply(view, x.data(), y2.data());
      CHECK(y1 == y2);
      // Against Eigen's product.
      const Eigen::Map<const Eigen::VectorXd> xm(x.data(), s.rows());
      const Eigen::VectorXd ref = s * xm;
      double worst = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(ref[static_cast<Eigen::Index>(i)] - y1[i]));
      CHECK(worst < 1e-12);
    }
  }

  TEST_CASE("weighted_dot is deterministic and independent of the thread count") {
    for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{255}, std::size_t{4096}, std::size_t{4097},
                          std::size_t{100000}}) {
      const auto w = random_vector(n, 1), u = random_vector(n, 2), v = random_vector(n, 3);
      const auto len = static_cast<std::ptrdiff_t>(n);
      const double s = k::serial::weighted_dot(len, w.data(), u.data(), v.data());
      const double p = k::parallel::weighted_dot(len, w.data(), u.data(), v.data());
      CHECK(s == p);
      long double naive = 0.0L;
      for (std::size_t i = 0; i < n; ++i) naive += static_cast<long double>(w[i]) * u[i] * v[i];
      CHECK(s == doctest::Approx(static_cast<double>(naive)).epsilon(1e-12).scale(1.0));
    }
  }

  TEST_CASE("transform applies the map elementwise") {
    const auto x = random_vector(10000, 11);
    std::vector<double> y1(x.size()), y2(x.size());
    const k::ScalarMap f = [](double u) { return u * std::sin(u); };
    k::serial::transform(static_cast<std::ptrdiff_t>(x.size()), x.data(), y1.data(), f);
    k::parallel::transform(static_cast<std::ptrdiff_t>(x.size()), x.data(), y2.data(), f);
    CHECK(y1 == y2);
    CHECK(y1[17] == x[17] * std::sin(x[17]));
  }

  TEST_CASE("thread count honours RESCURVE_THREADS") {
    CHECK(k::thread_count() >= 1);
    if (!k::parallel_enabled()) CHECK(k::thread_count() == 1);
  }
}
