#include <doctest.h>

#include <random>
#include <vector>

#include "exovdc/kernels.hpp"

using namespace exovdc;

namespace {

std::vector<double> random_buf(std::mt19937_64& g, std::size_t n,
                               double scale = 10.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  std::vector<double> v(n);
  for (double& x : v) x = d(g);
  return v;
}

bool close(double a, double b, double tol = 1e-12) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1.0});
}

}  // namespace

TEST_CASE("every available backend matches the scalar reference") {
  const kern::Ops& ref = kern::scalar_ops();
  std::mt19937_64 g(7);

  for (const kern::Backend b : kern::available_backends()) {
    const kern::Backend saved = kern::active_backend();
    REQUIRE(kern::set_backend(b));
    const kern::Ops& ops = kern::ops();
    CAPTURE(kern::backend_name(b));

    for (int trial = 0; trial < 200; ++trial) {
      const auto A = random_buf(g, 36);
      const auto B = random_buf(g, 36);
      const auto x = random_buf(g, 6);
      double y0[6], y1[6], C0[36], C1[36];

      ref.matvec6(A.data(), x.data(), y0);
      ops.matvec6(A.data(), x.data(), y1);
      for (int i = 0; i < 6; ++i) CHECK(close(y0[i], y1[i]));

      ref.matvec6_t(A.data(), x.data(), y0);
      ops.matvec6_t(A.data(), x.data(), y1);
      for (int i = 0; i < 6; ++i) CHECK(close(y0[i], y1[i]));

      ref.matmul66(A.data(), B.data(), C0);
      ops.matmul66(A.data(), B.data(), C1);
      for (int i = 0; i < 36; ++i) CHECK(close(C0[i], C1[i]));

      ref.matmul66_nt(A.data(), B.data(), C0);
      ops.matmul66_nt(A.data(), B.data(), C1);
      for (int i = 0; i < 36; ++i) CHECK(close(C0[i], C1[i]));

      const std::size_t n = 1 + trial % 40;
      const auto a = random_buf(g, n);
      const auto bb = random_buf(g, n);
      CHECK(close(ref.dot(a.data(), bb.data(), n),
                  ops.dot(a.data(), bb.data(), n)));

      auto ya = random_buf(g, n);
      auto yb = ya;
      ref.axpy(1.7, a.data(), ya.data(), n);
      ops.axpy(1.7, a.data(), yb.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(close(ya[i], yb[i]));

      const std::size_t units = 9, dim = 25;
      const auto chi = random_buf(g, dim);
      const auto centers = random_buf(g, units * dim, 1.0);
      std::vector<double> d0(units), d1(units);
      ref.sq_dist(chi.data(), centers.data(), units, dim, d0.data());
      ops.sq_dist(chi.data(), centers.data(), units, dim, d1.data());
      for (std::size_t i = 0; i < units; ++i) CHECK(close(d0[i], d1[i]));

      auto W0 = random_buf(g, units * 6);
      auto W1 = W0;
      const auto err = random_buf(g, 6);
      ref.outer_acc(W0.data(), d0.data(), err.data(), 0.3, units, 6);
      ops.outer_acc(W1.data(), d1.data(), err.data(), 0.3, units, 6);
      for (std::size_t i = 0; i < units * 6; ++i) CHECK(close(W0[i], W1[i]));
    }
    kern::set_backend(saved);
  }
}

TEST_CASE("backend selection is sticky and scalar is always available") {
  const kern::Backend saved = kern::active_backend();
  REQUIRE(kern::set_backend(kern::Backend::scalar));
  CHECK(kern::active_backend() == kern::Backend::scalar);
  for (const kern::Backend b : kern::available_backends())
    CHECK(kern::set_backend(b));
  kern::set_backend(saved);
}
