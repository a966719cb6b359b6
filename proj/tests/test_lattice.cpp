// Copyright 2026 The fraclap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fraclap/lattice.hpp"
#include "oracles.hpp"

using namespace fraclap;
constexpr double pi = std::numbers::pi;

namespace {

KernelTable table_for(double alpha, std::int64_t n, double h = 1.0) {
  return kernel_table(KernelSpec(alpha, h), n);
}

std::vector<double> sorted_eigenvalues(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + a.rows());
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace

TEST_CASE("frequency grid examples") {
  const auto g8 = frequency_grid(8, 1.0);
  const std::vector<double> want{0, pi / 4, pi / 2, 3 * pi / 4, -pi, -3 * pi / 4, -pi / 2, -pi / 4};
  CHECK(g8.freqs() == want);
  CHECK(frequency_grid(2, 1.0).freqs() == std::vector<double>{0, -pi});
  CHECK(frequency_grid(4, 0.5).freqs() == std::vector<double>{0, pi, -2 * pi, -pi});
  CHECK_THROWS_AS(frequency_grid(6, 1.0), DomainError);
  CHECK_THROWS_AS(frequency_grid(1, 1.0), DomainError);
  CHECK_THROWS_AS(frequency_grid(8, 0.0), DomainError);
}

TEST_CASE("frequency grid invariants") {
  for (double h : {0.25, 1.0, 3.0}) {
    for (std::int64_t n : {2, 4, 16, 128}) {
      const auto g = frequency_grid(n, h);
      double mx = 0.0;
      for (std::int64_t k = 0; k < n; ++k) {
        mx = std::max(mx, std::abs(g[k]));
        CHECK(std::abs(g[k]) == doctest::Approx(std::abs(g[(n - k) % n])).epsilon(1e-15));
      }
      CHECK(mx == doctest::Approx(pi / h).epsilon(1e-15));
      CHECK(std::abs(g[n / 2]) == doctest::Approx(pi / h).epsilon(1e-15));
    }
  }
}

TEST_CASE("toeplitz target examples") {
  const KernelSpec s(1.0, 1.0);
  const auto t2 = toeplitz_target(s, 2, table_for(1.0, 4));
  CHECK(t2(0, 0) == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK(t2(0, 1) == doctest::Approx(-2 / pi).epsilon(1e-14));
  CHECK(t2(1, 0) == t2(0, 1));
  CHECK(t2.geometry() == Geometry::kToeplitzOpen);
  const auto t3 = toeplitz_target(s, 3, table_for(1.0, 4));
  CHECK(t3(0, 2) == 0.0);
  const KernelSpec s15(1.5, 1.0);
  const auto t1 = toeplitz_target(s15, 1, table_for(1.5, 0));
  CHECK(t1.dim() == 1);
  CHECK(t1(0, 0) == doctest::Approx(std::pow(pi, 1.5) / 2.5).epsilon(1e-13));
  CHECK_THROWS_AS(toeplitz_target(s, 8, table_for(1.0, 4)), DomainError);
  try {
    toeplitz_target(s, 8, table_for(1.0, 4));
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("7") != std::string::npos);
  }
}

TEST_CASE("circulant surrogate matches naive inverse DFT") {
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    for (double h : {0.5, 1.0}) {
      for (std::int64_t n : {2, 8, 32}) {
        const KernelSpec s(alpha, h);
        const auto c = circulant_surrogate(s, n);
        const auto col = oracle::circulant_column_naive(alpha, h, n);
        const double scale = s.lambda_max();
        for (std::int64_t i = 0; i < n; ++i)
          for (std::int64_t j = 0; j < n; ++j)
            CHECK(std::abs(c(i, j) - col[((i - j) % n + n) % n]) <= 1e-13 * scale);
        CHECK(c.entries().isApprox(c.entries().transpose(), 0.0));
        CHECK(c.geometry() == Geometry::kCirculantPeriodic);
      }
    }
  }
}

TEST_CASE("circulant surrogate small examples") {
  const auto c = circulant_surrogate(KernelSpec(2.0, 1.0), 2);
  const auto ev = sorted_eigenvalues(c.entries());
  CHECK(std::abs(ev[0]) < 1e-14);
  CHECK(ev[1] == doctest::Approx(pi * pi).epsilon(1e-14));
  // Two-point inverse DFT: ((a+b)/2, (a-b)/2) with a = 0, b = lambda.
  for (double alpha : {0.5, 1.0, 1.5}) {
    const KernelSpec s(alpha, 1.0);
    const double b = s.lambda_max();
    const auto c2 = circulant_surrogate(s, 2);
    CHECK(c2(0, 0) == doctest::Approx(b / 2).epsilon(1e-15));
    CHECK(c2(0, 1) == doctest::Approx(-b / 2).epsilon(1e-15));
  }
}

TEST_CASE("circulant spectrum equals sampled symbol") {
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    for (std::int64_t n : {4, 16, 64}) {
      const KernelSpec s(alpha, 1.0);
      const auto c = circulant_surrogate(s, n);
      auto sym = sampled_symbol(s, n);
      for (std::int64_t k = 0; k < n; ++k) {
        const auto g = frequency_grid(n, 1.0);
        CHECK(sym[k] == doctest::Approx(std::pow(std::abs(g[k]), alpha)).epsilon(1e-14));
      }
      std::sort(sym.begin(), sym.end());
      const auto ev = sorted_eigenvalues(c.entries());
      for (std::int64_t k = 0; k < n; ++k) {
        CHECK(std::abs(ev[k] - sym[k]) <= 1e-10);
        CHECK(ev[k] >= -1e-10);
        CHECK(ev[k] <= s.lambda_max() + 1e-10);
      }
    }
  }
}

TEST_CASE("matrix-free apply agrees with dense") {
  const KernelSpec s(1.5, 1.0);
  const auto c = circulant_surrogate(s, 32);
  Eigen::VectorXd x(32);
  for (int i = 0; i < 32; ++i) x(i) = std::sin(0.3 * i) + 0.1 * i;
  CHECK((c.apply(x) - c.entries() * x).norm() <= 1e-12 * x.norm() * s.lambda_max());
  const auto t = toeplitz_target(s, 32, table_for(1.5, 32));
  CHECK((t.apply(x) - t.entries() * x).norm() == 0.0);
}

TEST_CASE("aliasing identity against image sums") {
  for (double alpha : {1.0, 2.0}) {
    for (double h : {1.0, 0.5}) {
      for (std::int64_t n : {4, 8, 16}) {
        const KernelSpec s(alpha, h);
        const auto c = circulant_surrogate(s, n);
        const auto diff = aliasing_difference(s, n, table_for(alpha, n, h));
        CHECK(diff.geometry() == Geometry::kResidual);
        REQUIRE(diff.meta());
        CHECK(diff.meta()->n == n);
        CHECK(diff.meta()->m == n);
        for (std::int64_t i = 0; i < n; ++i) {
          for (std::int64_t j = 0; j < n; ++j) {
            const auto full = oracle::image_sum_closed(alpha, h, i - j, n, 20000, true);
            REQUIRE(full.remainder < 1e-8);
            CHECK(std::abs(c(i, j) - full.value) <= full.remainder + 1e-12 * s.lambda_max());
            const auto img = oracle::image_sum_closed(alpha, h, i - j, n, 20000, false);
            CHECK(std::abs(diff(i, j) - img.value) <= img.remainder + 1e-12 * s.lambda_max());
          }
        }
      }
    }
  }
}

TEST_CASE("aliasing difference examples") {
  const KernelSpec s(1.0, 1.0);
  const auto d8 = aliasing_difference(s, 8, table_for(1.0, 8));
  const auto img = oracle::image_sum_closed(1.0, 1.0, -7, 8, 4000, false);
  CHECK(std::abs(d8(0, 7) - img.value) <= img.remainder + 1e-13);
  CHECK(std::abs(d8(0, 7) - (-2 / pi)) < 0.05);
  const auto d2 = aliasing_difference(s, 2, table_for(1.0, 2));
  CHECK(std::abs(d2(0, 0)) < 1e-14);

  const KernelSpec s15(1.5, 1.0);
  const auto d64 = aliasing_difference(s15, 64, table_for(1.5, 64));
  const double corner = std::abs(d64(0, 63));
  for (std::int64_t i = 24; i < 40; ++i)
    for (std::int64_t j = 24; j < 40; ++j) CHECK(std::abs(d64(i, j)) < 0.05 * corner);
}

TEST_CASE("corner dominance") {
  const KernelSpec s(1.0, 1.0);
  const auto d = aliasing_difference(s, 64, table_for(1.0, 64));
  const auto ts = tail_sum(s, 63, 1 << 18);
  CHECK(std::abs(d(0, 63)) >= 2 / pi - ts.upper());
  // The (0,1) entry only sees images at distance >= 63.
  CHECK(std::abs(d(0, 1)) < 1e-2 * std::abs(d(0, 63)));
}

TEST_CASE("pad and compress") {
  Eigen::VectorXd a(2);
  a << 1, 0;
  const auto p = pad(a, 4);
  CHECK(p.size() == 4);
  CHECK(p(0) == 1.0);
  CHECK(p.tail(3).isZero(0));
  Eigen::VectorXd g(16);
  for (int i = 0; i < 16; ++i) g(i) = std::exp(-0.5 * (i - 8) * (i - 8) / 4.0);
  g.normalize();
  CHECK(pad(g, 32).norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(compress(pad(g, 32), 16) == g);
  Eigen::VectorXd v(3);
  v << 1.5, -2.0, 3.0;
  CHECK(pad(v, 3) == v);
  CHECK(compress(v, 3) == v);
  CHECK_THROWS_AS(pad(v, 2), DomainError);
  CHECK_THROWS_AS(compress(v, 4), DomainError);
  Eigen::VectorXcd z(2);
  z << std::complex<double>(0, 1), 2.0;
  CHECK(compress(pad(z, 8), 2) == z);
}

TEST_CASE("compressed operator examples") {
  const KernelSpec s1(1.0, 1.0);
  const auto tbl = table_for(1.0, 8);
  const auto comp = compressed_operator(s1, 4, 8, tbl);
  CHECK(comp.geometry() == Geometry::kCompressed);
  CHECK(comp.meta()->n == 4);
  CHECK(comp.meta()->m == 8);
  for (std::int64_t i = 0; i < 4; ++i) {
    for (std::int64_t j = 0; j < 4; ++j) {
      const auto img = oracle::image_sum_closed(1.0, 1.0, i - j, 8, 4000, false);
      CHECK(std::abs(comp(i, j) - tbl(i - j) - img.value) <= img.remainder + 1e-13);
    }
  }
  const KernelSpec s2(2.0, 1.0);
  const auto c2 = compressed_operator(s2, 2, 4, table_for(2.0, 4));
  auto c = [](std::int64_t m) { return oracle::kernel_alpha2(1.0, m); };
  // Images with |l| >= 2 sit at distance >= 7.
  const double tb = tail_sum(s2, 7, 7 + (1 << 16)).upper();
  CHECK(std::abs(c2(0, 0) - (c(0) + c(4) + c(-4))) <= tb);
  CHECK(std::abs(c2(0, 1) - (c(-1) + c(3) + c(-5))) <= tb);
  CHECK(std::abs(c2(1, 0) - (c(1) + c(5) + c(-3))) <= tb);
  for (std::int64_t d : {0, 1}) {
    const auto img = oracle::image_sum_closed(2.0, 1.0, d, 4, 20000, false);
    CHECK(std::abs(c2(d, 0) - c(d) - img.value) <= img.remainder + 1e-12);
  }
  CHECK_THROWS_AS(compressed_operator(s1, 4, 4, tbl), DomainError);
  CHECK_THROWS_AS(compressed_operator(s1, 4, 12, tbl), DomainError);
  CHECK_THROWS_AS(compressed_operator(s1, 3, 8, tbl), DomainError);
}

TEST_CASE("compressed operator is the leading block of the padded surrogate") {
  for (double alpha : {0.5, 1.5}) {
    const KernelSpec s(alpha, 1.0);
    const auto comp = compressed_operator(s, 8, 32, table_for(alpha, 8));
    const auto big = circulant_surrogate(s, 32);
    CHECK((comp.entries() - big.entries().topLeftCorner(8, 8)).cwiseAbs().maxCoeff() <= 1e-13);
    const auto via = compress_operator(big, 8);
    CHECK(via.meta()->m == 32);
  }
}

TEST_CASE("large-M generator uses direct sums consistently") {
  // FFT path at 2^20 versus the direct-sum path at 2^21 via the exact
  // relation to an independent long-double reference at small index.
  const KernelSpec s(0.5, 1.0);
  const std::int64_t m = std::int64_t{1} << 21;
  const auto direct = circulant_generator(s, m, 4);
  const auto fft = circulant_generator(s, std::int64_t{1} << 20, 4);
  // Both approximate c_d to within the image tail at distance ~ M.
  const auto tbl = table_for(0.5, 4);
  for (int d = 0; d < 4; ++d) {
    const double tail = tail_sum(s, (std::int64_t{1} << 20) - 4, (std::int64_t{1} << 20) + (1 << 16)).upper();
    CHECK(std::abs(direct[d] - tbl(d)) <= tail);
    CHECK(std::abs(fft[d] - tbl(d)) <= tail);
  }
  CHECK_THROWS_AS(circulant_generator(s, std::int64_t{1} << 27, 4), ResourceError);
}

TEST_CASE("residual examples and entry bound") {
  const KernelSpec s1(1.0, 1.0);
  const auto e = residual(s1, 4, 8, table_for(1.0, 4));
  CHECK(e.geometry() == Geometry::kResidual);
  CHECK(std::abs(e(0, 0)) < 1e-14);
  const auto img = oracle::image_sum_closed(1.0, 1.0, -3, 8, 4000, false);
  CHECK(std::abs(e(0, 3) - img.value) <= img.remainder + 1e-13);
  // Every image has the sign of c_5 = -2/(25 pi), the nearest one.
  CHECK(e(0, 3) <= -2 / (25 * pi));
  CHECK(e(0, 3) > 2 * (-2 / (25 * pi)));

  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    const KernelSpec s(alpha, 1.0);
    for (std::int64_t n : {16, 32}) {
      const auto tbl = table_for(alpha, n);
      for (std::int64_t m : {2 * n, 4 * n}) {
        const auto r = residual(s, n, m, tbl);
        const double bound = tail_sum(s, m - n + 1, m - n + 1 + (1 << 16)).upper();
        CHECK(r.entries().cwiseAbs().maxCoeff() <= bound);
      }
    }
  }
}

TEST_CASE("compression identity") {
  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    const KernelSpec s(alpha, 1.0);
    for (std::int64_t n : {4, 16, 64}) {
      const auto tbl = table_for(alpha, n);
      const auto t = toeplitz_target(s, n, tbl);
      for (std::int64_t m : {2 * n, 8 * n}) {
        const auto comp = compressed_operator(s, n, m, tbl);
        const auto r = residual(s, n, m, tbl);
        const double scale = comp.entries().cwiseAbs().maxCoeff();
        const double gap = (t.entries() + r.entries() - comp.entries()).cwiseAbs().maxCoeff();
        CHECK(gap <= 4 * std::numeric_limits<double>::epsilon() * scale);
      }
    }
  }
}

TEST_CASE("exact 2N embedding") {
  const auto g1 = exact_embedding_generator(KernelSpec(1.0, 1.0), 2, table_for(1.0, 2));
  REQUIRE(g1.size() == 4);
  CHECK(g1[0] == doctest::Approx(pi / 2).epsilon(1e-15));
  CHECK(g1[1] == doctest::Approx(-2 / pi).epsilon(1e-15));
  CHECK(g1[2] == 0.0);
  CHECK(g1[3] == g1[1]);
  const auto g2 = exact_embedding_generator(KernelSpec(2.0, 1.0), 2, table_for(2.0, 2));
  CHECK(g2[0] == doctest::Approx(pi * pi / 3).epsilon(1e-15));
  CHECK(g2[1] == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(g2[2] == 0.0);
  CHECK(g2[3] == doctest::Approx(-2.0).epsilon(1e-15));
  const KernelSpec s05(0.5, 1.0);
  const auto g0 = exact_embedding_generator(s05, 1, table_for(0.5, 1));
  CHECK(g0.size() == 2);
  CHECK(g0[1] == 0.0);

  for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
    const KernelSpec s(alpha, 1.0);
    for (std::int64_t n : {1, 2, 4, 8, 64}) {
      const auto tbl = table_for(alpha, n);
      const auto g = exact_embedding_generator(s, n, tbl);
      CHECK(g[n] == 0.0);
      const auto c = compress_operator(circulant_from_generator(g), n);
      const auto t = toeplitz_target(s, n, tbl);
      CHECK((c.entries().array() == t.entries().array()).all());
    }
  }
}

TEST_CASE("circulant from generator examples") {
  const auto c = circulant_from_generator({2.0, 3.0});
  CHECK(c(0, 0) == 2.0);
  CHECK(c(0, 1) == 3.0);
  CHECK(c(1, 0) == 3.0);
  CHECK(c(1, 1) == 2.0);
  const auto id = circulant_from_generator({1.0, 0.0, 0.0, 0.0});
  CHECK(id.entries() == Eigen::MatrixXd::Identity(4, 4));
  CHECK_THROWS_AS(circulant_from_generator({}), DomainError);
}
