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
#include "fraclap/block_encoding.hpp"
#include "fraclap/error_analysis.hpp"
#include "fraclap/lattice3d.hpp"
#include "oracles.hpp"

using namespace fraclap;
constexpr double pi = std::numbers::pi;

namespace {

// The alpha = 2 kernel is separable and lives on the coordinate axes.
double kernel3d_alpha2(double h, std::int64_t x, std::int64_t y, std::int64_t z) {
  const int zeros = (x == 0) + (y == 0) + (z == 0);
  if (zeros == 3) return pi * pi / (h * h);
  if (zeros < 2) return 0.0;
  return oracle::kernel_alpha2(h, x + y + z);
}

std::vector<double> sorted_eigs(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + a.rows());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("3D kernel, alpha = 2 closed form") {
  for (double h : {1.0, 0.5}) {
    const KernelSpec s(2.0, h);
    const auto k = kernel3d(s);
    for (std::int64_t x = -6; x <= 6; ++x)
      for (std::int64_t y = -3; y <= 3; ++y)
        for (std::int64_t z = 0; z <= 3; ++z)
          CHECK(std::abs((*k)(x, y, z) - kernel3d_alpha2(h, x, y, z)) <= 1e-12 * s.lambda_max());
    CHECK(std::abs((*k)(24, 0, 0) - 2.0 / (h * h * 576)) <= 1e-12 * s.lambda_max());
    CHECK(k->error_estimate() < 1e-12);
  }
}

TEST_CASE("3D kernel against substitution oracle") {
  const std::int64_t offsets[][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {3, 2, 1}, {5, 0, 0}};
  for (double alpha : {0.5, 1.0, 1.5}) {
    const KernelSpec s(alpha, 1.0);
    const auto k = kernel3d(s);
    for (const auto& r : offsets) {
      const double want = oracle::kernel3d_substitution(alpha, 1.0, r[0], r[1], r[2]);
      CHECK(std::abs((*k)(r[0], r[1], r[2]) - want) <= 1e-9);
    }
    // Permutation symmetry of the isotropic symbol.
    CHECK((*k)(3, 2, 1) == doctest::Approx((*k)(1, 3, 2)).epsilon(1e-12));
    CHECK((*k)(-3, 2, -1) == (*k)(3, 2, 1));
    CHECK_THROWS_AS((*k)(25, 0, 0), DomainError);
  }
}

TEST_CASE("3D kernel cache returns the same table") {
  const KernelSpec s(1.0, 1.0);
  CHECK(kernel3d(s).get() == kernel3d(s).get());
  CHECK_THROWS_AS(kernel3d(s, 0), DomainError);
}

TEST_CASE("3D toeplitz target") {
  const KernelSpec s(2.0, 1.0);
  const auto k = kernel3d(s);
  const auto t = toeplitz_target_3d(s, 2, *k);
  CHECK(t.dim() == 8);
  for (int i = 0; i < 8; ++i) CHECK(t(i, i) == doctest::Approx(pi * pi).epsilon(1e-13));
  CHECK(t.entries() == t.entries().transpose());
  CHECK(t(flat3(0, 0, 0, 2), flat3(1, 1, 1, 2)) == t(flat3(1, 1, 1, 2), flat3(0, 0, 0, 2)));
  CHECK(std::abs(t(flat3(0, 0, 0, 2), flat3(1, 0, 0, 2)) + 2.0) < 1e-12);
  CHECK(std::abs(t(flat3(0, 0, 0, 2), flat3(1, 1, 0, 2))) < 1e-12);
  CHECK_THROWS_AS(toeplitz_target_3d(s, 32, *k), ResourceError);
  const auto small = kernel3d(s, 2);
  CHECK_THROWS_AS(toeplitz_target_3d(s, 4, *small), DomainError);
}

TEST_CASE("3D circulant surrogate") {
  const auto c = circulant_surrogate_3d(KernelSpec(2.0, 1.0), 2);
  const auto ev = sorted_eigs(c.entries());
  const double p2 = pi * pi;
  const std::vector<double> want{0, p2, p2, p2, 2 * p2, 2 * p2, 2 * p2, 3 * p2};
  for (int i = 0; i < 8; ++i) CHECK(std::abs(ev[i] - want[i]) < 1e-10);
  CHECK(c.entries() == c.entries().transpose());

  const KernelSpec s15(1.5, 1.0);
  const auto c4 = circulant_surrogate_3d(s15, 4);
  const auto ev4 = sorted_eigs(c4.entries());
  CHECK(ev4.back() <= std::pow(std::sqrt(3.0) * pi, 1.5) * (1 + 1e-12));
  auto sym = sampled_symbol_3d(s15, 4);
  std::sort(sym.begin(), sym.end());
  for (std::size_t i = 0; i < sym.size(); ++i) CHECK(std::abs(ev4[i] - sym[i]) < 1e-10);
  CHECK_THROWS_AS(circulant_surrogate_3d(s15, 32), ResourceError);
}

TEST_CASE("3D aliasing identity, alpha = 2 exact image sums") {
  // Only on-axis images survive, so each entry is a 1D image sum.
  const KernelSpec s(2.0, 1.0);
  const std::int64_t n = 2;
  const auto c = circulant_surrogate_3d(s, n);
  for (std::int64_t i = 0; i < 8; ++i) {
    for (std::int64_t j = 0; j < 8; ++j) {
      const std::int64_t d[3] = {i % 2 - j % 2, (i / 2) % 2 - (j / 2) % 2, i / 4 - j / 4};
      double want = 0.0, rem = 0.0;
      const int nz = (d[0] != 0) + (d[1] != 0) + (d[2] != 0);
      if (nz == 0) {
        want = pi * pi;
        for (int a = 0; a < 3; ++a) {
          const auto im = oracle::image_sum_closed(2.0, 1.0, 0, n, 20000, false);
          want += im.value;
          rem += im.remainder;
        }
      } else if (nz == 1) {
        const std::int64_t dd = d[0] + d[1] + d[2];
        const auto im = oracle::image_sum_closed(2.0, 1.0, dd, n, 20000, true);
        want = im.value;
        rem = im.remainder;
      }
      CHECK(std::abs(c(i, j) - want) <= rem + 1e-12);
    }
  }
}

TEST_CASE("3D aliasing identity against library image sums") {
  for (double alpha : {1.0, 2.0}) {
    const KernelSpec s(alpha, 1.0);
    const auto k = kernel3d(s);
    const auto c = circulant_surrogate_3d(s, 2);
    for (std::int64_t i = 0; i < 8; ++i) {
      const std::array<std::int64_t, 3> d{i % 2, (i / 2) % 2, i / 4};
      const auto im = image_sum_3d(*k, d, 2, true);
      CHECK(std::abs(c(i, 0) - im.value) <= im.upper() - im.value);
    }
  }
}

TEST_CASE("3D compression and residual") {
  for (double alpha : {1.0, 2.0}) {
    const KernelSpec s(alpha, 1.0);
    const auto k = kernel3d(s);
    const std::int64_t n = 2, m = 4;
    const auto comp = compressed_operator_3d(s, n, m, *k);
    const auto big = circulant_surrogate_3d(s, m);
    // Per-axis restriction, not leading flat indices.
    for (std::int64_t i = 0; i < 8; ++i)
      for (std::int64_t j = 0; j < 8; ++j) {
        const auto bi = flat3(i % 2, (i / 2) % 2, i / 4, m);
        const auto bj = flat3(j % 2, (j / 2) % 2, j / 4, m);
        CHECK(comp(i, j) == big(bi, bj));
      }
    const auto e = residual_3d(s, n, m, *k);
    CHECK(e.meta()->m == m);
    for (std::int64_t i = 0; i < 8; ++i) {
      for (std::int64_t j = 0; j < 8; ++j) {
        const std::array<std::int64_t, 3> d{i % 2 - j % 2, (i / 2) % 2 - (j / 2) % 2,
                                            i / 4 - j / 4};
        const auto im = image_sum_3d(*k, d, m, false);
        CHECK(std::abs(e(i, j) - im.value) <= im.remainder_bound);
      }
    }
    const auto tail = tail_sum_3d(*k, m - n + 1);
    CHECK(spectral_norm(e.entries()) <= tail.upper());
    CHECK_THROWS_AS(compressed_operator_3d(s, 2, 2, *k), DomainError);
    CHECK_THROWS_AS(compressed_operator_3d(s, 8, 32, *k), ResourceError);
  }
}

TEST_CASE("3D wrap-around is largest at face, edge and corner pairs") {
  const KernelSpec s(1.5, 1.0);
  const std::int64_t n = 4;
  const auto d = aliasing_difference_3d(s, n, *kernel3d(s));
  double best = 0.0;
  std::int64_t bi = 0, bj = 0;
  for (std::int64_t i = 0; i < d.dim(); ++i)
    for (std::int64_t j = 0; j < d.dim(); ++j)
      if (std::abs(d(i, j)) > best) best = std::abs(d(i, j)), bi = i, bj = j;
  const std::int64_t dx = std::abs(bi % n - bj % n), dy = std::abs((bi / n) % n - (bj / n) % n),
                     dz = std::abs(bi / (n * n) - bj / (n * n));
  CHECK(std::max({dx, dy, dz}) == n - 1);
}

TEST_CASE("3D block encoding matches the 3D circulant") {
  for (double alpha : {1.0, 2.0, 0.5}) {
    const KernelSpec s(alpha, 1.0);
    for (std::int64_t n : {2, 4}) {
      const auto sim = block_encoding_3d(s, n);
      const auto c = circulant_surrogate_3d(s, n);
      const double lam3 = std::pow(std::sqrt(3.0) * pi, alpha);
      CHECK((sim.block * lam3 - c.entries().cast<std::complex<double>>()).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("3D tail sum") {
  const KernelSpec s(2.0, 1.0);
  const auto k = kernel3d(s);
  // Exact: 6 half-axes, each sum_{m >= K} 2/m^2.
  const auto t = tail_sum_3d(*k, 3);
  double exact = 0.0;
  for (std::int64_t m = 3; m <= 2000000; ++m) exact += 12.0 / (double(m) * m);
  CHECK(t.value <= exact);
  CHECK(t.upper() >= exact);
  CHECK_THROWS_AS(tail_sum_3d(*k, 0), DomainError);
}
