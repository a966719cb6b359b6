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

#include "fraclap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fraclap/block_encoding.hpp"
#include "fraclap/error_analysis.hpp"
#include "fraclap/lattice.hpp"
#include "fraclap/lattice3d.hpp"

namespace fraclap {
namespace {

constexpr std::int64_t kImageShells = 20000;

std::string tag(const char* what, double alpha, std::int64_t n, std::int64_t m = 0) {
  std::ostringstream os;
  os << what << "[alpha=" << alpha << ",N=" << n;
  if (m) os << ",M=" << m;
  os << "]";
  return os.str();
}

// Tracks the entry with the largest error / allowance ratio.
struct Worst {
  double ratio = -1.0, err = 0.0, tol = 0.0;
  void add(double e, double t) {
    const double r = t > 0.0 ? e / t : (e > 0.0 ? INFINITY : 0.0);
    if (r > ratio) ratio = r, err = e, tol = t;
  }
  CheckResult result(std::string name) const {
    return {std::move(name), err, tol, ratio <= 1.0};
  }
};

// Entry (i, j) of a Toeplitz-structured block only depends on i - j, so image
// sums are computed once per offset.
CheckResult image_check(const char* what, const KernelSpec& spec, const Eigen::MatrixXd& a,
                        std::int64_t n, std::int64_t period, bool include_zero) {
  Worst w;
  const double slack = 1e-12 * spec.lambda_max();
  for (std::int64_t d = -(n - 1); d <= n - 1; ++d) {
    const auto im = image_sum(spec, d, period, kImageShells, include_zero);
    for (std::int64_t j = std::max<std::int64_t>(0, -d); j < n && j + d < n; ++j)
      w.add(std::abs(a(j + d, j) - im.value), im.remainder_bound + slack);
  }
  return w.result(tag(what, spec.alpha(), n, period == n ? 0 : period));
}

void aliasing_suite(const VerifyConfig& c, std::vector<CheckResult>& out) {
  for (double alpha : {1.0, 2.0}) {
    const KernelSpec spec(alpha, c.h);
    for (std::int64_t n : {4, 8, 16}) {
      Eigen::MatrixXd circ = circulant_surrogate(spec, n).entries();
      if (c.perturb == Perturbation::kCorner) {
        circ(0, n - 1) = -circ(0, n - 1);
        circ(n - 1, 0) = -circ(n - 1, 0);
      }
      out.push_back(image_check("aliasing", spec, circ, n, n, true));
    }
  }
}

void compression_suite(const VerifyConfig& c, std::vector<CheckResult>& out) {
  const std::pair<std::int64_t, std::int64_t> sizes[] = {{4, 8}, {8, 16}, {16, 32}, {64, 128}};
  for (double alpha : c.alphas) {
    const KernelSpec spec(alpha, c.h);
    const auto table = kernel_table(spec, 64);
    for (auto [n, m] : sizes) {
      const auto e = residual(spec, n, m, table);
      out.push_back(image_check("compression", spec, e.entries(), n, m, false));
      const auto comp = compressed_operator(spec, n, m, table);
      const auto t = toeplitz_target(spec, n, table);
      const double gap = (t.entries() + e.entries() - comp.entries()).cwiseAbs().maxCoeff();
      const double tol = 4 * std::numeric_limits<double>::epsilon() *
                         comp.entries().cwiseAbs().maxCoeff();
      out.push_back({tag("compression-assembly", alpha, n, m), gap, tol, gap <= tol});
    }
    for (std::int64_t n : {2, 4, 8, 64}) {
      const auto g = exact_embedding_generator(spec, n, table);
      const auto emb = compress_operator(circulant_from_generator(g), n);
      const double gap = (emb.entries() - toeplitz_target(spec, n, table).entries())
                             .cwiseAbs().maxCoeff();
      out.push_back({tag("exact-embedding", alpha, n), gap, 0.0, gap == 0.0});
    }
  }
}

void schur_suite(const VerifyConfig& c, std::vector<CheckResult>& out) {
  for (double alpha : c.alphas) {
    const KernelSpec spec(alpha, c.h);
    const auto table = kernel_table(spec, 64);
    for (std::int64_t n : {16, 32, 64}) {
      Worst w;
      for (std::int64_t m : {2 * n, 4 * n, 8 * n})
        w.add(spectral_norm(residual(spec, n, m, table).entries()), schur_bound(spec, n, m));
      out.push_back(w.result(tag("schur-bound", alpha, n)));
    }
  }
}

void block_suite(const VerifyConfig& c, std::vector<CheckResult>& out) {
  for (double alpha : c.alphas) {
    const KernelSpec spec(alpha, c.h);
    const double lam = spec.lambda_max();
    for (std::int64_t n : {4, 8, 16, 32}) {
      const auto sim = native_block_encoding(spec, n);
      const double defect = unitarity_defect(sim.unitary);
      out.push_back({tag("unitarity", alpha, n), defect, 1e-10, defect <= 1e-10});
      const auto circ = circulant_surrogate(spec, n);
      const double gap =
          (sim.block * lam - circ.entries().cast<std::complex<double>>()).cwiseAbs().maxCoeff();
      out.push_back({tag("block-identity", alpha, n), gap, 1e-10, gap <= 1e-10});
    }
    const auto table = kernel_table(spec, 16);
    for (auto [n, m] : {std::pair<std::int64_t, std::int64_t>{4, 8}, {8, 16}, {8, 32}}) {
      const auto b = compressed_block(spec, n, m);
      const auto comp = compressed_operator(spec, n, m, table);
      const double gap =
          (b * lam - comp.entries().cast<std::complex<double>>()).cwiseAbs().maxCoeff();
      out.push_back({tag("compressed-block", alpha, n, m), gap, 1e-10, gap <= 1e-10});
    }
  }
}

void three_d_suite(const VerifyConfig& c, std::vector<CheckResult>& out) {
  const std::int64_t n = c.n3, m = c.m3;
  for (double alpha : {1.0, 2.0}) {
    const KernelSpec spec(alpha, c.h);
    const auto kernel = kernel3d(spec);
    {
      const auto circ = circulant_surrogate_3d(spec, n);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(circ.entries(), Eigen::EigenvaluesOnly);
      std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + circ.dim());
      auto sym = sampled_symbol_3d(spec, n);
      std::sort(sym.begin(), sym.end());
      double gap = 0.0;
      for (std::size_t i = 0; i < sym.size(); ++i) gap = std::max(gap, std::abs(ev[i] - sym[i]));
      out.push_back({tag("3d-spectrum", alpha, n), gap, 1e-10, gap <= 1e-10});
    }
    const auto e = residual_3d(spec, n, m, *kernel);
    Worst w;
    for (std::int64_t i = 0; i < e.dim(); ++i)
      for (std::int64_t j = 0; j < e.dim(); ++j) {
        const std::array<std::int64_t, 3> d{i % n - j % n, (i / n) % n - (j / n) % n,
                                            i / (n * n) - j / (n * n)};
        const auto im = image_sum_3d(*kernel, d, m, false);
        w.add(std::abs(e(i, j) - im.value), im.remainder_bound + 1e-12);
      }
    out.push_back(w.result(tag("3d-compression", alpha, n, m)));
    const double norm = spectral_norm(e.entries());
    const double bound = tail_sum_3d(*kernel, m - n + 1).upper();
    out.push_back({tag("3d-norm-bound", alpha, n, m), norm, bound, norm <= bound});
    if (n == 2 || n == 4) {
      const auto sim = block_encoding_3d(spec, n);
      const double lam3 = std::pow(std::sqrt(3.0) * std::numbers::pi / c.h, alpha);
      const double gap = (sim.block * lam3 - circulant_surrogate_3d(spec, n)
                                                 .entries().cast<std::complex<double>>())
                             .cwiseAbs().maxCoeff();
      out.push_back({tag("3d-block-identity", alpha, n), gap, 1e-10, gap <= 1e-10});
    }
  }
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyConfig& config) {
  std::vector<CheckResult> out;
  aliasing_suite(config, out);
  if (config.three_d) {
    three_d_suite(config, out);
    return out;
  }
  compression_suite(config, out);
  schur_suite(config, out);
  block_suite(config, out);
  return out;
}

}  // namespace fraclap
