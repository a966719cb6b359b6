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

#include "fraclap/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fraclap/errors.hpp"

namespace fraclap {
namespace {

constexpr double kPi = std::numbers::pi;

double relative(const Eigen::VectorXd& approx, const Eigen::VectorXd& ref) {
  return (approx - ref).norm() / ref.norm();
}

}  // namespace

std::array<TestFunction, 3> benchmark_functions(std::int64_t n, double h) {
  if (n < 8) throw DomainError("benchmark_functions requires N >= 8");
  if (!(h > 0.0)) throw DomainError("mesh size h must be positive");
  const double len = static_cast<double>(n - 1) * h;
  const double c = 0.5 * static_cast<double>(n - 1);
  const double s = static_cast<double>(n) / 8.0;
  const double floor = std::exp(-c * c / (2 * s * s));
  std::array<TestFunction, 3> out{TestFunction{"gaussian-bump", Eigen::VectorXd(n)},
                                  TestFunction{"poly-bump", Eigen::VectorXd(n)},
                                  TestFunction{"sine-bump", Eigen::VectorXd(n)}};
  for (std::int64_t j = 0; j < n; ++j) {
    const double x = static_cast<double>(j) * h;
    const double dj = static_cast<double>(j) - c;
    out[0].samples(j) = (std::exp(-dj * dj / (2 * s * s)) - floor) / (1.0 - floor);
    const double y = 2.0 * static_cast<double>(j) / static_cast<double>(n - 1) - 1.0;
    const double b = 1.0 - y * y;
    out[1].samples(j) = b > 0.0 ? b * b : 0.0;
    out[2].samples(j) = std::sin(kPi * x / len);
  }
  out[2].samples(n - 1) = 0.0;  // sin(pi) rounding
  return out;
}

Eigen::VectorXd gaussian_state(std::int64_t n, double j0, double sigma) {
  if (n < 1) throw DomainError("gaussian_state requires N >= 1");
  if (!(sigma > 0.0)) throw DomainError("gaussian_state requires sigma > 0");
  Eigen::VectorXd u(n);
  for (std::int64_t j = 0; j < n; ++j) {
    const double d = static_cast<double>(j) - j0;
    u(j) = std::exp(-d * d / (2 * sigma * sigma));
  }
  return u / u.norm();
}

FunctionalComparison functional_comparison(const KernelSpec& spec, std::int64_t n,
                                           std::int64_t m, const Eigen::VectorXd& u) {
  if (u.size() != n) throw DomainError("functional_comparison: input length must be N");
  if (m < 2 * n) throw DomainError("functional_comparison requires M >= 2N");
  const auto table = kernel_table(spec, n - 1);
  FunctionalComparison r;
  r.target = toeplitz_target(spec, n, table).apply(u);
  r.native = circulant_surrogate(spec, n).apply(u);
  r.padded = compress(circulant_surrogate(spec, m).apply(pad(u, m)), n);
  r.native_error = (r.native - r.target).cwiseAbs();
  r.padded_error = (r.padded - r.target).cwiseAbs();
  return r;
}

GaussianDiagnostics gaussian_diagnostics(const KernelSpec& spec, std::int64_t n,
                                         std::int64_t j0, double sigma) {
  if (j0 < 0 || j0 >= n) throw DomainError("gaussian_diagnostics requires 0 <= j0 < N");
  GaussianDiagnostics g;
  g.state = gaussian_state(n, static_cast<double>(j0), sigma);
  g.actions = functional_comparison(spec, n, 2 * n, g.state);
  g.native_relative = relative(g.actions.native, g.actions.target);
  g.padded_relative = relative(g.actions.padded, g.actions.target);
  return g;
}

std::vector<SweepPoint> center_sweep(const KernelSpec& spec, std::int64_t n, double sigma,
                                     const std::vector<std::int64_t>& centers) {
  std::vector<SweepPoint> out;
  out.reserve(centers.size());
  for (const auto j0 : centers) {
    const auto g = gaussian_diagnostics(spec, n, j0, sigma);
    out.push_back({j0, g.native_relative, g.padded_relative});
  }
  return out;
}

CornerReport corner_report(const KernelSpec& spec, std::int64_t n) {
  if (n < 2) throw DomainError("corner_report requires N >= 2");
  const auto table = kernel_table(spec, n - 1);
  const auto circ = circulant_surrogate(spec, n);
  CornerReport r;
  r.target_corner = table(-(n - 1));
  r.surrogate_corner = circ(0, n - 1);
  r.difference = r.surrogate_corner - r.target_corner;
  r.dominant_image = kernel_coeff(spec, 1);
  // Remaining images c_{-(N-1) + l N}, l != 0, 1, all have |r| >= N + 1.
  r.remainder = tail_sum(spec, n + 1, n + 1 + (std::int64_t{1} << 16)).upper();
  return r;
}

HeatmapData heatmap_data(const KernelSpec& spec, std::int64_t n) {
  const auto table = kernel_table(spec, n - 1);
  HeatmapData d;
  d.target = toeplitz_target(spec, n, table).entries();
  d.surrogate = circulant_surrogate(spec, n).entries();
  d.abs_difference = (d.surrogate - d.target).cwiseAbs();
  return d;
}

}  // namespace fraclap
