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

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "fraclap/kernel.hpp"
#include "fraclap/lattice.hpp"

namespace fraclap {

/// Default largest offset component tabulated for the 3D kernel.
inline constexpr std::int64_t kDefaultKernel3dRadius = 24;

/// 3D semi-discrete kernel
///   c_r = h^-alpha / pi^3 int_[0,pi]^3 |s|^alpha cos(r_x s_x) cos(r_y s_y) cos(r_z s_z) ds
/// for |r_i| <= radius, by tensor Gauss-Legendre cubature graded toward the
/// origin. error_estimate() is the largest change against a coarser rule.
class Kernel3d {
 public:
  Kernel3d(KernelSpec spec, std::int64_t radius, std::vector<double> coeffs,
           double error_estimate);

  const KernelSpec& spec() const noexcept { return spec_; }
  std::int64_t radius() const noexcept { return radius_; }
  double error_estimate() const noexcept { return error_estimate_; }
  /// c_(rx, ry, rz); DomainError if any |r_i| > radius.
  double operator()(std::int64_t rx, std::int64_t ry, std::int64_t rz) const;

 private:
  KernelSpec spec_;
  std::int64_t radius_;
  std::vector<double> coeffs_;  // (radius+1)^3, nonnegative offsets
  double error_estimate_;
};

/// Cached per (spec, radius); safe to call concurrently.
std::shared_ptr<const Kernel3d> kernel3d(const KernelSpec& spec,
                                         std::int64_t radius = kDefaultKernel3dRadius);

/// Estimate of sum_{||r||_inf >= K} |c_r|: shells K..radius summed from the
/// table, shells beyond extrapolated from the outermost shell assuming
/// shell sums decay like n^-r_alpha (doubled for safety), plus the table
/// error times the number of summed entries. Not a certified bound.
TailSum tail_sum_3d(const Kernel3d& kernel, std::int64_t K);

/// sum_l c_(d + P l) over every l whose image lies inside the table
/// (complete shells ||l||_inf <= L), l = 0 included only if requested. The
/// remainder extrapolates the outermost shell like tail_sum_3d. Estimate only.
TailSum image_sum_3d(const Kernel3d& kernel, const std::array<std::int64_t, 3>& d,
                     std::int64_t period, bool include_zero);

/// Flat index ix + n (iy + n iz).
inline std::int64_t flat3(std::int64_t ix, std::int64_t iy, std::int64_t iz,
                          std::int64_t n) {
  return ix + n * (iy + n * iz);
}

/// Sampled isotropic symbol (xi_x^2 + xi_y^2 + xi_z^2)^(alpha/2), flat order.
std::vector<double> sampled_symbol_3d(const KernelSpec& spec, std::int64_t n);

/// Block-Toeplitz target with entries c_(i - j). ResourceError above the
/// dense cap; DomainError if the kernel radius is below n - 1.
DenseOperator toeplitz_target_3d(const KernelSpec& spec, std::int64_t n,
                                 const Kernel3d& kernel);

/// Triple inverse DFT of the sampled isotropic symbol.
DenseOperator circulant_surrogate_3d(const KernelSpec& spec, std::int64_t n);

DenseOperator aliasing_difference_3d(const KernelSpec& spec, std::int64_t n,
                                     const Kernel3d& kernel);

/// Size-m circulant restricted to 0..n-1 on every axis. Requires powers of
/// two with m >= 2n and m^3 within the dense cap.
DenseOperator compressed_operator_3d(const KernelSpec& spec, std::int64_t n,
                                     std::int64_t m, const Kernel3d& kernel);

DenseOperator residual_3d(const KernelSpec& spec, std::int64_t n, std::int64_t m,
                          const Kernel3d& kernel);

}  // namespace fraclap
