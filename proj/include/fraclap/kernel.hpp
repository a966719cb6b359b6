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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace fraclap {

inline constexpr double kDefaultQuadTol = 1e-12;

/// Exponent and mesh size of the semi-discrete fractional Laplacian.
/// Construction enforces 0 < alpha <= 2 and h > 0.
class KernelSpec {
 public:
  KernelSpec(double alpha, double h);

  double alpha() const noexcept { return alpha_; }
  double h() const noexcept { return h_; }

  /// r_alpha = min(2, 1 + alpha), the algebraic decay rate of |c_m|.
  double decay_rate() const noexcept;
  /// Largest symbol value on the Fourier cell, (pi/h)^alpha.
  double lambda_max() const noexcept;
  /// Half-width of the Fourier cell, pi/h.
  double cell_edge() const noexcept;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

 private:
  double alpha_;
  double h_;
};

/// |xi|^alpha for |xi| <= pi/h; DomainError outside the cell.
double symbol(const KernelSpec& spec, double xi);

/// Semi-discrete kernel
///   c_m = h^-alpha / pi * int_0^pi s^alpha cos(m s) ds.
/// Dispatches to the closed forms for alpha in {1, 2}, the analytic value at
/// m = 0, the certified endpoint expansion for large |m|, and adaptive
/// quadrature otherwise. Accurate to `quad_tol` absolute.
double kernel_coeff(const KernelSpec& spec, std::int64_t m,
                    double quad_tol = kDefaultQuadTol);

/// Quadrature-only route (cos-zero splitting + adaptive Gauss-Legendre 16).
/// Throws NumericalError carrying the error estimate if the subdivision
/// budget runs out.
double kernel_coeff_quadrature(const KernelSpec& spec, std::int64_t m,
                               double quad_tol = kDefaultQuadTol,
                               std::size_t max_subdivisions = 1u << 16);

/// Closed form for alpha = 1 or alpha = 2, std::nullopt otherwise.
std::optional<double> kernel_coeff_closed_form(const KernelSpec& spec,
                                               std::int64_t m);

/// Smallest |m| at which the endpoint expansion is certified to `quad_tol`.
std::int64_t expansion_threshold(const KernelSpec& spec, double quad_tol);

/// Constants of the envelope
///   |c_m| <= h^-alpha / pi * (a |m|^-(1+alpha) + b |m|^-2 + d |m|^-3),
/// obtained from two integrations by parts of the kernel integral.
struct DecayEnvelope {
  double a;
  double b;
  double d;
};
DecayEnvelope decay_envelope(double alpha);

/// C_alpha such that |c_m| <= C_alpha h^-alpha |m|^-r_alpha for |m| >= 1.
double certified_constant(double alpha);

/// C_alpha h^-alpha |m|^-r_alpha. DomainError for m = 0.
double decay_bound(const KernelSpec& spec, std::int64_t m);

/// Upper bound on sum_{|r| > truncation} |c_r| (both signs).
double tail_remainder_bound(const KernelSpec& spec, std::int64_t truncation);

/// Cached c_0 .. c_max_index for one spec. Immutable after construction.
class KernelTable {
 public:
  KernelTable(KernelSpec spec, std::vector<double> coeffs, double quad_tol);

  const KernelSpec& spec() const noexcept { return spec_; }
  std::int64_t max_index() const noexcept {
    return static_cast<std::int64_t>(coeffs_.size()) - 1;
  }
  double quad_tol() const noexcept { return quad_tol_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }

  /// c_m with evenness applied; DomainError if |m| > max_index.
  double operator()(std::int64_t m) const;

 private:
  KernelSpec spec_;
  std::vector<double> coeffs_;
  double quad_tol_;
};

/// Builds c_0..c_max_index. For alpha in {1, 2} the closed form is stored and
/// the first indices are cross-checked against quadrature.
KernelTable kernel_table(const KernelSpec& spec, std::int64_t max_index,
                         double quad_tol = kDefaultQuadTol);

struct TailSum {
  double value = 0.0;            ///< sum over K <= |r| <= truncation
  double remainder_bound = 0.0;  ///< bound on the part beyond truncation
  double upper() const noexcept { return value + remainder_bound; }
};

/// sum_{K <= |r| <= truncation} |c_r| plus the analytic remainder beyond.
/// The true tail sum_{|r| >= K} |c_r| lies in [value, upper()].
TailSum tail_sum(const KernelSpec& spec, std::int64_t K,
                 std::int64_t truncation, double quad_tol = kDefaultQuadTol);

}  // namespace fraclap
