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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fraclap/errors.hpp"
#include "fraclap/kernel.hpp"

namespace fraclap {

/// Largest dense operator dimension any builder will allocate.
inline constexpr std::int64_t kMaxDenseDim = 4096;
/// Largest padded register size for which generators are computed.
inline constexpr std::int64_t kMaxGeneratorSize = std::int64_t{1} << 26;

enum class Geometry { kToeplitzOpen, kCirculantPeriodic, kCompressed, kResidual };

std::string_view to_string(Geometry g);

/// Physical size N and padded register size M of a compressed/residual block.
struct PaddingMeta {
  std::int64_t n = 0;
  std::int64_t m = 0;
};

/// FFT-ordered frequencies xi_k = 2 pi k / (N h), shifted by -2 pi / h for
/// k >= N/2.
class FrequencyGrid {
 public:
  FrequencyGrid(std::int64_t n, double h, std::vector<double> freqs)
      : n_(n), h_(h), freqs_(std::move(freqs)) {}

  std::int64_t size() const noexcept { return n_; }
  double h() const noexcept { return h_; }
  const std::vector<double>& freqs() const noexcept { return freqs_; }
  double operator[](std::int64_t k) const { return freqs_.at(static_cast<std::size_t>(k)); }

 private:
  std::int64_t n_;
  double h_;
  std::vector<double> freqs_;
};

/// DomainError unless n is a power of two >= 2.
FrequencyGrid frequency_grid(std::int64_t n, double h);

/// Sampled symbol |xi_k|^alpha in FFT order.
std::vector<double> sampled_symbol(const KernelSpec& spec, std::int64_t n);

/// Dense real square matrix tagged with the geometry it was built for.
/// Circulants also carry their DFT spectrum so they can be applied in
/// O(n log n) without touching the dense entries.
class DenseOperator {
 public:
  DenseOperator(Eigen::MatrixXd entries, Geometry geometry,
                std::optional<KernelSpec> spec = std::nullopt,
                std::optional<PaddingMeta> meta = std::nullopt,
                std::vector<std::complex<double>> spectrum = {});

  std::int64_t dim() const noexcept { return entries_.rows(); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  Geometry geometry() const noexcept { return geometry_; }
  const std::optional<KernelSpec>& spec() const noexcept { return spec_; }
  const std::optional<PaddingMeta>& meta() const noexcept { return meta_; }
  /// DFT of the first column (circulants only, else empty).
  const std::vector<std::complex<double>>& spectrum() const noexcept { return spectrum_; }

  double operator()(std::int64_t i, std::int64_t j) const { return entries_(i, j); }

  /// y = A x. Uses the stored spectrum when present.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

 private:
  Eigen::MatrixXd entries_;
  Geometry geometry_;
  std::optional<KernelSpec> spec_;
  std::optional<PaddingMeta> meta_;
  std::vector<std::complex<double>> spectrum_;
};

/// Open-boundary target, (A)_{ij} = c_{i-j}.
DenseOperator toeplitz_target(const KernelSpec& spec, std::int64_t n,
                              const KernelTable& table);

/// First `count` entries of the first column of the size-m circulant
/// QFT^-1 diag(|xi_k|^alpha) QFT. Uses an FFT up to 2^20 and direct cosine
/// sums above, so only O(m) memory is touched for large m.
std::vector<double> circulant_generator(const KernelSpec& spec, std::int64_t m,
                                        std::int64_t count);

/// QFT-native periodic surrogate, built spectrally (inverse DFT of the
/// sampled symbol). NumericalError if the imaginary residue exceeds 1e-12.
DenseOperator circulant_surrogate(const KernelSpec& spec, std::int64_t n);

/// circulant_surrogate - toeplitz_target; geometry residual, meta (n, n).
DenseOperator aliasing_difference(const KernelSpec& spec, std::int64_t n,
                                  const KernelTable& table);

/// Leading n x n block of the size-m circulant. Requires powers of two with
/// m >= 2n.
DenseOperator compressed_operator(const KernelSpec& spec, std::int64_t n,
                                  std::int64_t m, const KernelTable& table);

/// compressed_operator - toeplitz_target; geometry residual, meta (n, m).
DenseOperator residual(const KernelSpec& spec, std::int64_t n, std::int64_t m,
                       const KernelTable& table);

/// sum_{|l| <= L} c_{d + l P} (l = 0 only if requested) with a certified
/// bound on the omitted images: per side
///   C_alpha h^-alpha [T^-r + T^(1-r) / (P (r - 1))],  T = (L+1) P - |d|,
/// plus quad_tol per evaluated term when no closed form is available.
TailSum image_sum(const KernelSpec& spec, std::int64_t d, std::int64_t period,
                  std::int64_t L, bool include_zero, double quad_tol = kDefaultQuadTol);

/// g = (c_0, ..., c_{n-1}, 0, c_{-(n-1)}, ..., c_{-1}), length 2n.
std::vector<double> exact_embedding_generator(const KernelSpec& spec,
                                              std::int64_t n,
                                              const KernelTable& table);

/// L x L circulant with entries g_{(i-j) mod L}.
DenseOperator circulant_from_generator(const std::vector<double>& g);

/// Leading n x n block of any operator (the compression P^T A P).
DenseOperator compress_operator(const DenseOperator& op, std::int64_t n);

/// Zero-pads a length-N vector to length m. DomainError if m < N.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> pad(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v, std::int64_t m) {
  if (m < v.size()) throw DomainError("pad: target length smaller than input");
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out =
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(m);
  out.head(v.size()) = v;
  return out;
}

/// Keeps the first n entries. DomainError if n exceeds the input length.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> compress(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v, std::int64_t n) {
  if (n > v.size() || n < 0) throw DomainError("compress: n exceeds input length");
  return v.head(n);
}

}  // namespace fraclap
