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

#include "fraclap/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "fft_util.hpp"

namespace fraclap {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::int64_t kFftGeneratorLimit = std::int64_t{1} << 20;
constexpr std::int64_t kReseedBlock = 4096;

void require_power_of_two(std::int64_t n, const char* what) {
  if (n < 2 || !detail::is_power_of_two(n)) {
    std::ostringstream os;
    os << what << " must be a power of two >= 2 (QFT register), got " << n;
    throw DomainError(os.str());
  }
}

void require_dense_cap(std::int64_t n, const char* what) {
  if (n > kMaxDenseDim) {
    std::ostringstream os;
    os << what << ": dense dimension " << n << " exceeds cap " << kMaxDenseDim;
    throw ResourceError(os.str(), n);
  }
}

void require_table(const KernelTable& table, std::int64_t n) {
  if (table.max_index() < n - 1) {
    std::ostringstream os;
    os << "kernel table covers |m| <= " << table.max_index()
       << " but max index " << n - 1 << " is required";
    throw DomainError(os.str());
  }
}

// Signed frequency index: k for k < n/2, k - n otherwise.
std::int64_t signed_index(std::int64_t k, std::int64_t n) {
  return k < n / 2 ? k : k - n;
}

double residue_threshold(const KernelSpec& spec) {
  return 1e-12 * std::max(1.0, spec.lambda_max());
}

std::vector<double> generator_fft(const KernelSpec& spec, std::int64_t m,
                                  std::int64_t count) {
  const auto sym = sampled_symbol(spec, m);
  detail::cvec spectrum(sym.begin(), sym.end());
  const auto col = detail::inverse_dft(spectrum);
  double residue = 0.0;
  for (const auto& z : col) residue = std::max(residue, std::abs(z.imag()));
  if (residue > residue_threshold(spec)) {
    std::ostringstream os;
    os << "circulant imaginary residue " << residue
       << " exceeds threshold; frequency grid ordering is inconsistent";
    throw NumericalError(os.str(), residue);
  }
  // The symbol is even, so g(d) = g(m - d); average the two FFT outputs so
  // assembled circulants are exactly symmetric.
  std::vector<double> out(static_cast<std::size_t>(count));
  for (std::int64_t d = 0; d < count; ++d)
    out[d] = 0.5 * (col[d].real() + col[(m - d) % m].real());
  return out;
}

// g(d) = (1/m) [s_0 + (-1)^d s_{m/2} + 2 sum_{k=1}^{m/2-1} s_k cos(2 pi k d / m)]
// for d < count. The rotation e^{2 pi i k d / m} is advanced by complex
// multiplication and reseeded from exact integer phases every kReseedBlock
// terms; each block is summed locally before being added.
std::vector<double> generator_direct(const KernelSpec& spec, std::int64_t m,
                                     std::int64_t count) {
  const double alpha = spec.alpha();
  const double lam = spec.lambda_max();
  const double md = static_cast<double>(m);
  const std::size_t nd = static_cast<std::size_t>(count);
  std::vector<double> re(nd), im(nd), step_re(nd), step_im(nd);
  for (std::size_t d = 0; d < nd; ++d) {
    const double t = 2.0 * kPi * static_cast<double>(d) / md;
    step_re[d] = std::cos(t);
    step_im[d] = std::sin(t);
  }
  std::vector<double> total(nd, 0.0), block(nd, 0.0), sym(kReseedBlock);
  const std::int64_t half = m / 2;
  for (std::int64_t k0 = 1; k0 < half; k0 += kReseedBlock) {
    const std::int64_t k1 = std::min(half, k0 + kReseedBlock);
    for (std::int64_t k = k0; k < k1; ++k)
      sym[k - k0] = lam * std::pow(2.0 * static_cast<double>(k) / md, alpha);
    for (std::size_t d = 0; d < nd; ++d) {
      const std::int64_t phase = (k0 * static_cast<std::int64_t>(d)) % m;
      const double t = 2.0 * kPi * static_cast<double>(phase) / md;
      re[d] = std::cos(t);
      im[d] = std::sin(t);
      block[d] = 0.0;
    }
    for (std::int64_t k = k0; k < k1; ++k) {
      const double s = sym[k - k0];
      for (std::size_t d = 0; d < nd; ++d) {
        block[d] += s * re[d];
        const double r = re[d] * step_re[d] - im[d] * step_im[d];
        im[d] = re[d] * step_im[d] + im[d] * step_re[d];
        re[d] = r;
      }
    }
    for (std::size_t d = 0; d < nd; ++d) total[d] += block[d];
  }
  std::vector<double> out(nd);
  for (std::size_t d = 0; d < nd; ++d) {
    const double nyquist = (d % 2 == 0 ? 1.0 : -1.0) * lam;
    out[d] = (nyquist + 2.0 * total[d]) / md;
  }
  return out;
}

Eigen::MatrixXd toeplitz_from_first_column(const std::vector<double>& col,
                                           std::int64_t n) {
  Eigen::MatrixXd a(n, n);
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t i = 0; i < n; ++i) a(i, j) = col[static_cast<std::size_t>(std::abs(i - j))];
  return a;
}

}  // namespace

std::string_view to_string(Geometry g) {
  switch (g) {
    case Geometry::kToeplitzOpen: return "toeplitz-open";
    case Geometry::kCirculantPeriodic: return "circulant-periodic";
    case Geometry::kCompressed: return "compressed";
    case Geometry::kResidual: return "residual";
  }
  return "unknown";
}

FrequencyGrid frequency_grid(std::int64_t n, double h) {
  require_power_of_two(n, "register size N");
  if (!(h > 0.0)) throw DomainError("mesh size h must be positive");
  std::vector<double> freqs(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k)
    freqs[k] = 2.0 * kPi * static_cast<double>(signed_index(k, n)) /
               (static_cast<double>(n) * h);
  return FrequencyGrid(n, h, std::move(freqs));
}

std::vector<double> sampled_symbol(const KernelSpec& spec, std::int64_t n) {
  require_power_of_two(n, "register size N");
  // |xi_k| / (pi / h) = 2 |k'| / n exactly, so sample as lambda_max * ratio^alpha.
  std::vector<double> out(static_cast<std::size_t>(n));
  const double lam = spec.lambda_max();
  for (std::int64_t k = 0; k < n; ++k) {
    const double ratio = 2.0 * static_cast<double>(std::abs(signed_index(k, n))) /
                         static_cast<double>(n);
    out[k] = lam * std::pow(ratio, spec.alpha());
  }
  return out;
}

DenseOperator::DenseOperator(Eigen::MatrixXd entries, Geometry geometry,
                             std::optional<KernelSpec> spec,
                             std::optional<PaddingMeta> meta,
                             std::vector<std::complex<double>> spectrum)
    : entries_(std::move(entries)), geometry_(geometry), spec_(spec),
      meta_(meta), spectrum_(std::move(spectrum)) {
  if (entries_.rows() != entries_.cols())
    throw DomainError("DenseOperator requires a square matrix");
  if (geometry_ == Geometry::kResidual && !meta_)
    throw DomainError("residual operators carry (N, M) metadata");
}

Eigen::VectorXd DenseOperator::apply(const Eigen::VectorXd& x) const {
  if (x.size() != dim()) throw DomainError("apply: dimension mismatch");
  if (spectrum_.empty()) return entries_ * x;
  detail::cvec xc(x.data(), x.data() + x.size());
  auto xf = detail::forward_dft(xc);
  for (std::size_t k = 0; k < xf.size(); ++k) xf[k] *= spectrum_[k];
  const auto y = detail::inverse_dft(xf);
  Eigen::VectorXd out(dim());
  for (std::int64_t i = 0; i < dim(); ++i) out(i) = y[i].real();
  return out;
}

DenseOperator toeplitz_target(const KernelSpec& spec, std::int64_t n,
                              const KernelTable& table) {
  if (n < 1) throw DomainError("toeplitz_target requires N >= 1");
  require_dense_cap(n, "toeplitz_target");
  require_table(table, n);
  if (!(table.spec() == spec)) throw DomainError("kernel table built for a different spec");
  Eigen::MatrixXd a(n, n);
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t i = 0; i < n; ++i) a(i, j) = table(i - j);
  return DenseOperator(std::move(a), Geometry::kToeplitzOpen, spec);
}

std::vector<double> circulant_generator(const KernelSpec& spec, std::int64_t m,
                                        std::int64_t count) {
  require_power_of_two(m, "register size M");
  if (m > kMaxGeneratorSize) {
    std::ostringstream os;
    os << "register size " << m << " exceeds generator cap " << kMaxGeneratorSize;
    throw ResourceError(os.str(), m);
  }
  if (count < 0 || count > m) throw DomainError("generator count out of range");
  if (m <= kFftGeneratorLimit) return generator_fft(spec, m, count);
  return generator_direct(spec, m, count);
}

DenseOperator circulant_surrogate(const KernelSpec& spec, std::int64_t n) {
  require_power_of_two(n, "register size N");
  require_dense_cap(n, "circulant_surrogate");
  const auto col = generator_fft(spec, n, n);
  Eigen::MatrixXd a(n, n);
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t i = 0; i < n; ++i) a(i, j) = col[((i - j) % n + n) % n];
  const auto sym = sampled_symbol(spec, n);
  return DenseOperator(std::move(a), Geometry::kCirculantPeriodic, spec,
                       std::nullopt, {sym.begin(), sym.end()});
}

DenseOperator aliasing_difference(const KernelSpec& spec, std::int64_t n,
                                  const KernelTable& table) {
  const auto circ = circulant_surrogate(spec, n);
  const auto target = toeplitz_target(spec, n, table);
  return DenseOperator(circ.entries() - target.entries(), Geometry::kResidual,
                       spec, PaddingMeta{n, n});
}

DenseOperator compressed_operator(const KernelSpec& spec, std::int64_t n,
                                  std::int64_t m, const KernelTable& table) {
  require_power_of_two(n, "physical size N");
  require_power_of_two(m, "padded size M");
  if (m < 2 * n) {
    std::ostringstream os;
    os << "zero-padded compression requires M >= 2N, got N=" << n << ", M=" << m;
    throw DomainError(os.str());
  }
  require_dense_cap(n, "compressed_operator");
  require_table(table, n);
  const auto gen = circulant_generator(spec, m, n);
  return DenseOperator(toeplitz_from_first_column(gen, n), Geometry::kCompressed,
                       spec, PaddingMeta{n, m});
}

DenseOperator residual(const KernelSpec& spec, std::int64_t n, std::int64_t m,
                       const KernelTable& table) {
  const auto comp = compressed_operator(spec, n, m, table);
  const auto target = toeplitz_target(spec, n, table);
  return DenseOperator(comp.entries() - target.entries(), Geometry::kResidual,
                       spec, PaddingMeta{n, m});
}

TailSum image_sum(const KernelSpec& spec, std::int64_t d, std::int64_t period,
                  std::int64_t L, bool include_zero, double quad_tol) {
  if (period < 1 || L < 0) throw DomainError("image_sum requires period >= 1, L >= 0");
  const double big_t = static_cast<double>((L + 1) * period - std::abs(d));
  if (!(big_t > 0.0)) throw DomainError("image_sum: L too small for offset");
  TailSum out;
  std::int64_t terms = 0;
  for (std::int64_t l = -L; l <= L; ++l) {
    if (l == 0 && !include_zero) continue;
    out.value += kernel_coeff(spec, d + l * period, quad_tol);
    ++terms;
  }
  const double r = spec.decay_rate();
  const double c = certified_constant(spec.alpha()) * std::pow(spec.h(), -spec.alpha());
  out.remainder_bound =
      2.0 * c * (std::pow(big_t, -r) + std::pow(big_t, 1.0 - r) /
                                           (static_cast<double>(period) * (r - 1.0)));
  if (!kernel_coeff_closed_form(spec, 1)) out.remainder_bound += quad_tol * terms;
  return out;
}

std::vector<double> exact_embedding_generator(const KernelSpec& spec,
                                              std::int64_t n,
                                              const KernelTable& table) {
  if (n < 1) throw DomainError("exact_embedding_generator requires N >= 1");
  require_table(table, n);
  if (!(table.spec() == spec)) throw DomainError("kernel table built for a different spec");
  std::vector<double> g(static_cast<std::size_t>(2 * n), 0.0);
  for (std::int64_t k = 0; k < n; ++k) g[k] = table(k);
  for (std::int64_t j = 1; j < n; ++j) g[2 * n - j] = table(-j);
  return g;
}

DenseOperator circulant_from_generator(const std::vector<double>& g) {
  const auto len = static_cast<std::int64_t>(g.size());
  if (len < 1) throw DomainError("generator must be non-empty");
  require_dense_cap(len, "circulant_from_generator");
  Eigen::MatrixXd a(len, len);
  for (std::int64_t j = 0; j < len; ++j)
    for (std::int64_t i = 0; i < len; ++i) a(i, j) = g[((i - j) % len + len) % len];
  detail::cvec gc(g.begin(), g.end());
  return DenseOperator(std::move(a), Geometry::kCirculantPeriodic, std::nullopt,
                       std::nullopt, detail::forward_dft(gc));
}

DenseOperator compress_operator(const DenseOperator& op, std::int64_t n) {
  if (n < 1 || n > op.dim()) throw DomainError("compress_operator: n out of range");
  return DenseOperator(op.entries().topLeftCorner(n, n), Geometry::kCompressed,
                       op.spec(), PaddingMeta{n, op.dim()});
}

}  // namespace fraclap
