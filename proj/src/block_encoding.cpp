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

#include "fraclap/block_encoding.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "fraclap/errors.hpp"

namespace fraclap {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

bool power_of_two(std::int64_t n) { return n >= 1 && (n & (n - 1)) == 0; }

void require_register(std::int64_t n) {
  if (n < 2 || !power_of_two(n)) {
    std::ostringstream os;
    os << "register size must be a power of two >= 2, got " << n;
    throw DomainError(os.str());
  }
}

std::int64_t signed_index(std::int64_t k, std::int64_t n) {
  return k < n / 2 ? k : k - n;
}

// In-place unitary radix-2 DFT over x[offset + stride * j], j < n.
// sign = -1 is the forward transform.
void fft_strided(cd* x, std::int64_t n, std::int64_t stride, int sign) {
  for (std::int64_t i = 1, j = 0; i < n; ++i) {
    std::int64_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i * stride], x[j * stride]);
  }
  for (std::int64_t len = 2; len <= n; len <<= 1) {
    const std::int64_t half = len / 2;
    for (std::int64_t k = 0; k < half; ++k) {
      const cd w = std::polar(1.0, sign * 2.0 * kPi * static_cast<double>(k) /
                                       static_cast<double>(len));
      for (std::int64_t i = 0; i < n; i += len) {
        cd& a = x[(i + k) * stride];
        cd& b = x[(i + k + half) * stride];
        const cd t = w * b;
        b = a - t;
        a += t;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::int64_t j = 0; j < n; ++j) x[j * stride] *= scale;
}

// QFT (sign -1) or its inverse on every axis of the register, for both
// ancilla branches. Register index r sits at state position 2 r + a.
void qft_register(Eigen::VectorXcd& psi, const SymbolOracle& o, int sign) {
  const std::int64_t n = o.n;
  cd* base = psi.data();
  for (int a = 0; a < 2; ++a) {
    if (o.dims == 1) {
      fft_strided(base + a, n, 2, sign);
      continue;
    }
    for (std::int64_t axis_stride : {std::int64_t{1}, n, n * n}) {
      for (std::int64_t r = 0; r < n * n * n; ++r) {
        if ((r / axis_stride) % n != 0) continue;
        fft_strided(base + 2 * r + a, n, 2 * axis_stride, sign);
      }
    }
  }
}

void apply_oracle(Eigen::VectorXcd& psi, const SymbolOracle& o) {
  for (std::size_t k = 0; k < o.phis.size(); ++k) {
    const double c = o.phis[k];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    const cd x0 = psi(2 * k), x1 = psi(2 * k + 1);
    psi(2 * k) = c * x0 - s * x1;
    psi(2 * k + 1) = s * x0 + c * x1;
  }
}

void validate(const SymbolOracle& o) {
  if (o.dims != 1 && o.dims != 3) throw DomainError("oracle dims must be 1 or 3");
  require_register(o.n);
  if (static_cast<std::int64_t>(o.phis.size()) != o.register_dim())
    throw DomainError("oracle phi count does not match the register");
  for (double p : o.phis)
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("oracle phi outside [0, 1]");
}

BlockEncodingSim assemble(const SymbolOracle& o) {
  const std::int64_t dim = 2 * o.register_dim();
  if (dim > kMaxUnitaryDim) {
    std::ostringstream os;
    os << "block-encoding unitary dimension " << dim << " exceeds cap " << kMaxUnitaryDim;
    throw ResourceError(os.str(), dim);
  }
  BlockEncodingSim sim;
  sim.register_dim = o.register_dim();
  sim.unitary.resize(dim, dim);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    e.setZero();
    e(j) = 1.0;
    sim.unitary.col(j) = apply_block_encoding(o, e);
  }
  const std::int64_t r = sim.register_dim;
  sim.block.resize(r, r);
  for (std::int64_t j = 0; j < r; ++j)
    for (std::int64_t i = 0; i < r; ++i) sim.block(i, j) = sim.unitary(2 * i, 2 * j);
  return sim;
}

}  // namespace

SymbolOracle symbol_oracle(const KernelSpec& spec, std::int64_t n) {
  require_register(n);
  SymbolOracle o{n, 1, std::vector<double>(static_cast<std::size_t>(n)),
                 spec.lambda_max()};
  // |xi_k| / (pi/h) = 2 |k'| / n.
  for (std::int64_t k = 0; k < n; ++k)
    o.phis[k] = std::pow(2.0 * std::abs(signed_index(k, n)) / static_cast<double>(n),
                         spec.alpha());
  return o;
}

SymbolOracle symbol_oracle_3d(const KernelSpec& spec, std::int64_t n) {
  require_register(n);
  SymbolOracle o{n, 3, std::vector<double>(static_cast<std::size_t>(n * n * n)),
                 std::pow(std::sqrt(3.0) * kPi / spec.h(), spec.alpha())};
  const double nd = static_cast<double>(n);
  for (std::int64_t z = 0; z < n; ++z)
    for (std::int64_t y = 0; y < n; ++y)
      for (std::int64_t x = 0; x < n; ++x) {
        const auto sx = signed_index(x, n), sy = signed_index(y, n), sz = signed_index(z, n);
        const double q = static_cast<double>(sx * sx + sy * sy + sz * sz) * 4.0 / (3.0 * nd * nd);
        o.phis[x + n * (y + n * z)] = std::pow(q, spec.alpha() / 2.0);
      }
  return o;
}

Eigen::MatrixXcd qft_matrix(std::int64_t n) {
  require_register(n);
  Eigen::MatrixXcd f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::int64_t k = 0; k < n; ++k)
    for (std::int64_t j = 0; j < n; ++j)
      f(j, k) = std::polar(scale, -2.0 * kPi * static_cast<double>((j * k) % n) /
                                      static_cast<double>(n));
  return f;
}

Eigen::MatrixXcd diagonal_oracle(const SymbolOracle& oracle) {
  validate(oracle);
  const std::int64_t r = oracle.register_dim();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * r, 2 * r);
  for (std::int64_t k = 0; k < r; ++k) {
    const double c = oracle.phis[k];
    const double s = std::sqrt(1.0 - c * c);
    u(2 * k, 2 * k) = c;
    u(2 * k, 2 * k + 1) = -s;
    u(2 * k + 1, 2 * k) = s;
    u(2 * k + 1, 2 * k + 1) = c;
  }
  return u;
}

Eigen::VectorXcd apply_block_encoding(const SymbolOracle& oracle,
                                      const Eigen::VectorXcd& state) {
  validate(oracle);
  if (state.size() != 2 * oracle.register_dim())
    throw DomainError("state dimension must be 2 * register_dim");
  Eigen::VectorXcd psi = state;
  qft_register(psi, oracle, -1);
  apply_oracle(psi, oracle);
  qft_register(psi, oracle, +1);
  return psi;
}

BlockEncodingSim native_block_encoding(const KernelSpec& spec, std::int64_t n) {
  require_register(n);
  if (2 * n > kMaxUnitaryDim) {
    std::ostringstream os;
    os << "block-encoding unitary dimension " << 2 * n << " exceeds cap " << kMaxUnitaryDim;
    throw ResourceError(os.str(), 2 * n);
  }
  return assemble(symbol_oracle(spec, n));
}

Eigen::MatrixXcd compressed_block(const KernelSpec& spec, std::int64_t n,
                                  std::int64_t m) {
  require_register(n);
  require_register(m);
  if (m < 2 * n) {
    std::ostringstream os;
    os << "compressed block requires M >= 2N, got N=" << n << ", M=" << m;
    throw DomainError(os.str());
  }
  if (2 * m > kMaxStateDim) {
    std::ostringstream os;
    os << "statevector dimension " << 2 * m << " exceeds cap " << kMaxStateDim;
    throw ResourceError(os.str(), 2 * m);
  }
  const auto oracle = symbol_oracle(spec, m);
  Eigen::MatrixXcd out(n, n);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(2 * m);
  for (std::int64_t j = 0; j < n; ++j) {
    e.setZero();
    e(2 * j) = 1.0;  // pad(e_j) (x) |0>
    const auto psi = apply_block_encoding(oracle, e);
    for (std::int64_t i = 0; i < n; ++i) out(i, j) = psi(2 * i);
  }
  return out;
}

BlockEncodingSim block_encoding_3d(const KernelSpec& spec, std::int64_t n) {
  if (n != 2 && n != 4) {
    std::ostringstream os;
    os << "3D block encoding supports N in {2, 4}, got " << n;
    throw ResourceError(os.str(), 2 * n * n * n);
  }
  return assemble(symbol_oracle_3d(spec, n));
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd d =
      u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

}  // namespace fraclap
