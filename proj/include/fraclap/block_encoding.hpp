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
#include <cstdint>
#include <vector>

#include "fraclap/kernel.hpp"

namespace fraclap {

/// Largest dense unitary (2 * register_dim) the simulator will assemble.
inline constexpr std::int64_t kMaxUnitaryDim = std::int64_t{1} << 13;
/// Largest statevector (2 * M) used by compressed_block.
inline constexpr std::int64_t kMaxStateDim = std::int64_t{1} << 21;

/// Normalized symbol phi_k = symbol(xi_k) / lambda_max on the register.
struct SymbolOracle {
  std::int64_t n = 0;  ///< points per axis
  int dims = 1;        ///< 1 or 3
  std::vector<double> phis;
  double lambda_max = 1.0;

  std::int64_t register_dim() const noexcept {
    return dims == 1 ? n : n * n * n;
  }
};

/// 1D oracle, lambda_max = (pi/h)^alpha.
SymbolOracle symbol_oracle(const KernelSpec& spec, std::int64_t n);
/// Isotropic 3D oracle, lambda_max = (sqrt(3) pi/h)^alpha, flat index
/// kx + n (ky + n kz).
SymbolOracle symbol_oracle_3d(const KernelSpec& spec, std::int64_t n);

/// Unitary DFT, F_{jk} = exp(-2 pi i j k / n) / sqrt(n).
Eigen::MatrixXcd qft_matrix(std::int64_t n);

/// U_D = sum_k |k><k| (x) R_y(2 arccos phi_k); basis index 2 k + ancilla.
Eigen::MatrixXcd diagonal_oracle(const SymbolOracle& oracle);

/// Applies (QFT^-1 (x) I) U_D (QFT (x) I) to a register (x) ancilla state,
/// indexed 2 k + ancilla. The QFT is a radix-2 FFT per axis.
Eigen::VectorXcd apply_block_encoding(const SymbolOracle& oracle,
                                      const Eigen::VectorXcd& state);

struct BlockEncodingSim {
  std::int64_t register_dim = 0;
  Eigen::MatrixXcd unitary;  ///< 2 register_dim square
  Eigen::MatrixXcd block;    ///< ancilla <0| ... |0> block
};

/// Assembles the full unitary column by column and slices its block.
/// ResourceError if 2N exceeds kMaxUnitaryDim.
BlockEncodingSim native_block_encoding(const KernelSpec& spec, std::int64_t n);

/// (P^dagger (x) <0|) U_BE^(M) (P (x) |0>), simulated on padded basis
/// states. Requires powers of two with m >= 2n.
Eigen::MatrixXcd compressed_block(const KernelSpec& spec, std::int64_t n,
                                  std::int64_t m);

/// Tensor-product 3D block encoding for n in {2, 4}.
BlockEncodingSim block_encoding_3d(const KernelSpec& spec, std::int64_t n);

/// max |(U^dagger U - I)_{ij}|.
double unitarity_defect(const Eigen::MatrixXcd& u);

}  // namespace fraclap
