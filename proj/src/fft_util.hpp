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

#include <complex>
#include <cstddef>
#include <vector>

namespace fraclap::detail {

using cvec = std::vector<std::complex<double>>;

/// X[k] = sum_n x[n] e^{-2 pi i k n / N} (unnormalized).
cvec forward_dft(const cvec& x);
/// x[n] = (1/N) sum_k X[k] e^{+2 pi i k n / N}.
cvec inverse_dft(const cvec& X);
/// Inverse DFT along each axis of an n^3 array stored with x fastest:
/// flat = ix + n * (iy + n * iz).
cvec inverse_dft_3d(const cvec& X, std::size_t n);

bool is_power_of_two(long long n);

}  // namespace fraclap::detail
