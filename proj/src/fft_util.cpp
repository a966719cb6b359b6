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

#include "fft_util.hpp"

#include <unsupported/Eigen/FFT>

namespace fraclap::detail {

cvec forward_dft(const cvec& x) {
  Eigen::FFT<double> fft;
  cvec out;
  fft.fwd(out, x);
  return out;
}

cvec inverse_dft(const cvec& X) {
  Eigen::FFT<double> fft;
  cvec out;
  fft.inv(out, X);
  return out;
}

cvec inverse_dft_3d(const cvec& X, std::size_t n) {
  Eigen::FFT<double> fft;
  cvec data = X;
  cvec line(n);
  cvec out;
  const std::size_t stride[3] = {1, n, n * n};
  for (int axis = 0; axis < 3; ++axis) {
    const std::size_t s = stride[axis];
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        // base offset over the two remaining axes
        std::size_t base;
        if (axis == 0) base = n * a + n * n * b;
        else if (axis == 1) base = a + n * n * b;
        else base = a + n * b;
        for (std::size_t i = 0; i < n; ++i) line[i] = data[base + i * s];
        fft.inv(out, line);
        for (std::size_t i = 0; i < n; ++i) data[base + i * s] = out[i];
      }
  }
  return data;
}

bool is_power_of_two(long long n) { return n >= 1 && (n & (n - 1)) == 0; }

}  // namespace fraclap::detail
