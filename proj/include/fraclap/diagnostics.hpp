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
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fraclap/kernel.hpp"
#include "fraclap/lattice.hpp"

namespace fraclap {

struct TestFunction {
  std::string name;
  Eigen::VectorXd samples;  ///< on x_j = j h, j = 0..N-1
};

/// Stand-in benchmark suite on x_j = j h:
///   gaussian-bump: exp(-(j - c)^2 / (2 s^2)), c = (N-1)/2, s = N/8, shifted
///                  and rescaled so both endpoints are exactly zero;
///   poly-bump:     (1 - y^2)^2_+, y = 2x / ((N-1) h) - 1;
///   sine-bump:     sin(pi x / ((N-1) h)).
/// DomainError for N < 8.
std::array<TestFunction, 3> benchmark_functions(std::int64_t n, double h);

/// Unit-norm samples proportional to exp(-(j - j0)^2 / (2 sigma^2)).
Eigen::VectorXd gaussian_state(std::int64_t n, double j0, double sigma);

struct FunctionalComparison {
  Eigen::VectorXd target;  ///< A^(N) u
  Eigen::VectorXd native;  ///< A~^(N) u
  Eigen::VectorXd padded;  ///< compress(A~^(M) pad(u))
  Eigen::VectorXd native_error;  ///< |native - target|
  Eigen::VectorXd padded_error;  ///< |padded - target|
};

FunctionalComparison functional_comparison(const KernelSpec& spec, std::int64_t n,
                                           std::int64_t m, const Eigen::VectorXd& u);

struct GaussianDiagnostics {
  Eigen::VectorXd state;
  FunctionalComparison actions;  ///< padded uses M = 2N
  double native_relative = 0.0;  ///< ||(A~ - A) u|| / ||A u||
  double padded_relative = 0.0;
};

GaussianDiagnostics gaussian_diagnostics(const KernelSpec& spec, std::int64_t n,
                                         std::int64_t j0, double sigma);

struct SweepPoint {
  std::int64_t j0 = 0;
  double native_relative = 0.0;
  double padded_relative = 0.0;
};

std::vector<SweepPoint> center_sweep(const KernelSpec& spec, std::int64_t n, double sigma,
                                     const std::vector<std::int64_t>& centers);

struct CornerReport {
  double target_corner = 0.0;     ///< c_{-(N-1)}
  double surrogate_corner = 0.0;  ///< (A~)_{0,N-1}
  double difference = 0.0;
  double dominant_image = 0.0;    ///< c_1
  double remainder = 0.0;         ///< certified bound on |difference - c_1|
};

/// DomainError for N < 2.
CornerReport corner_report(const KernelSpec& spec, std::int64_t n);

struct HeatmapData {
  Eigen::MatrixXd target;
  Eigen::MatrixXd surrogate;
  Eigen::MatrixXd abs_difference;
};

HeatmapData heatmap_data(const KernelSpec& spec, std::int64_t n);

}  // namespace fraclap
