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
#include <optional>
#include <vector>

#include "fraclap/kernel.hpp"
#include "fraclap/lattice.hpp"

namespace fraclap {

/// Default cap on the register size plan_padding may return.
inline constexpr std::int64_t kDefaultPlanCap = std::int64_t{1} << 26;

/// Spectral norm of a symmetric matrix: dense eigensolve up to 1024, power
/// iteration (tolerance 1e-8, at most 5000 steps) above.
double spectral_norm(const Eigen::MatrixXd& a);

/// Right-hand side of ||E^(M)||_2 <= sum_{|r| >= M-N+1} |c_r|, evaluated as a
/// certified upper bound (partial sum plus analytic remainder).
/// truncation = 0 selects K + 2^16.
double schur_bound(const KernelSpec& spec, std::int64_t n, std::int64_t m,
                   std::int64_t truncation = 0,
                   double quad_tol = kDefaultQuadTol);

struct PaddingPlan {
  std::int64_t m = 0;
  double bound = 0.0;       ///< schur_bound at m
  double normalized = 0.0;  ///< bound / lambda_max
};

/// Smallest power of two M >= 2N with schur_bound / lambda_max <= epsilon.
/// ResourceError (carrying the required M, or -1 if none below 2^62) when
/// that M exceeds `cap`.
PaddingPlan plan_padding(const KernelSpec& spec, std::int64_t n, double epsilon,
                         std::int64_t cap = kDefaultPlanCap);

struct SlopePoint {
  double x;  ///< M - N + 1
  double y;  ///< norm
};

/// Least-squares slope of log y against log x. Needs >= 4 points, positive
/// values, and x spanning at least one decade.
double fit_decay_slope(const std::vector<SlopePoint>& points);

/// ||E^(M) u||_2 / lambda_max for a unit vector u of length N.
double state_residual(const KernelSpec& spec, std::int64_t n, std::int64_t m,
                      const Eigen::VectorXd& state, const KernelTable& table);

struct ResidualPoint {
  std::int64_t m = 0;
  double spectral_norm = 0.0;
  double tail_bound = 0.0;
  std::optional<double> state_error;
};

/// Residual norm versus padded size M. Norms are absolute; divide by lambda_max for the
/// normalized view. fitted_slope is fitted to the dense norms, bound_slope to
/// the tail bounds, predicted_slope = -min(1, alpha).
struct ResidualReport {
  KernelSpec spec;
  std::int64_t n = 0;
  std::vector<ResidualPoint> points;
  double fitted_slope = 0.0;
  double bound_slope = 0.0;
  double predicted_slope = 0.0;
};

ResidualReport residual_report(const KernelSpec& spec, std::int64_t n,
                               const std::vector<std::int64_t>& ms,
                               const std::optional<Eigen::VectorXd>& state = std::nullopt,
                               double quad_tol = kDefaultQuadTol);

}  // namespace fraclap
