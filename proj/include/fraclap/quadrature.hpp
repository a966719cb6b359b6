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
#include <functional>
#include <vector>

namespace fraclap::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Computes the n-point rule by Newton iteration on P_n. Results for a given
/// n are cached, so repeated calls are cheap.
const GaussLegendreRule& gauss_legendre(std::size_t n);

/// Applies the rule to f on [a, b].
double apply_rule(const GaussLegendreRule& rule,
                  const std::function<double(double)>& f, double a, double b);

struct AdaptiveResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t subdivisions = 0;
  bool converged = true;
};

/// Adaptive bisection driven by the difference between one 16-point panel and
/// two half panels. Stops refining a panel when the difference is below its
/// share of `abs_tol` or at roundoff level; `max_subdivisions` caps the total
/// number of bisections.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b, double abs_tol,
                                  std::size_t max_subdivisions);

}  // namespace fraclap::quad
