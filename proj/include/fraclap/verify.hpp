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

#include <cstdint>
#include <string>
#include <vector>

namespace fraclap {

enum class Perturbation { kNone, kCorner };

struct VerifyConfig {
  std::vector<double> alphas{0.5, 1.0, 1.5, 2.0};
  double h = 1.0;
  bool three_d = false;
  std::int64_t n3 = 2;  ///< 3D physical size
  std::int64_t m3 = 4;  ///< 3D padded size
  Perturbation perturb = Perturbation::kNone;
};

struct CheckResult {
  std::string name;
  double achieved = 0.0;   ///< worst error found
  double tolerance = 0.0;  ///< allowance at that worst point
  bool passed = false;
};

/// Runs the identity suites (aliasing, compression, exact embedding, Schur
/// bound, block encoding; 3D if requested). kCorner negates the circulant
/// corner entries before the aliasing comparison.
std::vector<CheckResult> run_verify(const VerifyConfig& config);

}  // namespace fraclap
