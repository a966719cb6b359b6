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

#include "fraclap/error_analysis.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "fraclap/errors.hpp"

namespace fraclap {
namespace {

constexpr std::int64_t kDefaultExtraTerms = std::int64_t{1} << 16;

double power_iteration_norm(const Eigen::MatrixXd& a) {
  Eigen::VectorXd x = Eigen::VectorXd::Ones(a.rows());
  // A deterministic non-symmetric start avoids orthogonality to the top
  // eigenvector of structured (e.g. checkerboard) residuals.
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) += 0.5 * std::sin(1.0 + i);
  x.normalize();
  // Iterate with A^2 so that +/- extreme eigenvalues do not oscillate; stop on
  // the eigen-residual of the Rayleigh quotient.
  double mu = 0.0;
  for (int it = 0; it < 5000; ++it) {
    const Eigen::VectorXd y = a * (a * x);
    mu = x.dot(y);
    if (mu <= 0.0) return 0.0;
    if ((y - mu * x).norm() <= 1e-8 * mu) break;
    x = y.normalized();
  }
  return std::sqrt(mu);
}

}  // namespace

double spectral_norm(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw DomainError("spectral_norm expects a square matrix");
  if (a.rows() == 0) return 0.0;
  if (a.rows() > 1024) return power_iteration_norm(a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double schur_bound(const KernelSpec& spec, std::int64_t n, std::int64_t m,
                   std::int64_t truncation, double quad_tol) {
  if (n < 1 || m < 2 * n) {
    std::ostringstream os;
    os << "schur_bound requires M >= 2N, got N=" << n << ", M=" << m;
    throw DomainError(os.str());
  }
  const std::int64_t k = m - n + 1;
  if (truncation == 0) truncation = k + kDefaultExtraTerms;
  return tail_sum(spec, k, truncation, quad_tol).upper();
}

PaddingPlan plan_padding(const KernelSpec& spec, std::int64_t n, double epsilon,
                         std::int64_t cap) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw DomainError("plan_padding requires epsilon > 0");
  if (n < 1) throw DomainError("plan_padding requires N >= 1");
  const double lam = spec.lambda_max();
  std::int64_t m = 1;
  while (m < 2 * n) m *= 2;
  for (; m <= (std::int64_t{1} << 62); m *= 2) {
    const double bound = schur_bound(spec, n, m);
    if (bound / lam <= epsilon) {
      if (m > cap) {
        std::ostringstream os;
        os << "plan_padding: epsilon=" << epsilon << " requires M=" << m
           << ", above cap " << cap;
        throw ResourceError(os.str(), m);
      }
      return {m, bound, bound / lam};
    }
    if (m == (std::int64_t{1} << 62)) break;
  }
  std::ostringstream os;
  os << "plan_padding: epsilon=" << epsilon << " not reachable below M=2^62";
  throw ResourceError(os.str(), -1);
}

double fit_decay_slope(const std::vector<SlopePoint>& points) {
  if (points.size() < 4)
    throw DomainError("fit_decay_slope needs at least 4 points");
  double xmin = points.front().x, xmax = points.front().x;
  for (const auto& p : points) {
    if (!(p.x > 0.0) || !(p.y > 0.0))
      throw DomainError("fit_decay_slope needs positive x and y");
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
  }
  if (xmax < 10.0 * xmin)
    throw DomainError("fit_decay_slope needs x spanning at least one decade");
  double sx = 0, sy = 0;
  for (const auto& p : points) {
    sx += std::log(p.x);
    sy += std::log(p.y);
  }
  const double k = static_cast<double>(points.size());
  const double mx = sx / k, my = sy / k;
  double sxx = 0, sxy = 0;
  for (const auto& p : points) {
    const double dx = std::log(p.x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.y) - my);
  }
  return sxy / sxx;
}

double state_residual(const KernelSpec& spec, std::int64_t n, std::int64_t m,
                      const Eigen::VectorXd& state, const KernelTable& table) {
  if (state.size() != n) throw DomainError("state_residual: state length must be N");
  if (std::abs(state.norm() - 1.0) > 1e-12)
    throw DomainError("state_residual: state must have unit norm");
  const auto e = residual(spec, n, m, table);
  return (e.entries() * state).norm() / spec.lambda_max();
}

ResidualReport residual_report(const KernelSpec& spec, std::int64_t n,
                               const std::vector<std::int64_t>& ms,
                               const std::optional<Eigen::VectorXd>& state,
                               double quad_tol) {
  ResidualReport rep{spec, n, {}, 0.0, 0.0, -std::min(1.0, spec.alpha())};
  const auto table = kernel_table(spec, n - 1, quad_tol);
  std::vector<SlopePoint> dense, bound;
  for (const auto m : ms) {
    ResidualPoint p;
    p.m = m;
    const auto e = residual(spec, n, m, table);
    p.spectral_norm = spectral_norm(e.entries());
    p.tail_bound = schur_bound(spec, n, m, 0, quad_tol);
    if (state) p.state_error = state_residual(spec, n, m, *state, table);
    const double x = static_cast<double>(m - n + 1);
    dense.push_back({x, p.spectral_norm});
    bound.push_back({x, p.tail_bound});
    rep.points.push_back(p);
  }
  if (rep.points.size() >= 4) {
    rep.fitted_slope = fit_decay_slope(dense);
    rep.bound_slope = fit_decay_slope(bound);
  } else {
    rep.fitted_slope = rep.bound_slope = std::nan("");
  }
  return rep;
}

}  // namespace fraclap
