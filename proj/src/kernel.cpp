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

#include "fraclap/kernel.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "fraclap/errors.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {
namespace {

constexpr double kPi = std::numbers::pi;
// Odd-order endpoint terms kept in the large-|m| expansion (k = 1, 3, ..., 11).
constexpr int kExpansionOrder = 12;

std::int64_t abs_index(std::int64_t m) { return m < 0 ? -m : m; }

bool is_alpha(const KernelSpec& spec, double value) {
  return spec.alpha() == value;
}

// Precomputed pieces of the endpoint expansion of
//   I(m) = int_0^pi s^alpha cos(m s) ds
//        = -Gamma(alpha+1) sin(pi alpha / 2) m^-(alpha+1)
//          + (-1)^m sum_{k odd} (-1)^((k-1)/2) f^(k)(pi) m^-(k+1) + R,
// with f(s) = s^alpha and |R| <= 2 |f^(12)(pi)| m^-13 (second mean value
// theorem on the monotone f^(12)).
class EndpointExpansion {
 public:
  explicit EndpointExpansion(const KernelSpec& spec) : alpha_(spec.alpha()) {
    scale_ = std::pow(spec.h(), -alpha_) / kPi;
    origin_ = -std::tgamma(alpha_ + 1.0) * std::sin(kPi * alpha_ / 2.0);
    double falling = 1.0;
    for (int k = 0; k < kExpansionOrder; ++k) {
      if (k % 2 == 1) {
        const double sign = ((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        odd_terms_[k / 2] = sign * falling * std::pow(kPi, alpha_ - k);
      }
      falling *= (alpha_ - k);
    }
    remainder_const_ = 2.0 * std::abs(falling) * std::pow(kPi, alpha_ - kExpansionOrder);
  }

  double coeff(std::int64_t m) const {
    const double md = static_cast<double>(m);
    const double inv = 1.0 / md;
    const double inv2 = inv * inv;
    double power = inv2;  // m^-(k+1) for k = 1
    double sum = 0.0;
    for (double term : odd_terms_) {
      sum += term * power;
      power *= inv2;
    }
    const double endpoint = (m % 2 == 0) ? sum : -sum;
    return scale_ * (origin_ * std::pow(md, -alpha_ - 1.0) + endpoint);
  }

  double remainder(std::int64_t m) const {
    return scale_ * remainder_const_ * std::pow(static_cast<double>(m), -kExpansionOrder - 1.0);
  }

  std::int64_t threshold(double quad_tol) const {
    if (remainder_const_ == 0.0) return 1;
    const double target = quad_tol / 4.0;
    const double m = std::pow(scale_ * remainder_const_ / target, 1.0 / (kExpansionOrder + 1.0));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(m)));
  }

 private:
  double alpha_;
  double scale_ = 1.0;
  double origin_ = 0.0;
  double odd_terms_[kExpansionOrder / 2] = {};
  double remainder_const_ = 0.0;
};

double m0_coeff(const KernelSpec& spec) {
  return std::pow(spec.h(), -spec.alpha()) * std::pow(kPi, spec.alpha()) /
         (spec.alpha() + 1.0);
}

// Evaluates c_m for many m with one set of precomputed constants.
class CoeffEvaluator {
 public:
  CoeffEvaluator(const KernelSpec& spec, double quad_tol)
      : spec_(spec), quad_tol_(quad_tol), expansion_(spec),
        threshold_(expansion_.threshold(quad_tol)),
        closed_(is_alpha(spec, 1.0) || is_alpha(spec, 2.0)) {}

  double operator()(std::int64_t m) const {
    m = abs_index(m);
    if (m == 0) return m0_coeff(spec_);
    if (closed_) return *kernel_coeff_closed_form(spec_, m);
    if (m >= threshold_) return expansion_.coeff(m);
    return kernel_coeff_quadrature(spec_, m, quad_tol_);
  }

  // Absolute error allowance of operator()(m).
  double error_bound(std::int64_t m) const {
    m = abs_index(m);
    if (m == 0 || closed_) return 0.0;
    if (m >= threshold_) return expansion_.remainder(m);
    return quad_tol_;
  }

 private:
  KernelSpec spec_;
  double quad_tol_;
  EndpointExpansion expansion_;
  std::int64_t threshold_;
  bool closed_;
};

}  // namespace

KernelSpec::KernelSpec(double alpha, double h) : alpha_(alpha), h_(h) {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    std::ostringstream os;
    os << "alpha must satisfy 0 < alpha <= 2, got " << alpha;
    throw DomainError(os.str());
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    std::ostringstream os;
    os << "mesh size h must be positive and finite, got " << h;
    throw DomainError(os.str());
  }
}

double KernelSpec::decay_rate() const noexcept {
  return std::min(2.0, 1.0 + alpha_);
}

double KernelSpec::lambda_max() const noexcept {
  return std::pow(kPi / h_, alpha_);
}

double KernelSpec::cell_edge() const noexcept { return kPi / h_; }

double symbol(const KernelSpec& spec, double xi) {
  const double edge = spec.cell_edge();
  if (!(std::abs(xi) <= edge * (1.0 + 1e-14))) {
    std::ostringstream os;
    os << "frequency " << xi << " outside the Fourier cell [" << -edge << ", "
       << edge << "]";
    throw DomainError(os.str());
  }
  return std::pow(std::abs(xi), spec.alpha());
}

std::optional<double> kernel_coeff_closed_form(const KernelSpec& spec,
                                               std::int64_t m) {
  m = abs_index(m);
  const double scale = std::pow(spec.h(), -spec.alpha());
  if (is_alpha(spec, 1.0)) {
    if (m == 0) return scale * kPi / 2.0;
    const double md = static_cast<double>(m);
    return scale * ((m % 2 == 0 ? 1.0 : -1.0) - 1.0) / (kPi * md * md);
  }
  if (is_alpha(spec, 2.0)) {
    if (m == 0) return scale * kPi * kPi / 3.0;
    const double md = static_cast<double>(m);
    return scale * 2.0 * (m % 2 == 0 ? 1.0 : -1.0) / (md * md);
  }
  return std::nullopt;
}

double kernel_coeff_quadrature(const KernelSpec& spec, std::int64_t m,
                               double quad_tol, std::size_t max_subdivisions) {
  m = abs_index(m);
  if (m == 0) return m0_coeff(spec);
  const double alpha = spec.alpha();
  const double md = static_cast<double>(m);
  // Tolerance on the unscaled integral.
  const double scale = std::pow(spec.h(), -alpha) / kPi;
  const double int_tol = quad_tol / scale;
  // On [s_k, s_k+1] with s_k = (k + 1/2) pi / m, write s = s_k + u so that
  // cos(m s) = -(-1)^k sin(m u); the phase never sees a large argument.
  double total = 0.0;
  double error = 0.0;
  std::size_t budget = max_subdivisions;
  const double period = kPi / md;
  auto accumulate = [&](const std::function<double(double)>& f, double width) {
    const auto piece = quad::integrate_adaptive(f, 0.0, width,
                                                int_tol * width / kPi, budget);
    budget -= std::min(budget, piece.subdivisions);
    total += piece.value;
    error += piece.error_estimate;
    if (!piece.converged) {
      std::ostringstream os;
      os << "kernel quadrature did not converge for m=" << m
         << " (alpha=" << alpha << "); error estimate " << error * scale;
      throw NumericalError(os.str(), error * scale);
    }
  };
  accumulate([alpha, md](double s) { return std::pow(s, alpha) * std::cos(md * s); },
             0.5 * period);
  for (std::int64_t k = 0; k < m; ++k) {
    const double start = (static_cast<double>(k) + 0.5) * period;
    const double width = (k + 1 < m) ? period : kPi - start;
    const double sign = (k % 2 == 0) ? -1.0 : 1.0;
    accumulate(
        [alpha, md, start, sign](double u) {
          return sign * std::pow(start + u, alpha) * std::sin(md * u);
        },
        width);
  }
  return scale * total;
}

std::int64_t expansion_threshold(const KernelSpec& spec, double quad_tol) {
  return EndpointExpansion(spec).threshold(quad_tol);
}

double kernel_coeff(const KernelSpec& spec, std::int64_t m, double quad_tol) {
  if (!(quad_tol > 0.0)) throw DomainError("quad_tol must be positive");
  return CoeffEvaluator(spec, quad_tol)(m);
}

DecayEnvelope decay_envelope(double alpha) {
  DecayEnvelope env;
  env.a = std::tgamma(alpha + 1.0) * std::abs(std::sin(kPi * alpha / 2.0));
  if (alpha == 2.0) env.a = 0.0;
  env.b = alpha * std::pow(kPi, alpha - 1.0);
  env.d = 2.0 * alpha * std::abs(alpha - 1.0) * std::pow(kPi, alpha - 2.0);
  return env;
}

double certified_constant(double alpha) {
  const auto env = decay_envelope(alpha);
  // 1e-12 relative headroom for evaluation roundoff; the envelope is attained
  // exactly at alpha = 1, m = 1.
  return (env.a + env.b + env.d) / kPi * (1.0 + 1e-12);
}

double decay_bound(const KernelSpec& spec, std::int64_t m) {
  if (m == 0) throw DomainError("decay_bound requires |m| >= 1");
  const double md = static_cast<double>(abs_index(m));
  return certified_constant(spec.alpha()) * std::pow(spec.h(), -spec.alpha()) *
         std::pow(md, -spec.decay_rate());
}

double tail_remainder_bound(const KernelSpec& spec, std::int64_t truncation) {
  if (truncation < 1) throw DomainError("truncation must be >= 1");
  const double alpha = spec.alpha();
  const auto env = decay_envelope(alpha);
  const double t = static_cast<double>(truncation);
  // sum_{r > T} r^-p <= T^(1-p) / (p - 1)
  const double one_side = env.a * std::pow(t, -alpha) / alpha + env.b / t +
                          env.d / (2.0 * t * t);
  return 2.0 * std::pow(spec.h(), -alpha) / kPi * one_side * (1.0 + 1e-12);
}

KernelTable::KernelTable(KernelSpec spec, std::vector<double> coeffs,
                         double quad_tol)
    : spec_(spec), coeffs_(std::move(coeffs)), quad_tol_(quad_tol) {
  if (coeffs_.empty()) throw DomainError("kernel table needs at least c_0");
}

double KernelTable::operator()(std::int64_t m) const {
  const std::int64_t a = abs_index(m);
  if (a > max_index()) {
    std::ostringstream os;
    os << "kernel table covers |m| <= " << max_index() << ", requested " << m;
    throw DomainError(os.str());
  }
  return coeffs_[static_cast<std::size_t>(a)];
}

KernelTable kernel_table(const KernelSpec& spec, std::int64_t max_index,
                         double quad_tol) {
  if (max_index < 0) throw DomainError("max_index must be >= 0");
  if (!(quad_tol > 0.0)) throw DomainError("quad_tol must be positive");
  const CoeffEvaluator eval(spec, quad_tol);
  std::vector<double> coeffs(static_cast<std::size_t>(max_index) + 1);
  for (std::int64_t m = 0; m <= max_index; ++m) {
    try {
      coeffs[static_cast<std::size_t>(m)] = eval(m);
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " [table index " +
                               std::to_string(m) + "]",
                           e.achieved());
    }
  }
  if (kernel_coeff_closed_form(spec, 0)) {
    constexpr std::int64_t kCrossCheck = 32;
    for (std::int64_t m = 1; m <= std::min(max_index, kCrossCheck); ++m) {
      const double q = kernel_coeff_quadrature(spec, m, quad_tol);
      const double diff = std::abs(q - coeffs[static_cast<std::size_t>(m)]);
      if (diff > quad_tol) {
        std::ostringstream os;
        os << "closed form and quadrature disagree at m=" << m << " by " << diff;
        throw NumericalError(os.str(), diff);
      }
    }
  }
  return KernelTable(spec, std::move(coeffs), quad_tol);
}

TailSum tail_sum(const KernelSpec& spec, std::int64_t K, std::int64_t truncation,
                 double quad_tol) {
  if (K < 1) throw DomainError("tail_sum requires K >= 1");
  if (truncation < K) throw DomainError("tail_sum requires truncation >= K");
  const CoeffEvaluator eval(spec, quad_tol);
  TailSum out;
  // Kahan summation; truncations reach 1e6 terms.
  double sum = 0.0;
  double carry = 0.0;
  double eval_error = 0.0;
  for (std::int64_t r = K; r <= truncation; ++r) {
    const double y = std::abs(eval(r)) - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    eval_error += eval.error_bound(r);
  }
  out.value = 2.0 * sum;
  // Per-term evaluation error is folded into the remainder so that
  // value + remainder_bound stays an upper bound.
  out.remainder_bound = tail_remainder_bound(spec, truncation) + 2.0 * eval_error;
  return out;
}

}  // namespace fraclap
