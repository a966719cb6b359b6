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

#include "fraclap/lattice3d.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "fft_util.hpp"
#include "fraclap/quadrature.hpp"

namespace fraclap {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGradingLevels = 14;
constexpr double kGradingRatio = 0.25;

struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Panels on [0, pi]: uniform panels of width pi / p, with the first one
// replaced by a geometric sequence toward 0.
AxisRule axis_rule(std::int64_t radius, std::size_t order) {
  const auto& gl = quad::gauss_legendre(order);
  const std::int64_t p = std::max<std::int64_t>(8, (radius + 1) / 2);
  std::vector<std::pair<double, double>> panels;
  const double first = kPi / static_cast<double>(p);
  double hi = first;
  for (int l = 0; l < kGradingLevels; ++l) {
    const double lo = l + 1 == kGradingLevels ? 0.0 : hi * kGradingRatio;
    panels.emplace_back(lo, hi);
    hi = lo;
  }
  for (std::int64_t k = 1; k < p; ++k)
    panels.emplace_back(first * static_cast<double>(k), first * static_cast<double>(k + 1));
  AxisRule r;
  for (const auto& [a, b] : panels) {
    const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      r.nodes.push_back(c + hw * gl.nodes[i]);
      r.weights.push_back(hw * gl.weights[i]);
    }
  }
  return r;
}

// (radius+1)^3 table of pi^-3 int |s|^alpha prod cos(r_i s_i) for h = 1.
std::vector<double> cubature_table(double alpha, std::int64_t radius,
                                   std::size_t order) {
  const auto ax = axis_rule(radius, order);
  const auto n = static_cast<Eigen::Index>(ax.nodes.size());
  const Eigen::Index r1 = radius + 1;
  // wc(k, c) = w_k cos(c s_k).
  Eigen::MatrixXd wc(n, r1);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index c = 0; c < r1; ++c)
      wc(k, c) = ax.weights[k] * std::cos(static_cast<double>(c) * ax.nodes[k]);
  const double half = 0.5 * alpha;
  auto f = [&](double q) {
    if (alpha == 2.0) return q;
    if (alpha == 1.0) return std::sqrt(q);
    return std::pow(q, half);
  };
  // b(i)(b, c) = sum_{j,k} w_j w_k cos(b s_j) cos(c s_k) f(s_i, s_j, s_k).
  std::vector<double> out(static_cast<std::size_t>(r1 * r1 * r1), 0.0);
  Eigen::MatrixXd slab(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = ax.nodes[i] * ax.nodes[i];
    for (Eigen::Index k = 0; k < n; ++k) {
      const double zk = ax.nodes[k] * ax.nodes[k];
      for (Eigen::Index j = 0; j < n; ++j)
        slab(j, k) = f(xi + ax.nodes[j] * ax.nodes[j] + zk);
    }
    const Eigen::MatrixXd b = wc.transpose() * slab * wc;  // (b, c)
    for (Eigen::Index a = 0; a < r1; ++a) {
      const double wa = wc(i, a);
      for (Eigen::Index c = 0; c < r1; ++c)
        for (Eigen::Index bb = 0; bb < r1; ++bb)
          out[static_cast<std::size_t>(a + r1 * (bb + r1 * c))] += wa * b(bb, c);
    }
  }
  const double scale = 1.0 / (kPi * kPi * kPi);
  for (auto& v : out) v *= scale;
  return out;
}

void require_power_of_two(std::int64_t n, const char* what) {
  if (n < 2 || !detail::is_power_of_two(n)) {
    std::ostringstream os;
    os << what << " must be a power of two >= 2, got " << n;
    throw DomainError(os.str());
  }
}

void require_dense_cap_3d(std::int64_t n, const char* what) {
  if (n > 16 || n * n * n > kMaxDenseDim) {
    std::ostringstream os;
    os << what << ": dense dimension " << n << "^3 exceeds cap " << kMaxDenseDim;
    throw ResourceError(os.str(), n * n * n);
  }
}

std::int64_t signed_index(std::int64_t k, std::int64_t n) {
  return k < n / 2 ? k : k - n;
}

std::int64_t wrap(std::int64_t d, std::int64_t n) { return ((d % n) + n) % n; }

// First column of the size-m 3D circulant, symmetrized under g(d) = g(-d).
std::vector<double> generator_3d(const KernelSpec& spec, std::int64_t m) {
  const auto sym = sampled_symbol_3d(spec, m);
  const auto col = detail::inverse_dft_3d(detail::cvec(sym.begin(), sym.end()),
                                          static_cast<std::size_t>(m));
  const double lam3 = std::pow(std::sqrt(3.0) * kPi / spec.h(), spec.alpha());
  double residue = 0.0;
  for (const auto& z : col) residue = std::max(residue, std::abs(z.imag()));
  if (residue > 1e-12 * std::max(1.0, lam3)) {
    std::ostringstream os;
    os << "3D circulant imaginary residue " << residue << " exceeds threshold";
    throw NumericalError(os.str(), residue);
  }
  std::vector<double> g(col.size());
  for (std::int64_t z = 0; z < m; ++z)
    for (std::int64_t y = 0; y < m; ++y)
      for (std::int64_t x = 0; x < m; ++x)
        g[flat3(x, y, z, m)] = 0.5 * (col[flat3(x, y, z, m)].real() +
                                      col[flat3(wrap(-x, m), wrap(-y, m), wrap(-z, m), m)].real());
  return g;
}

Eigen::MatrixXd circulant_block(const std::vector<double>& g, std::int64_t n,
                                std::int64_t m) {
  const std::int64_t dim = n * n * n;
  Eigen::MatrixXd a(dim, dim);
  for (std::int64_t jz = 0; jz < n; ++jz)
    for (std::int64_t jy = 0; jy < n; ++jy)
      for (std::int64_t jx = 0; jx < n; ++jx)
        for (std::int64_t iz = 0; iz < n; ++iz)
          for (std::int64_t iy = 0; iy < n; ++iy)
            for (std::int64_t ix = 0; ix < n; ++ix)
              a(flat3(ix, iy, iz, n), flat3(jx, jy, jz, n)) =
                  g[flat3(wrap(ix - jx, m), wrap(iy - jy, m), wrap(iz - jz, m), m)];
  return a;
}

}  // namespace

Kernel3d::Kernel3d(KernelSpec spec, std::int64_t radius, std::vector<double> coeffs,
                   double error_estimate)
    : spec_(spec), radius_(radius), coeffs_(std::move(coeffs)),
      error_estimate_(error_estimate) {
  if (radius_ < 0 ||
      static_cast<std::int64_t>(coeffs_.size()) != (radius_ + 1) * (radius_ + 1) * (radius_ + 1))
    throw DomainError("Kernel3d: coefficient count does not match radius");
}

double Kernel3d::operator()(std::int64_t rx, std::int64_t ry, std::int64_t rz) const {
  rx = std::abs(rx), ry = std::abs(ry), rz = std::abs(rz);
  if (rx > radius_ || ry > radius_ || rz > radius_) {
    std::ostringstream os;
    os << "3D kernel offset (" << rx << ", " << ry << ", " << rz
       << ") outside tabulated radius " << radius_;
    throw DomainError(os.str());
  }
  const std::int64_t r1 = radius_ + 1;
  return coeffs_[static_cast<std::size_t>(rx + r1 * (ry + r1 * rz))];
}

std::shared_ptr<const Kernel3d> kernel3d(const KernelSpec& spec, std::int64_t radius) {
  if (radius < 1 || radius > 64) throw DomainError("3D kernel radius must be in [1, 64]");
  using Key = std::tuple<double, double, std::int64_t>;
  static std::mutex mu;
  static std::map<Key, std::shared_ptr<const Kernel3d>> cache;
  const Key key{spec.alpha(), spec.h(), radius};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto fine = cubature_table(spec.alpha(), radius, 16);
  const auto coarse = cubature_table(spec.alpha(), radius, 12);
  const double scale = std::pow(spec.h(), -spec.alpha());
  double err = 0.0;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    err = std::max(err, std::abs(fine[i] - coarse[i]));
    fine[i] *= scale;
  }
  auto k = std::make_shared<const Kernel3d>(spec, radius, std::move(fine), err * scale);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, std::move(k)).first->second;
}

TailSum tail_sum_3d(const Kernel3d& kernel, std::int64_t K) {
  const std::int64_t R = kernel.radius();
  if (K < 1 || K > R) throw DomainError("tail_sum_3d requires 1 <= K <= radius");
  // shell[n] = sum over ||r||_inf == n (all sign combinations).
  std::vector<double> shell(static_cast<std::size_t>(R + 1), 0.0);
  std::vector<std::int64_t> count(static_cast<std::size_t>(R + 1), 0);
  for (std::int64_t z = 0; z <= R; ++z)
    for (std::int64_t y = 0; y <= R; ++y)
      for (std::int64_t x = 0; x <= R; ++x) {
        const std::int64_t n = std::max({x, y, z});
        const int mult = (x ? 2 : 1) * (y ? 2 : 1) * (z ? 2 : 1);
        shell[n] += mult * std::abs(kernel(x, y, z));
        count[n] += mult;
      }
  TailSum out;
  std::int64_t summed = 0;
  for (std::int64_t n = K; n <= R; ++n) {
    out.value += shell[n];
    summed += count[n];
  }
  const double r = kernel.spec().decay_rate();
  const double beyond = shell[R] * static_cast<double>(R) / (r - 1.0);
  out.remainder_bound = 2.0 * beyond + kernel.error_estimate() * static_cast<double>(summed);
  return out;
}

TailSum image_sum_3d(const Kernel3d& kernel, const std::array<std::int64_t, 3>& d,
                     std::int64_t period, bool include_zero) {
  if (period < 1) throw DomainError("image_sum_3d requires a positive period");
  const std::int64_t reach = std::max({std::abs(d[0]), std::abs(d[1]), std::abs(d[2])});
  const std::int64_t L = (kernel.radius() - reach) / period;
  if (L < 1) throw DomainError("image_sum_3d: table radius too small for one image shell");
  TailSum out;
  double outer = 0.0;
  std::int64_t summed = 0;
  for (std::int64_t a = -L; a <= L; ++a)
    for (std::int64_t b = -L; b <= L; ++b)
      for (std::int64_t c = -L; c <= L; ++c) {
        const std::int64_t n = std::max({std::abs(a), std::abs(b), std::abs(c)});
        if (n == 0 && !include_zero) continue;
        const double v = kernel(d[0] + period * a, d[1] + period * b, d[2] + period * c);
        out.value += v;
        ++summed;
        if (n == L) outer += std::abs(v);
      }
  const double r = kernel.spec().decay_rate();
  out.remainder_bound = 2.0 * outer * static_cast<double>(L) / (r - 1.0) +
                        kernel.error_estimate() * static_cast<double>(summed);
  return out;
}

std::vector<double> sampled_symbol_3d(const KernelSpec& spec, std::int64_t n) {
  require_power_of_two(n, "register size N");
  std::vector<double> out(static_cast<std::size_t>(n * n * n));
  const double step = 2.0 * kPi / (static_cast<double>(n) * spec.h());
  for (std::int64_t z = 0; z < n; ++z)
    for (std::int64_t y = 0; y < n; ++y)
      for (std::int64_t x = 0; x < n; ++x) {
        const double sx = signed_index(x, n), sy = signed_index(y, n), sz = signed_index(z, n);
        const double q = (sx * sx + sy * sy + sz * sz) * step * step;
        out[flat3(x, y, z, n)] = std::pow(q, 0.5 * spec.alpha());
      }
  return out;
}

DenseOperator toeplitz_target_3d(const KernelSpec& spec, std::int64_t n,
                                 const Kernel3d& kernel) {
  if (n < 1) throw DomainError("toeplitz_target_3d requires N >= 1");
  require_dense_cap_3d(n, "toeplitz_target_3d");
  if (!(kernel.spec() == spec)) throw DomainError("3D kernel built for a different spec");
  if (kernel.radius() < n - 1) {
    std::ostringstream os;
    os << "3D kernel radius " << kernel.radius() << " below required " << n - 1;
    throw DomainError(os.str());
  }
  const std::int64_t dim = n * n * n;
  Eigen::MatrixXd a(dim, dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    const std::int64_t jx = j % n, jy = (j / n) % n, jz = j / (n * n);
    for (std::int64_t i = 0; i < dim; ++i) {
      const std::int64_t ix = i % n, iy = (i / n) % n, iz = i / (n * n);
      a(i, j) = kernel(ix - jx, iy - jy, iz - jz);
    }
  }
  return DenseOperator(std::move(a), Geometry::kToeplitzOpen, spec);
}

DenseOperator circulant_surrogate_3d(const KernelSpec& spec, std::int64_t n) {
  require_power_of_two(n, "register size N");
  require_dense_cap_3d(n, "circulant_surrogate_3d");
  const auto g = generator_3d(spec, n);
  return DenseOperator(circulant_block(g, n, n), Geometry::kCirculantPeriodic, spec);
}

DenseOperator aliasing_difference_3d(const KernelSpec& spec, std::int64_t n,
                                     const Kernel3d& kernel) {
  const auto c = circulant_surrogate_3d(spec, n);
  const auto t = toeplitz_target_3d(spec, n, kernel);
  return DenseOperator(c.entries() - t.entries(), Geometry::kResidual, spec,
                       PaddingMeta{n, n});
}

DenseOperator compressed_operator_3d(const KernelSpec& spec, std::int64_t n,
                                     std::int64_t m, const Kernel3d& kernel) {
  require_power_of_two(n, "physical size N");
  require_power_of_two(m, "padded size M");
  if (m < 2 * n) {
    std::ostringstream os;
    os << "zero-padded compression requires M >= 2N, got N=" << n << ", M=" << m;
    throw DomainError(os.str());
  }
  require_dense_cap_3d(m, "compressed_operator_3d");
  if (kernel.radius() < n - 1) throw DomainError("3D kernel radius below N - 1");
  const auto g = generator_3d(spec, m);
  return DenseOperator(circulant_block(g, n, m), Geometry::kCompressed, spec,
                       PaddingMeta{n, m});
}

DenseOperator residual_3d(const KernelSpec& spec, std::int64_t n, std::int64_t m,
                          const Kernel3d& kernel) {
  const auto c = compressed_operator_3d(spec, n, m, kernel);
  const auto t = toeplitz_target_3d(spec, n, kernel);
  return DenseOperator(c.entries() - t.entries(), Geometry::kResidual, spec,
                       PaddingMeta{n, m});
}

}  // namespace fraclap
