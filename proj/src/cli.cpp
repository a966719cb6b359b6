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

#include "fraclap/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fraclap/diagnostics.hpp"
#include "fraclap/error_analysis.hpp"
#include "fraclap/errors.hpp"
#include "fraclap/io.hpp"
#include "fraclap/verify.hpp"

namespace fraclap {
namespace {

namespace fs = std::filesystem;
using io::json;

struct RunConfig {
  double alpha = 1.5;
  double h = 1.0;
  std::int64_t n = 64;
  std::int64_t m = 0;  // 0 selects 2N
  double quad_tol = kDefaultQuadTol;
  std::string output_dir = "fraclap_out";
  std::string format = "csv";
  std::int64_t seed = 0;
};

struct Emitter {
  const RunConfig& cfg;
  std::ostream& out;

  json base_params() const {
    return {{"alpha", cfg.alpha}, {"h", cfg.h},   {"quad_tol", cfg.quad_tol},
            {"seed", cfg.seed},   {"format", cfg.format}};
  }

  // Data as CSV (format csv) or JSON (format json), plus a metadata sidecar.
  void dataset(const std::string& stem, std::string_view kind, const std::string& csv,
               const json& data, json params) const {
    const fs::path dir(cfg.output_dir);
    fs::path data_path;
    if (cfg.format == "json") {
      data_path = dir / (stem + ".json");
      io::write_atomic(data_path, data.dump(2) + "\n");
    } else {
      data_path = dir / (stem + ".csv");
      io::write_atomic(data_path, csv);
    }
    params["data_file"] = data_path.filename().string();
    io::write_atomic(dir / (stem + ".meta.json"), io::sidecar(kind, params).dump(2) + "\n");
    out << "wrote " << data_path.string() << "\n";
  }
};

json matrix_json(const Eigen::MatrixXd& a) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    std::vector<double> r(a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) r[j] = a(i, j);
    rows.push_back(r);
  }
  return rows;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::int64_t padded_size(const RunConfig& c) { return c.m ? c.m : 2 * c.n; }

int cmd_kernel(const RunConfig& c, std::int64_t max_index, std::ostream& out) {
  const KernelSpec spec(c.alpha, c.h);
  if (max_index < 0) throw DomainError("--max-index must be >= 0");
  const auto table = kernel_table(spec, max_index, c.quad_tol);
  std::vector<std::vector<double>> rows;
  for (std::int64_t k = 0; k <= max_index; ++k) {
    const double bound = k == 0 ? std::nan("") : decay_bound(spec, k);
    rows.push_back({static_cast<double>(k), table(k), bound,
                    k == 0 ? std::nan("") : std::abs(table(k)) / bound});
  }
  const std::string csv = io::csv_table(
      {"columns: m, c_m, decay bound C_alpha h^-alpha m^-r_alpha, |c_m| / bound",
       "alpha=" + io::format_double(c.alpha) + " h=" + io::format_double(c.h) +
           " C_alpha=" + io::format_double(certified_constant(c.alpha))},
      {"m", "c_m", "decay_bound", "ratio"}, rows);
  auto params = Emitter{c, out}.base_params();
  params["max_index"] = max_index;
  params["C_alpha"] = certified_constant(c.alpha);
  char stem[96];
  std::snprintf(stem, sizeof stem, "kernel_a%g_h%g_K%lld", c.alpha, c.h,
                static_cast<long long>(max_index));
  Emitter{c, out}.dataset(stem, "kernel", csv, io::kernel_table_json(table), params);
  for (std::int64_t k = 0; k <= std::min<std::int64_t>(max_index, 4); ++k)
    out << "c_" << k << " = " << io::format_double(table(k)) << "\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& c, VerifyConfig vc, std::ostream& out) {
  const auto results = run_verify(vc);
  std::ostringstream csv;
  csv << "# columns: check, worst error, allowance at that point, passed\n"
      << "check,achieved,tolerance,passed\n";
  json report = json::array();
  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.passed;
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " achieved=" << io::format_double(r.achieved)
        << " tolerance=" << io::format_double(r.tolerance) << "\n";
    csv << r.name << "," << io::format_double(r.achieved) << ","
        << io::format_double(r.tolerance) << "," << (r.passed ? 1 : 0) << "\n";
    report.push_back({{"check", r.name}, {"achieved", r.achieved},
                      {"tolerance", r.tolerance}, {"passed", r.passed}});
  }
  auto params = Emitter{c, out}.base_params();
  params["three_d"] = vc.three_d;
  params["perturb"] = vc.perturb == Perturbation::kCorner ? "corner" : "none";
  params["all_passed"] = ok;
  Emitter{c, out}.dataset(vc.three_d ? "verify_3d" : "verify", "verify", csv.str(), report, params);
  out << (ok ? "verify: all checks passed\n" : "verify: FAILED\n");
  return ok ? kExitOk : kExitNumerical;
}

int fig_heatmap(const RunConfig& c, std::ostream& out) {
  const KernelSpec spec(c.alpha, c.h);
  const auto d = heatmap_data(spec, c.n);
  const Emitter e{c, out};
  auto params = e.base_params();
  params["N"] = c.n;
  const std::pair<const char*, const Eigen::MatrixXd*> parts[] = {
      {"target", &d.target}, {"surrogate", &d.surrogate}, {"absdiff", &d.abs_difference}};
  const char* geometry[] = {"toeplitz-open", "circulant-periodic", "residual"};
  int g = 0;
  for (const auto& [name, mat] : parts) {
    params["panel"] = name;
    e.dataset(io::dataset_stem(std::string("heatmap-") + name, spec, c.n, c.n), "heatmap",
              io::matrix_csv(*mat, geometry[g++], spec, c.n, c.n), matrix_json(*mat), params);
  }
  return kExitOk;
}

int fig_functional(const RunConfig& c, std::ostream& out) {
  const KernelSpec spec(c.alpha, c.h);
  const std::int64_t m = padded_size(c);
  const Emitter e{c, out};
  for (const auto& f : benchmark_functions(c.n, c.h)) {
    const auto r = functional_comparison(spec, c.n, m, f.samples);
    std::vector<std::vector<double>> rows;
    for (std::int64_t j = 0; j < c.n; ++j)
      rows.push_back({static_cast<double>(j), j * c.h, f.samples(j), r.target(j), r.native(j),
                      r.padded(j), r.native_error(j), r.padded_error(j)});
    const std::string csv = io::csv_table(
        {"columns: j, x = j h, u, A u, native A~ u, padded compress(A~(M) pad u), |native - target|, |padded - target|",
         "function=" + f.name + " (stand-in benchmark suite)"},
        {"j", "x", "u", "target", "native", "padded", "native_error", "padded_error"}, rows);
    json data = {{"function", f.name},          {"u", to_std(f.samples)},
                 {"target", to_std(r.target)},  {"native", to_std(r.native)},
                 {"padded", to_std(r.padded)},  {"native_error", to_std(r.native_error)},
                 {"padded_error", to_std(r.padded_error)}};
    auto params = e.base_params();
    params["N"] = c.n;
    params["M"] = m;
    params["function"] = f.name;
    params["stand_in"] = true;
    e.dataset(io::dataset_stem("functional-" + f.name, spec, c.n, m), "functional", csv, data,
              params);
  }
  return kExitOk;
}

int fig_scaling(const RunConfig& c, std::vector<std::int64_t> ms, std::int64_t j0, double sigma,
                std::ostream& out) {
  const KernelSpec spec(c.alpha, c.h);
  if (ms.empty()) ms = {2 * c.n, 4 * c.n, 8 * c.n, 16 * c.n};
  const auto rep = residual_report(spec, c.n, ms, gaussian_state(c.n, j0, sigma), c.quad_tol);
  auto params = Emitter{c, out}.base_params();
  params["N"] = c.n;
  params["M_list"] = ms;
  params["j0"] = j0;
  params["sigma"] = sigma;
  Emitter{c, out}.dataset(io::dataset_stem("scaling", spec, c.n, ms.back()), "scaling",
                          io::residual_report_csv(rep), io::residual_report_json(rep), params);
  out << "fitted_slope=" << io::format_double(rep.fitted_slope)
      << " bound_slope=" << io::format_double(rep.bound_slope)
      << " predicted_slope=" << io::format_double(rep.predicted_slope) << "\n";
  return kExitOk;
}

int fig_gaussian(const RunConfig& c, std::int64_t j0, double sigma, std::ostream& out) {
  const KernelSpec spec(c.alpha, c.h);
  const auto g = gaussian_diagnostics(spec, c.n, j0, sigma);
  std::vector<std::vector<double>> rows;
  for (std::int64_t j = 0; j < c.n; ++j)
    rows.push_back({static_cast<double>(j), g.state(j), g.actions.target(j), g.actions.native(j),
                    g.actions.padded(j)});
  const std::string csv = io::csv_table(
      {"columns: j, u (unit-norm Gaussian), A u, native A~ u, padded (M = 2N)",
       "j0=" + std::to_string(j0) + " sigma=" + io::format_double(sigma) +
           " native_relative=" + io::format_double(g.native_relative) +
           " padded_relative=" + io::format_double(g.padded_relative)},
      {"j", "u", "target", "native", "padded"}, rows);
  json data = {{"u", to_std(g.state)},
               {"target", to_std(g.actions.target)},
               {"native", to_std(g.actions.native)},
               {"padded", to_std(g.actions.padded)},
               {"native_relative", g.native_relative},
               {"padded_relative", g.padded_relative}};
  auto params = Emitter{c, out}.base_params();
  params["N"] = c.n;
  params["M"] = 2 * c.n;
  params["j0"] = j0;
  params["sigma"] = sigma;
  Emitter{c, out}.dataset(io::dataset_stem("gaussian-j" + std::to_string(j0), spec, c.n, 2 * c.n),
                          "gaussian", csv, data, params);
  out << "native_relative=" << io::format_double(g.native_relative)
      << " padded_relative=" << io::format_double(g.padded_relative) << "\n";
  return kExitOk;
}

int fig_sweep(const RunConfig& c, std::vector<std::int64_t> centers, double sigma,
              std::ostream& out) {
  const KernelSpec spec(c.alpha, c.h);
  if (centers.empty())
    for (std::int64_t j = 0; j <= c.n / 2; j += std::max<std::int64_t>(1, c.n / 16))
      centers.push_back(j);
  const auto sweep = center_sweep(spec, c.n, sigma, centers);
  std::vector<std::vector<double>> rows;
  json data = json::array();
  for (const auto& p : sweep) {
    rows.push_back({static_cast<double>(p.j0), p.native_relative, p.padded_relative});
    data.push_back({{"j0", p.j0}, {"native", p.native_relative}, {"padded", p.padded_relative}});
  }
  const std::string csv = io::csv_table(
      {"columns: j0, ||(A~ - A) u|| / ||A u|| native, same for padded (M = 2N)",
       "sigma=" + io::format_double(sigma)},
      {"j0", "native_relative", "padded_relative"}, rows);
  auto params = Emitter{c, out}.base_params();
  params["N"] = c.n;
  params["M"] = 2 * c.n;
  params["sigma"] = sigma;
  params["centers"] = centers;
  Emitter{c, out}.dataset(io::dataset_stem("sweep", spec, c.n, 2 * c.n), "sweep", csv, data,
                          params);
  return kExitOk;
}

int fig_corner(const RunConfig& c, std::ostream& out) {
  const KernelSpec spec(c.alpha, c.h);
  const auto r = corner_report(spec, c.n);
  const std::string csv = io::csv_table(
      {"columns: (A)_{0,N-1} = c_{-(N-1)}, (A~)_{0,N-1}, difference, c_1, bound on |difference - c_1|"},
      {"target_corner", "surrogate_corner", "difference", "c_1", "remainder"},
      {{r.target_corner, r.surrogate_corner, r.difference, r.dominant_image, r.remainder}});
  json data = {{"target_corner", r.target_corner}, {"surrogate_corner", r.surrogate_corner},
               {"difference", r.difference},       {"c_1", r.dominant_image},
               {"remainder", r.remainder}};
  auto params = Emitter{c, out}.base_params();
  params["N"] = c.n;
  Emitter{c, out}.dataset(io::dataset_stem("corner", spec, c.n, c.n), "corner", csv, data, params);
  out << "target_corner=" << io::format_double(r.target_corner)
      << "\nsurrogate_corner=" << io::format_double(r.surrogate_corner)
      << "\ndifference=" << io::format_double(r.difference)
      << "\nc_1=" << io::format_double(r.dominant_image)
      << "\nremainder=" << io::format_double(r.remainder) << "\n";
  return kExitOk;
}

int cmd_plan(const RunConfig& c, double eps, std::int64_t cap, std::ostream& out) {
  const KernelSpec spec(c.alpha, c.h);
  const auto p = plan_padding(spec, c.n, eps, cap);
  out << "M=" << p.m << "\n"
      << "certificate: schur_bound(N=" << c.n << ", M=" << p.m
      << ") = " << io::format_double(p.bound) << ", / lambda_max = "
      << io::format_double(p.normalized) << " <= eps = " << io::format_double(eps) << "\n";
  json data = {{"M", p.m}, {"bound", p.bound}, {"normalized_bound", p.normalized},
               {"epsilon", eps}, {"lambda_max", spec.lambda_max()}};
  const std::string csv = io::csv_table(
      {"columns: N, planned M, schur_bound, schur_bound / lambda_max, epsilon"},
      {"N", "M", "bound", "normalized_bound", "epsilon"},
      {{static_cast<double>(c.n), static_cast<double>(p.m), p.bound, p.normalized, eps}});
  auto params = Emitter{c, out}.base_params();
  params["N"] = c.n;
  params["epsilon"] = eps;
  params["cap"] = cap;
  Emitter{c, out}.dataset(io::dataset_stem("plan", spec, c.n, p.m), "plan", csv, data, params);
  return kExitOk;
}

void add_spec_options(CLI::App* sub, RunConfig& c) {
  sub->add_option("--alpha", c.alpha, "fractional order in (0, 2]")->capture_default_str();
  sub->add_option("--h", c.h, "mesh size")->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) c.output_dir = env;

  CLI::App app{"Fractional Laplacian lattice operators, QFT block encodings and padding diagnostics",
               "fraclap"};
  app.set_help_flag("--help", "print help and exit");
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option values (flags take precedence)");
  app.add_option("--output-dir", c.output_dir, std::string("output directory (default from ") +
                                                   kOutputDirEnv + " if set)")
      ->capture_default_str();
  app.add_option("--format", c.format, "data format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--quad-tol", c.quad_tol, "kernel quadrature tolerance")->capture_default_str();
  app.add_option("--seed", c.seed, "reserved; recorded in metadata");

  std::function<int()> action;

  auto* kernel = app.add_subcommand("kernel", "kernel table and decay-bound comparison");
  std::int64_t max_index = 64;
  add_spec_options(kernel, c);
  kernel->add_option("--max-index", max_index, "largest |m| tabulated")->capture_default_str();
  kernel->callback([&] { action = [&] { return cmd_kernel(c, max_index, out); }; });

  auto* verify = app.add_subcommand("verify", "run the identity checks");
  VerifyConfig vc;
  std::string perturb = "none";
  verify->add_option("--alpha-list", vc.alphas, "orders checked")->delimiter(',');
  verify->add_option("--h", vc.h, "mesh size")->capture_default_str();
  verify->add_flag("--three-d", vc.three_d, "run the 3D identity checks instead");
  verify->add_option("--N", vc.n3, "3D physical size")->capture_default_str();
  verify->add_option("--M", vc.m3, "3D padded size")->capture_default_str();
  verify->add_option("--perturb", perturb, "fault injection")
      ->check(CLI::IsMember({"none", "corner"}))
      ->capture_default_str();
  verify->callback([&] {
    vc.perturb = perturb == "corner" ? Perturbation::kCorner : Perturbation::kNone;
    c.h = vc.h;
    action = [&] { return cmd_verify(c, vc, out); };
  });

  auto* figure = app.add_subcommand("figure", "emit figure datasets");
  figure->require_subcommand(1);
  std::vector<std::int64_t> m_list, centers;
  std::int64_t j0 = 0;
  double sigma = 4.0;
  auto fig = [&](const char* name, const char* help) {
    auto* s = figure->add_subcommand(name, help);
    add_spec_options(s, c);
    s->add_option("--N", c.n, "physical size")->capture_default_str();
    return s;
  };
  fig("heatmap", "target, surrogate and |difference| matrices")->callback([&] {
    action = [&] { return fig_heatmap(c, out); };
  });
  auto* functional = fig("functional", "three operator actions on the benchmark suite");
  functional->add_option("--M", c.m, "padded size (default 2N)");
  functional->callback([&] { action = [&] { return fig_functional(c, out); }; });
  auto* scaling = fig("scaling", "residual norm versus M");
  scaling->add_option("--M-list", m_list, "padded sizes (default 2N,4N,8N,16N)")->delimiter(',');
  scaling->add_option("--j0", j0, "Gaussian center for the state residual")->capture_default_str();
  scaling->add_option("--sigma", sigma, "Gaussian width")->capture_default_str();
  scaling->callback([&] { action = [&] { return fig_scaling(c, m_list, j0, sigma, out); }; });
  auto* gaussian = fig("gaussian", "operator actions on a Gaussian state");
  gaussian->add_option("--j0", j0, "center index")->capture_default_str();
  gaussian->add_option("--sigma", sigma, "width in index units")->capture_default_str();
  gaussian->callback([&] { action = [&] { return fig_gaussian(c, j0, sigma, out); }; });
  auto* sweep = fig("sweep", "relative error versus Gaussian center");
  sweep->add_option("--centers", centers, "center indices (default 0..N/2)")->delimiter(',');
  sweep->add_option("--sigma", sigma, "width in index units")->capture_default_str();
  sweep->callback([&] { action = [&] { return fig_sweep(c, centers, sigma, out); }; });
  fig("corner", "corner entry and its dominant image")->callback([&] {
    action = [&] { return fig_corner(c, out); };
  });

  auto* plan = app.add_subcommand("plan", "smallest certified padded size");
  double eps = 1e-3;
  std::int64_t cap = kDefaultPlanCap;
  add_spec_options(plan, c);
  plan->add_option("--N", c.n, "physical size")->capture_default_str();
  plan->add_option("--eps", eps, "target normalized residual bound")->capture_default_str();
  plan->add_option("--cap", cap, "largest admissible M")->capture_default_str();
  plan->callback([&] { action = [&] { return cmd_plan(c, eps, cap, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    return action ? action() : kExitValidation;
  } catch (const DomainError& e) {
    err << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return kExitNumerical;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace fraclap
