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

#include "fraclap/io.hpp"

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "fraclap/errors.hpp"

namespace fraclap::io {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_table(const std::vector<std::string>& comments,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (const auto& c : comments) os << "# " << c << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& r : rows) {
    if (r.size() != columns.size()) throw DomainError("csv_table: row width mismatch");
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
    os << '\n';
  }
  return os.str();
}

std::string matrix_csv(const Eigen::MatrixXd& a, std::string_view geometry,
                       const KernelSpec& spec, std::int64_t n, std::int64_t m) {
  std::ostringstream os;
  os << "# geometry=" << geometry << " alpha=" << format_double(spec.alpha())
     << " h=" << format_double(spec.h()) << " N=" << n << " M=" << m << '\n';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) os << (j ? "," : "") << format_double(a(i, j));
    os << '\n';
  }
  return os.str();
}

std::string matrix_csv(const DenseOperator& op) {
  if (!op.spec()) throw DomainError("matrix_csv: operator carries no kernel spec");
  const std::int64_t n = op.meta() ? op.meta()->n : op.dim();
  const std::int64_t m = op.meta() ? op.meta()->m : op.dim();
  return matrix_csv(op.entries(), to_string(op.geometry()), *op.spec(), n, m);
}

std::vector<std::vector<double>> parse_csv(const std::string& text, bool has_header) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw DomainError("parse_csv: non-numeric cell '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json kernel_table_json(const KernelTable& table) {
  return {{"alpha", table.spec().alpha()},
          {"h", table.spec().h()},
          {"quad_tol", table.quad_tol()},
          {"coeffs", table.coeffs()}};
}

KernelTable kernel_table_from_json(const json& j) {
  try {
    return KernelTable(KernelSpec(j.at("alpha").get<double>(), j.at("h").get<double>()),
                       j.at("coeffs").get<std::vector<double>>(),
                       j.at("quad_tol").get<double>());
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed kernel table JSON: ") + e.what());
  }
}

json residual_report_json(const ResidualReport& r) {
  json pts = json::array();
  for (const auto& p : r.points) {
    json jp = {{"M", p.m},
               {"K", p.m - r.n + 1},
               {"spectral_norm", p.spectral_norm},
               {"tail_bound", p.tail_bound}};
    jp["state_error"] = p.state_error ? json(*p.state_error) : json(nullptr);
    pts.push_back(jp);
  }
  return {{"alpha", r.spec.alpha()},    {"h", r.spec.h()},
          {"N", r.n},                   {"lambda_max", r.spec.lambda_max()},
          {"points", pts},              {"fitted_slope", r.fitted_slope},
          {"bound_slope", r.bound_slope}, {"predicted_slope", r.predicted_slope}};
}

std::string residual_report_csv(const ResidualReport& r) {
  const double lam = r.spec.lambda_max();
  std::vector<std::vector<double>> rows;
  for (const auto& p : r.points)
    rows.push_back({static_cast<double>(r.n), static_cast<double>(p.m),
                    static_cast<double>(p.m - r.n + 1), p.spectral_norm / lam,
                    p.tail_bound / lam, p.state_error ? *p.state_error : std::nan("")});
  return csv_table(
      {"columns: N, M, K = M-N+1, ||E||_2/lambda_max, schur_bound/lambda_max, ||E u||_2/lambda_max",
       "alpha=" + format_double(r.spec.alpha()) + " h=" + format_double(r.spec.h()),
       "fitted_slope=" + format_double(r.fitted_slope) +
           " bound_slope=" + format_double(r.bound_slope) +
           " predicted_slope=" + format_double(r.predicted_slope)},
      {"N", "M", "K", "spectral_norm", "tail_bound", "state_error"}, rows);
}

json sidecar(std::string_view kind, const json& params) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return {{"kind", kind}, {"params", params}, {"timestamp", buf}, {"tool", "fraclap"}};
}

std::string dataset_stem(std::string_view experiment, const KernelSpec& spec,
                         std::int64_t n, std::int64_t m) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.*s_a%g_h%g_N%lld_M%lld",
                static_cast<int>(experiment.size()), experiment.data(), spec.alpha(),
                spec.h(), static_cast<long long>(n), static_cast<long long>(m));
  return buf;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot open " + tmp.string() + " for writing", 0);
    out << content;
    out.flush();
    if (!out) throw ResourceError("write failed for " + tmp.string(), 0);
  }
  fs::rename(tmp, path);
}

}  // namespace fraclap::io
