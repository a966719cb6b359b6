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
#include <filesystem>
#include <string>
#include <vector>

#include "fraclap/error_analysis.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/lattice.hpp"
#include "json.hpp"

namespace fraclap::io {

using json = nlohmann::json;

/// Round-trip-safe decimal form (17 significant digits).
std::string format_double(double v);

/// "# " comment lines, one header row of column names, then the rows.
std::string csv_table(const std::vector<std::string>& comments,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

/// Dense matrix with a leading "# geometry=... alpha=... h=... N=... M=..."
/// header row, followed by one CSV row per matrix row.
std::string matrix_csv(const Eigen::MatrixXd& a, std::string_view geometry,
                       const KernelSpec& spec, std::int64_t n, std::int64_t m);
std::string matrix_csv(const DenseOperator& op);

/// Parses the rows of a CSV produced above, skipping '#' lines and, if
/// `has_header`, the first non-comment line.
std::vector<std::vector<double>> parse_csv(const std::string& text, bool has_header);

json kernel_table_json(const KernelTable& table);
/// Inverse of kernel_table_json; DomainError on malformed input.
KernelTable kernel_table_from_json(const json& j);

json residual_report_json(const ResidualReport& report);
std::string residual_report_csv(const ResidualReport& report);

/// Metadata sidecar: kind, parameters, UTC timestamp, tool name.
json sidecar(std::string_view kind, const json& params);

/// e.g. "heatmap_a1.5_h1_N64_M64".
std::string dataset_stem(std::string_view experiment, const KernelSpec& spec,
                         std::int64_t n, std::int64_t m);

/// Writes via a temporary file in the same directory and renames it into
/// place. Creates parent directories.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace fraclap::io
