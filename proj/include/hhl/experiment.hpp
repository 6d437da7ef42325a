// Copyright 2026 The hhl-resource-lab Authors
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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hhl/disorder.hpp"
#include "hhl/engine.hpp"
#include "hhl/resources.hpp"

namespace hhl {

inline constexpr std::string_view kToolName = "hhl-resource-lab";
inline constexpr std::string_view kVersion = "0.1.0";

/// Evenly spaced closed interval, written "min:max:steps" with steps >= 2.
struct GridAxis {
    double min = 0.0;
    double max = 1.0;
    std::size_t steps = 2;

    std::vector<double> points() const;
    static GridAxis parse(std::string_view text);
    std::string to_string() const;
};

enum class OutputFormat { csv, json };

struct RunConfig {
    std::string command;
    std::string system = "paper-2d";  // "paper-2d", "paper-3d" or "inline"
    std::optional<CMatrix> matrix;    // used when system == "inline"
    std::optional<CVector> b;         // normalized on use
    std::optional<std::vector<double>> eigenvalues;  // replaces the builtin spectrum
    std::optional<double> C;                         // nullopt means 0.736 lambda_min
    std::optional<int> n;
    std::vector<GridAxis> grids;
    std::vector<double> sigmas;
    std::size_t realizations = 10000;
    std::uint64_t seed = 1;
    std::string out;
    OutputFormat format = OutputFormat::csv;

    /// Applies the fields present in a JSON document: system, matrix, b, C
    /// ("auto" or a number), n, eigenvalues, grid, sigma, realizations, seed.
    /// Complex entries may be written as [re, im]. Throws ConfigError.
    void merge_json(const nlohmann::json &doc);

    /// Canonical form of everything that affects the numbers (not out/format).
    nlohmann::json to_json() const;
    /// Lowercase hex SHA-256 of to_json().dump().
    std::string hash() const;
};

bool is_builtin_system(std::string_view name);

/// Linear system named by the config; b defaults to (0.6, 0.8) for paper-2d
/// and (1, 0, 0) for paper-3d.
LinearSystem resolve_system(const RunConfig &cfg);
LinearSystem resolve_system(const RunConfig &cfg, const CVector &b);

/// Fixed-column numeric table behind every CSV/JSON artifact.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column(std::string_view name) const;
    std::vector<double> values(std::string_view name) const;
};

/// 12 significant digits, locale independent.
std::string format_number(double v);

/// "# hhl-resource-lab v<semver> seed=<s> config=<sha256>"
std::string header_comment(const RunConfig &cfg);
std::string to_csv(const Table &table, const RunConfig &cfg);
std::string to_json_text(const Table &table, const RunConfig &cfg);
std::string render(const Table &table, const RunConfig &cfg);

/// Column names of report_row, in order.
std::vector<std::string> report_columns();
std::vector<double> report_row(const ResourceReport &r);

/// psi_2 resources over b0^2 (N = 2) or the (b0^2, b1^2) simplex (N = 3)
/// with nonnegative real components. Infeasible simplex points are omitted.
Table sweep_b(const RunConfig &cfg);

/// psi_2 resources over the two-level condition-number family.
Table sweep_kappa(const RunConfig &cfg);

/// Quenched averages of E_r, GGM, LN_LU and C_R per (b0^2, sigma).
Table disorder_table(const RunConfig &cfg);

struct SolveResult {
    LinearSystem system;
    SpectralData spec;
    Solution solution;
    ResourceReport report;
};
SolveResult solve(const RunConfig &cfg);
std::string render_solve(const SolveResult &result, const RunConfig &cfg);

struct MicroGgmResult {
    SpectralData spec;
    double micro = 0.0;
    double analytic = 0.0;
    std::vector<SharedBit> witness;  // empty unless micro vanishes
};
MicroGgmResult micro_ggm_check(const RunConfig &cfg);
std::string render_micro_ggm(const MicroGgmResult &result, const RunConfig &cfg);

/// "bit 2 (value 1) and bit 0 (value 1) common"
std::string describe_witness(const std::vector<SharedBit> &bits);

}  // namespace hhl
