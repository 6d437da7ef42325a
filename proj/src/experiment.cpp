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

#include "hhl/experiment.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "hhl/error.hpp"
#include "hhl/parallel.hpp"

namespace hhl {

using nlohmann::json;

namespace {

Complex parse_complex(const json &v) {
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw ConfigError("expected a number or [re, im] pair, got " + v.dump());
}

json complex_to_json(Complex c) {
    if (c.imag() == 0.0) {
        return c.real();
    }
    return json::array({c.real(), c.imag()});
}

CVector parse_vector(const json &v) {
    if (!v.is_array() || v.empty()) {
        throw ConfigError("expected a nonempty array for a vector");
    }
    CVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        out(static_cast<Eigen::Index>(i)) = parse_complex(v[i]);
    }
    return out;
}

CMatrix parse_matrix(const json &v) {
    if (!v.is_array() || v.empty() || !v[0].is_array()) {
        throw ConfigError("matrix must be a nonempty array of rows");
    }
    const std::size_t rows = v.size();
    const std::size_t cols = v[0].size();
    CMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        if (!v[r].is_array() || v[r].size() != cols) {
            throw ConfigError("matrix rows must all have the same length");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_complex(v[r][c]);
        }
    }
    return out;
}

json vector_to_json(const CVector &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_to_json(v(i)));
    }
    return out;
}

json matrix_to_json(const CMatrix &m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

std::string format_complex(Complex c) {
    if (c.imag() == 0.0) {
        return format_number(c.real());
    }
    std::string im = format_number(std::abs(c.imag()));
    return format_number(c.real()) + (c.imag() < 0 ? "-" : "+") + im + "i";
}

std::string join_vector(const CVector &v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out += (i ? " " : "") + format_complex(v(i));
    }
    return out;
}

CMatrix builtin_eigenbasis(std::string_view name) {
    if (name == "paper-2d") {
        return two_level_eigenbasis();
    }
    return three_level_eigenbasis();
}

std::vector<double> axis_points(const RunConfig &cfg, std::size_t axis, GridAxis fallback) {
    GridAxis g = axis < cfg.grids.size() ? cfg.grids[axis] : fallback;
    for (double p : g.points()) {
        if (p < 0.0 || p > 1.0) {
            throw RangeError("squared components must lie in [0, 1], grid " + g.to_string() + " leaves it");
        }
    }
    return g.points();
}

std::size_t system_dim(const RunConfig &cfg) {
    if (cfg.system == "inline" && cfg.matrix) {
        return static_cast<std::size_t>(cfg.matrix->rows());
    }
    if (cfg.system == "paper-2d") {
        return 2;
    }
    if (cfg.system == "paper-3d") {
        return 3;
    }
    return resolve_system(cfg).dim();
}

std::string sha256_hex(const std::string &data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw NumericError("SHA-256 digest failed");
    }
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) {
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return os.str();
}

}  // namespace

std::vector<double> GridAxis::points() const {
    std::vector<double> out(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        out[k] = min + (max - min) * static_cast<double>(k) / static_cast<double>(steps - 1);
    }
    return out;
}

GridAxis GridAxis::parse(std::string_view text) {
    auto bad = [&] { return ConfigError("grid must look like min:max:steps, got '" + std::string(text) + "'"); };
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        auto colon = text.find(':', pos);
        fields.push_back(text.substr(pos, colon == std::string_view::npos ? colon : colon - pos));
        if (colon == std::string_view::npos) {
            break;
        }
        pos = colon + 1;
    }
    if (fields.size() != 3) {
        throw bad();
    }
    auto whole = [&](std::string_view f, auto &value) {
        auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
        if (ec != std::errc() || ptr != f.data() + f.size() || f.empty()) {
            throw bad();
        }
    };
    GridAxis g;
    long steps = 0;
    whole(fields[0], g.min);
    whole(fields[1], g.max);
    whole(fields[2], steps);
    if (!std::isfinite(g.min) || !std::isfinite(g.max)) {
        throw bad();
    }
    if (steps < 2) {
        throw ConfigError("grid needs at least 2 steps, got " + std::to_string(steps));
    }
    g.steps = static_cast<std::size_t>(steps);
    if (!(g.max >= g.min)) {
        throw ConfigError("grid max must not be below min");
    }
    return g;
}

std::string GridAxis::to_string() const {
    return format_number(min) + ":" + format_number(max) + ":" + std::to_string(steps);
}

void RunConfig::merge_json(const json &doc) {
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    try {
        if (doc.contains("system")) {
            system = doc["system"].get<std::string>();
        }
        if (doc.contains("matrix")) {
            matrix = parse_matrix(doc["matrix"]);
            system = "inline";
        }
        if (doc.contains("b")) {
            b = parse_vector(doc["b"]);
        }
        if (doc.contains("C")) {
            if (doc["C"].is_string()) {
                if (doc["C"].get<std::string>() != "auto") {
                    throw ConfigError("C must be a number or \"auto\"");
                }
                C.reset();
            } else {
                C = doc["C"].get<double>();
            }
        }
        if (doc.contains("n")) {
            n = doc["n"].get<int>();
        }
        if (doc.contains("eigenvalues")) {
            eigenvalues = doc["eigenvalues"].get<std::vector<double>>();
        }
        if (doc.contains("grid")) {
            grids.clear();
            for (const auto &g : doc["grid"]) {
                grids.push_back(GridAxis::parse(g.get<std::string>()));
            }
        }
        if (doc.contains("sigma")) {
            sigmas = doc["sigma"].get<std::vector<double>>();
        }
        if (doc.contains("realizations")) {
            realizations = doc["realizations"].get<std::size_t>();
        }
        if (doc.contains("seed")) {
            seed = doc["seed"].get<std::uint64_t>();
        }
    } catch (const json::exception &e) {
        throw ConfigError(std::string("malformed config field: ") + e.what());
    }
}

json RunConfig::to_json() const {
    json doc;
    doc["command"] = command;
    doc["system"] = system;
    if (matrix) {
        doc["matrix"] = matrix_to_json(*matrix);
    }
    if (b) {
        doc["b"] = vector_to_json(*b);
    }
    if (eigenvalues) {
        doc["eigenvalues"] = *eigenvalues;
    }
    doc["C"] = C ? json(*C) : json("auto");
    doc["n"] = n ? json(*n) : json("auto");
    json g = json::array();
    for (const auto &axis : grids) {
        g.push_back(axis.to_string());
    }
    doc["grid"] = g;
    doc["sigma"] = sigmas;
    doc["realizations"] = realizations;
    doc["seed"] = seed;
    return doc;
}

std::string RunConfig::hash() const {
    return sha256_hex(to_json().dump());
}

bool is_builtin_system(std::string_view name) {
    return name == "paper-2d" || name == "paper-3d";
}

LinearSystem resolve_system(const RunConfig &cfg) {
    if (cfg.b) {
        return resolve_system(cfg, *cfg.b);
    }
    if (cfg.system == "paper-2d") {
        CVector b(2);
        b << 0.6, 0.8;
        return resolve_system(cfg, b);
    }
    if (cfg.system == "paper-3d") {
        CVector b(3);
        b << 1.0, 0.0, 0.0;
        return resolve_system(cfg, b);
    }
    throw ConfigError("system '" + cfg.system + "' needs an explicit b");
}

LinearSystem resolve_system(const RunConfig &cfg, const CVector &b) {
    CMatrix a;
    if (cfg.system == "inline") {
        if (!cfg.matrix) {
            throw ConfigError("inline system without a matrix");
        }
        a = *cfg.matrix;
        if (cfg.eigenvalues) {
            throw ConfigError("eigenvalue overrides only apply to builtin systems");
        }
    } else if (is_builtin_system(cfg.system)) {
        a = cfg.system == "paper-2d" ? paper_2d_matrix() : paper_3d_matrix();
        if (cfg.eigenvalues) {
            CMatrix basis = builtin_eigenbasis(cfg.system);
            if (cfg.eigenvalues->size() != static_cast<std::size_t>(basis.cols())) {
                throw ConfigError(cfg.system + " needs " + std::to_string(basis.cols()) + " eigenvalues");
            }
            a = with_spectrum(basis, *cfg.eigenvalues);
        }
    } else {
        throw ConfigError("unknown system '" + cfg.system + "' (expected paper-2d, paper-3d or a JSON file)");
    }
    return LinearSystem(std::move(a), normalized(b));
}

std::size_t Table::column(std::string_view name) const {
    auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw RangeError("no column named '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> Table::values(std::string_view name) const {
    auto c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto &row : rows) {
        out.push_back(row[c]);
    }
    return out;
}

std::string format_number(double v) {
    if (v == 0.0) {
        return "0";  // also folds -0
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return {buf, res.ptr};
}

std::string header_comment(const RunConfig &cfg) {
    return "# " + std::string(kToolName) + " v" + std::string(kVersion) + " seed=" + std::to_string(cfg.seed) +
           " config=" + cfg.hash();
}

std::string to_csv(const Table &table, const RunConfig &cfg) {
    std::string out = header_comment(cfg) + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out += (c ? "," : "") + table.columns[c];
    }
    out += "\n";
    for (const auto &row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += (c ? "," : "") + format_number(row[c]);
        }
        out += "\n";
    }
    return out;
}

std::string to_json_text(const Table &table, const RunConfig &cfg) {
    json doc;
    doc["tool"] = kToolName;
    doc["version"] = kVersion;
    doc["seed"] = cfg.seed;
    doc["config"] = cfg.to_json();
    doc["config_sha256"] = cfg.hash();
    doc["columns"] = table.columns;
    json rows = json::array();
    for (const auto &row : table.rows) {
        json r = json::array();
        for (double v : row) {
            // Round-trip through the CSV formatting so both outputs carry the same digits.
            r.push_back(json::parse(format_number(v)));
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = rows;
    return doc.dump(2) + "\n";
}

std::string render(const Table &table, const RunConfig &cfg) {
    return cfg.format == OutputFormat::json ? to_json_text(table, cfg) : to_csv(table, cfg);
}

std::vector<std::string> report_columns() {
    std::vector<std::string> cols = {"ggm"};
    for (auto cut : kAllCuts) {
        std::string name(to_string(cut));
        std::replace(name.begin(), name.end(), ':', '_');
        cols.push_back("ln_" + name);
    }
    for (const char *c : {"coh_global", "coh_L", "coh_U", "coh_R", "purity_L", "purity_U", "purity_R", "sp", "kappa",
                          "trivial"}) {
        cols.emplace_back(c);
    }
    return cols;
}

std::vector<double> report_row(const ResourceReport &r) {
    std::vector<double> row = {r.ggm};
    row.insert(row.end(), r.ln.begin(), r.ln.end());
    for (double v : {r.coherence_global, r.coherence_lambda, r.coherence_u, r.coherence_r, r.purity_lambda, r.purity_u,
                     r.purity_r, r.sp, r.kappa, r.trivial ? 1.0 : 0.0}) {
        row.push_back(v);
    }
    return row;
}

Table sweep_b(const RunConfig &cfg) {
    const std::size_t N = system_dim(cfg);
    if (N != 2 && N != 3) {
        throw RangeError("b sweeps need a 2- or 3-dimensional system, got N = " + std::to_string(N));
    }

    std::vector<std::vector<double>> points;  // squared components, length N
    if (N == 2) {
        for (double s : axis_points(cfg, 0, GridAxis{0.0, 1.0, 101})) {
            points.push_back({s, 1.0 - s});
        }
    } else {
        auto xs = axis_points(cfg, 0, GridAxis{0.0, 1.0, 41});
        auto ys = axis_points(cfg, 1, GridAxis{0.0, 1.0, 41});
        for (double s0 : xs) {
            for (double s1 : ys) {
                double s2 = 1.0 - s0 - s1;
                if (s2 < -1e-12) {
                    continue;
                }
                points.push_back({s0, s1, std::max(0.0, s2)});
            }
        }
    }

    Table table;
    table.columns = N == 2 ? std::vector<std::string>{"b0_sq"} : std::vector<std::string>{"b0_sq", "b1_sq"};
    auto rc = report_columns();
    table.columns.insert(table.columns.end(), rc.begin(), rc.end());
    table.rows.resize(points.size());

    parallel_for(points.size(), [&](std::size_t k) {
        const auto &sq = points[k];
        CVector b(static_cast<Eigen::Index>(N));
        for (std::size_t i = 0; i < N; ++i) {
            b(static_cast<Eigen::Index>(i)) = std::sqrt(sq[i]);
        }
        auto spec = spectral_decompose(resolve_system(cfg, b), cfg.C, cfg.n);
        std::vector<double> row(sq.begin(), sq.begin() + static_cast<std::ptrdiff_t>(N - 1));
        auto values = report_row(report(spec, Stage::psi_2));
        row.insert(row.end(), values.begin(), values.end());
        table.rows[k] = std::move(row);
    });
    return table;
}

Table sweep_kappa(const RunConfig &cfg) {
    CVector b(2);
    if (cfg.b) {
        if (cfg.b->size() != 2) {
            throw ConfigError("the condition-number family is two-dimensional; b needs 2 entries");
        }
        b = normalized(*cfg.b);
    } else {
        b << 0.3, std::sqrt(1.0 - 0.09);
    }
    GridAxis axis = cfg.grids.empty() ? GridAxis{2.0, 10.0, 50} : cfg.grids.front();
    auto kappas = axis.points();
    if (kappas.front() < 1.0) {
        throw RangeError("condition numbers must be >= 1");
    }

    Table table;
    table.columns = {"kappa", "ggm", "ln_LU", "coh_R", "coh_global", "sp"};
    table.rows.resize(kappas.size());
    parallel_for(kappas.size(), [&](std::size_t k) {
        auto spec = spectral_decompose(kappa_family(kappas[k], b), cfg.C, cfg.n, EigenvalueEncoding::label);
        auto r = report(spec, Stage::psi_2);
        table.rows[k] = {kappas[k], r.ggm, r.log_negativity(Cut::lambda_u), r.coherence_r, r.coherence_global, r.sp};
    });
    return table;
}

Table disorder_table(const RunConfig &cfg) {
    std::vector<CVector> bs;
    std::vector<double> b0_sq;
    if (system_dim(cfg) == 2 && (!cfg.grids.empty() || !cfg.b)) {
        for (double s : axis_points(cfg, 0, GridAxis{0.0, 1.0, 21})) {
            CVector b(2);
            b << std::sqrt(s), std::sqrt(1.0 - s);
            bs.push_back(b);
            b0_sq.push_back(s);
        }
    } else {
        auto base = resolve_system(cfg);
        bs.push_back(base.rhs());
        b0_sq.push_back(std::norm(base.rhs()(0)));
    }
    std::vector<double> sigmas = cfg.sigmas.empty() ? std::vector<double>{0.01, 0.05, 0.1} : cfg.sigmas;

    Table table;
    table.columns = {"b0_sq", "sigma"};
    for (const auto &q : kDisorderQuantities) {
        table.columns.push_back(q + "_clean");
        table.columns.push_back(q + "_mean");
        table.columns.push_back(q + "_stderr");
    }
    table.columns.push_back("skipped");
    table.columns.push_back("clamped");

    for (std::size_t k = 0; k < bs.size(); ++k) {
        auto spec = spectral_decompose(resolve_system(cfg, bs[k]), cfg.C, cfg.n);
        auto clean = clean_quantities(spec);
        auto quantities = standard_quantities(spec);
        for (double sigma : sigmas) {
            DisorderConfig dc{sigma, 0.0, cfg.realizations, cfg.seed};
            auto run = run_disorder(spec, dc, kDisorderQuantities, quantities);
            std::vector<double> row = {b0_sq[k], sigma};
            for (std::size_t q = 0; q < kDisorderQuantities.size(); ++q) {
                row.push_back(clean[q]);
                row.push_back(run.averages[q].mean);
                row.push_back(run.averages[q].std_error);
            }
            row.push_back(static_cast<double>(run.skipped));
            row.push_back(static_cast<double>(run.clamped));
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

SolveResult solve(const RunConfig &cfg) {
    auto system = resolve_system(cfg);
    auto spec = spectral_decompose(system, cfg.C, cfg.n);
    auto sol = solution(spec);
    auto rep = report(spec, Stage::psi_2);
    return SolveResult{std::move(system), std::move(spec), std::move(sol), rep};
}

std::string render_solve(const SolveResult &result, const RunConfig &cfg) {
    const auto &spec = result.spec;
    const auto &r = result.report;
    if (cfg.format == OutputFormat::json) {
        json doc;
        doc["tool"] = kToolName;
        doc["version"] = kVersion;
        doc["config_sha256"] = cfg.hash();
        doc["N"] = spec.dim;
        doc["C"] = spec.C;
        doc["n"] = spec.n;
        doc["kappa"] = r.kappa;
        doc["eigenvalues"] = spec.lambdas;
        json betas = json::array();
        for (auto beta : spec.betas) {
            betas.push_back(complex_to_json(beta));
        }
        doc["betas"] = betas;
        doc["x_classical"] = vector_to_json(result.solution.x_classical);
        doc["x_state"] = vector_to_json(result.solution.x_state);
        doc["sp"] = result.solution.sp;
        doc["trivial"] = r.trivial;
        json rep;
        auto cols = report_columns();
        auto row = report_row(r);
        for (std::size_t i = 0; i < cols.size(); ++i) {
            rep[cols[i]] = row[i];
        }
        rep["stage"] = to_string(r.stage);
        doc["report"] = rep;
        return doc.dump(2) + "\n";
    }

    std::ostringstream os;
    os << header_comment(cfg) << "\n";
    os << "system: " << cfg.system << " (N = " << spec.dim << ")\n";
    os << "C = " << format_number(spec.C) << "  n = " << spec.n << "  kappa = " << format_number(r.kappa) << "\n";
    os << "eigenvalues:";
    for (double l : spec.lambdas) {
        os << " " << format_number(l);
    }
    os << "\nbetas:";
    for (auto beta : spec.betas) {
        os << " " << format_complex(beta);
    }
    os << "\nx_classical: " << join_vector(result.solution.x_classical) << "\n";
    os << "x_state: " << join_vector(result.solution.x_state) << "\n";
    os << "sp = " << format_number(result.solution.sp) << "\n";
    if (r.trivial) {
        os << "trivial instance: b is an eigenvector of A, all entanglement vanishes\n";
    }
    os << "report (" << to_string(r.stage) << "):\n";
    auto cols = report_columns();
    auto row = report_row(r);
    for (std::size_t i = 0; i < cols.size(); ++i) {
        os << "  " << cols[i] << " = " << format_number(row[i]) << "\n";
    }
    return os.str();
}

MicroGgmResult micro_ggm_check(const RunConfig &cfg) {
    auto spec = spectral_decompose(resolve_system(cfg), cfg.C, cfg.n);
    MicroGgmResult out{spec, micro_ggm(spec), ggm(build_state(spec, Stage::psi_2)), {}};
    if (out.micro < 1e-10) {
        out.witness = shared_register_bits(spec);
    }
    return out;
}

std::string describe_witness(const std::vector<SharedBit> &bits) {
    if (bits.empty()) {
        return "none";
    }
    std::string out;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (i > 0) {
            out += i + 1 == bits.size() ? " and " : ", ";
        }
        out += "bit " + std::to_string(bits[i].position) + " (value " + std::to_string(bits[i].value) + ")";
    }
    return out + " common";
}

std::string render_micro_ggm(const MicroGgmResult &result, const RunConfig &cfg) {
    const auto &spec = result.spec;
    auto scaled = spec.scaled_eigenvalues();
    auto bits_of = [&](std::size_t v) {
        std::string s;
        for (int bit = spec.n - 1; bit >= 0; --bit) {
            s += ((v >> bit) & 1U) ? '1' : '0';
        }
        return s;
    };
    if (cfg.format == OutputFormat::json) {
        json doc;
        doc["tool"] = kToolName;
        doc["version"] = kVersion;
        doc["config_sha256"] = cfg.hash();
        doc["n"] = spec.n;
        json enc = json::array();
        for (auto v : scaled) {
            enc.push_back({{"eigenvalue", v}, {"bits", bits_of(v)}});
        }
        doc["encodings"] = enc;
        doc["micro_ggm"] = result.micro;
        doc["analytic_ggm"] = result.analytic;
        json w = json::array();
        for (const auto &b : result.witness) {
            w.push_back({{"bit", b.position}, {"value", b.value}});
        }
        doc["witness"] = w;
        doc["witness_text"] = describe_witness(result.witness);
        return doc.dump(2) + "\n";
    }
    std::ostringstream os;
    os << header_comment(cfg) << "\n";
    os << "register qubits: " << spec.n << "\n";
    os << "encodings:";
    for (auto v : scaled) {
        os << " " << v << "=|" << bits_of(v) << ">";
    }
    os << "\nmicro_ggm = " << format_number(result.micro) << "\n";
    os << "analytic_ggm = " << format_number(result.analytic) << "\n";
    os << "witness: " << describe_witness(result.witness) << "\n";
    return os.str();
}

}  // namespace hhl
