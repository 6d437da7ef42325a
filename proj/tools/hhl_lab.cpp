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

// hhl-lab: command-line front end for the HHL resource simulator.
//
// Exit codes: 0 success, 2 validation error, 3 runtime/numeric error.
// Output files are written atomically, so a failing run never leaves a
// partial artifact behind.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hhl/error.hpp"
#include "hhl/experiment.hpp"

namespace {

struct Flags {
    std::string system;
    std::string b;
    std::string c;
    int n = 0;
    std::vector<std::string> grid;
    std::string sigma;
    std::size_t realizations = 0;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
    std::string eigenvalues;

    std::vector<CLI::Option *> options;
    CLI::Option *system_opt = nullptr, *b_opt = nullptr, *c_opt = nullptr, *n_opt = nullptr, *grid_opt = nullptr,
                *sigma_opt = nullptr, *realizations_opt = nullptr, *seed_opt = nullptr, *eigen_opt = nullptr;
};

std::vector<double> parse_list(const std::string &text, const char *what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(item);
            }
        } catch (const std::logic_error &) {
            throw hhl::ConfigError(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
    }
    if (out.empty()) {
        throw hhl::ConfigError(std::string(what) + " list is empty");
    }
    return out;
}

void add_common_options(CLI::App *sub, Flags &f) {
    f.system_opt = sub->add_option("--system", f.system, "Builtin system (paper-2d, paper-3d) or JSON config file");
    f.b_opt = sub->add_option("--b", f.b, "Constant vector as a comma list (normalized before use)");
    f.c_opt = sub->add_option("--c", f.c, "Circuit constant, a number or 'auto' (0.736 * lambda_min)");
    f.n_opt = sub->add_option("--n", f.n, "Eigenvalue register width in qubits");
    f.grid_opt = sub->add_option("--grid", f.grid, "Sweep axis min:max:steps (repeatable)");
    f.sigma_opt = sub->add_option("--sigma", f.sigma, "Disorder strengths as a comma list");
    f.realizations_opt = sub->add_option("--realizations", f.realizations, "Disorder realizations per point");
    f.seed_opt = sub->add_option("--seed", f.seed, "Disorder seed");
    sub->add_option("--out", f.out, "Output path (default stdout)");
    sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    f.eigen_opt =
        sub->add_option("--eigenvalues", f.eigenvalues, "Replace the builtin system's spectrum (comma list)");
}

hhl::RunConfig build_config(const Flags &f, const std::string &command) {
    hhl::RunConfig cfg;
    cfg.command = command;
    if (f.system_opt->count()) {
        if (hhl::is_builtin_system(f.system)) {
            cfg.system = f.system;
        } else {
            std::ifstream in(f.system);
            if (!in) {
                throw hhl::ConfigError("'" + f.system + "' is neither a builtin system nor a readable file");
            }
            nlohmann::json doc;
            try {
                in >> doc;
            } catch (const nlohmann::json::exception &e) {
                throw hhl::ConfigError("cannot parse " + f.system + ": " + e.what());
            }
            cfg.merge_json(doc);
        }
    }
    if (f.b_opt->count()) {
        auto values = parse_list(f.b, "--b");
        hhl::CVector b(static_cast<Eigen::Index>(values.size()));
        for (std::size_t i = 0; i < values.size(); ++i) {
            b(static_cast<Eigen::Index>(i)) = values[i];
        }
        cfg.b = b;
    }
    if (f.c_opt->count()) {
        if (f.c == "auto") {
            cfg.C.reset();
        } else {
            cfg.C = parse_list(f.c, "--c").front();
        }
    }
    if (f.n_opt->count()) {
        cfg.n = f.n;
    }
    if (f.grid_opt->count()) {
        cfg.grids.clear();
        for (const auto &g : f.grid) {
            cfg.grids.push_back(hhl::GridAxis::parse(g));
        }
    }
    if (f.sigma_opt->count()) {
        cfg.sigmas = parse_list(f.sigma, "--sigma");
    }
    if (f.realizations_opt->count()) {
        cfg.realizations = f.realizations;
    }
    if (f.seed_opt->count()) {
        cfg.seed = f.seed;
    }
    if (f.eigen_opt->count()) {
        cfg.eigenvalues = parse_list(f.eigenvalues, "--eigenvalues");
    }
    cfg.out = f.out;
    cfg.format = f.format == "json" ? hhl::OutputFormat::json : hhl::OutputFormat::csv;
    return cfg;
}

void emit(const std::string &text, const std::string &path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".partial";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << text;
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, target);
}

std::string run(const hhl::RunConfig &cfg) {
    if (cfg.command == "solve") {
        return hhl::render_solve(hhl::solve(cfg), cfg);
    }
    if (cfg.command == "sweep-b") {
        return hhl::render(hhl::sweep_b(cfg), cfg);
    }
    if (cfg.command == "sweep-kappa") {
        return hhl::render(hhl::sweep_kappa(cfg), cfg);
    }
    if (cfg.command == "disorder") {
        return hhl::render(hhl::disorder_table(cfg), cfg);
    }
    return hhl::render_micro_ggm(hhl::micro_ggm_check(cfg), cfg);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Analytic HHL simulator and quantum resource meter", "hhl-lab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(hhl::kVersion));

    std::vector<std::pair<std::string, CLI::App *>> subs;
    for (auto [name, help] : std::initializer_list<std::pair<const char *, const char *>>{
             {"solve", "Solve one system and print the psi_2 resource report"},
             {"sweep-b", "Resources over the b0^2 line (N = 2) or (b0^2, b1^2) simplex (N = 3)"},
             {"sweep-kappa", "Resources over the two-level condition-number family"},
             {"disorder", "Quenched averages under Gaussian rotation errors"},
             {"micro-ggm", "GGM with the eigenvalue register split into qubits"}}) {
        subs.emplace_back(name, app.add_subcommand(name, help));
    }
    // One Flags per subcommand; only the parsed one is consulted.
    std::vector<Flags> per_sub(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
        add_common_options(subs[i].second, per_sub[i]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (subs[i].second->parsed()) {
                auto cfg = build_config(per_sub[i], subs[i].first);
                emit(run(cfg), cfg.out);
                return 0;
            }
        }
        return 2;
    } catch (const hhl::Error &e) {
        std::cerr << "hhl-lab: " << e.what() << "\n";
        return e.kind() == hhl::ErrorKind::validation ? 2 : 3;
    } catch (const std::exception &e) {
        std::cerr << "hhl-lab: " << e.what() << "\n";
        return 3;
    }
}
