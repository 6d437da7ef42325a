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

#include "hhl/resources.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hhl/error.hpp"

namespace hhl {

namespace {

constexpr double kNegativeEigenvalueThreshold = -1e-12;

double negative_mass(const CMatrix &pt) {
    double sum = 0.0;
    for (double v : hermitian_eigenvalues(pt)) {
        if (v < kNegativeEigenvalueThreshold) {
            sum -= v;
        }
    }
    return sum;
}

void require_distinct(const SpectralData &spec) {
    if (spec.degenerate) {
        throw DegeneracyWarning("closed form assumes distinct eigenvalues; use the numeric path");
    }
}

}  // namespace

std::string_view to_string(Cut cut) {
    switch (cut) {
    case Cut::lambda_ur:
        return "L:UR";
    case Cut::u_lambda_r:
        return "U:LR";
    case Cut::r_lambda_u:
        return "R:LU";
    case Cut::lambda_u:
        return "LU";
    case Cut::u_r:
        return "UR";
    case Cut::lambda_r:
        return "LR";
    }
    return "?";
}

double ggm(const CVector &psi, const SubsystemDims &dims) {
    const std::size_t k = dims.parties();
    if (k < 2) {
        throw InvalidCut("GGM needs at least two parties");
    }
    // Every bipartition has exactly one side containing party 0.
    double best = 0.0;
    const std::size_t masks = std::size_t{1} << (k - 1);
    for (std::size_t mask = 0; mask + 1 < masks; ++mask) {
        PartySet side{0};
        for (std::size_t p = 1; p < k; ++p) {
            if (mask & (std::size_t{1} << (p - 1))) {
                side.push_back(p);
            }
        }
        best = std::max(best, max_schmidt_squared(psi, dims, side));
    }
    return std::max(0.0, 1.0 - best);
}

double ggm(const TripartiteState &state) {
    return ggm(state.amplitudes, state.dims);
}

double micro_ggm(const SpectralData &spec) {
    if (spec.n > kMaxMicroGgmQubits) {
        throw SizeError("micro GGM enumerates 2^(n+1) - 1 bipartitions; n = " + std::to_string(spec.n) +
                        " exceeds the limit of " + std::to_string(kMaxMicroGgmQubits));
    }
    auto state = build_state(spec, Stage::psi_2, RegisterMode::micro);
    auto dims = state.dims.refine(0, std::vector<std::size_t>(static_cast<std::size_t>(spec.n), 2));
    return ggm(state.amplitudes, dims);
}

std::vector<SharedBit> shared_register_bits(const SpectralData &spec, double tol) {
    if (!spec.integer_encoded) {
        throw EigenvalueScalingError("register bits are only defined for integer scaled eigenvalues");
    }
    auto scaled = spec.scaled_eigenvalues();
    std::vector<std::size_t> populated;
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        if (std::abs(spec.betas[i]) > tol) {
            populated.push_back(scaled[i]);
        }
    }
    std::vector<SharedBit> out;
    if (populated.empty()) {
        return out;
    }
    for (int bit = spec.n - 1; bit >= 0; --bit) {
        int first = static_cast<int>((populated.front() >> bit) & 1U);
        bool common = std::all_of(populated.begin(), populated.end(),
                                  [&](std::size_t v) { return static_cast<int>((v >> bit) & 1U) == first; });
        if (common) {
            out.push_back({bit, first});
        }
    }
    return out;
}

double negativity(const CMatrix &rho, const SubsystemDims &dims) {
    double second = negative_mass(partial_transpose(rho, dims, Party::second));
    double first = negative_mass(partial_transpose(rho, dims, Party::first));
    if (std::abs(first - second) > 1e-10) {
        throw NumericError("negativity depends on the transposed party (" + std::to_string(first) + " vs " +
                           std::to_string(second) + ")");
    }
    return second;
}

double log_negativity_from(double negativity_value) {
    return std::log2(2.0 * negativity_value + 1.0);
}

double log_negativity(const CMatrix &rho, const SubsystemDims &dims) {
    return log_negativity_from(negativity(rho, dims));
}

double log_negativity_pure(const CVector &psi, const SubsystemDims &dims, const PartySet &cut) {
    double total = 0.0;
    for (double s2 : schmidt_squared(psi, dims, cut)) {
        total += std::sqrt(s2);
    }
    return std::max(0.0, 2.0 * std::log2(total));
}

double negativity_closed_form(const SpectralData &spec) {
    require_distinct(spec);
    auto rot = clean_rotation(spec);
    double sum = 0.0;
    for (std::size_t i = 0; i < spec.branches(); ++i) {
        for (std::size_t j = i + 1; j < spec.branches(); ++j) {
            double overlap = rot.keep[i] * rot.keep[j] + rot.flip[i] * rot.flip[j];
            sum += std::abs(spec.betas[i]) * std::abs(spec.betas[j]) * overlap;
        }
    }
    return sum;
}

double l1_coherence(const CMatrix &rho) {
    const auto d = rho.rows();
    if (d <= 1) {
        return 0.0;
    }
    double off = rho.cwiseAbs().sum() - rho.diagonal().cwiseAbs().sum();
    return std::max(0.0, off) / static_cast<double>(d - 1);
}

double l1_coherence(const CVector &psi) {
    const auto d = psi.size();
    if (d <= 1) {
        return 0.0;
    }
    double l1 = psi.cwiseAbs().sum();
    double off = l1 * l1 - psi.squaredNorm();
    return std::max(0.0, off) / static_cast<double>(d - 1);
}

double coherence_R_closed_form(const SpectralData &spec) {
    auto rot = clean_rotation(spec);
    double sum = 0.0;
    for (std::size_t i = 0; i < spec.branches(); ++i) {
        sum += std::norm(spec.betas[i]) * rot.keep[i] * rot.flip[i];
    }
    return 2.0 * sum;
}

CMatrix rho_R_closed_form(const SpectralData &spec) {
    auto rot = clean_rotation(spec);
    double a = 0.0;
    double b = 0.0;
    for (std::size_t i = 0; i < spec.branches(); ++i) {
        double w = std::norm(spec.betas[i]);
        a += w * rot.flip[i] * rot.flip[i];
        b += w * rot.keep[i] * rot.flip[i];
    }
    CMatrix rho(2, 2);
    rho << 1.0 - a, b, b, a;
    return rho;
}

ResourceReport measure(const TripartiteState &state) {
    const auto &psi = state.amplitudes;
    const auto &dims = state.dims;
    if (dims.parties() != 3) {
        throw ShapeError("resource reports need a Lambda:U:R state");
    }
    ResourceReport r;
    r.stage = state.stage;
    r.ggm = ggm(psi, dims);

    auto set_ln = [&](Cut cut, double value) { r.ln[static_cast<std::size_t>(cut)] = value; };
    set_ln(Cut::lambda_ur, log_negativity_pure(psi, dims, {0}));
    set_ln(Cut::u_lambda_r, log_negativity_pure(psi, dims, {1}));
    set_ln(Cut::r_lambda_u, log_negativity_pure(psi, dims, {2}));
    set_ln(Cut::lambda_u, log_negativity(partial_trace(psi, dims, {0, 1}), SubsystemDims{dims[0], dims[1]}));
    set_ln(Cut::u_r, log_negativity(partial_trace(psi, dims, {1, 2}), SubsystemDims{dims[1], dims[2]}));
    set_ln(Cut::lambda_r, log_negativity(partial_trace(psi, dims, {0, 2}), SubsystemDims{dims[0], dims[2]}));

    CMatrix rho_lambda = partial_trace(psi, dims, {0});
    CMatrix rho_u = partial_trace(psi, dims, {1});
    CMatrix rho_r = partial_trace(psi, dims, {2});
    r.coherence_global = l1_coherence(psi);
    r.coherence_lambda = l1_coherence(rho_lambda);
    r.coherence_u = l1_coherence(rho_u);
    r.coherence_r = l1_coherence(rho_r);
    r.purity_lambda = purity(rho_lambda);
    r.purity_u = purity(rho_u);
    r.purity_r = purity(rho_r);
    return r;
}

ResourceReport report(const SpectralData &spec, Stage stage) {
    auto r = measure(build_state(spec, stage));
    r.sp = solution(spec).sp;
    r.kappa = condition_number(spec);
    r.trivial = active_branches(spec) <= 1;
    return r;
}

}  // namespace hhl
