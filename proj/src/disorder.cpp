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

#include "hhl/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hhl/error.hpp"
#include "hhl/parallel.hpp"
#include "hhl/philox.hpp"
#include "hhl/resources.hpp"

namespace hhl {

namespace {

void check_eps(const SpectralData &spec, std::span<const double> eps) {
    if (eps.size() != spec.branches()) {
        throw ShapeError("need one rotation error per eigenvalue branch (" + std::to_string(spec.branches()) +
                         "), got " + std::to_string(eps.size()));
    }
}

// Neumaier-compensated sum in index order.
double compensated_sum(std::span<const double> xs) {
    double sum = 0.0;
    double carry = 0.0;
    for (double x : xs) {
        double t = sum + x;
        carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return sum + carry;
}

QuenchedStat summarize(std::span<const double> xs) {
    QuenchedStat s;
    s.samples = xs.size();
    if (xs.empty()) {
        return s;
    }
    if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) {
        s.mean = xs.front();
        return s;
    }
    auto m = static_cast<double>(xs.size());
    s.mean = compensated_sum(xs) / m;
    if (xs.size() > 1) {
        std::vector<double> dev(xs.size());
        std::transform(xs.begin(), xs.end(), dev.begin(), [&](double x) { return (x - s.mean) * (x - s.mean); });
        s.std_error = std::sqrt(compensated_sum(dev) / (m - 1.0)) / std::sqrt(m);
    }
    return s;
}

}  // namespace

void DisorderConfig::validate() const {
    if (!std::isfinite(sigma) || sigma < 0.0) {
        throw RangeError("disorder strength sigma must be finite and >= 0");
    }
    if (!std::isfinite(mean)) {
        throw RangeError("disorder mean must be finite");
    }
    if (realizations < 1) {
        throw RangeError("need at least one disorder realization");
    }
}

Eigen::MatrixXd sample_epsilons(const DisorderConfig &cfg, std::size_t count_per_realization) {
    cfg.validate();
    Eigen::MatrixXd out(static_cast<Eigen::Index>(cfg.realizations), static_cast<Eigen::Index>(count_per_realization));
    for (std::size_t r = 0; r < cfg.realizations; ++r) {
        for (std::size_t i = 0; i < count_per_realization; ++i) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) =
                cfg.mean + cfg.sigma * keyed_standard_normal(cfg.seed, r, i);
        }
    }
    return out;
}

PerturbedRotation perturbed_rotation(const SpectralData &spec, std::span<const double> eps) {
    check_eps(spec, eps);
    PerturbedRotation out;
    out.amplitudes = clean_rotation(spec);
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (eps[i] == 0.0) {
            continue;
        }
        double half = std::asin(spec.C / spec.lambdas[i]) + eps[i];
        if (half < 0.0 || half > std::numbers::pi / 2) {
            half = std::clamp(half, 0.0, std::numbers::pi / 2);
            ++out.clamped;
        }
        out.amplitudes.keep[i] = std::cos(half);
        out.amplitudes.flip[i] = std::sin(half);
    }
    return out;
}

TripartiteState noisy_psi2(const SpectralData &spec, std::span<const double> eps) {
    return build_state(spec, Stage::psi_2, perturbed_rotation(spec, eps).amplitudes);
}

NoisySolution noisy_solution(const SpectralData &spec, std::span<const double> eps) {
    auto rot = perturbed_rotation(spec, eps);
    NoisySolution out;
    out.clamped = rot.clamped;
    out.amplitudes = CVector::Zero(static_cast<Eigen::Index>(spec.dim));
    for (std::size_t i = 0; i < spec.branches(); ++i) {
        double flip = rot.amplitudes.flip[i];
        out.amplitudes += (spec.betas[i] * flip) * spec.vectors.col(static_cast<Eigen::Index>(i));
        out.sp += std::norm(spec.betas[i]) * flip * flip;
    }
    if (!(out.sp > 0.0)) {
        throw ZeroPostselection("ancilla never reads |1>; the post-selected state is undefined");
    }
    out.x_state = out.amplitudes / std::sqrt(out.sp);
    return out;
}

CVector first_order_shift(const SpectralData &spec, std::span<const double> eps) {
    check_eps(spec, eps);
    CVector out = CVector::Zero(static_cast<Eigen::Index>(spec.dim));
    for (std::size_t i = 0; i < spec.branches(); ++i) {
        out += (spec.betas[i] * eps[i]) * spec.vectors.col(static_cast<Eigen::Index>(i));
    }
    return out;
}

double error_metric(const CVector &clean, const CVector &noisy) {
    if (clean.size() != noisy.size()) {
        throw ShapeError("solution vectors differ in length");
    }
    double ref = clean.norm();
    if (!(ref > 0.0)) {
        throw DegenerateReference("clean solution is the zero vector");
    }
    Complex overlap = noisy.dot(clean);  // <noisy|clean>
    Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0, 0.0);
    return (clean - phase * noisy).norm() / ref;
}

const QuenchedStat &DisorderRun::at(const std::string &name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
        throw RangeError("no quenched quantity named '" + name + "'");
    }
    return averages[static_cast<std::size_t>(it - names.begin())];
}

DisorderRun run_disorder(const SpectralData &spec, const DisorderConfig &cfg, const std::vector<std::string> &names,
                         const QuantitySet &quantities, const RunOptions &options) {
    cfg.validate();
    const std::size_t M = cfg.realizations;
    const std::size_t K = spec.branches();
    const std::size_t Q = names.size();

    // values[q * M + r]; NaN marks a skipped realization.
    std::vector<double> values(Q * M);
    std::vector<unsigned char> failed(M, 0);
    std::vector<std::size_t> clamps(M, 0);

    std::size_t threads = options.threads ? options.threads : configured_threads();
    parallel_for(
        M,
        [&](std::size_t r) {
            std::vector<double> eps(K);
            for (std::size_t i = 0; i < K; ++i) {
                eps[i] = cfg.mean + cfg.sigma * keyed_standard_normal(cfg.seed, r, i);
            }
            std::vector<double> out(Q, 0.0);
            try {
                clamps[r] = perturbed_rotation(spec, eps).clamped;
                quantities(spec, eps, out);
            } catch (const Error &) {
                failed[r] = 1;
                return;
            }
            for (std::size_t q = 0; q < Q; ++q) {
                values[q * M + r] = out[q];
            }
        },
        threads);

    DisorderRun run;
    run.config = cfg;
    run.names = names;
    for (std::size_t r = 0; r < M; ++r) {
        run.skipped += failed[r];
        run.clamped += clamps[r];
    }
    if (static_cast<double>(run.skipped) > 0.01 * static_cast<double>(M)) {
        throw NumericError(std::to_string(run.skipped) + " of " + std::to_string(M) +
                           " disorder realizations failed (limit 1%)");
    }
    for (std::size_t q = 0; q < Q; ++q) {
        std::vector<double> kept;
        kept.reserve(M - run.skipped);
        for (std::size_t r = 0; r < M; ++r) {
            if (!failed[r]) {
                kept.push_back(values[q * M + r]);
            }
        }
        run.averages.push_back(summarize(kept));
        if (options.keep_samples) {
            run.samples.push_back(std::move(kept));
        }
    }
    return run;
}

QuenchedStat quenched_average(const Quantity &quantity, const SpectralData &spec, const DisorderConfig &cfg,
                              const RunOptions &options) {
    auto wrapped = [&](const SpectralData &s, std::span<const double> eps, std::span<double> out) {
        out[0] = quantity(s, eps);
    };
    return run_disorder(spec, cfg, {"quantity"}, wrapped, options).averages.front();
}

QuantitySet standard_quantities(const SpectralData &spec) {
    CVector clean = noisy_solution(spec, std::vector<double>(spec.branches(), 0.0)).amplitudes;
    return [clean](const SpectralData &s, std::span<const double> eps, std::span<double> out) {
        auto rot = perturbed_rotation(s, eps);
        auto psi2 = build_state(s, Stage::psi_2, rot.amplitudes);
        out[0] = error_metric(clean, noisy_solution(s, eps).amplitudes);
        out[1] = ggm(psi2);
        const auto &d = psi2.dims;
        out[2] = log_negativity(partial_trace(psi2.amplitudes, d, {0, 1}), SubsystemDims{d[0], d[1]});
        out[3] = l1_coherence(partial_trace(psi2.amplitudes, d, {2}));
    };
}

std::vector<double> clean_quantities(const SpectralData &spec) {
    std::vector<double> out(kDisorderQuantities.size());
    standard_quantities(spec)(spec, std::vector<double>(spec.branches(), 0.0), out);
    return out;
}

}  // namespace hhl
