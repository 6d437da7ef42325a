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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hhl/engine.hpp"

namespace hhl {

/// Gaussian disorder on the controlled-rotation half angles, in radians.
struct DisorderConfig {
    double sigma = 0.0;
    double mean = 0.0;
    std::size_t realizations = 10000;
    std::uint64_t seed = 1;

    /// Throws RangeError for negative/non-finite sigma or zero realizations.
    void validate() const;
};

/// M x count matrix of draws. Entry (r, i) depends only on (seed, r, i).
Eigen::MatrixXd sample_epsilons(const DisorderConfig &cfg, std::size_t count_per_realization);

struct PerturbedRotation {
    RotationAmplitudes amplitudes;
    std::size_t clamped = 0;  // half angles pushed back into [0, pi/2]
};

/// cos/sin of asin(C / l_i) + eps_i. Branches with eps_i == 0 reuse the
/// clean amplitudes exactly.
PerturbedRotation perturbed_rotation(const SpectralData &spec, std::span<const double> eps);

TripartiteState noisy_psi2(const SpectralData &spec, std::span<const double> eps);

struct NoisySolution {
    CVector x_state;     // normalized
    double sp = 0.0;     // sum |b_i|^2 sin^2(theta_i / 2)
    CVector amplitudes;  // unnormalized post-selected amplitudes, sum b_i sin(theta_i / 2) u_i
    std::size_t clamped = 0;
};

/// Post-selects the ancilla on |1> after the perturbed rotation and reverse
/// phase estimation. Throws ZeroPostselection when sp vanishes.
NoisySolution noisy_solution(const SpectralData &spec, std::span<const double> eps);

/// First-order shift of the post-selected amplitudes under the small-angle
/// rotation, sum_i b_i eps_i u_i.
CVector first_order_shift(const SpectralData &spec, std::span<const double> eps);

/// sqrt(sum |clean_i - noisy_i|^2 / |clean|^2) after rotating `noisy` by the
/// global phase that best aligns it with `clean`.
/// Throws DegenerateReference for a zero `clean`, ShapeError on length mismatch.
double error_metric(const CVector &clean, const CVector &noisy);

/// Scalar evaluated on one disorder realization.
using Quantity = std::function<double(const SpectralData &, std::span<const double>)>;

/// Fills `out` with several scalars for one realization, sharing work.
using QuantitySet = std::function<void(const SpectralData &, std::span<const double>, std::span<double>)>;

struct QuenchedStat {
    double mean = 0.0;
    double std_error = 0.0;  // sample stddev / sqrt(samples)
    std::size_t samples = 0;
};

struct DisorderRun {
    DisorderConfig config;
    std::vector<std::string> names;
    std::vector<QuenchedStat> averages;  // parallel to names
    std::size_t skipped = 0;             // realizations whose evaluation failed
    std::size_t clamped = 0;             // clamped half angles across all realizations
    std::vector<std::vector<double>> samples;  // [quantity][realization], only when requested

    const QuenchedStat &at(const std::string &name) const;
};

struct RunOptions {
    std::size_t threads = 0;  // 0: configured_threads()
    bool keep_samples = false;
};

/// Quenched averages of `names.size()` quantities over cfg.realizations draws.
/// A realization that throws hhl::Error is skipped; more than 1% skipped
/// fails the run with NumericError.
DisorderRun run_disorder(const SpectralData &spec, const DisorderConfig &cfg, const std::vector<std::string> &names,
                         const QuantitySet &quantities, const RunOptions &options = {});

QuenchedStat quenched_average(const Quantity &quantity, const SpectralData &spec, const DisorderConfig &cfg,
                              const RunOptions &options = {});

/// E_r, GGM of psi_2, LN of rho_{Lambda U} and C_R, in that order.
inline const std::vector<std::string> kDisorderQuantities = {"error", "ggm", "ln_LU", "coherence_R"};
QuantitySet standard_quantities(const SpectralData &spec);

/// Values of kDisorderQuantities without disorder.
std::vector<double> clean_quantities(const SpectralData &spec);

}  // namespace hhl
