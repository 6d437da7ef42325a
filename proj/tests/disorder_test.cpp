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

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "hhl/disorder.hpp"
#include "hhl/error.hpp"
#include "hhl/philox.hpp"
#include "hhl/resources.hpp"
#include "test_util.hpp"

namespace hhl {
namespace {

using testing::paper_2d_spec;
using testing::real_vector;

TEST(Philox, KnownAnswers) {
    EXPECT_EQ(Philox4x32::generate({0, 0, 0, 0}, {0, 0}),
              (Philox4x32::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (Philox4x32::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (Philox4x32::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Sampling, ZeroSigmaAndDeterminism) {
    DisorderConfig cfg;
    cfg.realizations = 50;
    auto zero = sample_epsilons(cfg, 3);
    EXPECT_EQ(zero.rows(), 50);
    EXPECT_EQ(zero.cols(), 3);
    EXPECT_EQ(zero.cwiseAbs().maxCoeff(), 0.0);
    cfg.sigma = 0.1;
    cfg.seed = 99;
    auto a = sample_epsilons(cfg, 3);
    auto b = sample_epsilons(cfg, 3);
    EXPECT_TRUE((a.array() == b.array()).all());
    cfg.seed = 100;
    EXPECT_FALSE((a.array() == sample_epsilons(cfg, 3).array()).all());
    cfg.mean = 0.5;
    cfg.sigma = 0.0;
    EXPECT_TRUE((sample_epsilons(cfg, 2).array() == 0.5).all());
}

TEST(Sampling, GaussianMoments) {
    DisorderConfig cfg;
    cfg.sigma = 0.1;
    cfg.realizations = 100000;
    cfg.seed = 7;
    auto eps = sample_epsilons(cfg, 1);
    double mean = eps.mean();
    double var = (eps.array() - mean).square().sum() / static_cast<double>(eps.size() - 1);
    EXPECT_LT(std::abs(mean), 4 * 0.1 / std::sqrt(1e5));
    EXPECT_NEAR(std::sqrt(var), 0.1, 0.1 * 0.01);
    double beyond = (eps.array().abs() > 0.2).cast<double>().mean();
    EXPECT_NEAR(beyond, 0.0455, 0.003);
}

TEST(Sampling, Validation) {
    DisorderConfig cfg;
    cfg.sigma = -1;
    EXPECT_THROW(cfg.validate(), RangeError);
    cfg.sigma = std::nan("");
    EXPECT_THROW(cfg.validate(), RangeError);
    cfg.sigma = 0.1;
    cfg.realizations = 0;
    EXPECT_THROW(cfg.validate(), RangeError);
}

TEST(NoisyPsi2, ZeroEpsIsClean) {
    auto spec = paper_2d_spec(0.6);
    std::vector<double> eps(2, 0.0);
    EXPECT_LT((noisy_psi2(spec, eps).amplitudes - build_state(spec, Stage::psi_2).amplitudes).norm(), 1e-12);
    std::vector<double> wrong(3, 0.0);
    EXPECT_THROW(noisy_psi2(spec, wrong), ShapeError);
}

TEST(NoisyPsi2, PerturbedAmplitudes) {
    auto spec = paper_2d_spec(0.6);
    std::vector<double> eps{0.01, -0.01};
    auto rot = perturbed_rotation(spec, eps);
    EXPECT_EQ(rot.clamped, 0u);
    EXPECT_NEAR(rot.amplitudes.flip[0], std::sin(std::asin(0.736 / 1) + 0.01), 1e-15);
    EXPECT_NEAR(rot.amplitudes.flip[1], std::sin(std::asin(0.736 / 2) - 0.01), 1e-15);
    EXPECT_NEAR(rot.amplitudes.keep[1], std::cos(std::asin(0.736 / 2) - 0.01), 1e-15);
}

TEST(NoisyPsi2, ClampAtZero) {
    auto spec = paper_2d_spec(0.6);
    std::vector<double> eps{0.0, -5.0};
    auto rot = perturbed_rotation(spec, eps);
    EXPECT_EQ(rot.clamped, 1u);
    EXPECT_EQ(rot.amplitudes.flip[1], 0.0);
    EXPECT_EQ(rot.amplitudes.keep[1], 1.0);
    std::vector<double> up{5.0, 0.0};
    auto hi = perturbed_rotation(spec, up);
    EXPECT_EQ(hi.clamped, 1u);
    EXPECT_NEAR(hi.amplitudes.flip[0], 1.0, 1e-15);
}

TEST(NoisySolution, ZeroEpsMatchesClean) {
    auto spec = paper_2d_spec(0.6);
    auto noisy = noisy_solution(spec, std::vector<double>(2, 0.0));
    auto clean = solution(spec);
    EXPECT_NEAR(noisy.sp, clean.sp, 1e-12);
    EXPECT_LT((noisy.x_state - clean.x_state).norm(), 1e-12);
    EXPECT_LT((noisy.amplitudes - spec.C * clean.x_classical).norm(), 1e-12);
}

TEST(NoisySolution, SingleBranchDirection) {
    double s = 1.0 / std::sqrt(2.0);
    auto spec = paper_2d_spec(s);
    std::vector<double> eps{0.0, 0.03};
    auto noisy = noisy_solution(spec, eps);
    auto clean = noisy_solution(spec, std::vector<double>(2, 0.0));
    EXPECT_NEAR(testing::fidelity(noisy.x_state, clean.x_state), 1.0, 1e-12);
    // amplitude-level error: only the length of the single branch changes
    double a = std::asin(0.736 / 2);
    double expected = std::abs(std::sin(a + 0.03) / std::sin(a) - 1.0);
    EXPECT_NEAR(error_metric(clean.amplitudes, noisy.amplitudes), expected, 1e-12);
}

TEST(NoisySolution, ZeroPostselection) {
    auto spec = paper_2d_spec(0.6);
    std::vector<double> eps{-5.0, -5.0};
    EXPECT_THROW(noisy_solution(spec, eps), ZeroPostselection);
}

TEST(NoisySolution, SmallAngleConsistency) {
    // C small enough that every half angle is below 0.2
    auto spec = paper_2d_spec(0.6, 0.19);
    double max_half = 0.0;
    for (double l : spec.lambdas) {
        max_half = std::max(max_half, std::asin(spec.C / l));
    }
    ASSERT_LE(max_half, 0.2);
    double theta = 2 * max_half;
    DisorderConfig cfg;
    cfg.sigma = 0.01;
    cfg.realizations = 2000;
    cfg.seed = 5;
    auto eps = sample_epsilons(cfg, spec.branches());
    CVector clean = noisy_solution(spec, std::vector<double>(2, 0.0)).amplitudes;
    for (Eigen::Index r = 0; r < eps.rows(); ++r) {
        std::vector<double> e{eps(r, 0), eps(r, 1)};
        CVector noisy = noisy_solution(spec, e).amplitudes;
        CVector predicted = clean + first_order_shift(spec, e);
        EXPECT_LE((noisy - predicted).norm(), 10 * (cfg.sigma * cfg.sigma + theta * theta * theta));
    }
}

TEST(ErrorMetric, Cases) {
    CVector clean = real_vector({0.25, 0.45});
    EXPECT_EQ(error_metric(clean, clean), 0.0);
    EXPECT_NEAR(error_metric(clean, 2.0 * clean), 1.0, 1e-15);
    EXPECT_NEAR(error_metric(clean, std::polar(1.0, 0.7) * clean), 0.0, 1e-15);
    EXPECT_NEAR(error_metric(clean, real_vector({0.25, 0.55})), 0.1 / clean.norm(), 1e-15);
    EXPECT_THROW(error_metric(CVector::Zero(2), clean), DegenerateReference);
    EXPECT_THROW(error_metric(clean, CVector::Zero(3)), ShapeError);
}

TEST(Quenched, Trivial) {
    auto spec = paper_2d_spec(0.6);
    DisorderConfig cfg;
    cfg.realizations = 100;
    auto q0 = [](const SpectralData &s, std::span<const double> eps) { return ggm(noisy_psi2(s, eps)); };
    auto zero = quenched_average(q0, spec, cfg);
    EXPECT_EQ(zero.mean, ggm(build_state(spec, Stage::psi_2)));
    EXPECT_EQ(zero.std_error, 0.0);
    cfg.sigma = 0.3;
    auto one = quenched_average([](const SpectralData &, std::span<const double>) { return 1.0; }, spec, cfg);
    EXPECT_EQ(one.mean, 1.0);
    EXPECT_EQ(one.std_error, 0.0);
    EXPECT_EQ(one.samples, 100u);
}

TEST(Quenched, ErrorGrowsWithSigma) {
    auto spec = paper_2d_spec(std::sqrt(0.3));
    CVector clean = noisy_solution(spec, std::vector<double>(2, 0.0)).amplitudes;
    auto err = [clean](const SpectralData &s, std::span<const double> eps) {
        return error_metric(clean, noisy_solution(s, eps).amplitudes);
    };
    DisorderConfig cfg;
    cfg.realizations = 10000;
    cfg.seed = 3;
    cfg.sigma = 0.01;
    double low = quenched_average(err, spec, cfg).mean;
    cfg.sigma = 0.05;
    double high = quenched_average(err, spec, cfg).mean;
    EXPECT_GT(high, low);
}

TEST(Quenched, SkipPolicy) {
    auto spec = paper_2d_spec(0.6);
    DisorderConfig cfg;
    cfg.sigma = 1.0;
    cfg.realizations = 1000;
    // fails when the first draw is beyond 2.8 sigma (about 0.5%)
    auto rare = [](const SpectralData &, std::span<const double> eps) -> double {
        if (std::abs(eps[0]) > 2.8) {
            throw NumericError("synthetic failure");
        }
        return eps[0];
    };
    std::vector<std::string> names{"q"};
    auto set = [&](const SpectralData &s, std::span<const double> e, std::span<double> out) { out[0] = rare(s, e); };
    auto run = run_disorder(spec, cfg, names, set);
    EXPECT_GT(run.skipped, 0u);
    EXPECT_LE(run.skipped, 10u);
    EXPECT_EQ(run.at("q").samples, 1000u - run.skipped);
    auto often = [](const SpectralData &, std::span<const double> eps, std::span<double> out) {
        if (eps[0] > 0) {
            throw NumericError("synthetic failure");
        }
        out[0] = 0;
    };
    EXPECT_THROW(run_disorder(spec, cfg, names, often), NumericError);
    EXPECT_THROW(run.at("missing"), RangeError);
}

TEST(Quenched, ThreadCountDoesNotChangeBits) {
    auto spec = paper_2d_spec(std::sqrt(0.3));
    DisorderConfig cfg;
    cfg.sigma = 0.05;
    cfg.realizations = 3000;
    cfg.seed = 11;
    auto one = run_disorder(spec, cfg, kDisorderQuantities, standard_quantities(spec), {1, false});
    for (std::size_t threads : {2u, 3u, 8u}) {
        auto many = run_disorder(spec, cfg, kDisorderQuantities, standard_quantities(spec), {threads, false});
        for (std::size_t q = 0; q < kDisorderQuantities.size(); ++q) {
            EXPECT_EQ(one.averages[q].mean, many.averages[q].mean);
            EXPECT_EQ(one.averages[q].std_error, many.averages[q].std_error);
        }
        EXPECT_EQ(one.clamped, many.clamped);
    }
}

TEST(Quenched, SmallSigmaLimit) {
    for (double b0sq : {0.1, 0.3, 0.5, 0.7}) {
        auto spec = paper_2d_spec(std::sqrt(b0sq));
        DisorderConfig cfg;
        cfg.sigma = 1e-4;
        cfg.realizations = 2000;
        auto run = run_disorder(spec, cfg, kDisorderQuantities, standard_quantities(spec));
        auto clean = clean_quantities(spec);
        for (std::size_t q = 0; q < clean.size(); ++q) {
            EXPECT_LT(std::abs(run.averages[q].mean - clean[q]), 1e-3) << kDisorderQuantities[q];
        }
    }
}

TEST(Quenched, MonotoneInSigma) {
    for (double b0sq : {0.1, 0.3, 0.7}) {
        auto spec = paper_2d_spec(std::sqrt(b0sq));
        std::vector<DisorderRun> runs;
        for (double sigma : {0.01, 0.05, 0.1}) {
            DisorderConfig cfg;
            cfg.sigma = sigma;
            cfg.realizations = 10000;
            runs.push_back(run_disorder(spec, cfg, kDisorderQuantities, standard_quantities(spec)));
        }
        for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
            EXPECT_LT(runs[k].at("error").mean, runs[k + 1].at("error").mean) << b0sq;
            EXPECT_LT(runs[k].at("ggm").mean, runs[k + 1].at("ggm").mean) << b0sq;
            EXPECT_GT(runs[k].at("ln_LU").mean, runs[k + 1].at("ln_LU").mean) << b0sq;
            EXPECT_GT(runs[k].at("coherence_R").mean, runs[k + 1].at("coherence_R").mean) << b0sq;
        }
    }
}

TEST(Quenched, KeepSamples) {
    auto spec = paper_2d_spec(0.6);
    DisorderConfig cfg;
    cfg.sigma = 0.05;
    cfg.realizations = 200;
    auto run = run_disorder(spec, cfg, kDisorderQuantities, standard_quantities(spec), {0, true});
    ASSERT_EQ(run.samples.size(), kDisorderQuantities.size());
    double sum = 0.0;
    for (double x : run.samples[0]) {
        sum += x;
    }
    EXPECT_NEAR(sum / 200.0, run.at("error").mean, 1e-14);
}

}  // namespace
}  // namespace hhl
