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
#include <random>

#include <gtest/gtest.h>

#include "hhl/error.hpp"
#include "hhl/tensor.hpp"
#include "test_util.hpp"

namespace hhl {
namespace {

using testing::random_density;
using testing::random_hermitian;
using testing::random_state;
using testing::real_vector;

CMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
    CMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (auto row : rows) {
        Eigen::Index j = 0;
        for (double x : row) {
            m(i, j++) = x;
        }
        ++i;
    }
    return m;
}

CVector bell() {
    return real_vector({1, 0, 0, 1}) / std::sqrt(2.0);
}

TEST(SubsystemDims, Basics) {
    SubsystemDims d{2, 3, 2};
    EXPECT_EQ(d.parties(), 3u);
    EXPECT_EQ(d.total(), 12u);
    std::vector<std::size_t> cut{0, 2};
    EXPECT_EQ(d.product(cut), 4u);
    EXPECT_EQ(d.refine(0, {2, 1}), (SubsystemDims{2, 1, 3, 2}));
    EXPECT_THROW(d.refine(1, {2, 2}), ShapeError);
    EXPECT_THROW((SubsystemDims{2, 0}), ShapeError);
}

TEST(HermitianEig, TwoLevelExample) {
    auto es = hermitian_eig(real_matrix({{1.5, 0.5}, {0.5, 1.5}}));
    ASSERT_EQ(es.values.size(), 2u);
    EXPECT_NEAR(es.values[0], 1.0, 1e-12);
    EXPECT_NEAR(es.values[1], 2.0, 1e-12);
    double s = 1.0 / std::sqrt(2.0);
    // largest-magnitude entry real positive; ties resolved by first index
    EXPECT_NEAR(std::abs(es.vectors(0, 0) - Complex(s)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(es.vectors(1, 0) - Complex(-s)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(es.vectors(0, 1) - Complex(s)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(es.vectors(1, 1) - Complex(s)), 0.0, 1e-12);
}

TEST(HermitianEig, IdentityIsDegenerate) {
    auto es = hermitian_eig(CMatrix::Identity(3, 3));
    for (double v : es.values) {
        EXPECT_NEAR(v, 1.0, 1e-12);
    }
    EXPECT_NEAR((es.vectors.adjoint() * es.vectors - CMatrix::Identity(3, 3)).norm(), 0.0, 1e-12);
}

TEST(HermitianEig, ThreeLevelExample) {
    CMatrix a = real_matrix({{14, -4, -4}, {-4, 11, -1}, {-4, -1, 11}}) / 6.0;
    auto es = hermitian_eig(a);
    ASSERT_EQ(es.values.size(), 3u);
    EXPECT_NEAR(es.values[0], 1.0, 1e-12);
    EXPECT_NEAR(es.values[1], 2.0, 1e-12);
    EXPECT_NEAR(es.values[2], 3.0, 1e-12);
    for (int i = 0; i < 3; ++i) {
        CVector r = a * es.vectors.col(i) - es.values[static_cast<std::size_t>(i)] * es.vectors.col(i);
        EXPECT_LT(r.norm(), 1e-12);
    }
}

TEST(HermitianEig, RejectsNonHermitian) {
    EXPECT_THROW(hermitian_eig(real_matrix({{1, 2}, {0, 1}})), HermiticityViolation);
    EXPECT_THROW(hermitian_eig(real_matrix({{1, 2, 3}})), ShapeError);
}

TEST(HermitianEig, PhaseConvention) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto es = hermitian_eig(random_hermitian(rng, 5));
        for (Eigen::Index c = 0; c < 5; ++c) {
            auto col = es.vectors.col(c);
            Eigen::Index best = 0;
            col.cwiseAbs().maxCoeff(&best);
            EXPECT_GT(col(best).real(), 0.0);
            EXPECT_NEAR(col(best).imag(), 0.0, 1e-12);
        }
    }
}

TEST(HermitianEig, ReconstructionProperty) {
    std::mt19937_64 rng(11);
    for (std::size_t n = 1; n <= 12; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            CMatrix a = random_hermitian(rng, n);
            auto es = hermitian_eig(a);
            Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(es.values.data(), static_cast<Eigen::Index>(n));
            CMatrix back = es.vectors * d.cast<Complex>().asDiagonal() * es.vectors.adjoint();
            EXPECT_LT((back - a).norm(), 1e-10);
            EXPECT_LT((es.vectors.adjoint() * es.vectors - CMatrix::Identity(a.rows(), a.rows())).norm(), 1e-10);
            EXPECT_TRUE(std::is_sorted(es.values.begin(), es.values.end()));
        }
    }
}

TEST(Schmidt, ProductAndBell) {
    CVector prod = Eigen::kroneckerProduct(real_vector({1, 0}), real_vector({0.6, 0.8})).eval();
    auto s = schmidt_squared(prod, SubsystemDims{2, 2}, {0});
    ASSERT_EQ(s.size(), 1u);
    EXPECT_NEAR(s[0], 1.0, 1e-12);
    auto b = schmidt_squared(bell(), SubsystemDims{2, 2}, {0});
    ASSERT_EQ(b.size(), 2u);
    EXPECT_NEAR(b[0], 0.5, 1e-12);
    EXPECT_NEAR(b[1], 0.5, 1e-12);
}

TEST(Schmidt, InvalidCuts) {
    SubsystemDims d{2, 2, 2};
    CVector psi = CVector::Zero(8);
    psi(0) = 1;
    EXPECT_THROW(schmidt_squared(psi, d, {}), InvalidCut);
    EXPECT_THROW(schmidt_squared(psi, d, {0, 1, 2}), InvalidCut);
    EXPECT_THROW(schmidt_squared(psi, d, {3}), InvalidCut);
    EXPECT_THROW(schmidt_squared(psi, d, {1, 1}), InvalidCut);
    EXPECT_THROW(schmidt_squared(CVector::Zero(6), d, {0}), ShapeError);
}

TEST(Schmidt, MatchesReducedSpectraBothSides) {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> dim(1, 3);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::size_t> local{dim(rng) + 1, dim(rng), dim(rng) + 1};
        SubsystemDims dims(local);
        CVector psi = random_state(rng, dims.total());
        for (PartySet cut : {PartySet{0}, PartySet{1}, PartySet{2}, PartySet{0, 1}}) {
            PartySet rest;
            for (std::size_t p = 0; p < 3; ++p) {
                if (std::find(cut.begin(), cut.end(), p) == cut.end()) {
                    rest.push_back(p);
                }
            }
            auto s = schmidt_squared(psi, dims, cut);
            double sum = 0.0;
            for (double x : s) {
                sum += x;
            }
            EXPECT_NEAR(sum, 1.0, 1e-10);
            for (const PartySet &side : {cut, rest}) {
                auto ev = hermitian_eigenvalues(testing::reference_partial_trace(psi, local, side));
                std::sort(ev.rbegin(), ev.rend());
                for (std::size_t i = 0; i < ev.size(); ++i) {
                    double expected = i < s.size() ? s[i] : 0.0;
                    EXPECT_NEAR(ev[i], expected, 1e-10);
                }
            }
            EXPECT_NEAR(max_schmidt_squared(psi, dims, cut), s.front(), 1e-10);
        }
    }
}

TEST(PartialTrace, MatchesReferenceAndDensityRoute) {
    std::mt19937_64 rng(5);
    std::vector<std::size_t> local{3, 2, 2};
    SubsystemDims dims(local);
    for (int trial = 0; trial < 20; ++trial) {
        CVector psi = random_state(rng, dims.total());
        for (PartySet keep : {PartySet{0}, PartySet{1}, PartySet{2}, PartySet{0, 1}, PartySet{1, 2}, PartySet{0, 2}}) {
            CMatrix ref = testing::reference_partial_trace(psi, local, keep);
            EXPECT_LT((partial_trace(psi, dims, keep) - ref).norm(), 1e-12);
            EXPECT_LT((partial_trace(projector(psi), dims, keep) - ref).norm(), 1e-12);
            EXPECT_TRUE(is_density(ref));
        }
    }
}

TEST(PartialTrace, ProductStateFactor) {
    CVector a = real_vector({0.6, 0.8});
    CVector b = real_vector({0, 1, 0});
    CVector psi = Eigen::kroneckerProduct(a, b).eval();
    CMatrix rho = partial_trace(psi, SubsystemDims{2, 3}, {0});
    EXPECT_LT((rho - projector(a)).norm(), 1e-12);
    EXPECT_NEAR(purity(rho), 1.0, 1e-12);
    EXPECT_THROW(partial_trace(psi, SubsystemDims{2, 2}, {0}), ShapeError);
}

TEST(PartialTranspose, BellState) {
    CMatrix pt = partial_transpose(projector(bell()), SubsystemDims{2, 2}, Party::second);
    auto ev = hermitian_eigenvalues(pt);
    EXPECT_NEAR(ev.front(), -0.5, 1e-12);
    EXPECT_NEAR(ev.back(), 0.5, 1e-12);
}

TEST(PartialTranspose, ProductUnchangedSpectrum) {
    std::mt19937_64 rng(9);
    CMatrix a = random_density(rng, 2);
    CMatrix b = random_density(rng, 3);
    CMatrix rho = Eigen::kroneckerProduct(a, b).eval();
    CMatrix pt = partial_transpose(rho, SubsystemDims{2, 3}, Party::second);
    EXPECT_GE(testing::min_eigenvalue(pt), -1e-12);
    CMatrix real_rho = Eigen::kroneckerProduct(projector(real_vector({0.6, 0.8})), projector(real_vector({1, 0, 0}))).eval();
    EXPECT_LT((partial_transpose(real_rho, SubsystemDims{2, 3}, Party::first) - real_rho).norm(), 1e-15);
}

TEST(PartialTranspose, InvolutionAndSideEquivalence) {
    std::mt19937_64 rng(13);
    for (std::size_t da = 1; da <= 4; ++da) {
        for (std::size_t db = 1; db <= 3; ++db) {
            SubsystemDims dims{da, db};
            CMatrix rho = random_density(rng, da * db);
            CMatrix t1 = partial_transpose(rho, dims, Party::first);
            CMatrix t2 = partial_transpose(rho, dims, Party::second);
            EXPECT_LT((partial_transpose(t1, dims, Party::first) - rho).norm(), 1e-12);
            EXPECT_LT((t1.transpose() - t2).norm(), 1e-12);
            auto e1 = hermitian_eigenvalues(t1);
            auto e2 = hermitian_eigenvalues(t2);
            for (std::size_t i = 0; i < e1.size(); ++i) {
                EXPECT_NEAR(e1[i], e2[i], 1e-10);
            }
        }
    }
    EXPECT_THROW(partial_transpose(CMatrix::Identity(4, 4), SubsystemDims{2, 3}, Party::first), ShapeError);
    EXPECT_THROW(partial_transpose(CMatrix::Identity(8, 8), SubsystemDims{2, 2, 2}, Party::first), ShapeError);
}

TEST(Purity, Examples) {
    EXPECT_NEAR(purity(projector(real_vector({0.6, 0.8}))), 1.0, 1e-12);
    EXPECT_NEAR(purity(CMatrix::Identity(2, 2) / 2.0), 0.5, 1e-12);
    CMatrix diag = CMatrix::Zero(2, 2);
    diag(0, 0) = 0.02;
    diag(1, 1) = 0.98;
    EXPECT_NEAR(purity(diag), 0.9608, 1e-12);
}

TEST(Purity, OneIffRankOne) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        CMatrix rho = random_density(rng, 4);
        double top = testing::top_eigenvalue(rho);
        EXPECT_LT(purity(rho), 1.0 - 1e-9);
        EXPECT_LT(top, 1.0 - 1e-9);
        CMatrix pure = projector(random_state(rng, 4));
        EXPECT_NEAR(purity(pure), 1.0, 1e-12);
        EXPECT_NEAR(testing::top_eigenvalue(pure), 1.0, 1e-12);
    }
}

TEST(Predicates, HermitianAndDensity) {
    EXPECT_TRUE(is_hermitian(CMatrix::Identity(3, 3)));
    EXPECT_FALSE(is_hermitian(real_matrix({{0, 1}, {0, 0}})));
    EXPECT_TRUE(is_density(CMatrix::Identity(2, 2) / 2.0));
    EXPECT_FALSE(is_density(CMatrix::Identity(2, 2)));
    EXPECT_FALSE(is_density(real_matrix({{1.5, 0}, {0, -0.5}})));
}

}  // namespace
}  // namespace hhl
