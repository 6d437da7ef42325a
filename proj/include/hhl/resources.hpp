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

#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "hhl/engine.hpp"
#include "hhl/tensor.hpp"

namespace hhl {

/// Bipartitions of the pure tripartite state (first three) and two-party
/// marginals (last three) on which logarithmic negativity is reported.
enum class Cut { lambda_ur, u_lambda_r, r_lambda_u, lambda_u, u_r, lambda_r };

inline constexpr std::array<Cut, 6> kAllCuts = {Cut::lambda_ur, Cut::u_lambda_r, Cut::r_lambda_u,
                                                 Cut::lambda_u,  Cut::u_r,        Cut::lambda_r};

/// Short ASCII label: "L:UR", "U:LR", "R:LU", "LU", "UR", "LR".
std::string_view to_string(Cut cut);

struct ResourceReport {
    Stage stage = Stage::psi_2;
    double ggm = 0.0;
    std::array<double, kAllCuts.size()> ln{};
    double coherence_global = 0.0;
    double coherence_lambda = 0.0;
    double coherence_u = 0.0;
    double coherence_r = 0.0;
    double purity_lambda = 1.0;
    double purity_u = 1.0;
    double purity_r = 1.0;
    double sp = 0.0;
    double kappa = 1.0;
    bool trivial = false;  // b is an eigenvector of A

    double log_negativity(Cut cut) const {
        return ln[static_cast<std::size_t>(cut)];
    }
};

/// Generalized geometric measure: 1 minus the largest squared Schmidt
/// coefficient over every bipartition of the parties in `dims`.
/// Throws InvalidCut for a single-party state.
double ggm(const CVector &psi, const SubsystemDims &dims);
double ggm(const TripartiteState &state);

/// GGM of psi_2 with the eigenvalue register split into its n qubits, so the
/// state has n + 2 parties. Throws SizeError when n > 12.
double micro_ggm(const SpectralData &spec);

inline constexpr int kMaxMicroGgmQubits = 12;

/// A register bit on which every populated eigenvalue encoding agrees.
/// position 0 is the least significant bit.
struct SharedBit {
    int position = 0;
    int value = 0;
};

/// Bits common to the encodings of all eigenvalues with nonzero beta. Any
/// such bit factors out of psi_2 and makes the micro GGM vanish.
std::vector<SharedBit> shared_register_bits(const SpectralData &spec, double tol = 1e-9);

/// Sum of |negative eigenvalues| (below -1e-12) of the partial transpose.
/// Both transposition choices are evaluated and must agree within 1e-10.
double negativity(const CMatrix &rho, const SubsystemDims &dims);

/// log2(2 N + 1)
double log_negativity(const CMatrix &rho, const SubsystemDims &dims);
double log_negativity_from(double negativity_value);

/// Logarithmic negativity of a pure state across `cut` : complement,
/// 2 log2(sum of Schmidt coefficients).
double log_negativity_pure(const CVector &psi, const SubsystemDims &dims, const PartySet &cut);

/// Negativity of rho_{Lambda U} of psi_2,
///   sum_{i<j} |b_i b_j| (sqrt(1 - C^2/l_i^2) sqrt(1 - C^2/l_j^2) + C^2 / (l_i l_j)).
/// Throws DegeneracyWarning for merged eigenspaces.
double negativity_closed_form(const SpectralData &spec);

/// Normalized l1-norm coherence in the computational basis, sum_{i!=j}|rho_ij| / (D-1).
double l1_coherence(const CMatrix &rho);
/// Same measure for the pure state |psi><psi|.
double l1_coherence(const CVector &psi);

/// 2 sum_i |b_i|^2 sqrt(1 - C^2/l_i^2) C / l_i
double coherence_R_closed_form(const SpectralData &spec);

/// Ancilla marginal [[1 - sum a_i, sum b_i], [sum b_i, sum a_i]] with
/// a_i = |b_i|^2 C^2/l_i^2 and b_i = |b_i|^2 sqrt(1 - C^2/l_i^2) C/l_i.
CMatrix rho_R_closed_form(const SpectralData &spec);

/// State-derived fields only (sp, kappa and trivial are left at defaults).
ResourceReport measure(const TripartiteState &state);

/// Every report field for the clean state at `stage`.
ResourceReport report(const SpectralData &spec, Stage stage);

}  // namespace hhl
