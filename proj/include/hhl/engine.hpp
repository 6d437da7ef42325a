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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hhl/tensor.hpp"

namespace hhl {

/// A x = b with Hermitian A and unit-norm b. Construction validates both.
class LinearSystem {
  public:
    LinearSystem(CMatrix a, CVector b);

    const CMatrix &matrix() const noexcept {
        return a_;
    }
    const CVector &rhs() const noexcept {
        return b_;
    }
    std::size_t dim() const noexcept {
        return static_cast<std::size_t>(a_.rows());
    }

  private:
    CMatrix a_;
    CVector b_;
};

/// How the eigenvalue register is populated.
///   exact: scaled eigenvalues must be integers (phase estimation is exact and
///          the bit-string encoding used by micro mode exists).
///   label: every distinct eigenvalue just gets its own orthonormal register
///          state; any positive spectrum is accepted.
enum class EigenvalueEncoding { exact, label };

enum class RegisterMode { analytic, micro };

/// Everything the algorithm needs from A and b. Degenerate eigenvalues are
/// merged: each entry describes one eigenspace, with `vectors.col(i)` the
/// normalized projection of b onto it and `betas[i]` its length.
struct SpectralData {
    std::size_t dim = 0;                     // N
    std::vector<double> lambdas;             // distinct, ascending, > 0
    CMatrix vectors;                         // N x lambdas.size()
    std::vector<Complex> betas;              // <u_i|b>
    std::vector<std::size_t> multiplicity;   // eigenspace dimensions
    int n = 0;                               // eigenvalue register width (qubits)
    double t = 0.0;                          // evolution time, 2 pi / 2^n
    double C = 0.0;                          // circuit constant
    bool degenerate = false;
    bool integer_encoded = false;            // scaled eigenvalues verified integral

    std::size_t branches() const noexcept {
        return lambdas.size();
    }
    double lambda_min() const {
        return lambdas.front();
    }
    double lambda_max() const {
        return lambdas.back();
    }
    /// 2^n lambda t / 2 pi, rounded (only meaningful when integer_encoded).
    std::vector<std::size_t> scaled_eigenvalues() const;
};

enum class Stage { psi_in, psi_0, psi_1, psi_2, psi_3 };

std::string_view to_string(Stage stage);
/// Accepts "psi_in", "psi_0" ... "psi_3"; throws StageError otherwise.
Stage parse_stage(std::string_view name);

/// Pure state over Lambda (x) U (x) R after one stage of the algorithm.
struct TripartiteState {
    Stage stage;
    CVector amplitudes;
    SubsystemDims dims;
    RegisterMode mode = RegisterMode::analytic;
};

/// Ancilla amplitudes per branch: keep[i] on |0>, flip[i] on |1>.
struct RotationAmplitudes {
    std::vector<double> keep;
    std::vector<double> flip;
};

struct Solution {
    CVector x_state;      // normalized post-selected register state
    double sp = 0.0;      // success probability
    CVector x_classical;  // A^-1 b, unnormalized
};

inline constexpr double kDefaultCircuitRatio = 0.736;

/// [[0, A'], [A'^dagger, 0]]
CMatrix hermitize(const CMatrix &a_prime);

/// Diagonalizes A and expands b in its eigenbasis. `circuit_constant` defaults
/// to 0.736 lambda_min; `register_qubits` to ceil(log2(lambda_max + 1)).
SpectralData spectral_decompose(const LinearSystem &sys, std::optional<double> circuit_constant = std::nullopt,
                                std::optional<int> register_qubits = std::nullopt,
                                EigenvalueEncoding encoding = EigenvalueEncoding::exact);

RotationAmplitudes clean_rotation(const SpectralData &spec);

TripartiteState build_state(const SpectralData &spec, Stage stage, RegisterMode mode = RegisterMode::analytic);

/// Same as build_state but with caller-supplied ancilla amplitudes (only the
/// psi_2 and psi_3 stages depend on them).
TripartiteState build_state(const SpectralData &spec, Stage stage, const RotationAmplitudes &rotation,
                            RegisterMode mode = RegisterMode::analytic);

Solution solution(const SpectralData &spec);

double condition_number(const SpectralData &spec);

/// Number of branches with |beta_i| > tol. One branch means b is an
/// eigenvector of A (the trivial instance).
std::size_t active_branches(const SpectralData &spec, double tol = 1e-9);

/// U diag(values) U^dagger.
CMatrix with_spectrum(const CMatrix &eigenvectors, std::span<const double> values);

/// Eigenvectors (1,-1)/sqrt2 and (1,1)/sqrt2 as columns.
CMatrix two_level_eigenbasis();
/// Eigenvectors (1,1,1)/sqrt3, (0,1,-1)/sqrt2, (-2,1,1)/sqrt6 as columns.
CMatrix three_level_eigenbasis();

/// (1/2) [[3, 1], [1, 3]]
CMatrix paper_2d_matrix();
/// (1/6) [[14, -4, -4], [-4, 11, -1], [-4, -1, 11]]
CMatrix paper_3d_matrix();

/// Two-level system with the eigenvectors of paper_2d_matrix and eigenvalues
/// (1, kappa). Throws RangeError for kappa < 1.
LinearSystem kappa_family(double kappa, const CVector &b);

/// Scales v to unit norm; throws RangeError on a zero vector.
CVector normalized(const CVector &v);

}  // namespace hhl
