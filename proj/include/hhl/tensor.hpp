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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace hhl {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Party indices into a SubsystemDims, e.g. {0} or {1, 2}.
using PartySet = std::vector<std::size_t>;

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kSpectralTolerance = 1e-10;

/// Ordered local dimensions of a composite Hilbert space. Party 0 is the most
/// significant digit of a flattened basis index.
class SubsystemDims {
  public:
    SubsystemDims(std::initializer_list<std::size_t> dims);
    explicit SubsystemDims(std::vector<std::size_t> dims);

    std::size_t parties() const noexcept {
        return dims_.size();
    }
    std::size_t operator[](std::size_t party) const {
        return dims_.at(party);
    }
    std::size_t total() const noexcept {
        return total_;
    }
    const std::vector<std::size_t> &local() const noexcept {
        return dims_;
    }

    /// Product of the local dimensions of `parties`.
    std::size_t product(std::span<const std::size_t> parties) const;

    /// Replaces `party` by several parties whose dimensions multiply to the
    /// original one (used to expand a register into its qubits).
    SubsystemDims refine(std::size_t party, const std::vector<std::size_t> &factors) const;

    bool operator==(const SubsystemDims &) const = default;

  private:
    std::vector<std::size_t> dims_;
    std::size_t total_ = 1;
};

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and the
/// matching orthonormal eigenvectors stored as columns.
struct EigenSystem {
    std::vector<double> values;
    CMatrix vectors;
};

bool is_hermitian(const CMatrix &m, double tol = kHermitianTolerance);

/// True when `rho` is Hermitian, has unit trace within 1e-12 and no eigenvalue
/// below -1e-10.
bool is_density(const CMatrix &rho);

/// Ascending spectrum and eigenvectors. Each eigenvector is rescaled by a
/// phase so that its largest-magnitude entry (first one on ties) is real and
/// positive. Throws HermiticityViolation.
EigenSystem hermitian_eig(const CMatrix &m);

/// Ascending spectrum only.
std::vector<double> hermitian_eigenvalues(const CMatrix &m);

/// Squared Schmidt coefficients of a pure state across `cut` : complement,
/// sorted descending. Numerically zero coefficients (squared value <= 1e-24) are dropped.
std::vector<double> schmidt_squared(const CVector &psi, const SubsystemDims &dims, const PartySet &cut);

/// Largest squared Schmidt coefficient across `cut` : complement.
double max_schmidt_squared(const CVector &psi, const SubsystemDims &dims, const PartySet &cut);

/// Reduced state on `keep` (listed parties, kept in ascending order).
CMatrix partial_trace(const CVector &psi, const SubsystemDims &dims, const PartySet &keep);
CMatrix partial_trace(const CMatrix &rho, const SubsystemDims &dims, const PartySet &keep);

enum class Party { first, second };

/// Partial transpose of a two-party operator on `party`.
CMatrix partial_transpose(const CMatrix &rho, const SubsystemDims &dims, Party party);

/// Tr(rho^2).
double purity(const CMatrix &rho);

/// |psi><psi|
CMatrix projector(const CVector &psi);

/// Matrix of amplitudes with the `rows` parties as row index and the rest as
/// column index, both in ascending party order.
CMatrix reshape_across(const CVector &psi, const SubsystemDims &dims, const PartySet &rows);

}  // namespace hhl
