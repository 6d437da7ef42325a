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

#include "hhl/tensor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "hhl/error.hpp"

namespace hhl {

namespace {

std::vector<std::size_t> strides_of(const SubsystemDims &dims) {
    std::vector<std::size_t> strides(dims.parties(), 1);
    for (std::size_t p = dims.parties(); p-- > 1;) {
        strides[p - 1] = strides[p] * dims[p];
    }
    return strides;
}

void check_parties(const SubsystemDims &dims, const PartySet &set) {
    if (set.empty()) {
        throw InvalidCut("party set is empty");
    }
    if (set.size() >= dims.parties()) {
        throw InvalidCut("party set must be a proper subset of " + std::to_string(dims.parties()) + " parties");
    }
    std::vector<bool> seen(dims.parties(), false);
    for (auto p : set) {
        if (p >= dims.parties()) {
            throw InvalidCut("party index " + std::to_string(p) + " out of range");
        }
        if (seen[p]) {
            throw InvalidCut("party index " + std::to_string(p) + " repeated");
        }
        seen[p] = true;
    }
}

void check_state_shape(const CVector &psi, const SubsystemDims &dims) {
    if (static_cast<std::size_t>(psi.size()) != dims.total()) {
        throw ShapeError("state has dimension " + std::to_string(psi.size()) + " but subsystem dims multiply to " +
                         std::to_string(dims.total()));
    }
}

void check_operator_shape(const CMatrix &rho, const SubsystemDims &dims) {
    if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != dims.total()) {
        throw ShapeError("operator is " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                         " but subsystem dims multiply to " + std::to_string(dims.total()));
    }
}

// For every flat basis index, its (row, col) position after grouping `rows`
// against the remaining parties.
struct SplitIndex {
    std::vector<std::size_t> row;
    std::vector<std::size_t> col;
    std::size_t row_dim = 1;
    std::size_t col_dim = 1;
};

SplitIndex split_index(const SubsystemDims &dims, const PartySet &rows) {
    std::vector<bool> in_rows(dims.parties(), false);
    for (auto p : rows) {
        in_rows[p] = true;
    }
    PartySet row_parties;
    PartySet col_parties;
    for (std::size_t p = 0; p < dims.parties(); ++p) {
        (in_rows[p] ? row_parties : col_parties).push_back(p);
    }

    SplitIndex out;
    out.row_dim = dims.product(row_parties);
    out.col_dim = dims.product(col_parties);
    out.row.resize(dims.total());
    out.col.resize(dims.total());

    auto strides = strides_of(dims);
    for (std::size_t flat = 0; flat < dims.total(); ++flat) {
        std::size_t r = 0;
        std::size_t c = 0;
        for (std::size_t p = 0; p < dims.parties(); ++p) {
            std::size_t digit = (flat / strides[p]) % dims[p];
            if (in_rows[p]) {
                r = r * dims[p] + digit;
            } else {
                c = c * dims[p] + digit;
            }
        }
        out.row[flat] = r;
        out.col[flat] = c;
    }
    return out;
}

}  // namespace

SubsystemDims::SubsystemDims(std::initializer_list<std::size_t> dims) : SubsystemDims(std::vector<std::size_t>(dims)) {
}

SubsystemDims::SubsystemDims(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) {
        throw ShapeError("subsystem dims must name at least one party");
    }
    for (auto d : dims_) {
        if (d == 0) {
            throw ShapeError("subsystem dimensions must be positive");
        }
        total_ *= d;
    }
}

std::size_t SubsystemDims::product(std::span<const std::size_t> parties) const {
    std::size_t out = 1;
    for (auto p : parties) {
        out *= dims_.at(p);
    }
    return out;
}

SubsystemDims SubsystemDims::refine(std::size_t party, const std::vector<std::size_t> &factors) const {
    std::size_t prod = std::accumulate(factors.begin(), factors.end(), std::size_t{1}, std::multiplies<>());
    if (party >= dims_.size() || prod != dims_[party]) {
        throw ShapeError("refinement factors do not multiply to the party dimension");
    }
    std::vector<std::size_t> out(dims_.begin(), dims_.begin() + static_cast<std::ptrdiff_t>(party));
    out.insert(out.end(), factors.begin(), factors.end());
    out.insert(out.end(), dims_.begin() + static_cast<std::ptrdiff_t>(party) + 1, dims_.end());
    return SubsystemDims(std::move(out));
}

bool is_hermitian(const CMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return m.size() == 0 || (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_density(const CMatrix &rho) {
    if (!is_hermitian(rho) || rho.rows() == 0) {
        return false;
    }
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-12) {
        return false;
    }
    return hermitian_eigenvalues(rho).front() >= -1e-10;
}

EigenSystem hermitian_eig(const CMatrix &m) {
    if (m.rows() != m.cols()) {
        throw ShapeError("eigendecomposition needs a square matrix");
    }
    if (!is_hermitian(m)) {
        throw HermiticityViolation("matrix is not Hermitian within 1e-12");
    }
    CMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericError("Hermitian eigensolver did not converge");
    }

    EigenSystem out;
    out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    out.vectors = solver.eigenvectors();
    for (Eigen::Index k = 0; k < out.vectors.cols(); ++k) {
        auto column = out.vectors.col(k);
        double biggest = column.cwiseAbs().maxCoeff();
        // First entry within relative 1e-9 of the max wins, so exact ties
        // broken differently by rounding still pick the same anchor.
        Eigen::Index anchor = 0;
        while (std::abs(column(anchor)) < biggest * (1.0 - 1e-9)) {
            ++anchor;
        }
        Complex phase = std::conj(column(anchor)) / std::abs(column(anchor));
        column *= phase;
        column(anchor) = Complex(column(anchor).real(), 0.0);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix &m) {
    if (m.rows() != m.cols()) {
        throw ShapeError("eigendecomposition needs a square matrix");
    }
    if (!is_hermitian(m)) {
        throw HermiticityViolation("matrix is not Hermitian within 1e-12");
    }
    CMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericError("Hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size()};
}

CMatrix reshape_across(const CVector &psi, const SubsystemDims &dims, const PartySet &rows) {
    check_state_shape(psi, dims);
    auto split = split_index(dims, rows);
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(split.row_dim), static_cast<Eigen::Index>(split.col_dim));
    for (std::size_t flat = 0; flat < dims.total(); ++flat) {
        out(static_cast<Eigen::Index>(split.row[flat]), static_cast<Eigen::Index>(split.col[flat])) =
            psi(static_cast<Eigen::Index>(flat));
    }
    return out;
}

std::vector<double> schmidt_squared(const CVector &psi, const SubsystemDims &dims, const PartySet &cut) {
    check_parties(dims, cut);
    CMatrix m = reshape_across(psi, dims, cut);
    Eigen::BDCSVD<CMatrix> svd(m);
    std::vector<double> out;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        double s2 = svd.singularValues()(k) * svd.singularValues()(k);
        if (s2 > 1e-24) {
            out.push_back(s2);
        }
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double max_schmidt_squared(const CVector &psi, const SubsystemDims &dims, const PartySet &cut) {
    check_parties(dims, cut);
    CMatrix m = reshape_across(psi, dims, cut);
    CMatrix gram = m.rows() <= m.cols() ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
    if (gram.rows() == 1) {
        return gram(0, 0).real();
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(solver.eigenvalues().size() - 1);
}

CMatrix partial_trace(const CVector &psi, const SubsystemDims &dims, const PartySet &keep) {
    check_parties(dims, keep);
    CMatrix m = reshape_across(psi, dims, keep);
    return m * m.adjoint();
}

CMatrix partial_trace(const CMatrix &rho, const SubsystemDims &dims, const PartySet &keep) {
    check_operator_shape(rho, dims);
    check_parties(dims, keep);
    auto split = split_index(dims, keep);

    // flat[k * col_dim + r] is the full index with kept digits k and traced digits r.
    std::vector<Eigen::Index> flat(dims.total());
    for (std::size_t f = 0; f < dims.total(); ++f) {
        flat[split.row[f] * split.col_dim + split.col[f]] = static_cast<Eigen::Index>(f);
    }

    auto dk = static_cast<Eigen::Index>(split.row_dim);
    CMatrix out = CMatrix::Zero(dk, dk);
    for (std::size_t r = 0; r < split.col_dim; ++r) {
        for (Eigen::Index i = 0; i < dk; ++i) {
            auto fi = flat[static_cast<std::size_t>(i) * split.col_dim + r];
            for (Eigen::Index j = 0; j < dk; ++j) {
                out(i, j) += rho(fi, flat[static_cast<std::size_t>(j) * split.col_dim + r]);
            }
        }
    }
    return out;
}

CMatrix partial_transpose(const CMatrix &rho, const SubsystemDims &dims, Party party) {
    if (dims.parties() != 2) {
        throw ShapeError("partial transpose expects exactly two parties");
    }
    check_operator_shape(rho, dims);
    auto da = static_cast<Eigen::Index>(dims[0]);
    auto db = static_cast<Eigen::Index>(dims[1]);
    CMatrix out(rho.rows(), rho.cols());
    for (Eigen::Index a = 0; a < da; ++a) {
        for (Eigen::Index b = 0; b < db; ++b) {
            for (Eigen::Index a2 = 0; a2 < da; ++a2) {
                for (Eigen::Index b2 = 0; b2 < db; ++b2) {
                    Complex v = party == Party::second ? rho(a * db + b2, a2 * db + b) : rho(a2 * db + b, a * db + b2);
                    out(a * db + b, a2 * db + b2) = v;
                }
            }
        }
    }
    return out;
}

double purity(const CMatrix &rho) {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return rho.squaredNorm();
}

CMatrix projector(const CVector &psi) {
    return psi * psi.adjoint();
}

}  // namespace hhl
