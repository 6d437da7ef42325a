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

#include "hhl/engine.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "hhl/error.hpp"

namespace hhl {

namespace {

constexpr double kIntegerTolerance = 1e-9;
constexpr int kMaxMicroQubits = 20;

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// Smallest n with 2^n >= lambda_max + 1, at least 1.
int default_register_width(double lambda_max) {
    int n = 1;
    while (std::ldexp(1.0, n) < lambda_max + 1.0 - kIntegerTolerance) {
        ++n;
    }
    return n;
}

}  // namespace

LinearSystem::LinearSystem(CMatrix a, CVector b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() == 0 || a_.rows() != a_.cols()) {
        throw ShapeError("coefficient matrix must be square and nonempty");
    }
    if (b_.size() != a_.rows()) {
        throw ShapeError("constant vector has length " + std::to_string(b_.size()) + ", expected " +
                         std::to_string(a_.rows()));
    }
    if (!is_hermitian(a_)) {
        throw HermiticityViolation("coefficient matrix is not Hermitian; embed it with hermitize() first");
    }
    if (std::abs(b_.norm() - 1.0) > 1e-12) {
        throw RangeError("constant vector must have unit norm, got " + fmt_double(b_.norm()));
    }
}

std::vector<std::size_t> SpectralData::scaled_eigenvalues() const {
    std::vector<std::size_t> out;
    out.reserve(lambdas.size());
    for (double l : lambdas) {
        double scaled = std::ldexp(l * t, n) / (2.0 * std::numbers::pi);
        out.push_back(static_cast<std::size_t>(std::llround(scaled)));
    }
    return out;
}

std::string_view to_string(Stage stage) {
    switch (stage) {
    case Stage::psi_in:
        return "psi_in";
    case Stage::psi_0:
        return "psi_0";
    case Stage::psi_1:
        return "psi_1";
    case Stage::psi_2:
        return "psi_2";
    case Stage::psi_3:
        return "psi_3";
    }
    throw StageError("unknown stage");
}

Stage parse_stage(std::string_view name) {
    for (auto s : {Stage::psi_in, Stage::psi_0, Stage::psi_1, Stage::psi_2, Stage::psi_3}) {
        if (name == to_string(s)) {
            return s;
        }
    }
    throw StageError("unknown stage '" + std::string(name) + "' (expected psi_in, psi_0, psi_1, psi_2 or psi_3)");
}

CMatrix hermitize(const CMatrix &a_prime) {
    auto r = a_prime.rows();
    auto c = a_prime.cols();
    CMatrix out = CMatrix::Zero(r + c, r + c);
    out.topRightCorner(r, c) = a_prime;
    out.bottomLeftCorner(c, r) = a_prime.adjoint();
    return out;
}

SpectralData spectral_decompose(const LinearSystem &sys, std::optional<double> circuit_constant,
                                std::optional<int> register_qubits, EigenvalueEncoding encoding) {
    auto eig = hermitian_eig(sys.matrix());
    const auto &vals = eig.values;
    double scale = std::max(1.0, std::abs(vals.back()));
    if (vals.front() <= 1e-12 * scale) {
        throw SpectrumError("coefficient matrix must be positive definite, smallest eigenvalue is " +
                            fmt_double(vals.front()));
    }

    SpectralData spec;
    spec.dim = sys.dim();
    const CVector &b = sys.rhs();

    std::vector<CVector> columns;
    std::size_t k = 0;
    while (k < vals.size()) {
        std::size_t end = k + 1;
        while (end < vals.size() && vals[end] - vals[k] <= kIntegerTolerance * std::max(1.0, vals[k])) {
            ++end;
        }
        std::size_t mult = end - k;
        auto block = eig.vectors.middleCols(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(mult));
        double lambda = 0.0;
        for (std::size_t j = k; j < end; ++j) {
            lambda += vals[j];
        }
        lambda /= static_cast<double>(mult);

        if (mult == 1) {
            columns.emplace_back(block.col(0));
            spec.betas.push_back(block.col(0).dot(b));
        } else {
            CVector proj = block * (block.adjoint() * b);
            double len = proj.norm();
            if (len > 1e-14) {
                columns.emplace_back(proj / len);
                spec.betas.emplace_back(len, 0.0);
            } else {
                columns.emplace_back(block.col(0));
                spec.betas.emplace_back(0.0, 0.0);
            }
            spec.degenerate = true;
        }
        spec.lambdas.push_back(lambda);
        spec.multiplicity.push_back(mult);
        k = end;
    }
    spec.vectors.resize(static_cast<Eigen::Index>(spec.dim), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t i = 0; i < columns.size(); ++i) {
        spec.vectors.col(static_cast<Eigen::Index>(i)) = columns[i];
    }

    double lmin = spec.lambda_min();
    spec.C = circuit_constant.value_or(kDefaultCircuitRatio * lmin);
    if (!(spec.C > 0.0) || spec.C > lmin * (1.0 + 1e-12)) {
        throw CircuitConstantError("circuit constant must satisfy 0 < C <= lambda_min = " + fmt_double(lmin) +
                                   ", got " + fmt_double(spec.C));
    }
    spec.C = std::min(spec.C, lmin);

    if (register_qubits && *register_qubits < 1) {
        throw EigenvalueScalingError("register width must be at least one qubit");
    }
    spec.n = register_qubits.value_or(default_register_width(spec.lambda_max()));
    spec.t = 2.0 * std::numbers::pi / std::ldexp(1.0, spec.n);

    spec.integer_encoded = true;
    for (double l : spec.lambdas) {
        double scaled = std::ldexp(l * spec.t, spec.n) / (2.0 * std::numbers::pi);
        bool integral = std::abs(scaled - std::round(scaled)) <= kIntegerTolerance;
        bool fits = std::round(scaled) < std::ldexp(1.0, spec.n);
        if (!integral || !fits) {
            spec.integer_encoded = false;
            if (encoding == EigenvalueEncoding::exact) {
                throw EigenvalueScalingError(
                    "scaled eigenvalue " + fmt_double(scaled) + " is not an integer below 2^" +
                    std::to_string(spec.n) +
                    "; rescale A (equivalently the evolution time t) so its eigenvalues are integers, or widen the "
                    "register");
            }
        }
    }
    return spec;
}

RotationAmplitudes clean_rotation(const SpectralData &spec) {
    RotationAmplitudes rot;
    for (double l : spec.lambdas) {
        double ratio = spec.C / l;
        rot.keep.push_back(std::sqrt(std::max(0.0, 1.0 - ratio * ratio)));
        rot.flip.push_back(ratio);
    }
    return rot;
}

TripartiteState build_state(const SpectralData &spec, Stage stage, RegisterMode mode) {
    return build_state(spec, stage, clean_rotation(spec), mode);
}

TripartiteState build_state(const SpectralData &spec, Stage stage, const RotationAmplitudes &rotation,
                            RegisterMode mode) {
    const std::size_t K = spec.branches();
    if (rotation.keep.size() != K || rotation.flip.size() != K) {
        throw ShapeError("rotation amplitudes must have one entry per eigenvalue branch");
    }

    std::size_t d_lambda = spec.dim;
    std::vector<std::size_t> label(K);
    for (std::size_t i = 0; i < K; ++i) {
        label[i] = i;
    }
    if (mode == RegisterMode::micro) {
        if (!spec.integer_encoded) {
            throw EigenvalueScalingError("micro register mode needs integer scaled eigenvalues");
        }
        if (spec.n > kMaxMicroQubits) {
            throw SizeError("micro register of " + std::to_string(spec.n) + " qubits is too large");
        }
        d_lambda = std::size_t{1} << spec.n;
        label = spec.scaled_eigenvalues();
    }
    const std::size_t d_u = spec.dim;
    SubsystemDims dims{d_lambda, d_u, 2};
    CVector psi = CVector::Zero(static_cast<Eigen::Index>(dims.total()));
    auto at = [&](std::size_t l, std::size_t u, std::size_t r) -> Complex & {
        return psi(static_cast<Eigen::Index>((l * d_u + u) * 2 + r));
    };

    CVector b = CVector::Zero(static_cast<Eigen::Index>(d_u));
    for (std::size_t i = 0; i < K; ++i) {
        b += spec.betas[i] * spec.vectors.col(static_cast<Eigen::Index>(i));
    }

    switch (stage) {
    case Stage::psi_in:
        at(0, 0, 0) = 1.0;
        break;
    case Stage::psi_0:
        for (std::size_t u = 0; u < d_u; ++u) {
            at(0, u, 0) = b(static_cast<Eigen::Index>(u));
        }
        break;
    case Stage::psi_1:
    case Stage::psi_2:
        for (std::size_t i = 0; i < K; ++i) {
            for (std::size_t u = 0; u < d_u; ++u) {
                Complex amp = spec.betas[i] * spec.vectors(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(i));
                if (stage == Stage::psi_1) {
                    at(label[i], u, 0) = amp;
                } else {
                    at(label[i], u, 0) = amp * rotation.keep[i];
                    at(label[i], u, 1) = amp * rotation.flip[i];
                }
            }
        }
        break;
    case Stage::psi_3:
        for (std::size_t i = 0; i < K; ++i) {
            for (std::size_t u = 0; u < d_u; ++u) {
                Complex amp = spec.betas[i] * spec.vectors(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(i));
                at(0, u, 0) += amp * rotation.keep[i];
                at(0, u, 1) += amp * rotation.flip[i];
            }
        }
        break;
    default:
        throw StageError("unknown stage");
    }
    return TripartiteState{stage, std::move(psi), std::move(dims), mode};
}

Solution solution(const SpectralData &spec) {
    Solution out;
    out.x_classical = CVector::Zero(static_cast<Eigen::Index>(spec.dim));
    for (std::size_t i = 0; i < spec.branches(); ++i) {
        double l = spec.lambdas[i];
        out.x_classical += (spec.betas[i] / l) * spec.vectors.col(static_cast<Eigen::Index>(i));
        out.sp += std::norm(spec.betas[i]) * spec.C * spec.C / (l * l);
    }
    CVector post = spec.C * out.x_classical;
    out.x_state = post / std::sqrt(out.sp);
    return out;
}

double condition_number(const SpectralData &spec) {
    return spec.lambda_max() / spec.lambda_min();
}

std::size_t active_branches(const SpectralData &spec, double tol) {
    std::size_t count = 0;
    for (auto beta : spec.betas) {
        if (std::abs(beta) > tol) {
            ++count;
        }
    }
    return count;
}

CMatrix with_spectrum(const CMatrix &eigenvectors, std::span<const double> values) {
    if (static_cast<std::size_t>(eigenvectors.cols()) != values.size()) {
        throw ShapeError("need one eigenvalue per eigenvector column");
    }
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    CMatrix out = eigenvectors * d.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
    // Exact Hermiticity regardless of rounding in the product.
    return 0.5 * (out + out.adjoint());
}

CMatrix two_level_eigenbasis() {
    const double s = 1.0 / std::sqrt(2.0);
    CMatrix u(2, 2);
    u << s, s, -s, s;
    return u;
}

CMatrix three_level_eigenbasis() {
    const double a = 1.0 / std::sqrt(3.0);
    const double b = 1.0 / std::sqrt(2.0);
    const double c = 1.0 / std::sqrt(6.0);
    CMatrix u(3, 3);
    u << a, 0.0, -2.0 * c,  //
        a, b, c,            //
        a, -b, c;
    return u;
}

CMatrix paper_2d_matrix() {
    CMatrix a(2, 2);
    a << 3.0, 1.0, 1.0, 3.0;
    return a / 2.0;
}

CMatrix paper_3d_matrix() {
    CMatrix a(3, 3);
    a << 14.0, -4.0, -4.0,  //
        -4.0, 11.0, -1.0,   //
        -4.0, -1.0, 11.0;
    return a / 6.0;
}

LinearSystem kappa_family(double kappa, const CVector &b) {
    if (!(kappa >= 1.0)) {
        throw RangeError("condition number must be >= 1, got " + fmt_double(kappa));
    }
    const double values[] = {1.0, kappa};
    return LinearSystem(with_spectrum(two_level_eigenbasis(), values), b);
}

CVector normalized(const CVector &v) {
    double len = v.norm();
    if (!(len > 0.0)) {
        throw RangeError("cannot normalize a zero vector");
    }
    return v / len;
}

}  // namespace hhl
