// Copyright 2026 The mpconc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mpconc/concurrence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "outcome_tree.hpp"

namespace mpconc {
namespace {

void require_multipartite(const SubsystemDims &dims) {
    if (dims.count() < 2) {
        throw InvalidArgument("concurrence needs at least two subsystems, got " +
                              std::to_string(dims.count()));
    }
}

void check_measured(const SubsystemDims &dims, const SubsystemSet &measured) {
    const std::size_t n = dims.count();
    if (measured.universe() != n) {
        throw InvalidArgument("measured set refers to " +
                              std::to_string(measured.universe()) +
                              " subsystems, state has " + std::to_string(n));
    }
    if (measured.empty()) {
        throw InvalidArgument("measured set is empty");
    }
    if (measured.size() + 1 < n) {
        throw InvalidArgument(
            "measuring " + std::to_string(measured.size()) + " of " +
            std::to_string(n) +
            " subsystems is not enough; at most one subsystem may be dropped");
    }
}

// Amplitudes as a (kept x traced) matrix.
Matrix bipartite_matrix(const PureState &psi, std::uint64_t keep_bits) {
    const SubsystemDims &dims = psi.dims();
    std::size_t rows = 1;
    for (std::size_t j = 0; j < dims.count(); ++j) {
        rows *= ((keep_bits >> j) & 1U) ? dims[j] : 1;
    }
    const std::size_t cols = dims.total() / rows;
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t index = 0; index < dims.total(); ++index) {
        std::size_t r = 0;
        std::size_t c = 0;
        for (std::size_t j = 0; j < dims.count(); ++j) {
            const std::size_t digit = dims.digit(index, j);
            if ((keep_bits >> j) & 1U) {
                r = r * dims[j] + digit;
            } else {
                c = c * dims[j] + digit;
            }
        }
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            psi.amplitudes()[static_cast<Eigen::Index>(index)];
    }
    return m;
}

// 1 - Tr rho_A^2 for rho_A = M M^dagger, as 2 * sum of |2x2 minors of M|^2.
// Every term is non-negative, so product states give ~1e-32 instead of the
// ~1e-16 left over by subtracting the purity from 1.
double linear_entropy(const Matrix &m) {
    const Matrix &a = m.rows() <= m.cols() ? m : Matrix(m.transpose());
    const Eigen::Index rows = a.rows();
    const Eigen::Index cols = a.cols();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = i + 1; j < rows; ++j) {
            for (Eigen::Index k = 0; k < cols; ++k) {
                const cplx aik = a(i, k);
                const cplx ajk = a(j, k);
                for (Eigen::Index l = k + 1; l < cols; ++l) {
                    sum += std::norm(aik * a(j, l) - a(i, l) * ajk);
                }
            }
        }
    }
    return 2.0 * sum;
}

} // namespace

std::string_view route_name(Route route) {
    switch (route) {
    case Route::two_copy_A:
        return "two_copy_A";
    case Route::reduced_rho:
        return "reduced_rho";
    case Route::single_observable:
        return "single_observable";
    }
    return "unknown";
}

std::vector<SignString> enumerate_even_sign_strings(std::size_t n) {
    if (n < 2) {
        throw InvalidArgument("sign-string enumeration needs n >= 2");
    }
    if (n >= 63) {
        throw CapExceeded("too many subsystems to enumerate sign strings");
    }
    std::vector<SignString> out;
    out.reserve((std::size_t{1} << (n - 1)) - 1);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        if (std::popcount(mask) % 2 == 0) {
            out.push_back(SignString::from_mask(n, mask));
        }
    }
    return out;
}

double two_copy_expectation(const TwoCopyOperator &op, const PureState &psi) {
    if (!(op.dims() == psi.dims())) {
        throw InvalidArgument("operator and state dimensions differ");
    }
    const Vector v = two_copy(psi);
    return v.dot(op.matrix() * v).real();
}

ConcurrenceResult concurrence_two_copy(const PureState &psi, EvaluationPath path) {
    const SubsystemDims &dims = psi.dims();
    require_multipartite(dims);
    double expectation = 0.0;
    if (path == EvaluationPath::dense) {
        expectation = two_copy_expectation(build_dense_A(dims), psi);
    } else {
        const std::size_t n = dims.count();
        std::vector<double> probs(std::size_t{1} << n, 0.0);
        const auto all = SubsystemSet::all(n);
        detail::accumulate_outcomes(two_copy(psi), dims, all.indices(), 1.0, probs);
        for (std::uint64_t mask = 1; mask < probs.size(); ++mask) {
            if (std::popcount(mask) % 2 == 0) {
                expectation += probs[mask];
            }
        }
        expectation *= 4.0;
    }
    return {std::sqrt(std::max(0.0, expectation)), Route::two_copy_A, std::nullopt,
            dims};
}

ConcurrenceResult concurrence_reduced(const PureState &psi) {
    const SubsystemDims &dims = psi.dims();
    require_multipartite(dims);
    const std::size_t n = dims.count();
    if (n >= 63) {
        throw CapExceeded("too many subsystems to enumerate subsets");
    }
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    // sum over subsets of (1 - Tr rho_T^2) equals (2^N - 2) - sum of purities.
    double radicand = 0.0;
    for (std::uint64_t bits = 1; bits < full; ++bits) {
        radicand += linear_entropy(bipartite_matrix(psi, bits));
    }
    radicand = std::max(0.0, radicand);
    const double prefactor = std::pow(2.0, 1.0 - static_cast<double>(n) / 2.0);
    return {prefactor * std::sqrt(radicand), Route::reduced_rho, std::nullopt, dims};
}

double p_plus_exact(const PureState &psi, const SubsystemSet &measured) {
    check_measured(psi.dims(), measured);
    Vector v = two_copy(psi);
    const std::span<cplx> view(v.data(), static_cast<std::size_t>(v.size()));
    for (const std::size_t j : measured.indices()) {
        apply_pair_projector(view, psi.dims(), j, Sign::plus);
    }
    return std::clamp(kernels::squared_norm(view), 0.0, 1.0);
}

SubsystemSet default_measured_set(std::size_t n) {
    if (n < 2) {
        return SubsystemSet::all(n);
    }
    return SubsystemSet::all_but(n, n - 1);
}

ConcurrenceResult concurrence_single_observable(const PureState &psi,
                                                const SubsystemSet &measured) {
    require_multipartite(psi.dims());
    check_measured(psi.dims(), measured);
    // 1 - p_plus is read off the rejected component (1 - P) v rather than
    // subtracted from 1.
    const Vector v = two_copy(psi);
    Vector kept = v;
    const std::span<cplx> view(kept.data(), static_cast<std::size_t>(kept.size()));
    for (const std::size_t j : measured.indices()) {
        apply_pair_projector(view, psi.dims(), j, Sign::plus);
    }
    const Vector rejected = v - kept;
    const double q = std::clamp(
        kernels::squared_norm(
            std::span<const cplx>(rejected.data(), static_cast<std::size_t>(rejected.size()))),
        0.0, 1.0);
    return {2.0 * std::sqrt(q), Route::single_observable, 1.0 - q, psi.dims()};
}

ConcurrenceResult concurrence_single_observable(const PureState &psi) {
    return concurrence_single_observable(psi, default_measured_set(psi.count()));
}

TwoCopyOperator build_dense_A(const SubsystemDims &dims) {
    require_multipartite(dims);
    if (dims.two_copy_total() > kDenseTwoCopyCap) {
        throw CapExceeded("dense A is limited to D^2 <= " +
                          std::to_string(kDenseTwoCopyCap));
    }
    const auto size = static_cast<Eigen::Index>(dims.two_copy_total());
    Matrix sum = Matrix::Zero(size, size);
    for (const SignString &s : enumerate_even_sign_strings(dims.count())) {
        sum += dense_sign_string_projector(dims, s).matrix();
    }
    return TwoCopyOperator(dims, 4.0 * sum, "A", false);
}

TwoCopyOperator build_dense_A_tilde(const SubsystemDims &dims) {
    require_multipartite(dims);
    const Matrix all_symmetric =
        dense_sign_string_projector(dims, SignString::all_plus(dims.count())).matrix();
    const Matrix id = Matrix::Identity(all_symmetric.rows(), all_symmetric.cols());
    return TwoCopyOperator(dims, 4.0 * (id - all_symmetric), "A_tilde", false);
}

} // namespace mpconc
