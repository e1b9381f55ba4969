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

#include "mpconc/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mpconc/kernels.hpp"

namespace mpconc {
namespace {

double max_hermitian_deviation(const Matrix &m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void check_local_dim(std::size_t d) {
    if (d < 2) {
        throw InvalidArgument("local dimension must be >= 2, got " +
                              std::to_string(d));
    }
}

/// Flat offsets of every joint configuration of `subset` (big-endian over the
/// subset order) inside the full index space of `dims`.
std::vector<std::size_t> subset_offsets(const SubsystemDims &dims,
                                        std::span<const std::size_t> subset) {
    std::vector<std::size_t> offsets{0};
    for (const std::size_t j : subset) {
        std::vector<std::size_t> next;
        next.reserve(offsets.size() * dims[j]);
        for (const std::size_t base : offsets) {
            for (std::size_t x = 0; x < dims[j]; ++x) {
                next.push_back(base + x * dims.stride(j));
            }
        }
        offsets = std::move(next);
    }
    return offsets;
}

void check_keep(const SubsystemDims &dims, const SubsystemSet &keep) {
    if (keep.universe() != dims.count()) {
        throw InvalidArgument("subsystem set refers to " +
                              std::to_string(keep.universe()) +
                              " subsystems, state has " +
                              std::to_string(dims.count()));
    }
    if (keep.empty() || keep.is_all()) {
        throw InvalidArgument(
            "partial trace needs a nonempty proper subset of subsystems");
    }
}

void check_two_copy_length(std::size_t length, const SubsystemDims &dims) {
    if (length != dims.two_copy_total()) {
        throw InvalidArgument("two-copy vector has length " +
                              std::to_string(length) + ", expected " +
                              std::to_string(dims.two_copy_total()));
    }
}

void check_dense_cap(const SubsystemDims &dims) {
    if (dims.two_copy_total() > kDenseTwoCopyCap) {
        throw CapExceeded("dense two-copy operators are limited to D^2 <= " +
                          std::to_string(kDenseTwoCopyCap) + ", got D^2 = " +
                          std::to_string(dims.two_copy_total()));
    }
}

/// Visits the index runs touched by the swap of pair j. `pair(u, w, len)` is
/// called for runs with orig digit x < copy digit y (w holds the swapped
/// partners), `diagonal(u, len)` for runs with x == y. Runs are contiguous.
template <class PairFn, class DiagFn>
void for_each_pair_run(const SubsystemDims &dims, std::size_t j, PairFn &&pair,
                       DiagFn &&diagonal) {
    const std::size_t total = dims.total();
    const std::size_t dj = dims[j];
    const std::size_t run = dims.stride(j);
    const std::size_t block = dj * run;
    const std::size_t outer = total / block;
    for (std::size_t a_hi = 0; a_hi < outer; ++a_hi) {
        for (std::size_t x = 0; x < dj; ++x) {
            for (std::size_t a_lo = 0; a_lo < run; ++a_lo) {
                const std::size_t a = a_hi * block + x * run + a_lo;
                for (std::size_t b_hi = 0; b_hi < outer; ++b_hi) {
                    const std::size_t b_base = b_hi * block;
                    diagonal(a * total + b_base + x * run, run);
                    for (std::size_t y = x + 1; y < dj; ++y) {
                        const std::size_t a_swapped = a_hi * block + y * run + a_lo;
                        pair(a * total + b_base + y * run,
                             a_swapped * total + b_base + x * run, run);
                    }
                }
            }
        }
    }
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
        }
    }
    return out;
}

} // namespace

// --- SubsystemDims ---------------------------------------------------------

SubsystemDims::SubsystemDims(std::vector<std::size_t> dims,
                             std::size_t two_copy_cap)
    : dims_(std::move(dims)), cap_(two_copy_cap) {
    if (dims_.empty()) {
        throw InvalidArgument("a composite system needs at least one subsystem");
    }
    for (const std::size_t d : dims_) {
        check_local_dim(d);
        if (__builtin_mul_overflow(total_, d, &total_)) {
            throw CapExceeded("total dimension overflows");
        }
    }
    std::size_t squared = 0;
    if (__builtin_mul_overflow(total_, total_, &squared) || squared > cap_) {
        throw CapExceeded("two-copy dimension of " + to_string() +
                          " exceeds the cap of " + std::to_string(cap_) +
                          " amplitudes");
    }
    strides_.assign(dims_.size(), 1);
    for (std::size_t j = dims_.size() - 1; j > 0; --j) {
        strides_[j - 1] = strides_[j] * dims_[j];
    }
}

SubsystemDims SubsystemDims::restricted(std::span<const std::size_t> keep) const {
    std::vector<std::size_t> out;
    out.reserve(keep.size());
    for (const std::size_t j : keep) {
        if (j >= dims_.size()) {
            throw InvalidArgument("subsystem index " + std::to_string(j) +
                                  " out of range");
        }
        out.push_back(dims_[j]);
    }
    return SubsystemDims(std::move(out), cap_);
}

SubsystemDims SubsystemDims::appended(const SubsystemDims &other) const {
    std::vector<std::size_t> out = dims_;
    out.insert(out.end(), other.dims_.begin(), other.dims_.end());
    return SubsystemDims(std::move(out), cap_);
}

std::string SubsystemDims::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t j = 0; j < dims_.size(); ++j) {
        os << (j ? "," : "") << dims_[j];
    }
    os << ']';
    return os.str();
}

// --- SubsystemSet ----------------------------------------------------------

SubsystemSet::SubsystemSet(std::vector<std::size_t> indices, std::size_t n)
    : indices_(std::move(indices)), n_(n) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
        throw InvalidArgument("subsystem set contains duplicates");
    }
    if (!indices_.empty() && indices_.back() >= n_) {
        throw InvalidArgument("subsystem index " + std::to_string(indices_.back()) +
                              " out of range for " + std::to_string(n_) +
                              " subsystems");
    }
}

SubsystemSet SubsystemSet::all(std::size_t n) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return SubsystemSet(std::move(idx), n);
}

SubsystemSet SubsystemSet::all_but(std::size_t n, std::size_t dropped) {
    if (dropped >= n) {
        throw InvalidArgument("dropped subsystem out of range");
    }
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < n; ++j) {
        if (j != dropped) {
            idx.push_back(j);
        }
    }
    return SubsystemSet(std::move(idx), n);
}

bool SubsystemSet::contains(std::size_t j) const {
    return std::binary_search(indices_.begin(), indices_.end(), j);
}

SubsystemSet SubsystemSet::complement() const {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < n_; ++j) {
        if (!contains(j)) {
            idx.push_back(j);
        }
    }
    return SubsystemSet(std::move(idx), n_);
}

std::string SubsystemSet::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        os << (k ? "," : "") << indices_[k];
    }
    os << '}';
    return os.str();
}

// --- PureState / DensityMatrix ---------------------------------------------

PureState::PureState(SubsystemDims dims, Vector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != dims_.total()) {
        throw InvalidArgument("state has " + std::to_string(amplitudes_.size()) +
                              " amplitudes, dims " + dims_.to_string() +
                              " require " + std::to_string(dims_.total()));
    }
    const double norm = amplitudes_.norm();
    if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
        std::ostringstream os;
        os.precision(17);
        os << "state is not normalized: |psi| = " << norm;
        throw InvalidArgument(os.str());
    }
}

PureState PureState::normalized(SubsystemDims dims, Vector raw) {
    const double norm = raw.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw InvalidArgument("cannot normalize a zero or non-finite vector");
    }
    raw /= norm;
    return PureState(std::move(dims), std::move(raw));
}

DensityMatrix::DensityMatrix(SubsystemDims dims, Matrix matrix, Unchecked)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(dims_.total());
    if (matrix_.rows() != d || matrix_.cols() != d) {
        throw InvalidArgument("density matrix must be " + std::to_string(d) +
                              "x" + std::to_string(d));
    }
    if (max_hermitian_deviation(matrix_) > kHermitianTolerance) {
        throw InvalidArgument("density matrix is not Hermitian");
    }
    const cplx tr = matrix_.trace();
    if (std::abs(tr.real() - 1.0) > kNormTolerance ||
        std::abs(tr.imag()) > kNormTolerance) {
        throw InvalidArgument("density matrix trace differs from 1");
    }
}

DensityMatrix::DensityMatrix(SubsystemDims dims, Matrix matrix)
    : DensityMatrix(std::move(dims), std::move(matrix), Unchecked{}) {
    const Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_,
                                                       Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kPsdTolerance) {
        throw InvalidArgument("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::trusted(SubsystemDims dims, Matrix matrix) {
    return DensityMatrix(std::move(dims), std::move(matrix), Unchecked{});
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
    const Vector &v = psi.amplitudes();
    return trusted(psi.dims(), v * v.adjoint());
}

// --- SignString ------------------------------------------------------------

SignString SignString::parse(std::string_view text) {
    std::vector<Sign> signs;
    signs.reserve(text.size());
    for (const char c : text) {
        if (c == '+') {
            signs.push_back(Sign::plus);
        } else if (c == '-') {
            signs.push_back(Sign::minus);
        } else {
            throw InvalidArgument("sign strings use only '+' and '-', got '" +
                                  std::string(text) + "'");
        }
    }
    return SignString(std::move(signs));
}

SignString SignString::all_plus(std::size_t n) {
    return SignString(std::vector<Sign>(n, Sign::plus));
}

SignString SignString::from_mask(std::size_t n, std::uint64_t mask) {
    if (n < 64 && (mask >> n) != 0) {
        throw InvalidArgument("mask has bits beyond the string length");
    }
    std::vector<Sign> signs(n, Sign::plus);
    for (std::size_t j = 0; j < n; ++j) {
        if ((mask >> (n - 1 - j)) & 1U) {
            signs[j] = Sign::minus;
        }
    }
    return SignString(std::move(signs));
}

std::size_t SignString::minus_count() const {
    return static_cast<std::size_t>(
        std::count(signs_.begin(), signs_.end(), Sign::minus));
}

std::uint64_t SignString::mask() const {
    std::uint64_t m = 0;
    for (const Sign s : signs_) {
        m = (m << 1U) | (s == Sign::minus ? 1U : 0U);
    }
    return m;
}

std::string SignString::to_string() const {
    std::string out;
    out.reserve(signs_.size());
    for (const Sign s : signs_) {
        out.push_back(s == Sign::plus ? '+' : '-');
    }
    return out;
}

// --- TwoCopyOperator -------------------------------------------------------

TwoCopyOperator::TwoCopyOperator(SubsystemDims dims, Matrix matrix,
                                 std::string label, bool projector)
    : dims_(std::move(dims)), matrix_(std::move(matrix)),
      label_(std::move(label)), projector_(projector) {
    const auto n = static_cast<Eigen::Index>(dims_.two_copy_total());
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw InvalidArgument("two-copy operator '" + label_ + "' must be " +
                              std::to_string(n) + "x" + std::to_string(n));
    }
    if (max_hermitian_deviation(matrix_) > kHermitianTolerance) {
        throw InvalidArgument("two-copy operator '" + label_ +
                              "' is not Hermitian");
    }
    if (projector_ &&
        (matrix_ * matrix_ - matrix_).cwiseAbs().maxCoeff() > kPsdTolerance) {
        throw InvalidArgument("two-copy operator '" + label_ +
                              "' is labelled a projector but is not idempotent");
    }
}

// --- tensor products -------------------------------------------------------

Vector tensor_product(std::span<const Vector> factors) {
    if (factors.empty()) {
        throw InvalidArgument("tensor product of an empty factor list");
    }
    Vector out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) {
        out = two_copy(out, factors[k]);
    }
    return out;
}

Matrix tensor_product(std::span<const Matrix> factors) {
    if (factors.empty()) {
        throw InvalidArgument("tensor product of an empty factor list");
    }
    Matrix out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) {
        out = kron(out, factors[k]);
    }
    return out;
}

TensorFactor tensor_product(std::span<const TensorFactor> factors) {
    if (factors.empty()) {
        throw InvalidArgument("tensor product of an empty factor list");
    }
    if (std::holds_alternative<Vector>(factors.front())) {
        std::vector<Vector> vectors;
        for (const auto &f : factors) {
            if (!std::holds_alternative<Vector>(f)) {
                throw InvalidArgument("tensor product mixes vectors and matrices");
            }
            vectors.push_back(std::get<Vector>(f));
        }
        return tensor_product(std::span<const Vector>(vectors));
    }
    std::vector<Matrix> matrices;
    for (const auto &f : factors) {
        if (!std::holds_alternative<Matrix>(f)) {
            throw InvalidArgument("tensor product mixes vectors and matrices");
        }
        matrices.push_back(std::get<Matrix>(f));
    }
    return tensor_product(std::span<const Matrix>(matrices));
}

Vector two_copy(const Vector &first, const Vector &second) {
    const auto n2 = static_cast<std::size_t>(second.size());
    Vector out(first.size() * second.size());
    const std::span<const cplx> src(second.data(), n2);
    for (Eigen::Index a = 0; a < first.size(); ++a) {
        kernels::scale_complex(src, first[a],
                               std::span<cplx>(out.data() + a * second.size(), n2));
    }
    return out;
}

Vector two_copy(const PureState &psi) {
    return two_copy(psi.amplitudes(), psi.amplitudes());
}

// --- reduced states --------------------------------------------------------

DensityMatrix partial_trace(const DensityMatrix &rho, const SubsystemSet &keep) {
    const SubsystemDims &dims = rho.dims();
    check_keep(dims, keep);
    const SubsystemSet traced = keep.complement();
    const auto keep_off = subset_offsets(dims, keep.indices());
    const auto trace_off = subset_offsets(dims, traced.indices());
    const Matrix &m = rho.matrix();
    const auto dk = static_cast<Eigen::Index>(keep_off.size());
    Matrix out = Matrix::Zero(dk, dk);
    for (Eigen::Index i = 0; i < dk; ++i) {
        for (Eigen::Index k = 0; k < dk; ++k) {
            cplx acc{0.0, 0.0};
            for (const std::size_t t : trace_off) {
                acc += m(static_cast<Eigen::Index>(keep_off[i] + t),
                         static_cast<Eigen::Index>(keep_off[k] + t));
            }
            out(i, k) = acc;
        }
    }
    return DensityMatrix::trusted(dims.restricted(keep.indices()), std::move(out));
}

DensityMatrix reduced_density(const PureState &psi, const SubsystemSet &keep) {
    const SubsystemDims &dims = psi.dims();
    check_keep(dims, keep);
    const auto keep_off = subset_offsets(dims, keep.indices());
    const auto trace_off = subset_offsets(dims, keep.complement().indices());
    // Reshape psi into a (kept x traced) matrix; rho_keep = M M^dagger.
    Matrix reshaped(keep_off.size(), trace_off.size());
    for (std::size_t i = 0; i < keep_off.size(); ++i) {
        for (std::size_t t = 0; t < trace_off.size(); ++t) {
            reshaped(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) =
                psi.amplitudes()[static_cast<Eigen::Index>(keep_off[i] + trace_off[t])];
        }
    }
    Matrix rho = reshaped * reshaped.adjoint();
    return DensityMatrix::trusted(dims.restricted(keep.indices()), std::move(rho));
}

double purity(const DensityMatrix &rho) {
    return std::clamp(rho.matrix().squaredNorm(), 0.0, 1.0);
}

// --- swap and projectors ---------------------------------------------------

Matrix swap_operator(std::size_t d) {
    check_local_dim(d);
    const auto n = static_cast<Eigen::Index>(d);
    Matrix s = Matrix::Zero(n * n, n * n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            s(b * n + a, a * n + b) = 1.0;
        }
    }
    return s;
}

Matrix local_projector(std::size_t d, Sign sign) {
    const Matrix s = swap_operator(d);
    const Matrix id = Matrix::Identity(s.rows(), s.cols());
    return sign == Sign::plus ? Matrix(0.5 * (id + s)) : Matrix(0.5 * (id - s));
}

Matrix global_swap(const SubsystemDims &dims) {
    check_dense_cap(dims);
    const auto d = static_cast<Eigen::Index>(dims.total());
    Matrix s = Matrix::Zero(d * d, d * d);
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = 0; b < d; ++b) {
            s(b * d + a, a * d + b) = 1.0;
        }
    }
    return s;
}

TwoCopyOperator global_projector(const SubsystemDims &dims, Sign sign) {
    const Matrix s = global_swap(dims);
    const Matrix id = Matrix::Identity(s.rows(), s.cols());
    if (sign == Sign::plus) {
        return TwoCopyOperator(dims, 0.5 * (id + s), "P_plus_global", true);
    }
    return TwoCopyOperator(dims, 0.5 * (id - s), "P_minus_global", true);
}

Matrix interleaved_to_two_copy(const Matrix &op, const SubsystemDims &dims) {
    const std::size_t n = dims.count();
    const std::size_t total = dims.total();
    const std::size_t size = total * total;
    if (static_cast<std::size_t>(op.rows()) != size ||
        static_cast<std::size_t>(op.cols()) != size) {
        throw InvalidArgument("operator size does not match the two-copy space");
    }
    // perm[interleaved index] = two-copy index
    std::vector<Eigen::Index> perm(size);
    for (std::size_t r = 0; r < size; ++r) {
        std::size_t rest = r;
        std::size_t a = 0;
        std::size_t b = 0;
        for (std::size_t j = n; j-- > 0;) {
            const std::size_t c = rest % dims[j];
            rest /= dims[j];
            const std::size_t o = rest % dims[j];
            rest /= dims[j];
            a += o * dims.stride(j);
            b += c * dims.stride(j);
        }
        perm[r] = static_cast<Eigen::Index>(a * total + b);
    }
    Matrix out(op.rows(), op.cols());
    for (Eigen::Index r = 0; r < op.rows(); ++r) {
        for (Eigen::Index c = 0; c < op.cols(); ++c) {
            out(perm[r], perm[c]) = op(r, c);
        }
    }
    return out;
}

TwoCopyOperator dense_sign_string_projector(const SubsystemDims &dims,
                                            const SignString &s) {
    check_dense_cap(dims);
    if (s.size() != dims.count()) {
        throw InvalidArgument("sign string length differs from subsystem count");
    }
    std::vector<Matrix> locals;
    locals.reserve(dims.count());
    for (std::size_t j = 0; j < dims.count(); ++j) {
        locals.push_back(local_projector(dims[j], s[j]));
    }
    Matrix interleaved = tensor_product(std::span<const Matrix>(locals));
    return TwoCopyOperator(dims, interleaved_to_two_copy(interleaved, dims),
                           "P[" + s.to_string() + "]", true);
}

// --- matrix-free projector application -------------------------------------

void apply_pair_projector(std::span<cplx> state2, const SubsystemDims &dims,
                          std::size_t j, Sign sign) {
    check_two_copy_length(state2.size(), dims);
    if (j >= dims.count()) {
        throw InvalidArgument("subsystem index out of range");
    }
    const auto &k = kernels::kernel_table(kernels::active_backend());
    auto *data = reinterpret_cast<double *>(state2.data());
    if (sign == Sign::plus) {
        for_each_pair_run(
            dims, j,
            [&](std::size_t u, std::size_t w, std::size_t len) {
                k.pair_symmetrize(data + 2 * u, data + 2 * w, 2 * len);
            },
            [](std::size_t, std::size_t) {});
    } else {
        for_each_pair_run(
            dims, j,
            [&](std::size_t u, std::size_t w, std::size_t len) {
                k.pair_antisymmetrize(data + 2 * u, data + 2 * w, 2 * len);
            },
            [&](std::size_t u, std::size_t len) {
                std::fill_n(state2.begin() + static_cast<std::ptrdiff_t>(u), len,
                            cplx{0.0, 0.0});
            });
    }
}

std::pair<double, double> pair_projection_norms(std::span<const cplx> state2,
                                                const SubsystemDims &dims,
                                                std::size_t j) {
    check_two_copy_length(state2.size(), dims);
    if (j >= dims.count()) {
        throw InvalidArgument("subsystem index out of range");
    }
    const auto &k = kernels::kernel_table(kernels::active_backend());
    const double *data = reinterpret_cast<const double *>(state2.data());
    double sum_sq = 0.0;
    double diff_sq = 0.0;
    double diagonal = 0.0;
    for_each_pair_run(
        dims, j,
        [&](std::size_t u, std::size_t w, std::size_t len) {
            k.pair_norms(data + 2 * u, data + 2 * w, 2 * len, &sum_sq, &diff_sq);
        },
        [&](std::size_t u, std::size_t len) {
            diagonal += k.squared_norm(data + 2 * u, 2 * len);
        });
    // Each pair (u, w) maps to ((u+w)/2, (u+w)/2) and ((u-w)/2, (w-u)/2).
    return {diagonal + 0.5 * sum_sq, 0.5 * diff_sq};
}

void split_pair(std::span<const cplx> state2, const SubsystemDims &dims,
                std::size_t j, std::span<cplx> plus, std::span<cplx> minus) {
    check_two_copy_length(state2.size(), dims);
    check_two_copy_length(plus.size(), dims);
    check_two_copy_length(minus.size(), dims);
    if (j >= dims.count()) {
        throw InvalidArgument("subsystem index out of range");
    }
    const auto &k = kernels::kernel_table(kernels::active_backend());
    const auto *in = reinterpret_cast<const double *>(state2.data());
    auto *p = reinterpret_cast<double *>(plus.data());
    auto *m = reinterpret_cast<double *>(minus.data());
    for_each_pair_run(
        dims, j,
        [&](std::size_t u, std::size_t w, std::size_t len) {
            k.pair_split(in + 2 * u, in + 2 * w, p + 2 * u, p + 2 * w, m + 2 * u,
                         m + 2 * w, 2 * len);
        },
        [&](std::size_t u, std::size_t len) {
            const auto off = static_cast<std::ptrdiff_t>(u);
            std::copy_n(state2.begin() + off, len, plus.begin() + off);
            std::fill_n(minus.begin() + off, len, cplx{0.0, 0.0});
        });
}

Vector apply_partial_projector(const Vector &state2, const SubsystemDims &dims,
                               const SubsystemSet &measured,
                               const SignString &s) {
    check_two_copy_length(static_cast<std::size_t>(state2.size()), dims);
    if (measured.universe() != dims.count()) {
        throw InvalidArgument("measured set does not match the subsystem count");
    }
    if (s.size() != measured.size()) {
        throw InvalidArgument("sign string length " + std::to_string(s.size()) +
                              " differs from the number of measured subsystems " +
                              std::to_string(measured.size()));
    }
    Vector out = state2;
    const std::span<cplx> view(out.data(), static_cast<std::size_t>(out.size()));
    for (std::size_t k = 0; k < measured.size(); ++k) {
        apply_pair_projector(view, dims, measured.indices()[k], s[k]);
    }
    return out;
}

Vector apply_sign_string_projector(const Vector &state2,
                                   const SubsystemDims &dims,
                                   const SignString &s) {
    if (s.size() != dims.count()) {
        throw InvalidArgument("sign string length differs from subsystem count");
    }
    return apply_partial_projector(state2, dims, SubsystemSet::all(dims.count()), s);
}

} // namespace mpconc
