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

/**
 * @file hilbert.hpp
 * Dense tensor algebra for multi-subsystem states and two-copy operators.
 *
 * Index convention: amplitudes are stored big-endian in subsystem order
 * (subsystem 0 is the most significant digit). A two-copy vector of length
 * D*D stores index `a * D + b`, where `a` indexes the original system and `b`
 * the copy; subsystem j of the copy pairs with subsystem j of the original.
 * Subsystem indices are zero-based throughout the API.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "mpconc/errors.hpp"

namespace mpconc {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Default cap on the two-copy dimension D^2.
inline constexpr std::size_t kDefaultTwoCopyCap = std::size_t{1} << 20;
/// Dense D^2 x D^2 operators are only built for D^2 up to this value.
inline constexpr std::size_t kDenseTwoCopyCap = 256;

inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-8;

/// Local dimensions d_1..d_N of a composite system.
class SubsystemDims {
  public:
    explicit SubsystemDims(std::vector<std::size_t> dims,
                           std::size_t two_copy_cap = kDefaultTwoCopyCap);

    std::size_t count() const { return dims_.size(); }
    std::size_t operator[](std::size_t j) const { return dims_[j]; }
    const std::vector<std::size_t> &dims() const { return dims_; }
    std::size_t total() const { return total_; }
    std::size_t two_copy_total() const { return total_ * total_; }
    std::size_t two_copy_cap() const { return cap_; }

    /// Distance between consecutive values of digit j in a flat index.
    std::size_t stride(std::size_t j) const { return strides_[j]; }
    std::size_t digit(std::size_t index, std::size_t j) const {
        return (index / strides_[j]) % dims_[j];
    }

    /// Dimensions of the listed subsystems, in the listed order.
    SubsystemDims restricted(std::span<const std::size_t> keep) const;
    /// This system followed by the subsystems of `other`.
    SubsystemDims appended(const SubsystemDims &other) const;

    std::string to_string() const;

    bool operator==(const SubsystemDims &other) const {
        return dims_ == other.dims_;
    }

  private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 1;
    std::size_t cap_ = kDefaultTwoCopyCap;
};

/// Sorted set of distinct subsystem indices.
class SubsystemSet {
  public:
    SubsystemSet() = default;
    /// Sorts the input; throws on duplicates or indices >= n.
    SubsystemSet(std::vector<std::size_t> indices, std::size_t n);

    static SubsystemSet all(std::size_t n);
    /// Every subsystem except `dropped`.
    static SubsystemSet all_but(std::size_t n, std::size_t dropped);

    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    bool contains(std::size_t j) const;
    std::size_t universe() const { return n_; }
    const std::vector<std::size_t> &indices() const { return indices_; }
    SubsystemSet complement() const;
    bool is_all() const { return indices_.size() == n_; }

    std::string to_string() const;

    bool operator==(const SubsystemSet &) const = default;

  private:
    std::vector<std::size_t> indices_;
    std::size_t n_ = 0;
};

/// Normalized pure state over a product space.
class PureState {
  public:
    /// Throws unless the length matches and the norm is 1 within 1e-10.
    PureState(SubsystemDims dims, Vector amplitudes);

    /// Rescales `raw` to unit norm; throws on a zero vector.
    static PureState normalized(SubsystemDims dims, Vector raw);

    const SubsystemDims &dims() const { return dims_; }
    const Vector &amplitudes() const { return amplitudes_; }
    std::size_t count() const { return dims_.count(); }

  private:
    SubsystemDims dims_;
    Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
  public:
    /// Checks Hermiticity (1e-10), trace (1e-10) and smallest eigenvalue
    /// (>= -1e-8).
    DensityMatrix(SubsystemDims dims, Matrix matrix);

    /// Skips the eigenvalue check. For matrices that are positive by
    /// construction (outer products, partial traces of valid states).
    static DensityMatrix trusted(SubsystemDims dims, Matrix matrix);

    static DensityMatrix from_pure(const PureState &psi);

    const SubsystemDims &dims() const { return dims_; }
    const Matrix &matrix() const { return matrix_; }

  private:
    struct Unchecked {};
    DensityMatrix(SubsystemDims dims, Matrix matrix, Unchecked);

    SubsystemDims dims_;
    Matrix matrix_;
};

enum class Sign : std::uint8_t { plus, minus };
enum class Parity : std::uint8_t { even, odd };

/// Symmetric (+) / antisymmetric (-) label per subsystem pair.
class SignString {
  public:
    SignString() = default;
    explicit SignString(std::vector<Sign> signs) : signs_(std::move(signs)) {}

    /// Accepts '+' and '-' characters only.
    static SignString parse(std::string_view text);
    static SignString all_plus(std::size_t n);
    /// Position j is '-' iff bit (n-1-j) of `mask` is set, so increasing masks
    /// enumerate strings in lexicographic order with '+' < '-'.
    static SignString from_mask(std::size_t n, std::uint64_t mask);

    std::size_t size() const { return signs_.size(); }
    Sign operator[](std::size_t j) const { return signs_[j]; }
    const std::vector<Sign> &signs() const { return signs_; }

    std::size_t minus_count() const;
    Parity parity() const {
        return minus_count() % 2 == 0 ? Parity::even : Parity::odd;
    }
    bool is_all_plus() const { return minus_count() == 0; }
    std::uint64_t mask() const;
    std::string to_string() const;

    auto operator<=>(const SignString &) const = default;

  private:
    std::vector<Sign> signs_;
};

/// Dense operator on the two-copy space.
class TwoCopyOperator {
  public:
    /// Checks Hermiticity; if `projector`, also checks M^2 = M within 1e-8.
    TwoCopyOperator(SubsystemDims dims, Matrix matrix, std::string label,
                    bool projector);

    const SubsystemDims &dims() const { return dims_; }
    const Matrix &matrix() const { return matrix_; }
    const std::string &label() const { return label_; }
    bool is_projector() const { return projector_; }

  private:
    SubsystemDims dims_;
    Matrix matrix_;
    std::string label_;
    bool projector_;
};

// --- tensor products -------------------------------------------------------

Vector tensor_product(std::span<const Vector> factors);
Matrix tensor_product(std::span<const Matrix> factors);

using TensorFactor = std::variant<Vector, Matrix>;
/// Heterogeneous entry point; all factors must be of the same kind.
TensorFactor tensor_product(std::span<const TensorFactor> factors);

/// |psi> (x) |psi> in the two-copy layout.
Vector two_copy(const PureState &psi);
Vector two_copy(const Vector &first, const Vector &second);

// --- reduced states --------------------------------------------------------

/// Traces out every subsystem not in `keep`. `keep` must be a nonempty proper
/// subset.
DensityMatrix partial_trace(const DensityMatrix &rho, const SubsystemSet &keep);
/// Same as partial_trace(from_pure(psi), keep) without forming |psi><psi|.
DensityMatrix reduced_density(const PureState &psi, const SubsystemSet &keep);

/// Tr rho^2, clamped to [0, 1].
double purity(const DensityMatrix &rho);

// --- swap and projectors ---------------------------------------------------

/// S|a>|b> = |b>|a> on C^d (x) C^d.
Matrix swap_operator(std::size_t d);
/// (1 +/- S)/2.
Matrix local_projector(std::size_t d, Sign sign);

/// Swaps the two full copies: index a*D+b -> b*D+a.
Matrix global_swap(const SubsystemDims &dims);
/// Projector onto the globally symmetric / antisymmetric two-copy space.
TwoCopyOperator global_projector(const SubsystemDims &dims, Sign sign);

/// Reorders an operator given in pair-interleaved order
/// (orig_1, copy_1, orig_2, copy_2, ...) into the two-copy layout.
Matrix interleaved_to_two_copy(const Matrix &op, const SubsystemDims &dims);

/// Dense P^1_{s_1} (x) ... (x) P^N_{s_N} in the two-copy layout.
TwoCopyOperator dense_sign_string_projector(const SubsystemDims &dims,
                                            const SignString &s);

// --- matrix-free projector application -------------------------------------

/// In place: applies P^j_{sign} to a two-copy vector.
void apply_pair_projector(std::span<cplx> state2, const SubsystemDims &dims,
                          std::size_t j, Sign sign);

/// |P^j_+ v|^2 and |P^j_- v|^2 without forming either vector.
std::pair<double, double> pair_projection_norms(std::span<const cplx> state2,
                                                const SubsystemDims &dims,
                                                std::size_t j);
/// Writes P^j_+ v into `plus` and P^j_- v into `minus`.
void split_pair(std::span<const cplx> state2, const SubsystemDims &dims,
                std::size_t j, std::span<cplx> plus, std::span<cplx> minus);

/// (P^1_{s_1} (x) ... (x) P^N_{s_N}) state2 without materializing the
/// operator.
Vector apply_sign_string_projector(const Vector &state2,
                                   const SubsystemDims &dims,
                                   const SignString &s);

/// Projects the pairs in `measured` according to `s` (one sign per measured
/// subsystem, in increasing index order) and leaves the others untouched.
Vector apply_partial_projector(const Vector &state2, const SubsystemDims &dims,
                               const SubsystemSet &measured,
                               const SignString &s);

} // namespace mpconc
