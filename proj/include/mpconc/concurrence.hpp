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
 * @file concurrence.hpp
 * Multipartite concurrence of pure states by three equivalent routes:
 *
 *  - two-copy expectation of A = 4 * sum over even sign strings (excluding
 *    the all-'+' string) of the corresponding projector products;
 *  - reduced-state purities over all 2^N - 2 nonempty proper subsets;
 *  - the single factorizable observable, C = 2 sqrt(1 - p_plus), where p_plus
 *    is the probability that every measured subsystem pair is symmetric.
 *
 * Dense A and A~ = 4(1 - P_+ (x) ... (x) P_+) are available as oracles for
 * small systems.
 */
#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "mpconc/hilbert.hpp"

namespace mpconc {

enum class Route { two_copy_A, reduced_rho, single_observable };

std::string_view route_name(Route route);

struct ConcurrenceResult {
    double value = 0.0;
    Route route = Route::reduced_rho;
    /// Only set by the single-observable route.
    std::optional<double> p_plus;
    SubsystemDims dims;
};

enum class EvaluationPath {
    /// Per-pair projections on the two-copy vector.
    matrix_free,
    /// Builds the dense D^2 x D^2 operator; limited to D^2 <= kDenseTwoCopyCap.
    dense,
};

/// All sign strings of length n with a nonzero even number of '-', in
/// lexicographic order with '+' < '-'. Requires n >= 2.
std::vector<SignString> enumerate_even_sign_strings(std::size_t n);

ConcurrenceResult concurrence_two_copy(const PureState &psi,
                                       EvaluationPath path = EvaluationPath::matrix_free);

ConcurrenceResult concurrence_reduced(const PureState &psi);

/// Probability that every pair in `measured` is found symmetric on
/// |psi> (x) |psi>. `measured` must cover N or N-1 subsystems.
double p_plus_exact(const PureState &psi, const SubsystemSet &measured);

ConcurrenceResult concurrence_single_observable(const PureState &psi,
                                                const SubsystemSet &measured);
/// Uses the default measured set: every subsystem except the last.
ConcurrenceResult concurrence_single_observable(const PureState &psi);

/// The measured set used when none is given (drops the last subsystem).
SubsystemSet default_measured_set(std::size_t n);

TwoCopyOperator build_dense_A(const SubsystemDims &dims);
TwoCopyOperator build_dense_A_tilde(const SubsystemDims &dims);

/// <psi|<psi| op |psi>|psi>, real part.
double two_copy_expectation(const TwoCopyOperator &op, const PureState &psi);

} // namespace mpconc
