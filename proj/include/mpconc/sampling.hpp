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
 * @file sampling.hpp
 * Simulation of the single-setting two-copy measurement: each measured
 * subsystem pair is found either symmetric (+) or antisymmetric (-).
 *
 * Outcomes are indexed by a mask over the measured subsystems (see
 * SignString::from_mask). For pure states the odd-parity outcomes have zero
 * probability; for mixed states twice their total probability equals the
 * linear entropy 1 - Tr rho^2.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mpconc/hilbert.hpp"

namespace mpconc {

struct OutcomeDistribution {
    SubsystemDims dims;
    SubsystemSet measured;
    /// probs[mask] for mask in [0, 2^|measured|).
    std::vector<double> probs;

    std::size_t outcome_count() const { return probs.size(); }
    SignString label(std::size_t mask) const {
        return SignString::from_mask(measured.size(), mask);
    }
    double prob(const SignString &s) const;
    double all_plus() const { return probs.front(); }
    double odd_parity_mass() const;
};

/// Exact outcome probabilities Tr[(prod_{j in measured} P^j_{s_j}) rho (x) rho].
/// `measured` must cover N or N-1 subsystems.
///
/// Uses the spectral decomposition of rho and matrix-free projections of the
/// products of eigenvectors. When the rank is too large for that to be cheap
/// it switches to the swap expansion P_+/- = (1 +/- S)/2, which reduces every
/// outcome to a signed sum of reduced purities.
OutcomeDistribution outcome_distribution(const DensityMatrix &rho,
                                         const SubsystemSet &measured);
OutcomeDistribution outcome_distribution(const PureState &psi,
                                         const SubsystemSet &measured);

struct SamplingOptions {
    /// Worker threads; the result does not depend on this value.
    std::size_t threads = 1;
    /// Shots per independently seeded batch. Part of the reproducibility
    /// contract: changing it changes the draws.
    std::uint64_t batch_size = std::uint64_t{1} << 16;
};

struct SampleSummary {
    SubsystemSet measured;
    /// counts[mask], same indexing as OutcomeDistribution::probs.
    std::vector<std::uint64_t> counts;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    double p_plus_hat = 0.0;
    double p_plus_stderr = 0.0;
    double concurrence_hat = 0.0;
    /// +infinity when p_plus_hat == 1 (the delta method is undefined there).
    double concurrence_stderr = 0.0;
    /// 2 * fraction of odd-parity outcomes.
    double mixedness_hat = 0.0;
    double odd_fraction = 0.0;

    SignString label(std::size_t mask) const {
        return SignString::from_mask(measured.size(), mask);
    }
};

/// Multinomial draw of `shots` outcomes. Shots are split into batches of
/// `options.batch_size`; batch b draws from a generator seeded by a fixed
/// mix of (seed, b), so the counts depend only on (dist, shots, seed,
/// batch_size).
SampleSummary sample_shots(const OutcomeDistribution &dist, std::uint64_t shots,
                           std::uint64_t seed, const SamplingOptions &options = {});

/// 2 * odd-parity fraction; requires a run that measured every subsystem.
double estimate_mixedness(const SampleSummary &summary);

struct MixednessReport {
    /// 1 - Tr rho^2.
    double linear_entropy = 0.0;
    /// 2 Tr(P_- rho (x) rho), when computable.
    std::optional<double> projector_side;
    double discrepancy = 0.0;
};

/// Evaluates both sides of 1 - Tr rho^2 = 2 Tr(P_- rho (x) rho) and throws
/// ConsistencyError if they differ by more than 1e-10. The projector side is
/// a dense contraction for D^2 <= kDenseTwoCopyCap and an index contraction
/// with the global swap otherwise.
MixednessReport mixedness_exact(const DensityMatrix &rho);

} // namespace mpconc
