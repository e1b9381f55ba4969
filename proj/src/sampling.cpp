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

#include "mpconc/sampling.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "outcome_tree.hpp"

namespace mpconc {
namespace {

// Spectral route budget: rank pairs x outcomes x two-copy length.
constexpr double kSpectralWorkBudget = 1 << 28;
constexpr double kEigenvalueFloor = 1e-14;

void check_measured(const SubsystemDims &dims, const SubsystemSet &measured) {
    const std::size_t n = dims.count();
    if (measured.universe() != n) {
        throw InvalidArgument("measured set refers to " +
                              std::to_string(measured.universe()) +
                              " subsystems, state has " + std::to_string(n));
    }
    if (measured.empty() || measured.size() + 1 < n) {
        throw InvalidArgument("measured set must cover N or N-1 subsystems, got " +
                              measured.to_string() + " for N = " +
                              std::to_string(n));
    }
    if (measured.size() >= 63) {
        throw CapExceeded("too many measured subsystems");
    }
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

std::uint64_t batch_seed(std::uint64_t seed, std::uint64_t batch) {
    return splitmix64(splitmix64(seed) + batch);
}

/// Signed sum of reduced purities: Tr[S_T rho (x) rho] = Tr rho_T^2.
std::vector<double> swap_expansion(const DensityMatrix &rho,
                                   const SubsystemSet &measured) {
    const std::size_t n = rho.dims().count();
    const std::size_t m = measured.size();
    const std::size_t outcomes = std::size_t{1} << m;
    // swap_trace[t]: bit (m-1-k) of t selects measured.indices()[k].
    std::vector<double> swap_trace(outcomes, 1.0);
    for (std::size_t t = 1; t < outcomes; ++t) {
        std::vector<std::size_t> subset;
        for (std::size_t k = 0; k < m; ++k) {
            if ((t >> (m - 1 - k)) & 1U) {
                subset.push_back(measured.indices()[k]);
            }
        }
        if (subset.size() == n) {
            swap_trace[t] = rho.matrix().squaredNorm();
        } else {
            swap_trace[t] =
                partial_trace(rho, SubsystemSet(std::move(subset), n)).matrix().squaredNorm();
        }
    }
    std::vector<double> probs(outcomes, 0.0);
    const double scale = std::ldexp(1.0, -static_cast<int>(m));
    for (std::size_t s = 0; s < outcomes; ++s) {
        double acc = 0.0;
        for (std::size_t t = 0; t < outcomes; ++t) {
            const bool negative = std::popcount(s & t) % 2 == 1;
            acc += negative ? -swap_trace[t] : swap_trace[t];
        }
        probs[s] = scale * acc;
    }
    return probs;
}

void clean_roundoff(std::vector<double> &probs) {
    for (double &p : probs) {
        if (p < 0.0 && p > -1e-12) {
            p = 0.0;
        }
    }
}

} // namespace

double OutcomeDistribution::prob(const SignString &s) const {
    if (s.size() != measured.size()) {
        throw InvalidArgument("sign string length differs from the measured count");
    }
    return probs[s.mask()];
}

double OutcomeDistribution::odd_parity_mass() const {
    double acc = 0.0;
    for (std::size_t mask = 0; mask < probs.size(); ++mask) {
        if (std::popcount(mask) % 2 == 1) {
            acc += probs[mask];
        }
    }
    return acc;
}

OutcomeDistribution outcome_distribution(const PureState &psi,
                                         const SubsystemSet &measured) {
    check_measured(psi.dims(), measured);
    std::vector<double> probs(std::size_t{1} << measured.size(), 0.0);
    detail::accumulate_outcomes(two_copy(psi), psi.dims(), measured.indices(), 1.0,
                                probs);
    clean_roundoff(probs);
    return {psi.dims(), measured, std::move(probs)};
}

OutcomeDistribution outcome_distribution(const DensityMatrix &rho,
                                         const SubsystemSet &measured) {
    const SubsystemDims &dims = rho.dims();
    check_measured(dims, measured);
    const std::size_t outcomes = std::size_t{1} << measured.size();

    const Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
    std::vector<Eigen::Index> support;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        if (solver.eigenvalues()[k] > kEigenvalueFloor) {
            support.push_back(k);
        }
    }
    const double r = static_cast<double>(support.size());
    const double work = 0.5 * r * (r + 1.0) * 2.0 * static_cast<double>(outcomes) *
                        static_cast<double>(dims.two_copy_total());

    std::vector<double> probs;
    if (work <= kSpectralWorkBudget) {
        probs.assign(outcomes, 0.0);
        for (std::size_t a = 0; a < support.size(); ++a) {
            for (std::size_t b = a; b < support.size(); ++b) {
                const double la = solver.eigenvalues()[support[a]];
                const double lb = solver.eigenvalues()[support[b]];
                // (a,b) and (b,a) contribute equally: the pair projectors
                // commute with the exchange of the two full copies.
                const double weight = (a == b ? 1.0 : 2.0) * la * lb;
                detail::accumulate_outcomes(
                    two_copy(Vector(solver.eigenvectors().col(support[a])),
                             Vector(solver.eigenvectors().col(support[b]))),
                    dims, measured.indices(), weight, probs);
            }
        }
    } else {
        probs = swap_expansion(rho, measured);
    }
    clean_roundoff(probs);
    return {dims, measured, std::move(probs)};
}

SampleSummary sample_shots(const OutcomeDistribution &dist, std::uint64_t shots,
                           std::uint64_t seed, const SamplingOptions &options) {
    if (shots < 1) {
        throw InvalidArgument("shots must be >= 1");
    }
    if (options.batch_size < 1) {
        throw InvalidArgument("batch size must be >= 1");
    }
    const std::size_t outcomes = dist.probs.size();
    std::vector<double> cdf(outcomes);
    double running = 0.0;
    for (std::size_t k = 0; k < outcomes; ++k) {
        if (!(dist.probs[k] >= 0.0)) {
            throw InvalidArgument("outcome distribution has a negative entry");
        }
        running += dist.probs[k];
        cdf[k] = running;
    }
    if (std::abs(running - 1.0) > 1e-8) {
        throw InvalidArgument("outcome probabilities do not sum to 1");
    }
    for (double &c : cdf) {
        c /= running;
    }
    cdf.back() = 1.0;

    const std::uint64_t batches = (shots + options.batch_size - 1) / options.batch_size;
    std::vector<std::uint64_t> counts(outcomes, 0);
    std::mutex merge;
    std::atomic<std::uint64_t> next_batch{0};

    auto worker = [&] {
        std::vector<std::uint64_t> local(outcomes, 0);
        for (std::uint64_t b = next_batch++; b < batches; b = next_batch++) {
            std::mt19937_64 rng(batch_seed(seed, b));
            const std::uint64_t begin = b * options.batch_size;
            const std::uint64_t n = std::min(options.batch_size, shots - begin);
            for (std::uint64_t i = 0; i < n; ++i) {
                const double u = static_cast<double>(rng() >> 11U) * 0x1.0p-53;
                const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
                ++local[static_cast<std::size_t>(it - cdf.begin())];
            }
        }
        const std::lock_guard lock(merge);
        for (std::size_t k = 0; k < outcomes; ++k) {
            counts[k] += local[k];
        }
    };

    const std::size_t threads = static_cast<std::size_t>(std::clamp<std::uint64_t>(
        options.threads, 1, std::max<std::uint64_t>(batches, 1)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }

    SampleSummary out;
    out.measured = dist.measured;
    out.counts = std::move(counts);
    out.shots = shots;
    out.seed = seed;
    const double n = static_cast<double>(shots);
    out.p_plus_hat = static_cast<double>(out.counts.front()) / n;
    out.p_plus_stderr = std::sqrt(out.p_plus_hat * (1.0 - out.p_plus_hat) / n);
    const double complement = 1.0 - out.p_plus_hat;
    out.concurrence_hat = 2.0 * std::sqrt(std::max(0.0, complement));
    out.concurrence_stderr =
        out.counts.front() == shots
            ? std::numeric_limits<double>::infinity()
            : out.p_plus_stderr / std::sqrt(std::max(1e-12, complement));
    std::uint64_t odd = 0;
    for (std::size_t mask = 0; mask < outcomes; ++mask) {
        if (std::popcount(mask) % 2 == 1) {
            odd += out.counts[mask];
        }
    }
    out.odd_fraction = static_cast<double>(odd) / n;
    out.mixedness_hat = 2.0 * out.odd_fraction;
    return out;
}

double estimate_mixedness(const SampleSummary &summary) {
    if (!summary.measured.is_all()) {
        throw InvalidArgument(
            "mixedness needs every subsystem measured; odd-parity accounting is "
            "incomplete for " + summary.measured.to_string());
    }
    return summary.mixedness_hat;
}

MixednessReport mixedness_exact(const DensityMatrix &rho) {
    MixednessReport report;
    report.linear_entropy = 1.0 - purity(rho);
    const SubsystemDims &dims = rho.dims();
    const Matrix &m = rho.matrix();
    if (dims.two_copy_total() <= kDenseTwoCopyCap) {
        const Matrix p_minus = global_projector(dims, Sign::minus).matrix();
        const std::array<Matrix, 2> factors{m, m};
        const Matrix rho2 = tensor_product(std::span<const Matrix>(factors));
        report.projector_side = 2.0 * (p_minus * rho2).trace().real();
    } else {
        // Tr[S (rho (x) rho)] = sum_{a,b} rho_{ba} rho_{ab}.
        cplx swap_trace{0.0, 0.0};
        for (Eigen::Index a = 0; a < m.rows(); ++a) {
            for (Eigen::Index b = 0; b < m.cols(); ++b) {
                swap_trace += m(b, a) * m(a, b);
            }
        }
        const cplx tr = m.trace();
        report.projector_side = (tr * tr - swap_trace).real();
    }
    report.discrepancy = std::abs(report.linear_entropy - *report.projector_side);
    if (report.discrepancy > kNormTolerance) {
        throw ConsistencyError("1 - Tr rho^2 and 2 Tr(P_- rho rho) disagree by " +
                               std::to_string(report.discrepancy));
    }
    return report;
}

} // namespace mpconc
