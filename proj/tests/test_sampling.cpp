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

#include <doctest.h>

#include <cmath>
#include <numeric>

#include "mpconc/concurrence.hpp"
#include "mpconc/sampling.hpp"
#include "mpconc/states.hpp"
#include "oracles.hpp"

using namespace mpconc;

namespace {

// Tr[(prod P) rho (x) rho] with the dense oracle projector.
double dense_outcome(const DensityMatrix &rho, const std::string &label) {
    const Matrix two = oracle::kron(rho.matrix(), rho.matrix());
    return (oracle::sign_projector(rho.dims().dims(), label) * two).trace().real();
}

} // namespace

TEST_CASE("outcome distribution examples") {
    const Vector f[] = {random_local(2, 1), random_local(2, 2), random_local(3, 3)};
    const PureState prod(SubsystemDims({2, 2, 3}), tensor_product(f));
    const auto dp = outcome_distribution(prod, SubsystemSet::all(3));
    CHECK(std::abs(dp.all_plus() - 1.0) < 1e-12);

    const auto bell = outcome_distribution(ghz(2), SubsystemSet::all(2));
    CHECK(bell.outcome_count() == 4);
    CHECK(std::abs(bell.prob(SignString::parse("++")) - 0.75) < 1e-12);
    CHECK(std::abs(bell.prob(SignString::parse("--")) - 0.25) < 1e-12);
    CHECK(bell.prob(SignString::parse("+-")) < 1e-12);
    CHECK(bell.odd_parity_mass() < 1e-10);
    CHECK(bell.label(3).to_string() == "--");

    // Maximally mixed qubit pair: each pair is antisymmetric with prob 1/4.
    const auto mm = outcome_distribution(depolarized(ghz(2), 0.0), SubsystemSet({0}, 2));
    CHECK(std::abs(mm.prob(SignString::parse("-")) - 0.25) < 1e-12);
}

TEST_CASE("mixed-state outcomes match the dense oracle") {
    const SubsystemDims dims({2, 3});
    const auto rho = random_mixed(dims, 3, 11);
    const auto dist = outcome_distribution(rho, SubsystemSet::all(2));
    for (std::size_t m = 0; m < dist.outcome_count(); ++m) {
        CHECK(std::abs(dist.probs[m] - dense_outcome(rho, dist.label(m).to_string())) < 1e-12);
    }
    const auto part = outcome_distribution(rho, SubsystemSet({1}, 2));
    CHECK(std::abs(part.probs[1] - dense_outcome(rho, "*-")) < 1e-12);

    // Full rank on three qubits.
    const auto big = random_mixed(SubsystemDims({2, 2, 2}), 8, 12);
    const auto d3 = outcome_distribution(big, SubsystemSet::all(3));
    double total = 0.0;
    for (std::size_t m = 0; m < d3.outcome_count(); ++m) {
        total += d3.probs[m];
        CHECK(std::abs(d3.probs[m] - dense_outcome(big, d3.label(m).to_string())) < 1e-12);
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
}

TEST_CASE("pure inputs: odd parity vanishes and the N-1 marginal keeps p_plus") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto psi = random_pure(SubsystemDims({2, 3, 2}), seed);
        const auto full = outcome_distribution(psi, SubsystemSet::all(3));
        CHECK(full.odd_parity_mass() < 1e-10);
        const auto rho = DensityMatrix::from_pure(psi);
        const auto fr = outcome_distribution(rho, SubsystemSet::all(3));
        for (std::size_t m = 0; m < full.outcome_count(); ++m) {
            CHECK(std::abs(full.probs[m] - fr.probs[m]) < 1e-12);
        }
        for (std::size_t drop = 0; drop < 3; ++drop) {
            const auto part = outcome_distribution(psi, SubsystemSet::all_but(3, drop));
            CHECK(std::abs(part.all_plus() - full.all_plus()) < 1e-10);
        }
    }
}

TEST_CASE("mixedness relation") {
    const auto bell = ghz(2);
    CHECK(std::abs(mixedness_exact(DensityMatrix::from_pure(bell)).linear_entropy) < 1e-14);
    const auto flat = mixedness_exact(depolarized(ghz(3), 0.0));
    CHECK(std::abs(flat.linear_entropy - (1.0 - 1.0 / 8.0)) < 1e-14);
    CHECK(flat.projector_side.has_value());

    for (const auto &shape : {std::vector<std::size_t>{2, 3}, {2, 2, 2}, {3, 3, 2}}) {
        const SubsystemDims dims(shape);
        const auto rho = random_mixed(dims, 3, 21);
        const auto rep = mixedness_exact(rho);
        const double lin = 1.0 - (rho.matrix() * rho.matrix()).trace().real();
        CHECK(std::abs(rep.linear_entropy - lin) < 1e-12);
        CHECK(std::abs(*rep.projector_side - lin) < 1e-10);
        // P_- decomposes into the odd-parity sign strings.
        const auto dist = outcome_distribution(rho, SubsystemSet::all(shape.size()));
        CHECK(std::abs(2.0 * dist.odd_parity_mass() - *rep.projector_side) < 1e-10);
    }
}

TEST_CASE("sampling is deterministic and thread-independent") {
    const auto dist = outcome_distribution(ghz(3), SubsystemSet::all(3));
    const auto a = sample_shots(dist, 200000, 5);
    const auto b = sample_shots(dist, 200000, 5);
    SamplingOptions four;
    four.threads = 4;
    const auto c = sample_shots(dist, 200000, 5, four);
    CHECK(a.counts == b.counts);
    CHECK(a.counts == c.counts);
    CHECK(std::accumulate(a.counts.begin(), a.counts.end(), std::uint64_t{0}) == 200000);
    CHECK(sample_shots(dist, 200000, 6).counts != a.counts);
    SamplingOptions small;
    small.batch_size = 1000;
    CHECK(sample_shots(dist, 200000, 5, small).counts != a.counts);
}

TEST_CASE("sample estimators") {
    const Vector f[] = {random_local(2, 1), random_local(2, 2)};
    const PureState prod(SubsystemDims({2, 2}), tensor_product(f));
    const auto s0 = sample_shots(outcome_distribution(prod, SubsystemSet::all(2)), 1000, 3);
    CHECK(s0.concurrence_hat == 0.0);
    CHECK(s0.p_plus_hat == 1.0);
    CHECK(std::isinf(s0.concurrence_stderr));

    const auto bell = sample_shots(outcome_distribution(ghz(2), SubsystemSet::all(2)), 1000000, 2024);
    CHECK(std::abs(bell.p_plus_hat - 0.75) < 0.002);
    CHECK(std::abs(bell.concurrence_hat - 1.0) < 3.0 * bell.concurrence_stderr);
    CHECK(std::abs(estimate_mixedness(bell)) < 1e-12);

    const auto partial = sample_shots(outcome_distribution(ghz(3), SubsystemSet({0, 1}, 3)), 100, 1);
    CHECK_THROWS_AS(estimate_mixedness(partial), InvalidArgument);

    const auto flat = outcome_distribution(depolarized(ghz(2), 0.0), SubsystemSet::all(2));
    const auto sf = sample_shots(flat, 100000, 9);
    const double sigma = 2.0 * std::sqrt(0.375 * 0.625 / 100000.0);
    CHECK(std::abs(estimate_mixedness(sf) - 0.75) < 3.0 * sigma);

    CHECK_THROWS_AS(sample_shots(flat, 0, 1), InvalidArgument);
    auto broken = flat;
    broken.probs[0] += 0.1;
    CHECK_THROWS_AS(sample_shots(broken, 10, 1), InvalidArgument);
}
