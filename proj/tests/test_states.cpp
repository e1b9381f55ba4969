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

#include "mpconc/hilbert.hpp"
#include "mpconc/states.hpp"
#include "oracles.hpp"

using namespace mpconc;

TEST_CASE("ghz and w states") {
    const double h = 1.0 / std::sqrt(2.0);
    const auto bell = ghz(2);
    CHECK(bell.dims().dims() == std::vector<std::size_t>{2, 2});
    CHECK(std::abs(bell.amplitudes()[0] - h) < 1e-16);
    CHECK(std::abs(bell.amplitudes()[3] - h) < 1e-16);
    CHECK(bell.amplitudes().segment(1, 2).norm() == 0.0);

    const auto g3 = ghz(3);
    CHECK(std::abs(g3.amplitudes()[0] - h) < 1e-16);
    CHECK(std::abs(g3.amplitudes()[7] - h) < 1e-16);

    const auto q = ghz(2, 3);
    for (const int k : {0, 4, 8}) {
        CHECK(std::abs(q.amplitudes()[k] - 1.0 / std::sqrt(3.0)) < 1e-16);
    }

    const auto w2 = w_state(2);
    CHECK(std::abs(w2.amplitudes()[1] - h) < 1e-16);
    CHECK(std::abs(w2.amplitudes()[2] - h) < 1e-16);
    const auto w3 = w_state(3);
    for (const int k : {1, 2, 4}) {
        CHECK(std::abs(w3.amplitudes()[k] - 1.0 / std::sqrt(3.0)) < 1e-16);
    }
    CHECK_THROWS_AS(ghz(1), InvalidArgument);
    CHECK_THROWS_AS(w_state(1), InvalidArgument);
    CHECK_THROWS_AS(ghz(12, 2, 1 << 20), CapExceeded);
}

TEST_CASE("product states") {
    const Vector e0 = Vector::Unit(2, 0);
    const Vector e1 = Vector::Unit(2, 1);
    const Vector locals[] = {e0, e1};
    CHECK(product_state(locals).amplitudes() == Vector::Unit(4, 1));
    const Vector bad[] = {e0, 2.0 * e1};
    CHECK_THROWS_AS(product_state(bad), InvalidArgument);
}

TEST_CASE("random states are seeded and normalized") {
    const SubsystemDims dims({2, 3, 2});
    const auto a = random_pure(dims, 42);
    const auto b = random_pure(dims, 42);
    const auto c = random_pure(dims, 43);
    CHECK(a.amplitudes() == b.amplitudes());
    CHECK(a.amplitudes() != c.amplitudes());
    CHECK(std::abs(a.amplitudes().norm() - 1.0) < 1e-14);
    CHECK(random_local(3, 9) == random_local(3, 9));
    CHECK(std::abs(random_local(3, 9).norm() - 1.0) < 1e-14);
}

TEST_CASE("mean single-qubit purity of random two-qubit states") {
    // Haar average of Tr rho_A^2 is (dA + dB)/(D + 1) = 4/5.
    const SubsystemDims dims({2, 2});
    double sum = 0.0;
    const int samples = 4000;
    for (int k = 0; k < samples; ++k) {
        sum += purity(reduced_density(random_pure(dims, static_cast<std::uint64_t>(k)),
                                      SubsystemSet({0}, 2)));
    }
    CHECK(std::abs(sum / samples - 0.8) < 0.01);
}

TEST_CASE("depolarized states") {
    const auto bell = ghz(2);
    const Matrix pure = bell.amplitudes() * bell.amplitudes().adjoint();
    CHECK((depolarized(bell, 1.0).matrix() - pure).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(purity(depolarized(bell, 1.0)) - 1.0) < 1e-14);
    CHECK(std::abs(purity(depolarized(bell, 0.0)) - 0.25) < 1e-15);

    // Dense oracle: p^2 + (1 - p^2)/D at p = 0.5, D = 4.
    const Matrix rho = 0.5 * pure + 0.5 * Matrix::Identity(4, 4) / 4.0;
    const double dense = (rho * rho).trace().real();
    CHECK(std::abs(dense - 0.4375) < 1e-15);
    CHECK(std::abs(purity(depolarized(bell, 0.5)) - dense) < 1e-14);

    CHECK_THROWS_AS(depolarized(bell, -0.1), InvalidArgument);
    CHECK_THROWS_AS(depolarized(bell, 1.1), InvalidArgument);
}

TEST_CASE("random mixed states") {
    const SubsystemDims dims({2, 3});
    const auto rho = random_mixed(dims, 2, 5);
    CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
    int rank = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        rank += es.eigenvalues()[k] > 1e-10 ? 1 : 0;
    }
    CHECK(rank == 2);
    CHECK(random_mixed(dims, 2, 5).matrix() == rho.matrix());
    CHECK_THROWS_AS(random_mixed(dims, 0, 5), InvalidArgument);
}
