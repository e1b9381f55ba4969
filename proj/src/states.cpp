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

#include "mpconc/states.hpp"

#include <cmath>
#include <random>

namespace mpconc {
namespace {

Vector gaussian_vector(std::size_t length, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(static_cast<Eigen::Index>(length));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v[i] = cplx{re, im};
    }
    return v;
}

} // namespace

PureState ghz(std::size_t n, std::size_t d, std::size_t two_copy_cap) {
    if (n < 2) {
        throw InvalidArgument("GHZ state needs n >= 2");
    }
    if (d < 2) {
        throw InvalidArgument("GHZ state needs d >= 2");
    }
    SubsystemDims dims(std::vector<std::size_t>(n, d), two_copy_cap);
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(dims.total()));
    // |k k ... k> sits at k * (1 + d + d^2 + ...).
    std::size_t repunit = 0;
    for (std::size_t j = 0; j < n; ++j) {
        repunit += dims.stride(j);
    }
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t k = 0; k < d; ++k) {
        amps[static_cast<Eigen::Index>(k * repunit)] = amp;
    }
    return PureState(std::move(dims), std::move(amps));
}

PureState w_state(std::size_t n, std::size_t two_copy_cap) {
    if (n < 2) {
        throw InvalidArgument("W state needs n >= 2");
    }
    SubsystemDims dims(std::vector<std::size_t>(n, 2), two_copy_cap);
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(dims.total()));
    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        amps[static_cast<Eigen::Index>(dims.stride(j))] = amp;
    }
    return PureState(std::move(dims), std::move(amps));
}

PureState product_state(std::span<const Vector> locals, std::size_t two_copy_cap) {
    if (locals.empty()) {
        throw InvalidArgument("product state needs at least one factor");
    }
    std::vector<std::size_t> dims;
    for (const Vector &v : locals) {
        if (std::abs(v.norm() - 1.0) > kNormTolerance) {
            throw InvalidArgument("product-state factor is not normalized");
        }
        dims.push_back(static_cast<std::size_t>(v.size()));
    }
    SubsystemDims sd(std::move(dims), two_copy_cap);
    return PureState::normalized(std::move(sd), tensor_product(locals));
}

PureState random_pure(const SubsystemDims &dims, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return PureState::normalized(dims, gaussian_vector(dims.total(), rng));
}

Vector random_local(std::size_t d, std::uint64_t seed) {
    if (d < 2) {
        throw InvalidArgument("local dimension must be >= 2");
    }
    std::mt19937_64 rng(seed);
    Vector v = gaussian_vector(d, rng);
    return v / v.norm();
}

DensityMatrix depolarized(const PureState &psi, double visibility) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw InvalidArgument("visibility must lie in [0, 1]");
    }
    const auto d = static_cast<Eigen::Index>(psi.dims().total());
    const Vector &v = psi.amplitudes();
    Matrix rho = visibility * (v * v.adjoint()) +
                 ((1.0 - visibility) / static_cast<double>(d)) * Matrix::Identity(d, d);
    return DensityMatrix::trusted(psi.dims(), std::move(rho));
}

DensityMatrix random_mixed(const SubsystemDims &dims, std::size_t rank,
                           std::uint64_t seed) {
    if (rank < 1) {
        throw InvalidArgument("Wishart rank must be >= 1");
    }
    std::mt19937_64 rng(seed);
    const auto d = static_cast<Eigen::Index>(dims.total());
    Matrix g(d, static_cast<Eigen::Index>(rank));
    for (Eigen::Index c = 0; c < g.cols(); ++c) {
        g.col(c) = gaussian_vector(dims.total(), rng);
    }
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix::trusted(dims, std::move(rho));
}

} // namespace mpconc
