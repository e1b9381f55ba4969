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

#pragma once

#include <cstdint>
#include <span>

#include "mpconc/hilbert.hpp"

namespace mpconc {

/// (sum_k |k>^{(x)n}) / sqrt(d).
PureState ghz(std::size_t n, std::size_t d = 2,
              std::size_t two_copy_cap = kDefaultTwoCopyCap);

/// Equal superposition of the n single-excitation qubit basis states.
PureState w_state(std::size_t n, std::size_t two_copy_cap = kDefaultTwoCopyCap);

/// Tensor product of normalized single-subsystem vectors.
PureState product_state(std::span<const Vector> locals,
                        std::size_t two_copy_cap = kDefaultTwoCopyCap);

/// Haar-random pure state: normalized complex Gaussian vector drawn from a
/// 64-bit Mersenne twister seeded with `seed`.
PureState random_pure(const SubsystemDims &dims, std::uint64_t seed);

/// Haar-random single-subsystem vector of dimension d.
Vector random_local(std::size_t d, std::uint64_t seed);

/// visibility * |psi><psi| + (1 - visibility) * 1/D.
DensityMatrix depolarized(const PureState &psi, double visibility);

/// Normalized Wishart matrix G G^dagger / Tr(...) with G of size D x rank.
DensityMatrix random_mixed(const SubsystemDims &dims, std::size_t rank,
                           std::uint64_t seed);

} // namespace mpconc
