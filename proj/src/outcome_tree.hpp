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

#include <span>

#include "mpconc/hilbert.hpp"
#include "mpconc/kernels.hpp"

namespace mpconc::detail {

/// Projects `root` onto every sign pattern over `measured` and adds
/// weight * |leaf|^2 to out[mask]. Bit (m-1-k) of the mask is set when the
/// k-th measured pair is antisymmetric. Subtrees whose squared norm drops
/// below `prune_below` are skipped.
inline void accumulate_outcomes(const Vector &root, const SubsystemDims &dims,
                                std::span<const std::size_t> measured,
                                double weight, std::span<double> out,
                                double prune_below = 1e-30) {
    const std::size_t m = measured.size();
    const auto len = static_cast<std::size_t>(root.size());
    std::vector<Vector> level(m);
    for (std::size_t k = 1; k < m; ++k) {
        level[k].resize(root.size());
    }
    auto view = [&](std::size_t k) -> std::span<const cplx> {
        const Vector &v = k == 0 ? root : level[k];
        return {v.data(), len};
    };
    auto descend = [&](auto &&self, std::size_t depth, std::uint64_t mask) -> void {
        if (depth > 0 && kernels::squared_norm(view(depth)) < prune_below) {
            return;
        }
        if (depth + 1 == m) {
            // Leaves only need norms.
            const auto [plus, minus] = pair_projection_norms(view(depth), dims, measured[depth]);
            out[mask] += weight * plus;
            out[mask | 1U] += weight * minus;
            return;
        }
        for (const Sign sign : {Sign::plus, Sign::minus}) {
            level[depth + 1] = depth == 0 ? root : level[depth];
            apply_pair_projector({level[depth + 1].data(), len}, dims,
                                 measured[depth], sign);
            const std::uint64_t bit = sign == Sign::minus ? 1U : 0U;
            self(self, depth + 1, mask | (bit << (m - 1 - depth)));
        }
    };
    descend(descend, 0, 0);
}

} // namespace mpconc::detail
