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
 * @file kernels.hpp
 * Inner-loop arithmetic on interleaved complex<double> buffers.
 *
 * Every kernel exists as a portable scalar reference and, on x86-64, an AVX2
 * variant. The variant used by the high-level wrappers is chosen once at
 * startup from the CPU feature flags and can be overridden with
 * `set_active_backend`. Buffers are counted in doubles (two per complex
 * amplitude) unless stated otherwise.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace mpconc::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend backend);

/// Kernel entry points for one backend. Lengths are in doubles.
struct KernelTable {
    /// u, w <- (u + w)/2 for both (projection onto the symmetric pair space).
    void (*pair_symmetrize)(double *u, double *w, std::size_t n);
    /// u <- (u - w)/2, w <- -(u - w)/2.
    void (*pair_antisymmetrize)(double *u, double *w, std::size_t n);
    /// Out-of-place split of the pair (u, w) into its symmetric and
    /// antisymmetric parts. Outputs must not alias the inputs.
    void (*pair_split)(const double *u, const double *w, double *plus_u,
                       double *plus_w, double *minus_u, double *minus_w,
                       std::size_t n);
    /// Adds sum (u+w)^2 to *sum_sq and sum (u-w)^2 to *diff_sq.
    void (*pair_norms)(const double *u, const double *w, std::size_t n,
                       double *sum_sq, double *diff_sq);
    /// Sum of squares.
    double (*squared_norm)(const double *x, std::size_t n);
    /// dst <- alpha * src over `n_complex` complex entries.
    void (*scale_complex)(const double *src, double alpha_re, double alpha_im,
                          double *dst, std::size_t n_complex);
};

bool backend_supported(Backend backend);
const KernelTable &kernel_table(Backend backend);

/// Best backend the running CPU supports.
Backend detect_backend();
Backend active_backend();
/// Throws InvalidArgument if the backend is not available on this CPU/build.
void set_active_backend(Backend backend);

using cplx = std::complex<double>;

// Wrappers over the active backend.
void pair_symmetrize(std::span<cplx> u, std::span<cplx> w);
void pair_antisymmetrize(std::span<cplx> u, std::span<cplx> w);
double squared_norm(std::span<const cplx> x);
void scale_complex(std::span<const cplx> src, cplx alpha, std::span<cplx> dst);

} // namespace mpconc::kernels
