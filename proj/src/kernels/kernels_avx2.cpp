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

// Compiled with -mavx2 -mfma. Only reached after a runtime CPU check.
#include "kernels/kernels_internal.hpp"

#include <immintrin.h>

namespace mpconc::kernels::detail {
namespace {

double horizontal_sum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void pair_symmetrize(double *u, double *w, std::size_t n) {
    const __m256d half = _mm256_set1_pd(0.5);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d h = _mm256_mul_pd(
            half, _mm256_add_pd(_mm256_loadu_pd(u + i), _mm256_loadu_pd(w + i)));
        _mm256_storeu_pd(u + i, h);
        _mm256_storeu_pd(w + i, h);
    }
    for (; i < n; ++i) {
        const double h = 0.5 * (u[i] + w[i]);
        u[i] = h;
        w[i] = h;
    }
}

void pair_antisymmetrize(double *u, double *w, std::size_t n) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d neg_half = _mm256_set1_pd(-0.5);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d =
            _mm256_sub_pd(_mm256_loadu_pd(u + i), _mm256_loadu_pd(w + i));
        _mm256_storeu_pd(u + i, _mm256_mul_pd(half, d));
        _mm256_storeu_pd(w + i, _mm256_mul_pd(neg_half, d));
    }
    for (; i < n; ++i) {
        const double g = 0.5 * (u[i] - w[i]);
        u[i] = g;
        w[i] = -g;
    }
}

void pair_split(const double *u, const double *w, double *plus_u,
                double *plus_w, double *minus_u, double *minus_w,
                std::size_t n) {
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d neg_half = _mm256_set1_pd(-0.5);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(u + i);
        const __m256d b = _mm256_loadu_pd(w + i);
        const __m256d h = _mm256_mul_pd(half, _mm256_add_pd(a, b));
        const __m256d d = _mm256_sub_pd(a, b);
        _mm256_storeu_pd(plus_u + i, h);
        _mm256_storeu_pd(plus_w + i, h);
        _mm256_storeu_pd(minus_u + i, _mm256_mul_pd(half, d));
        _mm256_storeu_pd(minus_w + i, _mm256_mul_pd(neg_half, d));
    }
    for (; i < n; ++i) {
        const double h = 0.5 * (u[i] + w[i]);
        const double g = 0.5 * (u[i] - w[i]);
        plus_u[i] = h;
        plus_w[i] = h;
        minus_u[i] = g;
        minus_w[i] = -g;
    }
}

void pair_norms(const double *u, const double *w, std::size_t n,
                double *sum_sq, double *diff_sq) {
    __m256d s = _mm256_setzero_pd();
    __m256d d = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(u + i);
        const __m256d b = _mm256_loadu_pd(w + i);
        const __m256d p = _mm256_add_pd(a, b);
        const __m256d m = _mm256_sub_pd(a, b);
        s = _mm256_fmadd_pd(p, p, s);
        d = _mm256_fmadd_pd(m, m, d);
    }
    double ss = horizontal_sum(s);
    double dd = horizontal_sum(d);
    for (; i < n; ++i) {
        const double p = u[i] + w[i];
        const double m = u[i] - w[i];
        ss += p * p;
        dd += m * m;
    }
    *sum_sq += ss;
    *diff_sq += dd;
}

double squared_norm(const double *x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d a = _mm256_loadu_pd(x + i);
        const __m256d b = _mm256_loadu_pd(x + i + 4);
        acc0 = _mm256_fmadd_pd(a, a, acc0);
        acc1 = _mm256_fmadd_pd(b, b, acc1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_loadu_pd(x + i);
        acc0 = _mm256_fmadd_pd(a, a, acc0);
    }
    double acc = horizontal_sum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        acc += x[i] * x[i];
    }
    return acc;
}

void scale_complex(const double *src, double alpha_re, double alpha_im,
                   double *dst, std::size_t n_complex) {
    const __m256d re = _mm256_set1_pd(alpha_re);
    const __m256d im = _mm256_set1_pd(alpha_im);
    const std::size_t n = 2 * n_complex;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(src + i);
        const __m256d swapped = _mm256_permute_pd(x, 0b0101);
        // even lanes: x_re*re - x_im*im, odd lanes: x_im*re + x_re*im
        _mm256_storeu_pd(dst + i,
                         _mm256_fmaddsub_pd(x, re, _mm256_mul_pd(swapped, im)));
    }
    for (; i < n; i += 2) {
        const double r = src[i];
        const double m = src[i + 1];
        dst[i] = r * alpha_re - m * alpha_im;
        dst[i + 1] = m * alpha_re + r * alpha_im;
    }
}

} // namespace

const KernelTable &avx2_table() {
    static const KernelTable table{pair_symmetrize, pair_antisymmetrize,
                                   pair_split, pair_norms, squared_norm, scale_complex};
    return table;
}

} // namespace mpconc::kernels::detail
