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

#include "kernels/kernels_internal.hpp"

namespace mpconc::kernels::detail {
namespace {

void pair_symmetrize(double *u, double *w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double h = 0.5 * (u[i] + w[i]);
        u[i] = h;
        w[i] = h;
    }
}

void pair_antisymmetrize(double *u, double *w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double g = 0.5 * (u[i] - w[i]);
        u[i] = g;
        w[i] = -g;
    }
}

void pair_split(const double *u, const double *w, double *plus_u,
                double *plus_w, double *minus_u, double *minus_w,
                std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
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
    double s = 0.0;
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = u[i] + w[i];
        const double b = u[i] - w[i];
        s += a * a;
        d += b * b;
    }
    *sum_sq += s;
    *diff_sq += d;
}

double squared_norm(const double *x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += x[i] * x[i];
    }
    return acc;
}

void scale_complex(const double *src, double alpha_re, double alpha_im,
                   double *dst, std::size_t n_complex) {
    for (std::size_t k = 0; k < n_complex; ++k) {
        const double re = src[2 * k];
        const double im = src[2 * k + 1];
        dst[2 * k] = re * alpha_re - im * alpha_im;
        dst[2 * k + 1] = im * alpha_re + re * alpha_im;
    }
}

} // namespace

const KernelTable &scalar_table() {
    static const KernelTable table{pair_symmetrize, pair_antisymmetrize,
                                   pair_split, pair_norms, squared_norm, scale_complex};
    return table;
}

} // namespace mpconc::kernels::detail
