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

#include "mpconc/errors.hpp"
#include "kernels/kernels_internal.hpp"

#include <atomic>
#include <string>

namespace mpconc::kernels {
namespace {

std::atomic<Backend> &active_slot() {
    static std::atomic<Backend> slot{detect_backend()};
    return slot;
}

double *as_doubles(std::span<cplx> x) {
    return reinterpret_cast<double *>(x.data());
}

const double *as_doubles(std::span<const cplx> x) {
    return reinterpret_cast<const double *>(x.data());
}

void require_same_size(std::size_t a, std::size_t b) {
    if (a != b) {
        throw InvalidArgument("kernel operands differ in length (" +
                              std::to_string(a) + " vs " + std::to_string(b) +
                              ")");
    }
}

} // namespace

std::string_view backend_name(Backend backend) {
    switch (backend) {
    case Backend::scalar:
        return "scalar";
    case Backend::avx2:
        return "avx2";
    }
    return "unknown";
}

bool backend_supported(Backend backend) {
    switch (backend) {
    case Backend::scalar:
        return true;
    case Backend::avx2:
#if defined(MPCONC_HAVE_AVX2)
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
        return false;
#endif
    }
    return false;
}

const KernelTable &kernel_table(Backend backend) {
    if (!backend_supported(backend)) {
        throw InvalidArgument("kernel backend '" +
                              std::string(backend_name(backend)) +
                              "' is not available");
    }
#if defined(MPCONC_HAVE_AVX2)
    if (backend == Backend::avx2) {
        return detail::avx2_table();
    }
#endif
    return detail::scalar_table();
}

Backend detect_backend() {
    return backend_supported(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

Backend active_backend() { return active_slot().load(std::memory_order_relaxed); }

void set_active_backend(Backend backend) {
    if (!backend_supported(backend)) {
        throw InvalidArgument("kernel backend '" +
                              std::string(backend_name(backend)) +
                              "' is not available");
    }
    active_slot().store(backend, std::memory_order_relaxed);
}

void pair_symmetrize(std::span<cplx> u, std::span<cplx> w) {
    require_same_size(u.size(), w.size());
    kernel_table(active_backend())
        .pair_symmetrize(as_doubles(u), as_doubles(w), 2 * u.size());
}

void pair_antisymmetrize(std::span<cplx> u, std::span<cplx> w) {
    require_same_size(u.size(), w.size());
    kernel_table(active_backend())
        .pair_antisymmetrize(as_doubles(u), as_doubles(w), 2 * u.size());
}

double squared_norm(std::span<const cplx> x) {
    return kernel_table(active_backend()).squared_norm(as_doubles(x), 2 * x.size());
}

void scale_complex(std::span<const cplx> src, cplx alpha, std::span<cplx> dst) {
    require_same_size(src.size(), dst.size());
    kernel_table(active_backend())
        .scale_complex(as_doubles(src), alpha.real(), alpha.imag(),
                       as_doubles(dst), src.size());
}

} // namespace mpconc::kernels
