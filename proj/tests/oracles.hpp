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

// Brute-force reference constructions for tests. Everything here works
// directly on basis indices and digit lists and does not call into the
// library's kron, permutation, or pair-run code.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using Dims = std::vector<std::size_t>;

inline std::size_t product(const Dims &dims) {
    std::size_t p = 1;
    for (const auto d : dims) {
        p *= d;
    }
    return p;
}

/// Big-endian digits of `index`.
inline std::vector<std::size_t> digits(std::size_t index, const Dims &dims) {
    std::vector<std::size_t> out(dims.size());
    for (std::size_t j = dims.size(); j-- > 0;) {
        out[j] = index % dims[j];
        index /= dims[j];
    }
    return out;
}

inline std::size_t compose(const std::vector<std::size_t> &digs, const Dims &dims) {
    std::size_t index = 0;
    for (std::size_t j = 0; j < dims.size(); ++j) {
        index = index * dims[j] + digs[j];
    }
    return index;
}

/// Reduced matrix on `keep` (sorted) by summing over equal traced digits.
inline Mat partial_trace(const Mat &rho, const Dims &dims,
                         const std::vector<std::size_t> &keep) {
    Dims kept_dims;
    for (const auto j : keep) {
        kept_dims.push_back(dims[j]);
    }
    const std::size_t dk = product(kept_dims);
    Mat out = Mat::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    const std::size_t total = product(dims);
    auto is_kept = [&](std::size_t j) {
        for (const auto k : keep) {
            if (k == j) {
                return true;
            }
        }
        return false;
    };
    for (std::size_t r = 0; r < total; ++r) {
        const auto dr = digits(r, dims);
        for (std::size_t c = 0; c < total; ++c) {
            const auto dc = digits(c, dims);
            bool same = true;
            for (std::size_t j = 0; j < dims.size() && same; ++j) {
                if (!is_kept(j) && dr[j] != dc[j]) {
                    same = false;
                }
            }
            if (!same) {
                continue;
            }
            std::vector<std::size_t> kr;
            std::vector<std::size_t> kc;
            for (const auto j : keep) {
                kr.push_back(dr[j]);
                kc.push_back(dc[j]);
            }
            out(static_cast<Eigen::Index>(compose(kr, kept_dims)),
                static_cast<Eigen::Index>(compose(kc, kept_dims))) +=
                rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        }
    }
    return out;
}

/// Dense product of pair projectors on the two-copy space (orig digits then
/// copy digits). signs[j] is +1, -1, or 0 for "not measured" (identity).
/// Built by expanding each (1 + s S_j)/2 over subsets of swapped pairs and
/// acting on every basis vector.
inline Mat sign_projector(const Dims &dims, const std::vector<int> &signs) {
    const std::size_t n = dims.size();
    const std::size_t total = product(dims);
    const std::size_t size = total * total;
    Dims two_copy_dims = dims;
    two_copy_dims.insert(two_copy_dims.end(), dims.begin(), dims.end());
    Mat out = Mat::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    for (std::size_t col = 0; col < size; ++col) {
        const auto dig = digits(col, two_copy_dims);
        for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << n); ++subset) {
            double coeff = 1.0;
            auto swapped = dig;
            bool allowed = true;
            for (std::size_t j = 0; j < n; ++j) {
                const bool in = (subset >> j) & 1U;
                if (signs[j] == 0) {
                    if (in) {
                        allowed = false;
                    }
                    continue;
                }
                coeff *= 0.5;
                if (in) {
                    coeff *= signs[j];
                    std::swap(swapped[j], swapped[n + j]);
                }
            }
            if (!allowed) {
                continue;
            }
            out(static_cast<Eigen::Index>(compose(swapped, two_copy_dims)),
                static_cast<Eigen::Index>(col)) += coeff;
        }
    }
    return out;
}

inline Mat sign_projector(const Dims &dims, const std::string &signs) {
    std::vector<int> s;
    for (const char c : signs) {
        s.push_back(c == '+' ? 1 : (c == '-' ? -1 : 0));
    }
    return sign_projector(dims, s);
}

/// Exchange of the two full copies.
inline Mat global_swap(const Dims &dims) {
    const std::size_t total = product(dims);
    const auto size = static_cast<Eigen::Index>(total * total);
    Mat s = Mat::Zero(size, size);
    for (std::size_t a = 0; a < total; ++a) {
        for (std::size_t b = 0; b < total; ++b) {
            s(static_cast<Eigen::Index>(b * total + a),
              static_cast<Eigen::Index>(a * total + b)) = 1.0;
        }
    }
    return s;
}

/// |x> (x) |y> by explicit index arithmetic.
inline Vec kron(const Vec &x, const Vec &y) {
    Vec out(x.size() * y.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        for (Eigen::Index k = 0; k < y.size(); ++k) {
            out[i * y.size() + k] = x[i] * y[k];
        }
    }
    return out;
}

inline Mat kron(const Mat &x, const Mat &y) {
    Mat out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index k = 0; k < x.cols(); ++k) {
            for (Eigen::Index a = 0; a < y.rows(); ++a) {
                for (Eigen::Index b = 0; b < y.cols(); ++b) {
                    out(i * y.rows() + a, k * y.cols() + b) = x(i, k) * y(a, b);
                }
            }
        }
    }
    return out;
}

/// Multipartite concurrence from brute-force reduced purities.
inline double concurrence_from_purities(const Vec &psi, const Dims &dims) {
    const std::size_t n = dims.size();
    const Mat rho = psi * psi.adjoint();
    double sum = 0.0;
    for (std::uint64_t bits = 1; bits + 1 < (std::uint64_t{1} << n); ++bits) {
        std::vector<std::size_t> keep;
        for (std::size_t j = 0; j < n; ++j) {
            if ((bits >> j) & 1U) {
                keep.push_back(j);
            }
        }
        const Mat r = partial_trace(rho, dims, keep);
        sum += (r * r).trace().real();
    }
    const double bracket = std::pow(2.0, static_cast<double>(n)) - 2.0 - sum;
    return std::pow(2.0, 1.0 - static_cast<double>(n) / 2.0) * std::sqrt(std::max(0.0, bracket));
}

/// Independent Haar sampler (different generator from the library's).
inline Vec haar_vector(std::size_t dim, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    Vec v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v[i] = cplx(g(rng), g(rng));
    }
    return v / v.norm();
}

} // namespace oracle
