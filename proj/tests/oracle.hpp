// Copyright 2026 The owcnot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference implementations used only by the tests. Nothing here calls into
// the library's simulation code: states are built from closed forms or full
// Kronecker-product matrices.

#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;

struct Mat {
    std::size_t dim = 0;
    std::vector<C> a;
    explicit Mat(std::size_t d) : dim(d), a(d * d) {}
    C &operator()(std::size_t r, std::size_t c) { return a[r * dim + c]; }
    C operator()(std::size_t r, std::size_t c) const { return a[r * dim + c]; }
};

inline Mat m2(C a, C b, C c, C d) {
    Mat m(2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

inline Mat identity2() { return m2(1, 0, 0, 1); }

inline Mat letter(char p) {
    const C i(0, 1);
    switch (p) {
        case 'X': return m2(0, 1, 1, 0);
        case 'Y': return m2(0, -i, i, 0);
        case 'Z': return m2(1, 0, 0, -1);
        default: return identity2();
    }
}

inline Mat kron(const Mat &x, const Mat &y) {
    Mat m(x.dim * y.dim);
    for (std::size_t r1 = 0; r1 < x.dim; ++r1)
        for (std::size_t c1 = 0; c1 < x.dim; ++c1)
            for (std::size_t r2 = 0; r2 < y.dim; ++r2)
                for (std::size_t c2 = 0; c2 < y.dim; ++c2)
                    m(r1 * y.dim + r2, c1 * y.dim + c2) = x(r1, c1) * y(r2, c2);
    return m;
}

inline Mat mul(const Mat &x, const Mat &y) {
    Mat m(x.dim);
    for (std::size_t r = 0; r < x.dim; ++r)
        for (std::size_t k = 0; k < x.dim; ++k)
            for (std::size_t c = 0; c < x.dim; ++c) m(r, c) += x(r, k) * y(k, c);
    return m;
}

inline Mat add(const Mat &x, const Mat &y) {
    Mat m(x.dim);
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] = x.a[i] + y.a[i];
    return m;
}

/// Tensor product of per-qubit factors, qubit 1 leftmost.
inline Mat tensor(const std::vector<Mat> &factors) {
    Mat m = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) m = kron(m, factors[k]);
    return m;
}

/// Dense operator for e.g. "XIZ" (qubit 1 first) times a scalar.
inline Mat pauli(const std::string &letters, C scalar = 1) {
    std::vector<Mat> f;
    for (char c : letters) f.push_back(letter(c));
    Mat m = tensor(f);
    for (auto &x : m.a) x *= scalar;
    return m;
}

/// Controlled-phase as |0><0|_a (x) 1 + |1><1|_a (x) Z_b.
inline Mat controlled_phase(std::size_t n, int a, int b) {
    std::vector<Mat> p0(n, identity2()), p1(n, identity2());
    p0[static_cast<std::size_t>(a - 1)] = m2(1, 0, 0, 0);
    p1[static_cast<std::size_t>(a - 1)] = m2(0, 0, 0, 1);
    p1[static_cast<std::size_t>(b - 1)] = letter('Z');
    return add(tensor(p0), tensor(p1));
}

inline Vec apply(const Mat &m, const Vec &v) {
    Vec out(v.size());
    for (std::size_t r = 0; r < m.dim; ++r)
        for (std::size_t c = 0; c < m.dim; ++c) out[r] += m(r, c) * v[c];
    return out;
}

inline C inner(const Vec &u, const Vec &v) {
    C s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

inline double norm(const Vec &v) { return std::sqrt(std::real(inner(v, v))); }

/// || u - e^{i t} v ||_2 with t = arg <v|u>, the minimizing phase.
inline double phase_distance(const Vec &u, const Vec &v) {
    C ov = inner(v, u);
    C rot = std::abs(ov) > 0 ? ov / std::abs(ov) : C(1);
    double s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::norm(u[i] - rot * v[i]);
    return std::sqrt(s);
}

using Amp = std::pair<C, C>;

/// Cluster state from its closed form: prod_k amp_k(z_k) * (-1)^{sum_edges z_a z_b}.
inline Vec cluster_closed_form(std::size_t n, const std::vector<std::pair<int, int>> &edges,
                               const std::map<int, Amp> &inputs = {}) {
    const double h = 1 / std::sqrt(2.0);
    Vec v(std::size_t{1} << n);
    for (std::size_t z = 0; z < v.size(); ++z) {
        auto bit = [&](int q) { return static_cast<int>(z >> (n - static_cast<std::size_t>(q)) & 1); };
        C amp = 1;
        for (int q = 1; q <= static_cast<int>(n); ++q) {
            auto it = inputs.find(q);
            if (it == inputs.end()) {
                amp *= h;
            } else {
                amp *= bit(q) ? it->second.second : it->second.first;
            }
        }
        int parity = 0;
        for (auto [a, b] : edges) parity ^= bit(a) & bit(b);
        v[z] = parity ? -amp : amp;
    }
    return v;
}

/// Eigenvector of X ('X') or Y ('Y') for outcome s (s = 0 is eigenvalue +1), or Z.
inline std::pair<C, C> eigvec(char axis, int s) {
    const double h = 1 / std::sqrt(2.0);
    const C i(0, 1);
    switch (axis) {
        case 'X': return {h, s ? -h : h};
        case 'Y': return {h, s ? -i * h : i * h};
        default: return s ? std::pair<C, C>{0, 1} : std::pair<C, C>{1, 0};
    }
}

/// Contracts the measured qubits of `psi` against their eigenvectors, leaving
/// the unmeasured qubits in ascending label order. Unnormalized.
inline Vec contract(const Vec &psi, std::size_t n, const std::map<int, std::pair<char, int>> &measured) {
    std::vector<int> kept;
    for (int q = 1; q <= static_cast<int>(n); ++q)
        if (!measured.count(q)) kept.push_back(q);
    Vec out(std::size_t{1} << kept.size());
    for (std::size_t z = 0; z < psi.size(); ++z) {
        C w = psi[z];
        std::size_t k = 0;
        for (int q = 1; q <= static_cast<int>(n); ++q) {
            int b = static_cast<int>(z >> (n - static_cast<std::size_t>(q)) & 1);
            auto it = measured.find(q);
            if (it == measured.end()) {
                k = (k << 1) | static_cast<std::size_t>(b);
            } else {
                auto e = eigvec(it->second.first, it->second.second);
                w *= std::conj(b ? e.second : e.first);
            }
        }
        out[k] += w;
    }
    return out;
}

inline Vec normalized(Vec v) {
    double n = norm(v);
    for (auto &x : v) x /= n;
    return v;
}

}  // namespace oracle
