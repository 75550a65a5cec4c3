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

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "owc/pauli.hpp"
#include "owc/types.hpp"

namespace owc {

/// Dense vector of 2^n complex amplitudes over qubits labeled 1..n.
///
/// Qubit 1 is the most significant bit of the amplitude index (see QubitLabel).
class StateVector {
   public:
    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n) : n_(check_size(n)), amps_(std::size_t{1} << n) {
        amps_[0] = 1.0;
    }

    /// Takes the amplitudes as given; no normalization is applied.
    StateVector(std::size_t n, std::vector<Complex> amps) : n_(check_size(n)), amps_(std::move(amps)) {
        if (amps_.size() != (std::size_t{1} << n_)) {
            throw RangeError("expected " + std::to_string(std::size_t{1} << n_) + " amplitudes for " +
                             std::to_string(n_) + " qubits, got " + std::to_string(amps_.size()));
        }
    }

    static StateVector basis(std::size_t n, std::size_t index) {
        StateVector s(n);
        if (index >= s.dim()) {
            throw RangeError("basis index " + std::to_string(index) + " out of range");
        }
        s.amps_[0] = 0;
        s.amps_[index] = 1;
        return s;
    }

    std::size_t num_qubits() const {
        return n_;
    }
    std::size_t dim() const {
        return amps_.size();
    }

    std::span<const Complex> amplitudes() const {
        return amps_;
    }
    std::span<Complex> amplitudes() {
        return amps_;
    }
    const Complex &operator[](std::size_t i) const {
        return amps_[i];
    }
    Complex &operator[](std::size_t i) {
        return amps_[i];
    }

    /// Throws RangeError unless 1 <= q <= n.
    void check_label(QubitLabel q) const {
        if (q.value() < 1 || static_cast<std::size_t>(q.value()) > n_) {
            throw RangeError("qubit label " + to_string(q) + " outside 1.." + std::to_string(n_));
        }
    }

    std::uint64_t mask(QubitLabel q) const {
        check_label(q);
        return q.mask(n_);
    }

    double norm() const {
        double s = 0;
        for (const auto &a : amps_) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }

    /// Scales to unit norm; returns the norm before scaling.
    double normalize() {
        double nrm = norm();
        if (nrm == 0) {
            throw NormError("cannot normalize the zero vector", 0.0);
        }
        for (auto &a : amps_) {
            a /= nrm;
        }
        return nrm;
    }

    bool operator==(const StateVector &) const = default;

   private:
    static std::size_t check_size(std::size_t n) {
        if (n < 1 || n > kMaxQubits) {
            throw RangeError("qubit count must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                             std::to_string(n));
        }
        return n;
    }

    std::size_t n_;
    std::vector<Complex> amps_;
};

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

/// Tensor product of single-qubit states, first entry on qubit 1.
inline StateVector make_product_state(std::span<const InputQubitState> qubits) {
    if (qubits.empty() || qubits.size() > kMaxQubits) {
        throw RangeError("product state needs 1.." + std::to_string(kMaxQubits) + " qubits, got " +
                         std::to_string(qubits.size()));
    }
    std::vector<Complex> amps{1.0};
    for (const auto &q : qubits) {
        std::vector<Complex> next(amps.size() * 2);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            next[2 * i] = amps[i] * q.a();
            next[2 * i + 1] = amps[i] * q.b();
        }
        amps = std::move(next);
    }
    return StateVector(qubits.size(), std::move(amps));
}

inline StateVector make_product_state(std::initializer_list<InputQubitState> qubits) {
    return make_product_state(std::span<const InputQubitState>(qubits.begin(), qubits.size()));
}

/// Controlled-phase entangler: negates every amplitude with z_a = z_b = 1.
inline void apply_controlled_phase(StateVector &state, QubitLabel a, QubitLabel b) {
    if (a == b) {
        throw RangeError("controlled phase needs two distinct qubits, got " + to_string(a) + " twice");
    }
    const std::uint64_t both = state.mask(a) | state.mask(b);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & both) == both) {
            amps[i] = -amps[i];
        }
    }
}

inline void apply_single_qubit_gate(StateVector &state, QubitLabel q, const Matrix2 &m) {
    const std::uint64_t bit = state.mask(q);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & bit) continue;
        Complex a0 = amps[i];
        Complex a1 = amps[i | bit];
        amps[i] = m[0][0] * a0 + m[0][1] * a1;
        amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
    }
}

/// state <- p * state, phase included.
inline void apply_pauli_string(StateVector &state, const PauliString &p) {
    if (static_cast<std::size_t>(p.max_label()) > state.num_qubits()) {
        throw RangeError("Pauli string " + p.to_string() + " acts outside a " +
                         std::to_string(state.num_qubits()) + "-qubit register");
    }
    std::uint64_t flip = 0;
    std::uint64_t sign = 0;
    int y_count = 0;
    for (auto [q, letter] : p.letters()) {
        std::uint64_t m = state.mask(q);
        if (letter == PauliLetter::X || letter == PauliLetter::Y) flip |= m;
        if (letter == PauliLetter::Z || letter == PauliLetter::Y) sign |= m;
        if (letter == PauliLetter::Y) ++y_count;
    }
    // Y = i X Z, so each Y contributes a factor i on top of X and Z.
    const Complex factor = (p.phase() * Phase::i_pow(y_count)).value();
    auto amps = state.amplitudes();
    std::vector<Complex> out(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        Complex v = factor * amps[i];
        out[i ^ flip] = (std::popcount(i & sign) & 1) ? -v : v;
    }
    std::copy(out.begin(), out.end(), amps.begin());
}

inline Complex inner_product(const StateVector &u, const StateVector &v) {
    if (u.dim() != v.dim()) {
        throw RangeError("dimension mismatch: " + std::to_string(u.dim()) + " vs " + std::to_string(v.dim()));
    }
    Complex s = 0;
    for (std::size_t i = 0; i < u.dim(); ++i) {
        s += std::conj(u[i]) * v[i];
    }
    return s;
}

/// |<u|v>|^2 for normalized inputs.
inline double fidelity(const StateVector &u, const StateVector &v) {
    return std::norm(inner_product(u, v));
}

/// Infinity-norm distance ||u - v||.
inline double max_abs_difference(const StateVector &u, const StateVector &v) {
    if (u.dim() != v.dim()) {
        throw RangeError("dimension mismatch: " + std::to_string(u.dim()) + " vs " + std::to_string(v.dim()));
    }
    double r = 0;
    for (std::size_t i = 0; i < u.dim(); ++i) {
        r = std::max(r, std::abs(u[i] - v[i]));
    }
    return r;
}

struct PhaseComparison {
    bool equal = false;
    /// theta in (-pi, pi] with u ~ e^{i theta} v.
    double phase = 0;
    /// ||u - e^{i theta} v||_inf at the reported theta.
    double residual = 0;
};

/// Compares u and e^{i theta} v with theta taken from the overlap <v|u>.
///
/// That theta minimizes the 2-norm distance; for (nearly) equal states it is also
/// the infinity-norm minimizer, and for orthogonal states theta = 0 is reported.
inline PhaseComparison equal_up_to_global_phase(const StateVector &u, const StateVector &v,
                                                double tol = kStateTolerance) {
    Complex overlap = inner_product(v, u);
    PhaseComparison out;
    out.phase = std::abs(overlap) > 0 ? std::arg(overlap) : 0.0;
    Complex rot = std::polar(1.0, out.phase);
    for (std::size_t i = 0; i < u.dim(); ++i) {
        out.residual = std::max(out.residual, std::abs(u[i] - rot * v[i]));
    }
    out.equal = out.residual <= tol;
    return out;
}

/// Reads off the state of the kept qubits when the rest is in a product with them.
///
/// The result uses the kept labels in ascending order as qubits 1..k. Throws NotPure
/// carrying the purity of the reduced state when it is below 1 - 1e-10.
inline StateVector extract_subsystem(const StateVector &state, const std::set<QubitLabel> &keep) {
    if (keep.empty()) {
        throw RangeError("extract_subsystem needs at least one kept qubit");
    }
    const std::size_t n = state.num_qubits();
    std::vector<std::uint64_t> kept_masks;
    std::uint64_t kept_all = 0;
    for (auto q : keep) {
        kept_masks.push_back(state.mask(q));
        kept_all |= kept_masks.back();
    }
    const std::size_t k = keep.size();
    const std::size_t dk = std::size_t{1} << k;
    const std::size_t dr = std::size_t{1} << (n - k);

    // Scatter tables: packed kept/rest index -> bits of the full amplitude index.
    std::vector<std::uint64_t> rest_masks;
    for (std::size_t bit = 0; bit < n; ++bit) {
        std::uint64_t m = std::uint64_t{1} << (n - 1 - bit);
        if (!(kept_all & m)) rest_masks.push_back(m);
    }
    auto scatter = [](const std::vector<std::uint64_t> &masks) {
        std::vector<std::uint64_t> table(std::size_t{1} << masks.size());
        for (std::size_t packed = 0; packed < table.size(); ++packed) {
            std::uint64_t full = 0;
            for (std::size_t j = 0; j < masks.size(); ++j) {
                if (packed & (std::size_t{1} << (masks.size() - 1 - j))) full |= masks[j];
            }
            table[packed] = full;
        }
        return table;
    };
    const auto kept_index = scatter(kept_masks);
    const auto rest_index = scatter(rest_masks);

    // matrix[kept][rest]
    std::vector<Complex> matrix(dk * dr);
    for (std::size_t ki = 0; ki < dk; ++ki) {
        for (std::size_t ri = 0; ri < dr; ++ri) {
            matrix[ki * dr + ri] = state[kept_index[ki] | rest_index[ri]];
        }
    }

    // Purity of the smaller reduced density matrix (both sides share their spectrum).
    const bool kept_side = dk <= dr;
    const std::size_t d = kept_side ? dk : dr;
    const std::size_t other = kept_side ? dr : dk;
    auto at = [&](std::size_t row, std::size_t col) -> const Complex & {
        return kept_side ? matrix[row * dr + col] : matrix[col * dr + row];
    };
    double trace = 0;
    double purity = 0;
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            Complex rho = 0;
            for (std::size_t j = 0; j < other; ++j) {
                rho += at(r, j) * std::conj(at(c, j));
            }
            purity += std::norm(rho);
            if (r == c) trace += rho.real();
        }
    }
    if (trace == 0) {
        throw NormError("cannot extract from the zero vector", 0.0);
    }
    purity /= trace * trace;
    if (purity < 1 - 1e-10) {
        throw NotPure("kept qubits are entangled with the rest (purity " + std::to_string(purity) + ")",
                      purity);
    }

    std::size_t best = 0;
    double best_norm = -1;
    for (std::size_t j = 0; j < dr; ++j) {
        double s = 0;
        for (std::size_t r = 0; r < dk; ++r) {
            s += std::norm(matrix[r * dr + j]);
        }
        if (s > best_norm) {
            best_norm = s;
            best = j;
        }
    }
    std::vector<Complex> out(dk);
    for (std::size_t r = 0; r < dk; ++r) {
        out[r] = matrix[r * dr + best];
    }
    StateVector result(k, std::move(out));
    result.normalize();
    return result;
}

/// ||p|psi> - eigenvalue * |psi>||_inf; zero iff |psi> is an eigenvector of p.
inline double eigenvalue_residual(const StateVector &state, const PauliString &p, int eigenvalue = 1) {
    StateVector image = state;
    apply_pauli_string(image, p);
    double r = 0;
    for (std::size_t i = 0; i < state.dim(); ++i) {
        r = std::max(r, std::abs(image[i] - static_cast<double>(eigenvalue) * state[i]));
    }
    return r;
}

}  // namespace owc
