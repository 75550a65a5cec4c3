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

#include <cmath>
#include <compare>
#include <complex>
#include <cstdint>
#include <string>

#include "owc/errors.hpp"

namespace owc {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 16;

/// Default comparison tolerances.
inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kStabilizerTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-12;

/// 1-based qubit label, as printed next to the cluster vertices.
///
/// In an n-qubit register, label 1 is the most significant bit: the basis state
/// |z_1 z_2 ... z_n> lives at index sum_k z_k * 2^(n-k).
class QubitLabel {
   public:
    constexpr QubitLabel() = default;
    explicit constexpr QubitLabel(int value) : value_(value) {
    }
    constexpr int value() const {
        return value_;
    }
    constexpr auto operator<=>(const QubitLabel &) const = default;

    /// Bit mask of this qubit inside an n-qubit amplitude index.
    constexpr std::uint64_t mask(std::size_t n) const {
        return std::uint64_t{1} << (n - static_cast<std::size_t>(value_));
    }

   private:
    int value_ = 1;
};

inline std::string to_string(QubitLabel q) {
    return std::to_string(q.value());
}

namespace literals {
constexpr QubitLabel operator""_q(unsigned long long v) {
    return QubitLabel(static_cast<int>(v));
}
}  // namespace literals

/// Single-qubit input a|0> + b|1>, normalized.
class InputQubitState {
   public:
    /// Throws NormError unless |a|^2 + |b|^2 = 1 within kNormTolerance.
    InputQubitState(Complex a, Complex b) : a_(a), b_(b) {
        double n2 = std::norm(a) + std::norm(b);
        if (std::abs(n2 - 1.0) > kNormTolerance) {
            throw NormError("input qubit state is not normalized: |a|^2+|b|^2 = " + std::to_string(n2), n2);
        }
    }

    /// Rescales (a, b) to unit norm. Throws NormError for the zero vector.
    static InputQubitState normalized(Complex a, Complex b) {
        double n = std::sqrt(std::norm(a) + std::norm(b));
        if (n == 0) {
            throw NormError("input qubit state has zero norm", 0.0);
        }
        return InputQubitState(a / n, b / n, Unchecked{});
    }

    static InputQubitState zero() {
        return {1.0, 0.0};
    }
    static InputQubitState one() {
        return {0.0, 1.0};
    }
    static InputQubitState plus() {
        return InputQubitState(M_SQRT1_2, M_SQRT1_2, Unchecked{});
    }
    static InputQubitState minus() {
        return InputQubitState(M_SQRT1_2, -M_SQRT1_2, Unchecked{});
    }

    Complex a() const {
        return a_;
    }
    Complex b() const {
        return b_;
    }
    /// The sign-flipped partner a|0> - b|1>.
    InputQubitState starred() const {
        return InputQubitState(a_, -b_, Unchecked{});
    }

    bool operator==(const InputQubitState &) const = default;

   private:
    struct Unchecked {};
    InputQubitState(Complex a, Complex b, Unchecked) : a_(a), b_(b) {
    }

    Complex a_;
    Complex b_;
};

/// Generic bindings used wherever a symbolic input has to be made concrete.
/// Two are needed so that a claim cannot hold by accident of one choice.
inline InputQubitState primary_binding() {
    return {Complex(0.6, 0.0), Complex(0.0, 0.8)};
}
inline InputQubitState secondary_binding() {
    return {Complex(5.0 / 13.0, 0.0), Complex(36.0 / 65.0, 48.0 / 65.0)};
}

}  // namespace owc
