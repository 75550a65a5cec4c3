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

#include <vector>

#include "owc/pauli.hpp"
#include "owc/types.hpp"

namespace owc {

/// Small square complex matrix for operator-level identity checks (n <= 5 qubits).
class DenseMatrix {
   public:
    explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    }

    static DenseMatrix identity(std::size_t dim) {
        DenseMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t dim() const {
        return dim_;
    }
    Complex &operator()(std::size_t r, std::size_t c) {
        return data_[r * dim_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return data_[r * dim_ + c];
    }

    DenseMatrix operator*(const DenseMatrix &o) const {
        DenseMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t k = 0; k < dim_; ++k) {
                Complex a = (*this)(r, k);
                if (a == Complex{}) continue;
                for (std::size_t c = 0; c < dim_; ++c) out(r, c) += a * o(k, c);
            }
        return out;
    }
    DenseMatrix operator+(const DenseMatrix &o) const {
        DenseMatrix out(*this);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
        return out;
    }
    DenseMatrix operator-(const DenseMatrix &o) const {
        DenseMatrix out(*this);
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
        return out;
    }
    DenseMatrix scaled(Complex s) const {
        DenseMatrix out(*this);
        for (auto &x : out.data_) x *= s;
        return out;
    }

    DenseMatrix adjoint() const {
        DenseMatrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    DenseMatrix kron(const DenseMatrix &o) const {
        DenseMatrix out(dim_ * o.dim_);
        for (std::size_t r1 = 0; r1 < dim_; ++r1)
            for (std::size_t c1 = 0; c1 < dim_; ++c1)
                for (std::size_t r2 = 0; r2 < o.dim_; ++r2)
                    for (std::size_t c2 = 0; c2 < o.dim_; ++c2)
                        out(r1 * o.dim_ + r2, c1 * o.dim_ + c2) = (*this)(r1, c1) * o(r2, c2);
        return out;
    }

    double max_abs_difference(const DenseMatrix &o) const {
        double r = 0;
        for (std::size_t i = 0; i < data_.size(); ++i) r = std::max(r, std::abs(data_[i] - o.data_[i]));
        return r;
    }

   private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

inline DenseMatrix pauli_matrix(PauliLetter p) {
    DenseMatrix m(2);
    switch (p) {
        case PauliLetter::I: m(0, 0) = 1; m(1, 1) = 1; break;
        case PauliLetter::X: m(0, 1) = 1; m(1, 0) = 1; break;
        case PauliLetter::Y: m(0, 1) = Complex(0, -1); m(1, 0) = Complex(0, 1); break;
        case PauliLetter::Z: m(0, 0) = 1; m(1, 1) = -1; break;
    }
    return m;
}

/// Full 2^n operator of a Pauli string, qubit 1 as the leftmost tensor factor.
inline DenseMatrix dense_pauli_string(const PauliString &p, std::size_t n) {
    if (static_cast<std::size_t>(p.max_label()) > n) {
        throw RangeError("Pauli string " + p.to_string() + " does not fit " + std::to_string(n) + " qubits");
    }
    DenseMatrix out = DenseMatrix::identity(1);
    for (std::size_t q = 1; q <= n; ++q) {
        out = out.kron(pauli_matrix(p.letter(QubitLabel(static_cast<int>(q)))));
    }
    return out.scaled(p.phase().value());
}

/// S^(ab) written as the Pauli sum (1 + Z_a + Z_b - Z_a Z_b) / 2.
inline DenseMatrix dense_controlled_phase(QubitLabel a, QubitLabel b, std::size_t n) {
    std::size_t dim = std::size_t{1} << n;
    auto za = dense_pauli_string(PauliString::single(PauliLetter::Z, a), n);
    auto zb = dense_pauli_string(PauliString::single(PauliLetter::Z, b), n);
    return (DenseMatrix::identity(dim) + za + zb - za * zb).scaled(0.5);
}

}  // namespace owc
