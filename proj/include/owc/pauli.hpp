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

#include <cctype>
#include <map>
#include <string>
#include <utility>

#include "owc/types.hpp"

namespace owc {

enum class PauliLetter : std::uint8_t { I, X, Y, Z };

inline char to_char(PauliLetter p) {
    return "IXYZ"[static_cast<int>(p)];
}

/// Phase factor i^k for k in {0,1,2,3}, i.e. one of +1, +i, -1, -i.
class Phase {
   public:
    constexpr Phase() = default;
    /// i^power
    static constexpr Phase i_pow(int power) {
        Phase p;
        p.power_ = ((power % 4) + 4) % 4;
        return p;
    }
    static constexpr Phase plus_one() {
        return i_pow(0);
    }
    static constexpr Phase minus_one() {
        return i_pow(2);
    }

    constexpr int power() const {
        return power_;
    }
    Complex value() const {
        constexpr double re[] = {1, 0, -1, 0};
        constexpr double im[] = {0, 1, 0, -1};
        return {re[power_], im[power_]};
    }
    constexpr Phase operator*(Phase o) const {
        return i_pow(power_ + o.power_);
    }
    constexpr bool operator==(const Phase &) const = default;

    std::string to_string() const {
        constexpr const char *names[] = {"+", "+i", "-", "-i"};
        return names[power_];
    }

   private:
    int power_ = 0;
};

namespace detail {

/// Product of two single-qubit Paulis: a*b = i^power * letter.
constexpr std::pair<int, PauliLetter> multiply_letters(PauliLetter a, PauliLetter b) {
    using enum PauliLetter;
    if (a == I) return {0, b};
    if (b == I) return {0, a};
    if (a == b) return {0, I};
    // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
    if (a == X && b == Y) return {1, Z};
    if (a == Y && b == Z) return {1, X};
    if (a == Z && b == X) return {1, Y};
    if (a == Y && b == X) return {3, Z};
    if (a == Z && b == Y) return {3, X};
    return {3, Y};  // X*Z
}

}  // namespace detail

/// A phase times a tensor product of single-qubit Paulis over labeled qubits.
/// Only non-identity letters are stored.
class PauliString {
   public:
    PauliString() = default;
    PauliString(Phase phase, std::map<QubitLabel, PauliLetter> letters) : phase_(phase) {
        for (auto [q, p] : letters) {
            set(q, p);
        }
    }

    static PauliString single(PauliLetter letter, QubitLabel q) {
        PauliString s;
        s.set(q, letter);
        return s;
    }

    Phase phase() const {
        return phase_;
    }
    void set_phase(Phase p) {
        phase_ = p;
    }

    PauliLetter letter(QubitLabel q) const {
        auto it = letters_.find(q);
        return it == letters_.end() ? PauliLetter::I : it->second;
    }

    void set(QubitLabel q, PauliLetter p) {
        if (q.value() < 1) {
            throw RangeError("qubit label must be >= 1, got " + owc::to_string(q));
        }
        if (p == PauliLetter::I) {
            letters_.erase(q);
        } else {
            letters_[q] = p;
        }
    }

    const std::map<QubitLabel, PauliLetter> &letters() const {
        return letters_;
    }

    /// Largest label carrying a non-identity letter, 0 for the identity string.
    int max_label() const {
        return letters_.empty() ? 0 : letters_.rbegin()->first.value();
    }

    bool is_identity_letters() const {
        return letters_.empty();
    }

    bool commutes_with(const PauliString &other) const {
        int anti = 0;
        for (auto [q, p] : letters_) {
            PauliLetter o = other.letter(q);
            if (o != PauliLetter::I && o != p) {
                anti ^= 1;
            }
        }
        return anti == 0;
    }

    PauliString operator*(const PauliString &rhs) const {
        PauliString out;
        out.phase_ = phase_ * rhs.phase_;
        out.letters_ = letters_;
        for (auto [q, p] : rhs.letters_) {
            auto [power, letter] = detail::multiply_letters(out.letter(q), p);
            out.phase_ = out.phase_ * Phase::i_pow(power);
            out.set(q, letter);
        }
        return out;
    }

    PauliString &operator*=(const PauliString &rhs) {
        return *this = *this * rhs;
    }

    bool operator==(const PauliString &) const = default;

    /// e.g. "-X1 Y3 Z7", "+iY2", "+I".
    std::string to_string() const {
        std::string out = phase_.to_string();
        if (letters_.empty()) {
            return out + "I";
        }
        bool first = true;
        for (auto [q, p] : letters_) {
            if (!first) out += ' ';
            first = false;
            out += to_char(p);
            out += std::to_string(q.value());
        }
        return out;
    }

   private:
    Phase phase_;
    std::map<QubitLabel, PauliLetter> letters_;
};

inline PauliString multiply_pauli_strings(const PauliString &p, const PauliString &q) {
    return p * q;
}

/// Parses the to_string() format ("-X1 Y3", "+iZ2", "+I").
inline PauliString parse_pauli_string(const std::string &text) {
    std::size_t pos = 0;
    int power = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        power = text[pos] == '-' ? 2 : 0;
        ++pos;
    }
    if (pos < text.size() && text[pos] == 'i') {
        power += 1;
        ++pos;
    }
    PauliString out;
    out.set_phase(Phase::i_pow(power));
    while (pos < text.size()) {
        char c = text[pos];
        if (c == ' ') {
            ++pos;
            continue;
        }
        PauliLetter letter;
        switch (c) {
            case 'I': letter = PauliLetter::I; break;
            case 'X': letter = PauliLetter::X; break;
            case 'Y': letter = PauliLetter::Y; break;
            case 'Z': letter = PauliLetter::Z; break;
            default: throw ParseError("bad Pauli letter '" + std::string(1, c) + "' in \"" + text + "\"");
        }
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
        }
        if (start == pos) {
            if (letter == PauliLetter::I) continue;
            throw ParseError("missing qubit label in \"" + text + "\"");
        }
        QubitLabel q(std::stoi(text.substr(start, pos - start)));
        auto [extra, merged] = detail::multiply_letters(out.letter(q), letter);
        out.set_phase(out.phase() * Phase::i_pow(extra));
        out.set(q, merged);
    }
    return out;
}

}  // namespace owc
