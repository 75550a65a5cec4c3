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

#include <string>
#include <vector>

#include "oracle.hpp"
#include "owc/pauli.hpp"
#include "owc/statevector.hpp"

namespace testutil {

inline oracle::Vec to_vec(const owc::StateVector &s) {
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

inline owc::StateVector from_vec(const oracle::Vec &v) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < v.size()) ++n;
    return owc::StateVector(n, std::vector<owc::Complex>(v.begin(), v.end()));
}

/// Library Pauli string for letters like "XIZ" (qubit 1 first).
inline owc::PauliString pauli_from_letters(const std::string &letters, owc::Phase phase = {}) {
    owc::PauliString p;
    for (std::size_t k = 0; k < letters.size(); ++k) {
        auto l = letters[k] == 'X'   ? owc::PauliLetter::X
                 : letters[k] == 'Y' ? owc::PauliLetter::Y
                 : letters[k] == 'Z' ? owc::PauliLetter::Z
                                     : owc::PauliLetter::I;
        p.set(owc::QubitLabel(static_cast<int>(k + 1)), l);
    }
    p.set_phase(phase);
    return p;
}

inline double max_diff(const oracle::Vec &a, const oracle::Vec &b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace testutil
