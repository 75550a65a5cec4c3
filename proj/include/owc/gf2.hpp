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

#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "owc/errors.hpp"

namespace owc::gf2 {

/// f(x) = constant + sum_j coefficients[j] * x_j  (mod 2)
struct AffineForm {
    std::vector<std::uint8_t> coefficients;
    std::uint8_t constant = 0;

    int evaluate(std::span<const std::uint8_t> x) const {
        int acc = constant;
        for (std::size_t j = 0; j < coefficients.size(); ++j) acc ^= coefficients[j] & x[j];
        return acc & 1;
    }

    bool operator==(const AffineForm &) const = default;
};

struct AffineFit {
    AffineForm form;
    std::size_t equations = 0;
    /// Rank of the [x | 1] system; equals num_vars + 1 when the form is unique.
    std::size_t rank = 0;
    /// Equations that reduced to 0 = 1 against the ones before them.
    std::size_t conflicts = 0;
    /// Equations the returned form gets wrong.
    std::size_t violations = 0;

    bool consistent() const {
        return conflicts == 0;
    }
    bool unique() const {
        return rank == form.coefficients.size() + 1;
    }
};

/// Least-assumption affine fit over GF(2): every row of `inputs` is one equation
/// with right-hand side `outputs[row]`. Free variables are set to zero.
inline AffineFit fit_affine(const std::vector<std::vector<std::uint8_t>> &inputs,
                            std::span<const std::uint8_t> outputs) {
    if (inputs.size() != outputs.size()) {
        throw RangeError("fit_affine: " + std::to_string(inputs.size()) + " inputs vs " +
                         std::to_string(outputs.size()) + " outputs");
    }
    const std::size_t nvars = inputs.empty() ? 0 : inputs.front().size();
    if (nvars > 62) {
        throw RangeError("fit_affine supports at most 62 variables");
    }
    // Bit j <-> x_j, bit nvars <-> the constant term.
    const std::size_t width = nvars + 1;
    std::vector<std::uint64_t> pivot_row(width, 0);
    std::vector<std::uint8_t> pivot_rhs(width, 0);
    std::vector<bool> has_pivot(width, false);

    AffineFit fit;
    fit.equations = inputs.size();
    for (std::size_t r = 0; r < inputs.size(); ++r) {
        if (inputs[r].size() != nvars) {
            throw RangeError("fit_affine: ragged input rows");
        }
        std::uint64_t row = std::uint64_t{1} << nvars;
        for (std::size_t j = 0; j < nvars; ++j) {
            if (inputs[r][j] & 1) row |= std::uint64_t{1} << j;
        }
        std::uint8_t rhs = outputs[r] & 1;
        while (row) {
            std::size_t top = 63 - static_cast<std::size_t>(std::countl_zero(row));
            if (!has_pivot[top]) {
                has_pivot[top] = true;
                pivot_row[top] = row;
                pivot_rhs[top] = rhs;
                ++fit.rank;
                break;
            }
            row ^= pivot_row[top];
            rhs ^= pivot_rhs[top];
        }
        if (!row && rhs) ++fit.conflicts;
    }

    std::vector<std::uint8_t> value(width, 0);
    for (std::size_t b = 0; b < width; ++b) {
        if (!has_pivot[b]) continue;
        std::uint8_t v = pivot_rhs[b];
        for (std::size_t lower = 0; lower < b; ++lower) {
            if (pivot_row[b] >> lower & 1) v ^= value[lower];
        }
        value[b] = v;
    }
    // The constant column is multiplied by 1 in every equation, so its "value" is the constant.
    fit.form.coefficients.assign(value.begin(), value.begin() + static_cast<std::ptrdiff_t>(nvars));
    fit.form.constant = value[nvars];
    for (std::size_t r = 0; r < inputs.size(); ++r) {
        if (fit.form.evaluate(inputs[r]) != (outputs[r] & 1)) ++fit.violations;
    }
    return fit;
}

}  // namespace owc::gf2
