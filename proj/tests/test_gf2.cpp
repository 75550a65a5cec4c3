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

#include <gtest/gtest.h>

#include "gen.hpp"
#include "owc/gf2.hpp"

using namespace owc;

namespace {

std::vector<std::vector<std::uint8_t>> all_inputs(std::size_t nvars) {
    std::vector<std::vector<std::uint8_t>> xs;
    for (std::size_t m = 0; m < (std::size_t{1} << nvars); ++m) {
        std::vector<std::uint8_t> x(nvars);
        for (std::size_t j = 0; j < nvars; ++j) x[j] = static_cast<std::uint8_t>(m >> j & 1);
        xs.push_back(x);
    }
    return xs;
}

}  // namespace

TEST(Gf2Property, RecoversRandomAffineForms) {
    gen::Rng rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t nvars = 1 + static_cast<std::size_t>(rng.below(13));
        gf2::AffineForm truth;
        for (std::size_t j = 0; j < nvars; ++j) truth.coefficients.push_back(static_cast<std::uint8_t>(rng.bit()));
        truth.constant = static_cast<std::uint8_t>(rng.bit());
        // Random sample that is large enough to be full rank with high probability.
        std::vector<std::vector<std::uint8_t>> xs;
        std::vector<std::uint8_t> ys;
        for (std::size_t i = 0; i < 4 * nvars + 20; ++i) {
            std::vector<std::uint8_t> x(nvars);
            for (auto &b : x) b = static_cast<std::uint8_t>(rng.bit());
            ys.push_back(static_cast<std::uint8_t>(truth.evaluate(x)));
            xs.push_back(std::move(x));
        }
        auto fit = gf2::fit_affine(xs, ys);
        EXPECT_TRUE(fit.consistent());
        EXPECT_EQ(fit.violations, 0u);
        if (fit.unique()) {
            EXPECT_EQ(fit.form, truth);
        }
    }
}

TEST(Gf2, ExhaustiveInputsAreUnique) {
    gf2::AffineForm truth{{1, 0, 1, 1, 0}, 1};
    auto xs = all_inputs(5);
    std::vector<std::uint8_t> ys;
    for (const auto &x : xs) ys.push_back(static_cast<std::uint8_t>(truth.evaluate(x)));
    auto fit = gf2::fit_affine(xs, ys);
    EXPECT_TRUE(fit.unique());
    EXPECT_EQ(fit.rank, 6u);
    EXPECT_EQ(fit.form, truth);
}

TEST(Gf2, NonAffineDataIsReported) {
    // x0 AND x1 is not affine.
    auto xs = all_inputs(2);
    std::vector<std::uint8_t> ys;
    for (const auto &x : xs) ys.push_back(static_cast<std::uint8_t>(x[0] & x[1]));
    auto fit = gf2::fit_affine(xs, ys);
    EXPECT_FALSE(fit.consistent());
    EXPECT_GT(fit.conflicts, 0u);
    EXPECT_GT(fit.violations, 0u);
}

TEST(Gf2, UnderdeterminedSetsFreeVariablesToZero) {
    std::vector<std::vector<std::uint8_t>> xs{{1, 1, 0}};
    std::vector<std::uint8_t> ys{1};
    auto fit = gf2::fit_affine(xs, ys);
    EXPECT_TRUE(fit.consistent());
    EXPECT_FALSE(fit.unique());
    EXPECT_EQ(fit.violations, 0u);
}

TEST(Gf2, ShapeErrors) {
    const std::vector<std::uint8_t> two{1, 0};
    EXPECT_THROW(gf2::fit_affine({{1, 0}}, two), RangeError);
    EXPECT_THROW(gf2::fit_affine({{1, 0}, {1}}, two), RangeError);
}
