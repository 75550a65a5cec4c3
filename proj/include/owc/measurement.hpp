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
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "owc/statevector.hpp"

namespace owc {

enum class Axis : std::uint8_t { X, Y, Z };

inline char to_char(Axis a) {
    return "XYZ"[static_cast<int>(a)];
}

/// Eigenvector of the Pauli `axis` with eigenvalue (-1)^s.
inline std::array<Complex, 2> eigenvector(Axis axis, int s) {
    const double sign = s ? -1.0 : 1.0;
    switch (axis) {
        case Axis::X: return {Complex(M_SQRT1_2), Complex(sign * M_SQRT1_2)};
        case Axis::Y: return {Complex(M_SQRT1_2), Complex(0, sign * M_SQRT1_2)};
        case Axis::Z: break;
    }
    return s ? std::array<Complex, 2>{0.0, 1.0} : std::array<Complex, 2>{1.0, 0.0};
}

/// Outcomes whose Born probability is below this are treated as impossible.
inline constexpr double kImpossibleProbability = 1e-12;

/// Born probabilities (p(s=0), p(s=1)) for measuring q along axis.
inline std::array<double, 2> outcome_probabilities(const StateVector &state, QubitLabel q, Axis axis) {
    const std::uint64_t bit = state.mask(q);
    std::array<double, 2> p{0, 0};
    for (int s = 0; s < 2; ++s) {
        auto e = eigenvector(axis, s);
        for (std::size_t i = 0; i < state.dim(); ++i) {
            if (i & bit) continue;
            p[s] += std::norm(std::conj(e[0]) * state[i] + std::conj(e[1]) * state[i | bit]);
        }
    }
    return p;
}

struct MeasurementOutcome {
    int s = 0;
    double probability = 0;
};

namespace detail {

// Projects q onto the (-1)^s eigenvector and renormalizes; returns the Born probability.
inline double project(StateVector &state, QubitLabel q, Axis axis, int s, std::size_t step) {
    const std::uint64_t bit = state.mask(q);
    const auto e = eigenvector(axis, s);
    auto amps = state.amplitudes();
    double p = 0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & bit) continue;
        p += std::norm(std::conj(e[0]) * amps[i] + std::conj(e[1]) * amps[i | bit]);
    }
    if (p < kImpossibleProbability) {
        throw ImpossibleBranch("impossible branch: outcome " + std::to_string(s) + " of " + to_char(axis) +
                                   " on qubit " + to_string(q) + " has probability " + std::to_string(p),
                               p, step);
    }
    const double scale = 1.0 / std::sqrt(p);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & bit) continue;
        Complex c = scale * (std::conj(e[0]) * amps[i] + std::conj(e[1]) * amps[i | bit]);
        amps[i] = e[0] * c;
        amps[i | bit] = e[1] * c;
    }
    return p;
}

}  // namespace detail

/// Projects q onto the eigenvector of outcome s; the qubit stays in the register.
/// Throws ImpossibleBranch when p(s) < 1e-12, leaving the state untouched.
inline MeasurementOutcome measure_forced(StateVector &state, QubitLabel q, Axis axis, int s) {
    if (s != 0 && s != 1) {
        throw RangeError("outcome bit must be 0 or 1, got " + std::to_string(s));
    }
    return {s, detail::project(state, q, axis, s, 0)};
}

/// Deterministic source of measurement randomness: a 64-bit Mersenne twister
/// (std::mt19937_64) whose outputs are mapped to doubles as (x >> 11) * 2^-53.
class OutcomeSampler {
   public:
    explicit OutcomeSampler(std::uint64_t seed) : engine_(seed) {
    }
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }
    std::uint64_t next_u64() {
        return engine_();
    }
    int next_bit() {
        return static_cast<int>(engine_() >> 63);
    }
    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound));
    }

   private:
    std::mt19937_64 engine_;
};

inline MeasurementOutcome measure_sampled(StateVector &state, QubitLabel q, Axis axis, OutcomeSampler &rng) {
    auto p = outcome_probabilities(state, q, axis);
    int s = rng.uniform() < p[0] / (p[0] + p[1]) ? 0 : 1;
    if (p[s] < kImpossibleProbability) s ^= 1;
    return {s, detail::project(state, q, axis, s, 0)};
}

struct MeasurementStep {
    QubitLabel qubit;
    Axis axis;
    bool operator==(const MeasurementStep &) const = default;
};

using MeasurementPattern = std::vector<MeasurementStep>;

/// One bit per pattern step, in pattern order.
struct ForcedOutcomes {
    std::vector<int> bits;
};

struct SampledOutcomes {
    std::uint64_t seed = 0;
};

using OutcomePolicy = std::variant<ForcedOutcomes, SampledOutcomes>;

struct OutcomeEntry {
    QubitLabel qubit;
    Axis axis;
    int s = 0;
    double probability = 0;
    bool operator==(const OutcomeEntry &) const = default;
};

class OutcomeRecord {
   public:
    OutcomeRecord() = default;
    explicit OutcomeRecord(std::vector<OutcomeEntry> entries) : entries_(std::move(entries)) {
    }

    const std::vector<OutcomeEntry> &entries() const {
        return entries_;
    }
    std::size_t size() const {
        return entries_.size();
    }
    bool empty() const {
        return entries_.empty();
    }
    void push_back(OutcomeEntry e) {
        entries_.push_back(e);
    }

    std::optional<int> bit(QubitLabel q) const {
        for (const auto &e : entries_) {
            if (e.qubit == q) return e.s;
        }
        return std::nullopt;
    }

    /// Throws RangeError naming the qubit when no outcome was recorded for it.
    int require_bit(QubitLabel q) const {
        auto b = bit(q);
        if (!b) throw RangeError("missing outcome bit s_" + to_string(q));
        return *b;
    }

    /// Product of the per-step probabilities.
    double joint_probability() const {
        double p = 1;
        for (const auto &e : entries_) p *= e.probability;
        return p;
    }

    /// Outcome bits in record order, e.g. "0100...".
    std::string bit_string() const {
        std::string out;
        for (const auto &e : entries_) out += static_cast<char>('0' + e.s);
        return out;
    }

    bool operator==(const OutcomeRecord &) const = default;

   private:
    std::vector<OutcomeEntry> entries_;
};

/// Measures the pattern in order. On ImpossibleBranch the exception's step() is
/// the index of the failing pattern entry.
inline OutcomeRecord measure_pattern(StateVector &state, const MeasurementPattern &pattern,
                                     const OutcomePolicy &policy) {
    std::set<QubitLabel> seen;
    for (const auto &step : pattern) {
        state.check_label(step.qubit);
        if (!seen.insert(step.qubit).second) {
            throw RangeError("qubit " + to_string(step.qubit) + " appears twice in the pattern");
        }
    }
    OutcomeRecord record;
    if (const auto *forced = std::get_if<ForcedOutcomes>(&policy)) {
        if (forced->bits.size() != pattern.size()) {
            throw RangeError("expected " + std::to_string(pattern.size()) + " outcome bits, got " +
                             std::to_string(forced->bits.size()));
        }
        for (std::size_t i = 0; i < pattern.size(); ++i) {
            const auto &step = pattern[i];
            int s = forced->bits[i];
            if (s != 0 && s != 1) throw RangeError("outcome bit must be 0 or 1, got " + std::to_string(s));
            double p = detail::project(state, step.qubit, step.axis, s, i);
            record.push_back({step.qubit, step.axis, s, p});
        }
    } else {
        OutcomeSampler rng(std::get<SampledOutcomes>(policy).seed);
        for (const auto &step : pattern) {
            auto m = measure_sampled(state, step.qubit, step.axis, rng);
            record.push_back({step.qubit, step.axis, m.s, m.probability});
        }
    }
    return record;
}

}  // namespace owc
