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
#include <set>
#include <string>
#include <vector>

#include "owc/cluster.hpp"
#include "owc/measurement.hpp"

namespace owc::cnot {

// Wires of the 15-qubit CNOT cluster.
inline constexpr QubitLabel kControlIn{1};
inline constexpr QubitLabel kControlOut{7};
inline constexpr QubitLabel kTargetIn{9};
inline constexpr QubitLabel kTargetOut{15};

inline constexpr std::size_t kClusterSize = 15;
inline constexpr std::size_t kMeasuredCount = 13;
inline constexpr std::size_t kBranchCount = std::size_t{1} << kMeasuredCount;

inline const std::set<QubitLabel> &x_measured() {
    static const std::set<QubitLabel> s{QubitLabel(1),  QubitLabel(9),  QubitLabel(10),
                                        QubitLabel(11), QubitLabel(13), QubitLabel(14)};
    return s;
}
inline const std::set<QubitLabel> &y_measured() {
    static const std::set<QubitLabel> s{QubitLabel(2), QubitLabel(3), QubitLabel(4), QubitLabel(5),
                                        QubitLabel(6), QubitLabel(8), QubitLabel(12)};
    return s;
}
inline const std::set<QubitLabel> &outputs() {
    static const std::set<QubitLabel> s{kControlOut, kTargetOut};
    return s;
}
inline const std::set<QubitLabel> &inputs() {
    static const std::set<QubitLabel> s{kControlIn, kTargetIn};
    return s;
}

/// Measurement axis of a measured qubit; throws for the output qubits.
inline Axis axis_of(QubitLabel q) {
    if (x_measured().contains(q)) return Axis::X;
    if (y_measured().contains(q)) return Axis::Y;
    throw RangeError("qubit " + to_string(q) + " is not measured by the CNOT pattern");
}

/// The 13 measured labels in ascending order: 1..6, 8..14. Forced outcome bits
/// are given in this order.
inline std::vector<QubitLabel> outcome_order() {
    std::vector<QubitLabel> out;
    for (int q = 1; q <= static_cast<int>(kClusterSize); ++q) {
        if (!outputs().contains(QubitLabel(q))) out.emplace_back(q);
    }
    return out;
}

/// All 13 non-output qubits, ascending.
inline MeasurementPattern full_pattern() {
    MeasurementPattern p;
    for (auto q : outcome_order()) p.push_back({q, axis_of(q)});
    return p;
}

/// Full pattern minus the two input qubits (11 steps).
inline MeasurementPattern partial_pattern() {
    MeasurementPattern p;
    for (auto q : outcome_order()) {
        if (!inputs().contains(q)) p.push_back({q, axis_of(q)});
    }
    return p;
}

/// Input / measured / output sets are pairwise disjoint and cover 1..15.
inline bool partition_is_valid(const std::set<QubitLabel> &in) {
    std::set<QubitLabel> measured;
    for (auto q : x_measured()) measured.insert(q);
    for (auto q : y_measured()) measured.insert(q);
    std::set<QubitLabel> all;
    std::size_t total = 0;
    for (const auto *s : {&in, &outputs()}) {
        for (auto q : *s) {
            all.insert(q);
            ++total;
        }
    }
    // Input qubits are themselves X-measured, so C_M excludes them.
    for (auto q : measured) {
        if (in.contains(q)) continue;
        all.insert(q);
        ++total;
    }
    bool inputs_measured_in_x = std::all_of(in.begin(), in.end(), [](auto q) { return x_measured().contains(q); });
    return inputs_measured_in_x && total == kClusterSize && all.size() == kClusterSize &&
           all.begin()->value() == 1 && all.rbegin()->value() == static_cast<int>(kClusterSize);
}

inline ClusterAssignment cluster_assignment(const InputQubitState &control, const InputQubitState &target) {
    return {cnot15(), {{kControlIn, control}, {kTargetIn, target}}};
}

/// Exponents of U = X_c^xc X_t^xt Z_c^zc Z_t^zt (all bits).
struct ByproductExponents {
    std::uint8_t x_control = 0;
    std::uint8_t x_target = 0;
    std::uint8_t z_control = 0;
    std::uint8_t z_target = 0;

    /// 4-bit code xc xt zc zt, xc most significant.
    int index() const {
        return x_control << 3 | x_target << 2 | z_control << 1 | z_target;
    }
    static ByproductExponents from_index(int i) {
        return {static_cast<std::uint8_t>(i >> 3 & 1), static_cast<std::uint8_t>(i >> 2 & 1),
                static_cast<std::uint8_t>(i >> 1 & 1), static_cast<std::uint8_t>(i & 1)};
    }
    std::array<std::uint8_t, 4> as_array() const {
        return {x_control, x_target, z_control, z_target};
    }
    std::string to_string() const {
        return "(" + std::to_string(x_control) + "," + std::to_string(x_target) + "," +
               std::to_string(z_control) + "," + std::to_string(z_target) + ")";
    }
    bool operator==(const ByproductExponents &) const = default;
};

inline constexpr std::array<const char *, 4> kExponentNames = {"gamma_x_control", "gamma_x_target",
                                                                "gamma_z_control", "gamma_z_target"};

/// Parity formula: constant + sum of s_q over `labels`.
struct ExponentFormula {
    std::vector<int> labels;
    int constant = 0;

    int evaluate(const OutcomeRecord &rec) const {
        int acc = constant;
        for (int q : labels) acc ^= rec.require_bit(QubitLabel(q));
        return acc & 1;
    }

    std::string to_string() const {
        std::string out;
        for (int q : labels) out += (out.empty() ? "s" : "+s") + std::to_string(q);
        if (constant) out += out.empty() ? "1" : "+1";
        return out.empty() ? "0" : out;
    }
    bool operator==(const ExponentFormula &) const = default;
};

/// Byproduct exponents as functions of the outcome bits, in the order of kExponentNames.
inline const std::array<ExponentFormula, 4> &byproduct_formulas() {
    static const std::array<ExponentFormula, 4> f = {{
        {{2, 3, 5, 6}, 0},
        {{2, 3, 8, 10, 12, 14}, 0},
        {{1, 3, 4, 5, 8, 9, 11}, 1},
        {{9, 11, 13}, 0},
    }};
    return f;
}

/// Throws RangeError if any of the 13 measured bits is missing from the record.
inline ByproductExponents byproduct_from_outcomes(const OutcomeRecord &rec) {
    for (auto q : outcome_order()) rec.require_bit(q);
    const auto &f = byproduct_formulas();
    return {static_cast<std::uint8_t>(f[0].evaluate(rec)), static_cast<std::uint8_t>(f[1].evaluate(rec)),
            static_cast<std::uint8_t>(f[2].evaluate(rec)), static_cast<std::uint8_t>(f[3].evaluate(rec))};
}

/// The byproduct as a Pauli string on the 2-qubit output (control = qubit 1).
inline PauliString byproduct_operator(const ByproductExponents &e) {
    PauliString u;
    auto factor = [&](std::uint8_t bit, PauliLetter letter, int q) {
        if (bit) u *= PauliString::single(letter, QubitLabel(q));
    };
    factor(e.x_control, PauliLetter::X, 1);
    factor(e.x_target, PauliLetter::X, 2);
    factor(e.z_control, PauliLetter::Z, 1);
    factor(e.z_target, PauliLetter::Z, 2);
    return u;
}

/// raw -> U raw with U = X_c^xc X_t^xt Z_c^zc Z_t^zt. Each factor squares to the
/// identity, so this also undoes the byproduct up to a global sign.
inline StateVector apply_byproduct_correction(StateVector raw, const ByproductExponents &e) {
    if (raw.num_qubits() != 2) {
        throw RangeError("byproduct correction acts on 2-qubit outputs, got " + std::to_string(raw.num_qubits()));
    }
    apply_pauli_string(raw, byproduct_operator(e));
    return raw;
}

/// CNOT(c,t)(|control> (x) |target>), control as qubit 1.
inline StateVector cnot_reference(const InputQubitState &control, const InputQubitState &target) {
    StateVector s = make_product_state({control, target});
    std::swap(s[2], s[3]);
    return s;
}

struct CorrectionSearch {
    /// Corrected fidelity for every exponent quadruple, by ByproductExponents::index().
    std::array<double, 16> fidelities{};
    std::vector<ByproductExponents> solutions;

    bool found() const {
        return !solutions.empty();
    }
    bool ambiguous() const {
        return solutions.size() > 1;
    }
    std::optional<ByproductExponents> unique() const {
        if (solutions.size() == 1) return solutions.front();
        return std::nullopt;
    }
    double best_fidelity() const {
        return *std::max_element(fidelities.begin(), fidelities.end());
    }
};

/// Tries all 16 Pauli corrections and keeps those reaching fidelity >= 1 - tol.
inline CorrectionSearch solve_correction(const StateVector &raw, const StateVector &reference,
                                         double tol = kStateTolerance) {
    CorrectionSearch out;
    for (int i = 0; i < 16; ++i) {
        auto e = ByproductExponents::from_index(i);
        double f = fidelity(apply_byproduct_correction(raw, e), reference);
        out.fidelities[static_cast<std::size_t>(i)] = f;
        if (f >= 1 - tol) out.solutions.push_back(e);
    }
    return out;
}

struct CnotRunResult {
    OutcomeRecord outcomes;
    /// Qubits 7 and 15 after all measurements, as (control, target).
    StateVector raw_output{2};
    StateVector reference{2};
    ByproductExponents predicted;
    std::optional<ByproductExponents> solved;
    std::vector<ByproductExponents> all_solutions;
    /// raw_output with the solved correction applied (raw_output if none was found).
    StateVector corrected_output{2};
    double corrected_fidelity = 0;
    /// Fidelity after applying the predicted exponents instead.
    double predicted_fidelity = 0;

    bool ambiguous() const {
        return all_solutions.size() > 1;
    }
};

/// Runs the pattern (default: all 13 measured qubits, ascending) on the cluster
/// with inputs at 1 and 9 and compares with the exact CNOT.
inline CnotRunResult run_cnot(const InputQubitState &control, const InputQubitState &target,
                              const OutcomePolicy &policy, const MeasurementPattern &pattern = full_pattern(),
                              double tol = kStateTolerance) {
    StateVector state = build_cluster_state(cluster_assignment(control, target));
    CnotRunResult r;
    r.outcomes = measure_pattern(state, pattern, policy);
    r.raw_output = extract_subsystem(state, outputs());
    r.reference = cnot_reference(control, target);
    r.predicted = byproduct_from_outcomes(r.outcomes);
    auto search = solve_correction(r.raw_output, r.reference, tol);
    r.all_solutions = search.solutions;
    if (search.found()) {
        r.solved = search.solutions.front();
        r.corrected_output = apply_byproduct_correction(r.raw_output, *r.solved);
    } else {
        r.corrected_output = r.raw_output;
    }
    r.corrected_fidelity = std::clamp(fidelity(r.corrected_output, r.reference), 0.0, 1.0);
    r.predicted_fidelity = std::clamp(search.fidelities[static_cast<std::size_t>(r.predicted.index())], 0.0, 1.0);
    return r;
}

/// One branch of the exhaustive sweep.
struct BranchOutcome {
    /// Outcome bits in outcome_order().
    std::array<std::uint8_t, kMeasuredCount> bits{};
    std::array<double, kMeasuredCount> probabilities{};
    StateVector output{2};

    OutcomeRecord record() const {
        OutcomeRecord rec;
        auto order = outcome_order();
        for (std::size_t j = 0; j < kMeasuredCount; ++j) {
            rec.push_back({order[j], axis_of(order[j]), bits[j], probabilities[j]});
        }
        return rec;
    }
};

/// Outcome bits of branch `index`: the first measured qubit is the most significant bit.
inline std::array<std::uint8_t, kMeasuredCount> branch_bits(std::size_t index) {
    std::array<std::uint8_t, kMeasuredCount> bits{};
    for (std::size_t j = 0; j < kMeasuredCount; ++j) {
        bits[j] = static_cast<std::uint8_t>(index >> (kMeasuredCount - 1 - j) & 1);
    }
    return bits;
}

namespace detail {

// Contracts the qubit at bit position `pos` of an m-qubit vector with <e|.
inline std::vector<Complex> contract(const std::vector<Complex> &src, std::size_t pos, const std::array<Complex, 2> &e) {
    std::vector<Complex> dst(src.size() / 2);
    const std::size_t low = (std::size_t{1} << pos) - 1;
    const Complex c0 = std::conj(e[0]);
    const Complex c1 = std::conj(e[1]);
    for (std::size_t j = 0; j < dst.size(); ++j) {
        std::size_t i0 = ((j & ~low) << 1) | (j & low);
        dst[j] = c0 * src[i0] + c1 * src[i0 | (std::size_t{1} << pos)];
    }
    return dst;
}

inline void sweep_level(const std::vector<Complex> &state, std::size_t depth, std::size_t prefix,
                        const std::vector<QubitLabel> &order, std::vector<int> &remaining,
                        BranchOutcome &scratch, std::vector<BranchOutcome> &out) {
    if (depth == order.size()) {
        scratch.output = StateVector(2, state);
        out[prefix] = scratch;
        return;
    }
    const QubitLabel q = order[depth];
    auto it = std::find(remaining.begin(), remaining.end(), q.value());
    const std::size_t pos = static_cast<std::size_t>(std::distance(it, remaining.end()) - 1);
    remaining.erase(it);
    for (int s = 0; s < 2; ++s) {
        std::vector<Complex> next = contract(state, pos, eigenvector(axis_of(q), s));
        double p = 0;
        for (const auto &a : next) p += std::norm(a);
        scratch.bits[depth] = static_cast<std::uint8_t>(s);
        scratch.probabilities[depth] = p;
        if (p < kImpossibleProbability) {
            throw ImpossibleBranch("sweep reached an impossible branch at qubit " + to_string(q), p, depth);
        }
        const double scale = 1.0 / std::sqrt(p);
        for (auto &a : next) a *= scale;
        sweep_level(next, depth + 1, prefix << 1 | static_cast<std::size_t>(s), order, remaining, scratch, out);
    }
    remaining.insert(std::upper_bound(remaining.begin(), remaining.end(), q.value()), q.value());
}

}  // namespace detail

/// Every one of the 2^13 outcome branches, indexed as in branch_bits().
///
/// Measured qubits are contracted out of the register as soon as they are
/// measured, which leaves the output pair directly; probabilities and outputs
/// agree with run_cnot on the same forced branch.
inline std::vector<BranchOutcome> sweep_branches(const InputQubitState &control, const InputQubitState &target) {
    StateVector start = build_cluster_state(cluster_assignment(control, target));
    std::vector<Complex> amps(start.amplitudes().begin(), start.amplitudes().end());
    std::vector<int> remaining;
    for (int q = 1; q <= static_cast<int>(kClusterSize); ++q) remaining.push_back(q);
    std::vector<BranchOutcome> out(kBranchCount);
    BranchOutcome scratch;
    detail::sweep_level(amps, 0, 0, outcome_order(), remaining, scratch, out);
    return out;
}

/// Parity check attached to the post-measurement state of the partial pattern:
/// op |psi> = (-1)^(constant + sum s_q) |psi>.
struct ProjectedEquation {
    std::string name;
    PauliString op;
    ExponentFormula sign;
};

/// Eigenvalue equations that characterize CNOT between the input (1, 9) and
/// output (7, 15) qubits once the 11 inner qubits have been measured.
inline const std::vector<ProjectedEquation> &projected_equations() {
    static const std::vector<ProjectedEquation> eqs = {
        {"control-x", parse_pauli_string("+X1 X7 X15"), {{3, 4, 5, 8, 13}, 1}},
        {"control-z", parse_pauli_string("+Z1 Z7"), {{2, 3, 5, 6}, 0}},
        {"target-x", parse_pauli_string("+X9 X15"), {{11, 13}, 0}},
        {"target-z", parse_pauli_string("+Z7 Z9 Z15"), {{5, 6, 8, 10, 12, 14}, 0}},
    };
    return eqs;
}

struct ProjectedEquationCheck {
    std::string name;
    PauliString op;
    int eigenvalue = 1;
    double residual = 0;
    bool pass = false;
};

struct ProjectedEquationReport {
    std::vector<ProjectedEquationCheck> checks;
    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.pass; });
    }
    double max_residual() const {
        double r = 0;
        for (const auto &c : checks) r = std::max(r, c.residual);
        return r;
    }
};

/// `state` is the 15-qubit state after the partial pattern (inputs unmeasured).
inline ProjectedEquationReport verify_projected_eigenvalue_equations(const StateVector &state, const OutcomeRecord &rec,
                                                                     double tol = kStateTolerance) {
    if (state.num_qubits() != kClusterSize) {
        throw RangeError("expected the 15-qubit post-measurement state");
    }
    ProjectedEquationReport report;
    for (const auto &eq : projected_equations()) {
        ProjectedEquationCheck c{eq.name, eq.op};
        c.eigenvalue = eq.sign.evaluate(rec) ? -1 : 1;
        c.residual = eigenvalue_residual(state, eq.op, c.eigenvalue);
        c.pass = c.residual <= tol;
        report.checks.push_back(std::move(c));
    }
    return report;
}

struct PartialRun {
    StateVector state{kClusterSize};
    OutcomeRecord outcomes;
};

/// Partial pattern on the cluster; by default qubits 1 and 9 start in |+> like the rest.
inline PartialRun run_partial_pattern(const OutcomePolicy &policy,
                                      const InputQubitState &control = InputQubitState::plus(),
                                      const InputQubitState &target = InputQubitState::plus()) {
    PartialRun r;
    r.state = build_cluster_state(cluster_assignment(control, target));
    r.outcomes = measure_pattern(r.state, partial_pattern(), policy);
    return r;
}

using IntMatrix4 = std::array<std::array<int, 4>, 4>;

struct ConjugationIdentity {
    std::string name;
    /// CNOT * P * CNOT
    IntMatrix4 lhs{};
    IntMatrix4 rhs{};
    bool holds = false;
};

namespace detail {

inline IntMatrix4 imul(const IntMatrix4 &a, const IntMatrix4 &b) {
    IntMatrix4 c{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline IntMatrix4 ikron(const std::array<std::array<int, 2>, 2> &a, const std::array<std::array<int, 2>, 2> &b) {
    IntMatrix4 c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) c[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
    return c;
}

}  // namespace detail

/// Exact integer checks of how CNOT(c,t) conjugates X and Z on either qubit.
inline std::vector<ConjugationIdentity> verify_cnot_conjugation_identities() {
    using M2 = std::array<std::array<int, 2>, 2>;
    const M2 id{{{1, 0}, {0, 1}}};
    const M2 x{{{0, 1}, {1, 0}}};
    const M2 z{{{1, 0}, {0, -1}}};
    const IntMatrix4 cnot{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}}};
    struct Case {
        const char *name;
        IntMatrix4 in;
        IntMatrix4 out;
    };
    const std::vector<Case> cases = {
        {"X_c -> X_c X_t", detail::ikron(x, id), detail::ikron(x, x)},
        {"Z_c -> Z_c", detail::ikron(z, id), detail::ikron(z, id)},
        {"X_t -> X_t", detail::ikron(id, x), detail::ikron(id, x)},
        {"Z_t -> Z_c Z_t", detail::ikron(id, z), detail::ikron(z, z)},
    };
    std::vector<ConjugationIdentity> out;
    for (const auto &c : cases) {
        ConjugationIdentity r{c.name, detail::imul(detail::imul(cnot, c.in), cnot), c.out};
        r.holds = r.lhs == r.rhs;
        out.push_back(r);
    }
    return out;
}

}  // namespace owc::cnot
