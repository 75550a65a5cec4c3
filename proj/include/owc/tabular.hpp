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
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "owc/statevector.hpp"

namespace owc {

/// Per-qubit entries of a state table.
enum class Symbol : std::uint8_t { Zero, One, Plus, Minus, PsiIn, PsiInStar };

inline std::string_view token(Symbol s) {
    constexpr std::array<std::string_view, 6> names = {"0", "1", "+", "-", "psi", "psi*"};
    return names[static_cast<std::size_t>(s)];
}

inline std::optional<Symbol> symbol_from_token(std::string_view t) {
    for (int i = 0; i < 6; ++i) {
        if (token(static_cast<Symbol>(i)) == t) return static_cast<Symbol>(i);
    }
    return std::nullopt;
}

struct TableRow {
    int sign = 1;
    std::vector<Symbol> cells;
    auto operator<=>(const TableRow &) const = default;
};

/// A state written as a sign-weighted sum of product terms, one term per row.
/// Columns holding psi / psi* need a bound input state before expansion.
struct Table {
    std::vector<int> labels;
    std::vector<TableRow> rows;
    /// Input bound to each psi-carrying column, keyed by column label.
    std::map<int, InputQubitState> inputs;

    std::size_t num_qubits() const {
        return labels.size();
    }
    bool operator==(const Table &) const = default;
};

class NotTabular : public Error {
   public:
    NotTabular(const std::string &what, std::vector<std::pair<double, std::size_t>> histogram)
        : Error(what), histogram_(std::move(histogram)) {
    }
    /// (coefficient magnitude, count) over the nonzero coefficients.
    const std::vector<std::pair<double, std::size_t>> &histogram() const {
        return histogram_;
    }

   private:
    std::vector<std::pair<double, std::size_t>> histogram_;
};

class DegenerateInputPair : public Error {
   public:
    using Error::Error;
};

namespace detail {

inline const InputQubitState &bound_input(const std::map<int, InputQubitState> &inputs, int label) {
    auto it = inputs.find(label);
    if (it == inputs.end()) {
        throw RangeError("column " + std::to_string(label) + " uses psi but has no bound input");
    }
    return it->second;
}

inline std::array<Complex, 2> symbol_vector(Symbol s, const std::map<int, InputQubitState> &inputs, int label) {
    switch (s) {
        case Symbol::Zero: return {1.0, 0.0};
        case Symbol::One: return {0.0, 1.0};
        case Symbol::Plus: return {M_SQRT1_2, M_SQRT1_2};
        case Symbol::Minus: return {M_SQRT1_2, -M_SQRT1_2};
        case Symbol::PsiIn: {
            const auto &in = bound_input(inputs, label);
            return {in.a(), in.b()};
        }
        case Symbol::PsiInStar: {
            const auto &in = bound_input(inputs, label);
            return {in.a(), -in.b()};
        }
    }
    return {};
}

inline void check_shape(const Table &t) {
    if (t.labels.empty() || t.labels.size() > kMaxQubits) {
        throw RangeError("table must have 1.." + std::to_string(kMaxQubits) + " columns");
    }
    std::set<int> distinct(t.labels.begin(), t.labels.end());
    if (distinct.size() != t.labels.size()) {
        throw RangeError("duplicate column label");
    }
    std::set<std::vector<Symbol>> seen;
    for (const auto &r : t.rows) {
        if (r.cells.size() != t.labels.size()) {
            throw RangeError("row has " + std::to_string(r.cells.size()) + " cells, table has " +
                             std::to_string(t.labels.size()) + " columns");
        }
        if (r.sign != 1 && r.sign != -1) {
            throw RangeError("row sign must be +1 or -1");
        }
        if (!seen.insert(r.cells).second) {
            throw RangeError("duplicate row in table");
        }
    }
}

}  // namespace detail

struct Expansion {
    StateVector state;
    /// Factor that normalizes the printed (unnormalized) sum.
    double coefficient = 1;
};

/// Sums sign * (tensor product of cell states) over the rows, then normalizes.
inline Expansion expand(const Table &t) {
    detail::check_shape(t);
    if (t.rows.empty()) {
        throw RangeError("cannot expand an empty table");
    }
    const std::size_t n = t.num_qubits();
    std::vector<Complex> sum(std::size_t{1} << n);
    for (const auto &row : t.rows) {
        std::vector<Complex> term{static_cast<double>(row.sign)};
        for (std::size_t k = 0; k < n; ++k) {
            auto v = detail::symbol_vector(row.cells[k], t.inputs, t.labels[k]);
            std::vector<Complex> next(term.size() * 2);
            for (std::size_t i = 0; i < term.size(); ++i) {
                next[2 * i] = term[i] * v[0];
                next[2 * i + 1] = term[i] * v[1];
            }
            term = std::move(next);
        }
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += term[i];
    }
    StateVector state(n, std::move(sum));
    double norm = state.normalize();
    return {std::move(state), 1.0 / norm};
}

enum class ColumnBasis : std::uint8_t {
    Computational,  // {0, 1}
    Hadamard,       // {+, -}
    InputPair,      // {psi, psi*}
};

/// Which symbol pair each column is written in.
struct BasisAssignment {
    std::vector<ColumnBasis> columns;
    /// Inputs for InputPair columns, keyed by column label.
    std::map<int, InputQubitState> inputs;
};

inline constexpr double kZeroCoefficient = 1e-12;

/// Rewrites `v` in the per-column symbol pairs of `asg` and checks that it is a
/// table: every nonzero coefficient is +c or -c for one common c (up to a global
/// phase fixed by the first nonzero coefficient, which becomes a '+' row).
///
/// The {psi, psi*} pair is not orthogonal, so each column is changed with the
/// inverse of its 2x2 basis matrix rather than projected. Throws
/// DegenerateInputPair when a*b = 0 and NotTabular when magnitudes or signs do
/// not fit a single c.
inline Table decompose(const StateVector &v, const std::vector<int> &labels, const BasisAssignment &asg,
                       double tol = kStateTolerance) {
    const std::size_t n = v.num_qubits();
    if (labels.size() != n || asg.columns.size() != n) {
        throw RangeError("decompose: " + std::to_string(n) + "-qubit state but " + std::to_string(labels.size()) +
                         " labels and " + std::to_string(asg.columns.size()) + " column bases");
    }
    Table out;
    out.labels = labels;

    StateVector coeffs = v;
    for (std::size_t k = 0; k < n; ++k) {
        const QubitLabel q(static_cast<int>(k + 1));
        switch (asg.columns[k]) {
            case ColumnBasis::Computational: break;
            case ColumnBasis::Hadamard:
                apply_single_qubit_gate(coeffs, q, Matrix2{{{M_SQRT1_2, M_SQRT1_2}, {M_SQRT1_2, -M_SQRT1_2}}});
                break;
            case ColumnBasis::InputPair: {
                const auto &in = detail::bound_input(asg.inputs, labels[k]);
                const Complex a = in.a();
                const Complex b = in.b();
                if (std::abs(a) < kZeroCoefficient || std::abs(b) < kZeroCoefficient) {
                    throw DegenerateInputPair("degenerate input pair on column " + std::to_string(labels[k]) +
                                              ": psi and psi* are parallel when a*b = 0");
                }
                // [[a, a], [b, -b]]^-1
                const Complex det = -2.0 * a * b;
                apply_single_qubit_gate(coeffs, q, Matrix2{{{-b / det, -a / det}, {-b / det, a / det}}});
                out.inputs.emplace(labels[k], in);
                break;
            }
        }
    }

    std::optional<Complex> reference;
    std::map<long long, std::size_t> histogram;
    bool tabular = true;
    for (std::size_t i = 0; i < coeffs.dim(); ++i) {
        const Complex c = coeffs[i];
        if (std::abs(c) < kZeroCoefficient) continue;
        ++histogram[std::llround(std::abs(c) * 1e9)];
        int sign = 1;
        if (!reference) {
            reference = c;
        } else if (std::abs(c - *reference) <= tol) {
            sign = 1;
        } else if (std::abs(c + *reference) <= tol) {
            sign = -1;
        } else {
            tabular = false;
            continue;
        }
        TableRow row{sign, {}};
        for (std::size_t k = 0; k < n; ++k) {
            const bool second = i >> (n - 1 - k) & 1;
            switch (asg.columns[k]) {
                case ColumnBasis::Computational: row.cells.push_back(second ? Symbol::One : Symbol::Zero); break;
                case ColumnBasis::Hadamard: row.cells.push_back(second ? Symbol::Minus : Symbol::Plus); break;
                case ColumnBasis::InputPair: row.cells.push_back(second ? Symbol::PsiInStar : Symbol::PsiIn); break;
            }
        }
        out.rows.push_back(std::move(row));
    }
    if (!tabular) {
        std::vector<std::pair<double, std::size_t>> hist;
        std::string desc;
        for (auto [mag, count] : histogram) {
            hist.emplace_back(static_cast<double>(mag) * 1e-9, count);
            desc += " " + std::to_string(count) + "x|" + std::to_string(static_cast<double>(mag) * 1e-9) + "|";
        }
        throw NotTabular("not tabular in this basis; coefficient magnitudes:" + desc, std::move(hist));
    }
    if (out.rows.empty()) {
        throw NotTabular("not tabular in this basis: all coefficients vanish", {});
    }
    return out;
}

namespace detail {

inline std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split_pipes(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t bar = line.find('|', start);
        out.push_back(trim(line.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start)));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }
    return out;
}

inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace detail

/// Text form:
///
///     bind 1 0.6,0,0,0.8        (optional; a_re,a_im,b_re,b_im per psi column)
///     sign|1|2|3
///     +|psi|0|+
///     +|psi*|1|-
inline std::string render(const Table &t) {
    std::string out;
    for (const auto &[label, in] : t.inputs) {
        out += "bind " + std::to_string(label) + " " + detail::format_double(in.a().real()) + "," +
               detail::format_double(in.a().imag()) + "," + detail::format_double(in.b().real()) + "," +
               detail::format_double(in.b().imag()) + "\n";
    }
    out += "sign";
    for (int l : t.labels) out += "|" + std::to_string(l);
    out += "\n";
    for (const auto &r : t.rows) {
        out += r.sign > 0 ? '+' : '-';
        for (auto s : r.cells) {
            out += '|';
            out += token(s);
        }
        out += '\n';
    }
    return out;
}

/// Inverse of render(). The header line is optional; without it columns are
/// labeled 1..n. Blank lines and lines starting with '#' are skipped.
inline Table parse_table(std::string_view text) {
    Table t;
    bool have_header = false;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    auto fail = [&](const std::string &msg) { throw ParseError("table line " + std::to_string(line_no) + ": " + msg); };
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = detail::trim(raw);
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("bind ", 0) == 0) {
            std::istringstream fields(line.substr(5));
            int label = 0;
            std::string amps;
            if (!(fields >> label >> amps)) fail("bad bind line");
            double v[4];
            if (std::sscanf(amps.c_str(), "%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3]) != 4) fail("bad bind amplitudes");
            try {
                t.inputs.insert_or_assign(label, InputQubitState({v[0], v[1]}, {v[2], v[3]}));
            } catch (const NormError &e) {
                fail(e.what());
            }
            continue;
        }
        auto fields = detail::split_pipes(line);
        if (fields.front() == "sign") {
            if (have_header || !t.rows.empty()) fail("unexpected header");
            for (std::size_t k = 1; k < fields.size(); ++k) {
                try {
                    std::size_t used = 0;
                    t.labels.push_back(std::stoi(fields[k], &used));
                    if (used != fields[k].size()) throw std::invalid_argument("");
                } catch (const std::exception &) {
                    fail("bad column label \"" + fields[k] + "\"");
                }
            }
            have_header = true;
            continue;
        }
        if (!have_header && t.rows.empty()) {
            for (std::size_t k = 1; k < fields.size(); ++k) t.labels.push_back(static_cast<int>(k));
            have_header = true;
        }
        if (fields.size() != t.labels.size() + 1) {
            fail("ragged row: " + std::to_string(fields.size() - 1) + " cells for " + std::to_string(t.labels.size()) +
                 " columns");
        }
        TableRow row;
        if (fields[0] == "+") {
            row.sign = 1;
        } else if (fields[0] == "-") {
            row.sign = -1;
        } else {
            fail("bad sign \"" + fields[0] + "\"");
        }
        for (std::size_t k = 1; k < fields.size(); ++k) {
            auto s = symbol_from_token(fields[k]);
            if (!s) fail("unknown symbol \"" + fields[k] + "\"");
            row.cells.push_back(*s);
        }
        t.rows.push_back(std::move(row));
    }
    if (t.labels.empty()) {
        throw ParseError("table has no columns");
    }
    try {
        detail::check_shape(t);
    } catch (const RangeError &e) {
        throw ParseError(e.what());
    }
    return t;
}

enum class TableVerdict { Equal, EqualUpToGlobalSign, Different };

inline std::string_view to_string(TableVerdict v) {
    switch (v) {
        case TableVerdict::Equal: return "equal";
        case TableVerdict::EqualUpToGlobalSign: return "equal-up-to-global-sign";
        case TableVerdict::Different: return "different";
    }
    return "";
}

struct TableDiff {
    TableVerdict verdict = TableVerdict::Different;
    /// Signed rows present in one table but not the other, under the global sign
    /// alignment that leaves fewer of them.
    std::vector<TableRow> only_in_first;
    std::vector<TableRow> only_in_second;
};

/// Row-order-insensitive comparison. Throws RangeError on different labels.
inline TableDiff tables_equal(const Table &x, const Table &y) {
    if (x.labels != y.labels) {
        throw RangeError("tables have different column labels");
    }
    auto diff = [&](int flip) {
        std::set<TableRow> xs;
        std::set<TableRow> ys(y.rows.begin(), y.rows.end());
        for (auto r : x.rows) {
            r.sign *= flip;
            xs.insert(std::move(r));
        }
        TableDiff d;
        std::set_difference(xs.begin(), xs.end(), ys.begin(), ys.end(), std::back_inserter(d.only_in_first));
        std::set_difference(ys.begin(), ys.end(), xs.begin(), xs.end(), std::back_inserter(d.only_in_second));
        // Report first-table rows with their original sign.
        for (auto &r : d.only_in_first) r.sign *= flip;
        return d;
    };
    TableDiff same = diff(1);
    if (same.only_in_first.empty() && same.only_in_second.empty()) {
        same.verdict = TableVerdict::Equal;
        return same;
    }
    TableDiff flipped = diff(-1);
    if (flipped.only_in_first.empty() && flipped.only_in_second.empty()) {
        flipped.verdict = TableVerdict::EqualUpToGlobalSign;
        return flipped;
    }
    auto size = [](const TableDiff &d) { return d.only_in_first.size() + d.only_in_second.size(); };
    TableDiff out = size(flipped) < size(same) ? flipped : same;
    out.verdict = TableVerdict::Different;
    return out;
}

}  // namespace owc
