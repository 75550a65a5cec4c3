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

#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "owc/dense.hpp"
#include "owc/pauli.hpp"
#include "owc/statevector.hpp"

namespace owc {

using Edge = std::pair<QubitLabel, QubitLabel>;

/// Undirected simple graph on the vertices 1..n. Each edge is one controlled-phase
/// entangler of the cluster state.
class ClusterGraph {
   public:
    explicit ClusterGraph(std::size_t num_vertices) : n_(num_vertices) {
        if (n_ < 1 || n_ > kMaxQubits) {
            throw RangeError("cluster must have 1.." + std::to_string(kMaxQubits) + " vertices, got " +
                             std::to_string(n_));
        }
    }

    ClusterGraph(std::size_t num_vertices, std::initializer_list<std::pair<int, int>> edges)
        : ClusterGraph(num_vertices) {
        for (auto [a, b] : edges) add_edge(QubitLabel(a), QubitLabel(b));
    }

    std::size_t num_vertices() const {
        return n_;
    }

    std::vector<QubitLabel> vertices() const {
        std::vector<QubitLabel> out;
        for (std::size_t i = 1; i <= n_; ++i) out.emplace_back(static_cast<int>(i));
        return out;
    }

    bool contains(QubitLabel q) const {
        return q.value() >= 1 && static_cast<std::size_t>(q.value()) <= n_;
    }

    /// Edges are stored with the smaller label first; duplicates are ignored.
    void add_edge(QubitLabel a, QubitLabel b) {
        if (a == b) {
            throw RangeError("self-loop on vertex " + to_string(a));
        }
        for (auto q : {a, b}) {
            if (!contains(q)) {
                throw RangeError("edge endpoint " + to_string(q) + " outside 1.." + std::to_string(n_));
            }
        }
        edges_.insert(a < b ? Edge{a, b} : Edge{b, a});
    }

    const std::set<Edge> &edges() const {
        return edges_;
    }

    bool has_edge(QubitLabel a, QubitLabel b) const {
        return edges_.contains(a < b ? Edge{a, b} : Edge{b, a});
    }

    std::set<QubitLabel> neighborhood(QubitLabel a) const {
        if (!contains(a)) {
            throw RangeError("unknown vertex " + to_string(a));
        }
        std::set<QubitLabel> out;
        for (auto [u, v] : edges_) {
            if (u == a) out.insert(v);
            if (v == a) out.insert(u);
        }
        return out;
    }

    /// Subgraph induced on `labels`, renumbered 1..k in the given order.
    ClusterGraph induced(const std::vector<QubitLabel> &labels) const {
        ClusterGraph out(labels.size());
        std::map<QubitLabel, QubitLabel> position;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!contains(labels[i])) throw RangeError("unknown vertex " + to_string(labels[i]));
            position.emplace(labels[i], QubitLabel(static_cast<int>(i + 1)));
        }
        for (auto [u, v] : edges_) {
            auto iu = position.find(u);
            auto iv = position.find(v);
            if (iu != position.end() && iv != position.end()) out.add_edge(iu->second, iv->second);
        }
        return out;
    }

    bool operator==(const ClusterGraph &) const = default;

   private:
    std::size_t n_;
    std::set<Edge> edges_;
};

/// Linear cluster 1-2-...-n.
inline ClusterGraph chain(std::size_t n) {
    ClusterGraph g(n);
    for (std::size_t i = 1; i < n; ++i) g.add_edge(QubitLabel(static_cast<int>(i)), QubitLabel(static_cast<int>(i + 1)));
    return g;
}

/// The 15-qubit CNOT cluster: control wire 1..7, target wire 9..15, bridge 4-8-12.
///
/// Built from the four subclusters 1-3, 4-7, 9-11, 12-15 plus the lone qubit 8,
/// joined by the edges (3,4), (11,12), (4,8) and (8,12).
inline ClusterGraph cnot15() {
    return ClusterGraph(15, {{1, 2},
                             {2, 3},
                             {3, 4},
                             {4, 5},
                             {5, 6},
                             {6, 7},
                             {4, 8},
                             {8, 12},
                             {9, 10},
                             {10, 11},
                             {11, 12},
                             {12, 13},
                             {13, 14},
                             {14, 15}});
}

/// Nearest-neighbour offsets of the f-dimensional cubic lattice (f = 1, 2, 3).
/// Kept as reference data; only chains and the CNOT graph are instantiated.
inline std::vector<std::vector<int>> lattice_offsets(int dimension) {
    switch (dimension) {
        case 1: return {{1}};
        case 2: return {{1, 0}, {0, 1}};
        case 3: return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        default: throw RangeError("lattice dimension must be 1, 2 or 3, got " + std::to_string(dimension));
    }
}

/// Edge-list text: one "a b" pair per line, 1-based labels. Blank lines and
/// '#' comments are ignored. The vertex set is 1..(largest label); a line with a
/// single label only declares that vertex.
inline ClusterGraph parse_edge_list(std::istream &in) {
    std::vector<std::pair<int, int>> edges;
    int max_label = 0;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<long> values;
        std::string tok;
        while (fields >> tok) {
            std::size_t used = 0;
            long v = 0;
            try {
                v = std::stol(tok, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != tok.size() || v < 1 || v > static_cast<long>(kMaxQubits)) {
                throw ParseError("edge list line " + std::to_string(line_no) + ": bad label \"" + tok + "\"");
            }
            values.push_back(v);
        }
        if (values.empty()) continue;
        if (values.size() > 2) {
            throw ParseError("edge list line " + std::to_string(line_no) + ": expected \"a b\"");
        }
        for (long v : values) max_label = std::max(max_label, static_cast<int>(v));
        if (values.size() == 2) {
            if (values[0] == values[1]) {
                throw ParseError("edge list line " + std::to_string(line_no) + ": self-loop");
            }
            edges.emplace_back(values[0], values[1]);
        }
    }
    if (max_label == 0) {
        throw ParseError("edge list is empty");
    }
    ClusterGraph g(static_cast<std::size_t>(max_label));
    for (auto [a, b] : edges) g.add_edge(QubitLabel(a), QubitLabel(b));
    return g;
}

inline std::string to_edge_list(const ClusterGraph &g) {
    std::string out;
    bool last_used = false;
    for (auto [a, b] : g.edges()) {
        out += to_string(a) + " " + to_string(b) + "\n";
        last_used = last_used || b.value() == static_cast<int>(g.num_vertices());
    }
    // Declare the top vertex when isolated so parsing restores the vertex count.
    if (!last_used) out += std::to_string(g.num_vertices()) + "\n";
    return out;
}

struct ClusterAssignment {
    ClusterGraph graph;
    /// Vertices carrying an input; every other vertex starts in |+>.
    std::map<QubitLabel, InputQubitState> inputs;
};

/// Product of |+> (and inputs) followed by one controlled phase per edge.
inline StateVector build_cluster_state(const ClusterAssignment &asg) {
    std::vector<InputQubitState> qubits(asg.graph.num_vertices(), InputQubitState::plus());
    for (const auto &[q, psi] : asg.inputs) {
        if (!asg.graph.contains(q)) {
            throw RangeError("input on unknown vertex " + to_string(q));
        }
        qubits[static_cast<std::size_t>(q.value() - 1)] = psi;
    }
    StateVector state = make_product_state(qubits);
    for (auto [a, b] : asg.graph.edges()) apply_controlled_phase(state, a, b);
    return state;
}

inline StateVector build_cluster_state(const ClusterGraph &graph) {
    return build_cluster_state(ClusterAssignment{graph, {}});
}

/// K^a = X_a * prod_{b in nbgh(a)} Z_b.
inline PauliString stabilizer(const ClusterGraph &graph, QubitLabel a) {
    PauliString k = PauliString::single(PauliLetter::X, a);
    for (auto b : graph.neighborhood(a)) k.set(b, PauliLetter::Z);
    return k;
}

struct StabilizerCheck {
    QubitLabel vertex;
    PauliString op;
    double residual = 0;
    bool pass = false;
};

struct StabilizerReport {
    std::vector<StabilizerCheck> checks;
    double tolerance = kStabilizerTolerance;

    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.pass; });
    }
    double max_residual() const {
        double r = 0;
        for (const auto &c : checks) r = std::max(r, c.residual);
        return r;
    }
};

/// Checks K^a|phi> = |phi> for every vertex a.
inline StabilizerReport verify_stabilizers(const StateVector &state, const ClusterGraph &graph,
                                           double tol = kStabilizerTolerance) {
    if (state.num_qubits() != graph.num_vertices()) {
        throw RangeError("state has " + std::to_string(state.num_qubits()) + " qubits but graph has " +
                         std::to_string(graph.num_vertices()) + " vertices");
    }
    StabilizerReport report;
    report.tolerance = tol;
    for (auto a : graph.vertices()) {
        StabilizerCheck c{a, stabilizer(graph, a)};
        c.residual = eigenvalue_residual(state, c.op);
        c.pass = c.residual <= tol;
        report.checks.push_back(std::move(c));
    }
    return report;
}

struct ConjugationCheck {
    /// "cluster-x" : S X_a S^dag = K^a over the whole graph
    /// "edge-x-first", "edge-x-second" : S^(ab) X S^(ab)dag on an edge endpoint
    /// "edge-x-spectator", "edge-z-spectator" : S^(ab) leaves X_c / Z_d alone off the edge
    std::string kind;
    std::string description;
    PauliString expected;
    double residual = 0;
    bool pass = false;
};

struct ConjugationReport {
    std::vector<ConjugationCheck> checks;
    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.pass; });
    }
    double max_residual() const {
        double r = 0;
        for (const auto &c : checks) r = std::max(r, c.residual);
        return r;
    }
};

inline constexpr std::size_t kMaxDenseQubits = 5;

/// Operator-level conjugation identities of the entanglers, with S built as a
/// dense matrix from the Pauli-sum form of each S^(ab).
inline ConjugationReport conjugation_audit(const ClusterGraph &graph, double tol = kStabilizerTolerance) {
    const std::size_t n = graph.num_vertices();
    if (n > kMaxDenseQubits) {
        throw RangeError("conjugation audit is dense; at most " + std::to_string(kMaxDenseQubits) +
                         " vertices, got " + std::to_string(n));
    }
    ConjugationReport report;
    auto check = [&](std::string kind, std::string desc, const DenseMatrix &u, const PauliString &in,
                     const PauliString &expected) {
        DenseMatrix got = u * dense_pauli_string(in, n) * u.adjoint();
        double r = got.max_abs_difference(dense_pauli_string(expected, n));
        report.checks.push_back({std::move(kind), std::move(desc), expected, r, r <= tol});
    };
    auto x = [](QubitLabel q) { return PauliString::single(PauliLetter::X, q); };
    auto z = [](QubitLabel q) { return PauliString::single(PauliLetter::Z, q); };

    DenseMatrix s_all = DenseMatrix::identity(std::size_t{1} << n);
    for (auto [a, b] : graph.edges()) {
        DenseMatrix s_ab = dense_controlled_phase(a, b, n);
        s_all = s_ab * s_all;
        std::string edge = "S(" + to_string(a) + "," + to_string(b) + ")";
        check("edge-x-first", edge + " X" + to_string(a), s_ab, x(a), x(a) * z(b));
        check("edge-x-second", edge + " X" + to_string(b), s_ab, x(b), z(a) * x(b));
        for (auto c : graph.vertices()) {
            if (c == a || c == b) continue;
            check("edge-x-spectator", edge + " X" + to_string(c), s_ab, x(c), x(c));
            check("edge-z-spectator", edge + " Z" + to_string(c), s_ab, z(c), z(c));
        }
    }
    for (auto a : graph.vertices()) {
        check("cluster-x", "S X" + to_string(a), s_all, x(a), stabilizer(graph, a));
    }
    return report;
}

}  // namespace owc
