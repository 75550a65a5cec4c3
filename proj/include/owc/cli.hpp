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

// Command-line front end. Kept out of owc.hpp so the core library does not
// depend on CLI11.

#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "owc/audit.hpp"
#include "owc/cluster.hpp"
#include "owc/cnot.hpp"
#include "owc/tabular.hpp"
#include "owc/version.hpp"

namespace owc::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

enum class Format { Text, Json };

/// Amplitudes within this distance of unit norm are rescaled; beyond it they are rejected.
inline constexpr double kAmplitudeSlack = 1e-6;

struct UsageError : Error {
    using Error::Error;
};

struct ParsedInput {
    InputQubitState state;
    std::optional<std::string> warning;
};

/// Parses "re,im,re,im" into a|0> + b|1>.
inline ParsedInput parse_amplitudes(const std::string &text, const std::string &flag) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char *end = nullptr;
        double x = std::strtod(item.c_str(), &end);
        if (item.empty() || end != item.c_str() + item.size()) {
            throw UsageError(flag + ": \"" + item + "\" is not a number");
        }
        v.push_back(x);
    }
    if (v.size() != 4) {
        throw UsageError(flag + ": expected four comma-separated numbers re,im,re,im, got " + std::to_string(v.size()));
    }
    Complex a(v[0], v[1]);
    Complex b(v[2], v[3]);
    double n2 = std::norm(a) + std::norm(b);
    double dev = std::abs(std::sqrt(n2) - 1.0);
    if (dev > kAmplitudeSlack) {
        throw UsageError(flag + ": amplitudes have norm " + std::to_string(std::sqrt(n2)) + ", not 1");
    }
    ParsedInput out{InputQubitState::normalized(a, b), std::nullopt};
    if (dev > kNormTolerance) {
        std::ostringstream w;
        w.precision(3);
        w << flag << ": renormalized amplitudes (norm deviation " << dev << ")";
        out.warning = w.str();
    }
    return out;
}

inline std::uint64_t default_seed() {
    if (const char *env = std::getenv("OWC_SEED")) {
        char *end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (*env != '\0' && *end == '\0') return v;
    }
    return 0;
}

inline std::filesystem::path default_data_dir() {
    if (const char *env = std::getenv("OWC_DATA_DIR")) return env;
#ifdef OWC_DATA_DIR
    return OWC_DATA_DIR;
#else
    return "data";
#endif
}

inline Json complex_json(Complex z) {
    return Json::array({z.real(), z.imag()});
}

inline Json state_json(const StateVector &s) {
    Json j = Json::array();
    for (auto z : s.amplitudes()) j.push_back(complex_json(z));
    return j;
}

inline Json exponents_json(const cnot::ByproductExponents &e) {
    Json j = Json::object();
    auto a = e.as_array();
    for (std::size_t k = 0; k < 4; ++k) j[cnot::kExponentNames[k]] = a[k];
    return j;
}

inline std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

inline std::string format_complex(Complex z) {
    return "(" + format_number(z.real()) + (z.imag() < 0 ? "" : "+") + format_number(z.imag()) + "i)";
}

inline std::string format_state(const StateVector &s) {
    std::string out;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if (i) out += " ";
        out += format_complex(s[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------

struct RunConfig {
    std::string control = "1,0,0,0";
    std::string target = "1,0,0,0";
    std::optional<std::string> outcomes;
    std::optional<std::uint64_t> seed;
    double tolerance = kStateTolerance;
};

struct CommandOutput {
    int code = kOk;
    Json json;
    std::string text;
};

inline CommandOutput cmd_run(const RunConfig &cfg) {
    auto control = parse_amplitudes(cfg.control, "--control");
    auto target = parse_amplitudes(cfg.target, "--target");
    OutcomePolicy policy;
    Json policy_json;
    if (cfg.outcomes) {
        ForcedOutcomes forced;
        for (char ch : *cfg.outcomes) {
            if (ch != '0' && ch != '1') throw UsageError("--outcomes: bits must be 0 or 1");
            forced.bits.push_back(ch - '0');
        }
        if (forced.bits.size() != cnot::kMeasuredCount) {
            throw UsageError("expected 13 outcome bits, got " + std::to_string(forced.bits.size()));
        }
        policy = forced;
        policy_json = {{"kind", "forced"}};
    } else {
        std::uint64_t seed = cfg.seed.value_or(default_seed());
        policy = SampledOutcomes{seed};
        policy_json = {{"kind", "sampled"}, {"seed", seed}};
    }

    auto r = cnot::run_cnot(control.state, target.state, policy, cnot::full_pattern(), cfg.tolerance);
    bool pass = r.corrected_fidelity >= 1 - cfg.tolerance;

    Json warnings = Json::array();
    for (const auto &w : {control.warning, target.warning}) {
        if (w) warnings.push_back(*w);
    }
    Json order = Json::array();
    Json probs = Json::array();
    for (const auto &e : r.outcomes.entries()) {
        order.push_back(e.qubit.value());
        probs.push_back(e.probability);
    }
    Json solutions = Json::array();
    for (const auto &e : r.all_solutions) solutions.push_back(exponents_json(e));
    bool predicted_ok = std::find(r.all_solutions.begin(), r.all_solutions.end(), r.predicted) != r.all_solutions.end();

    CommandOutput out;
    out.code = pass ? kOk : kCheckFailed;
    out.json = {{"schema", "owcnot.run/1"},
                {"tool_version", kVersion},
                {"control", audit::detail::binding_json(control.state)},
                {"target", audit::detail::binding_json(target.state)},
                {"policy", policy_json},
                {"outcome_order", order},
                {"outcomes", r.outcomes.bit_string()},
                {"probabilities", probs},
                {"joint_probability", r.outcomes.joint_probability()},
                {"predicted", exponents_json(r.predicted)},
                {"solved", r.solved ? exponents_json(*r.solved) : Json(nullptr)},
                {"all_solutions", solutions},
                {"predicted_is_solution", predicted_ok},
                {"raw_output", state_json(r.raw_output)},
                {"corrected_output", state_json(r.corrected_output)},
                {"reference", state_json(r.reference)},
                {"corrected_fidelity", r.corrected_fidelity},
                {"predicted_fidelity", r.predicted_fidelity},
                {"tolerance", cfg.tolerance},
                {"pass", pass},
                {"warnings", warnings}};

    std::ostringstream t;
    for (const auto &w : warnings) t << "warning: " << w.get<std::string>() << "\n";
    t << "policy: " << policy_json["kind"].get<std::string>();
    if (policy_json.contains("seed")) t << " seed=" << policy_json["seed"].get<std::uint64_t>();
    t << "\noutcome order: ";
    for (std::size_t i = 0; i < order.size(); ++i) t << (i ? "," : "") << "s" << order[i].get<int>();
    t << "\noutcomes:      " << r.outcomes.bit_string() << "\nprobabilities:";
    for (const auto &p : probs) t << " " << format_number(p.get<double>());
    t << "\njoint probability: " << format_number(r.outcomes.joint_probability());
    t << "\npredicted exponents (xc,xt,zc,zt): " << r.predicted.to_string();
    t << "\nsolved exponents    (xc,xt,zc,zt): " << (r.solved ? r.solved->to_string() : std::string("none"));
    if (r.ambiguous()) t << " (" << r.all_solutions.size() << " solutions)";
    t << "\npredicted exponents are a solution: " << (predicted_ok ? "yes" : "no");
    t << "\nraw output:       " << format_state(r.raw_output);
    t << "\ncorrected output: " << format_state(r.corrected_output);
    t << "\nreference:        " << format_state(r.reference);
    t << "\ncorrected fidelity: " << format_number(r.corrected_fidelity);
    t << "\npredicted fidelity: " << format_number(r.predicted_fidelity);
    t << "\nresult: " << (pass ? "PASS" : "FAIL") << " (tolerance " << format_number(cfg.tolerance) << ")\n";
    out.text = t.str();
    return out;
}

// ---------------------------------------------------------------------------

struct AuditConfig {
    std::optional<std::string> check;
    std::optional<std::uint64_t> seed;
    bool timings = false;
    std::optional<std::size_t> sampled;
    std::filesystem::path data_dir = default_data_dir();
};

inline CommandOutput cmd_audit(const AuditConfig &cfg) {
    if (cfg.check) {
        auto ids = audit::known_claim_ids();
        if (std::find(ids.begin(), ids.end(), *cfg.check) == ids.end()) {
            std::string known;
            for (const auto &id : ids) known += " " + id;
            throw UsageError("unknown claim id \"" + *cfg.check + "\"; known ids:" + known);
        }
    }
    audit::AuditOptions opt;
    opt.seed = cfg.seed.value_or(default_seed());
    opt.data_dir = cfg.data_dir;
    opt.timings = cfg.timings;
    if (cfg.sampled) {
        opt.exhaustive = false;
        opt.sampled_branches = *cfg.sampled;
    }
    auto report = audit::audit_all(opt);
    if (cfg.check) {
        std::erase_if(report.claims, [&](const audit::Claim &c) { return c.id != *cfg.check; });
    }
    return {kOk, audit::to_json(report), audit::to_text(report)};
}

// ---------------------------------------------------------------------------

struct TablesConfig {
    std::string subcluster;
    bool diff_golden = false;
    std::string control;
    std::string target;
    std::filesystem::path data_dir = default_data_dir();
};

inline CommandOutput cmd_tables(const TablesConfig &cfg) {
    const audit::Subcluster *sc = nullptr;
    try {
        sc = &audit::find_subcluster(cfg.subcluster);
    } catch (const RangeError &e) {
        throw UsageError(e.what());
    }
    auto control = cfg.control.empty() ? ParsedInput{primary_binding(), std::nullopt}
                                       : parse_amplitudes(cfg.control, "--control");
    auto target = cfg.target.empty() ? ParsedInput{secondary_binding(), std::nullopt}
                                     : parse_amplitudes(cfg.target, "--target");
    Table derived = audit::derive_table(*sc, control.state, target.state);

    CommandOutput out;
    Json rows = Json::array();
    for (const auto &r : derived.rows) rows.push_back(audit::detail::row_text(r));
    Json labels = Json::array();
    for (int l : derived.labels) labels.push_back(l);
    Json bindings = Json::object();
    for (const auto &[l, in] : derived.inputs) bindings[std::to_string(l)] = audit::detail::binding_json(in);
    out.json = {{"schema", "owcnot.tables/1"},
                {"tool_version", kVersion},
                {"subcluster", sc->selector},
                {"labels", labels},
                {"bindings", bindings},
                {"row_count", derived.rows.size()},
                {"rows", rows}};
    out.text = render(derived);
    out.text += "# " + std::to_string(derived.rows.size()) + " rows\n";

    if (cfg.diff_golden) {
        Table golden = audit::load_table(cfg.data_dir, sc->file);
        TableDiff diff = tables_equal(derived, golden);
        Json only_derived = Json::array();
        Json only_golden = Json::array();
        for (const auto &r : diff.only_in_first) only_derived.push_back(audit::detail::row_text(r));
        for (const auto &r : diff.only_in_second) only_golden.push_back(audit::detail::row_text(r));
        out.json["diff"] = {{"golden_file", sc->file},
                            {"golden_row_count", golden.rows.size()},
                            {"verdict", to_string(diff.verdict)},
                            {"only_in_derived", only_derived},
                            {"only_in_golden", only_golden}};
        std::ostringstream t;
        t << "# diff against " << sc->file << " (" << golden.rows.size() << " rows): " << to_string(diff.verdict)
          << "\n";
        for (const auto &r : only_derived) t << "< " << r.get<std::string>() << "\n";
        for (const auto &r : only_golden) t << "> " << r.get<std::string>() << "\n";
        out.text += t.str();
    }
    return out;
}

// ---------------------------------------------------------------------------

struct StabilizersConfig {
    std::string graph = "cnot15";
    double tolerance = kStabilizerTolerance;
    std::filesystem::path data_dir = default_data_dir();
};

inline ClusterGraph load_graph(const std::string &name, const std::filesystem::path &data_dir) {
    if (name == "cnot15") return cnot15();
    std::filesystem::path path = name;
    if (!std::filesystem::exists(path) && std::filesystem::exists(data_dir / "graphs" / name)) {
        path = data_dir / "graphs" / name;
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open graph file " + name);
    try {
        return parse_edge_list(in);
    } catch (const Error &e) {
        throw UsageError(name + ": " + e.what());
    }
}

inline CommandOutput cmd_stabilizers(const StabilizersConfig &cfg) {
    ClusterGraph g = load_graph(cfg.graph, cfg.data_dir);
    StateVector phi = build_cluster_state(g);
    StabilizerReport rep = verify_stabilizers(phi, g, cfg.tolerance);
    CommandOutput out;
    out.code = rep.pass() ? kOk : kCheckFailed;
    Json list = Json::array();
    std::ostringstream t;
    for (const auto &c : rep.checks) {
        list.push_back({{"vertex", c.vertex.value()},
                        {"stabilizer", c.op.to_string()},
                        {"residual", c.residual},
                        {"pass", c.pass}});
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3e", c.residual);
        t << "K" << c.vertex.value() << " = " << c.op.to_string() << "  residual " << buf
          << (c.pass ? "" : "  FAIL") << "\n";
    }
    out.json = {{"schema", "owcnot.stabilizers/1"},
                {"tool_version", kVersion},
                {"graph", cfg.graph},
                {"vertices", g.num_vertices()},
                {"edges", g.edges().size()},
                {"tolerance", cfg.tolerance},
                {"stabilizers", list},
                {"max_residual", rep.max_residual()},
                {"pass", rep.pass()}};
    out.text = t.str();
    return out;
}

// ---------------------------------------------------------------------------

inline void emit(const CommandOutput &result, Format format, const std::string &path, std::ostream &out) {
    std::string body = format == Format::Json ? result.json.dump(2) + "\n" : result.text;
    if (path.empty() || path == "-") {
        out << body;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << body;
}

/// Entry point shared by the owcnot binary and the tests.
inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"One-way quantum computer CNOT simulator and audit", "owcnot"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string format_name = "text";
    std::string output_path;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--format", format_name, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--output,-o", output_path, "Write to this file instead of standard output");
    };

    RunConfig run_cfg;
    std::uint64_t run_seed = 0;
    auto *run = app.add_subcommand("run", "Run the CNOT measurement pattern once");
    run->add_option("--control", run_cfg.control, "Control input a|0>+b|1> as re,im,re,im");
    run->add_option("--target", run_cfg.target, "Target input as re,im,re,im");
    auto *outcomes_opt = run->add_option("--outcomes", "Forced outcome bits s1..s14 (13 chars, ascending label)");
    auto *run_seed_opt = run->add_option("--seed", run_seed, "Seed for sampled outcomes (default: $OWC_SEED or 0)");
    run->add_option("--tolerance", run_cfg.tolerance, "Fidelity tolerance");
    add_common(run);

    AuditConfig audit_cfg;
    std::uint64_t audit_seed = 0;
    std::size_t sampled = 0;
    std::string audit_data_dir;
    auto *aud = app.add_subcommand("audit", "Check every claim and print the report");
    auto *check_opt = aud->add_option("--check", "Only report this claim id");
    auto *audit_seed_opt = aud->add_option("--seed", audit_seed, "Seed for randomized checks (default: $OWC_SEED or 0)");
    aud->add_flag("--timings", audit_cfg.timings, "Include wall-clock timings (breaks byte-identical output)");
    auto *sampled_opt = aud->add_option("--sampled", sampled, "Fit byproduct formulas on N random branches instead of all");
    aud->add_option("--data-dir", audit_data_dir, "Directory holding tables/ (default: $OWC_DATA_DIR)");
    add_common(aud);

    TablesConfig tables_cfg;
    std::string tables_data_dir;
    auto *tab = app.add_subcommand("tables", "Derive the state table of a CNOT subcluster");
    tab->add_option("--subcluster", tables_cfg.subcluster, "One of 1-3, 9-11, 4-7, 12-15, 1-7, 9-15, 1-8, 1-15")
        ->required();
    tab->add_flag("--diff-golden", tables_cfg.diff_golden, "Compare with the transcribed table");
    tab->add_option("--control", tables_cfg.control, "Binding for psi on qubit 1 (re,im,re,im)");
    tab->add_option("--target", tables_cfg.target, "Binding for psi on qubit 9 (re,im,re,im)");
    tab->add_option("--data-dir", tables_data_dir, "Directory holding tables/");
    add_common(tab);

    StabilizersConfig stab_cfg;
    std::string stab_data_dir;
    auto *stab = app.add_subcommand("stabilizers", "List K^a and its eigenvalue residual for every vertex");
    stab->add_option("--graph", stab_cfg.graph, "cnot15 or an edge-list file");
    stab->add_option("--tolerance", stab_cfg.tolerance, "Residual tolerance");
    stab->add_option("--data-dir", stab_data_dir, "Directory searched for graphs/<file>");
    add_common(stab);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    Format format = format_name == "json" ? Format::Json : Format::Text;
    try {
        CommandOutput result;
        if (*run) {
            if (*outcomes_opt) run_cfg.outcomes = outcomes_opt->as<std::string>();
            if (*run_seed_opt) run_cfg.seed = run_seed;
            result = cmd_run(run_cfg);
        } else if (*aud) {
            if (*check_opt) audit_cfg.check = check_opt->as<std::string>();
            if (*audit_seed_opt) audit_cfg.seed = audit_seed;
            if (*sampled_opt) audit_cfg.sampled = sampled;
            if (!audit_data_dir.empty()) audit_cfg.data_dir = audit_data_dir;
            result = cmd_audit(audit_cfg);
        } else if (*tab) {
            if (!tables_data_dir.empty()) tables_cfg.data_dir = tables_data_dir;
            result = cmd_tables(tables_cfg);
        } else {
            if (!stab_data_dir.empty()) stab_cfg.data_dir = stab_data_dir;
            result = cmd_stabilizers(stab_cfg);
        }
        if (format == Format::Text && result.json.contains("warnings")) {
            for (const auto &w : result.json["warnings"]) err << "warning: " << w.get<std::string>() << "\n";
        }
        emit(result, format, output_path, out);
        return result.code;
    } catch (const ImpossibleBranch &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace owc::cli
