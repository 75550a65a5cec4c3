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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "owc/audit.hpp"

using namespace owc;
using audit::Verdict;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass;
    std::string detail;
};

const std::filesystem::path kData = OWC_DATA_DIR;

Outcome stabilizer_suite() {
    auto t0 = Clock::now();
    auto g = cnot15();
    auto rep = verify_stabilizers(build_cluster_state(g), g, 1e-12);
    double secs = seconds_since(t0);
    bool ok = rep.checks.size() == 15 && rep.pass() && rep.max_residual() <= 1e-12 && secs < 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu equations, max residual %.2e, %.3f s", rep.checks.size(), rep.max_residual(),
                  secs);
    return {ok, buf};
}

Outcome stabilizer_products() {
    auto t0 = Clock::now();
    auto claims = audit::audit_stabilizer_products();
    double secs = seconds_since(t0);
    bool ok = claims.size() == 4 && secs < 1.0;
    std::string detail;
    for (const auto &c : claims) {
        ok = ok && c.evidence["letters_match"].get<bool>() && c.verdict != Verdict::Refuted &&
             c.residuals["eigen_residual"].get<double>() <= 1e-12;
        detail += c.id + "=" + std::string(to_string(c.verdict)) + " ";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f s", secs);
    return {ok, detail + buf};
}

Outcome cnot_conjugation() {
    auto ids = cnot::verify_cnot_conjugation_identities();
    bool ok = ids.size() == 4;
    for (const auto &id : ids) ok = ok && id.holds;
    return {ok, std::to_string(ids.size()) + " integer identities"};
}

Outcome gate_determinism() {
    auto t0 = Clock::now();
    auto c = audit::audit_gate_determinism();
    double secs = seconds_since(t0);
    bool ok = c.verdict == Verdict::Confirmed && secs < 300;
    std::size_t branches = 0;
    for (const auto &s : c.evidence["sweeps"]) {
        branches += s["branches"].get<std::size_t>();
        ok = ok && s["branches"] == cnot::kBranchCount && s["branches_without_correction"] == 0 &&
             s["min_corrected_fidelity"].get<double>() >= 1 - 1e-10;
    }
    ok = ok && c.evidence["sweeps"].size() == 3;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu branches over 3 input pairs, max infidelity %.2e, %.1f s", branches,
                  c.residuals["max_infidelity"].get<double>(), secs);
    return {ok, buf};
}

Outcome byproduct_audit() {
    auto c = audit::audit_byproduct_formulas(20260101, true);
    bool ok = c.evidence["branches"] == cnot::kBranchCount && c.evidence["fits"].size() == 4 &&
              c.evidence["revalidated_branches"] == 100 && c.evidence["revalidation_failures"] == 0;
    std::string detail;
    for (const auto &f : c.evidence["fits"]) {
        ok = ok && f["fit_violations"] == 0 && f["terms"].size() == 14;
        detail += f["exponent"].get<std::string>() + (f["match"].get<bool>() ? " agrees, " : " differs, ");
    }
    return {ok, detail + "verdict " + std::string(to_string(c.verdict))};
}

Outcome table_regression() {
    auto claims = audit::audit_subcluster_tables(kData);
    bool ok = claims.size() == 8;
    std::string detail;
    for (const auto &c : claims) {
        if (c.id == "table-1-15") {
            for (const auto &cmp : c.evidence["comparisons"]) {
                ok = ok && cmp["derived_rows"] == 128;
                // Any mismatch must be listed row by row.
                bool listed = cmp["table_comparison"] != "different" ||
                              !cmp["rows_missing_from_printed"].empty() || !cmp["rows_not_in_derived"].empty();
                ok = ok && listed;
                detail += "15q: 128 rows, " + std::to_string(cmp["rows_not_in_derived"].size()) + " printed rows differ; ";
                break;
            }
        } else {
            ok = ok && c.verdict == Verdict::Confirmed;
        }
    }
    return {ok, detail + "7 smaller tables reproduced"};
}

Outcome reference_comparison() {
    auto claims = audit::audit_reference_comparison(kData);
    bool ok = true;
    int verdicts = 0;
    for (const auto &c : claims) {
        if (c.id == "reference-consistency") continue;
        for (const auto &cmp : c.evidence["comparisons"]) {
            for (const char *key : {"ours_vs_theirs", "ours_vs_oracle", "theirs_vs_oracle"}) {
                ++verdicts;
                if (cmp[key]["equal"].get<bool>()) ok = ok && cmp[key]["residual"].get<double>() <= 1e-12;
            }
        }
    }
    ok = ok && verdicts >= 6;
    return {ok, std::to_string(verdicts) + " equality verdicts, equal ones backed by residual <= 1e-12"};
}

Outcome projected_equations() {
    auto claims = audit::audit_projected_equations(7, 50);
    bool ok = claims.size() == 4;
    double worst = 0;
    for (const auto &c : claims) {
        ok = ok && c.verdict == Verdict::Confirmed && c.evidence["random_branches"] == 50;
        worst = std::max(worst, c.residuals["max_eigen_residual"].get<double>());
    }
    ok = ok && worst <= 1e-10;
    char buf[96];
    std::snprintf(buf, sizeof buf, "4 equations x 50 branches, max residual %.2e", worst);
    return {ok, buf};
}

Outcome uniform_randomness() {
    auto c = audit::audit_uniform_randomness(11, 200);
    double dev = c.residuals["max_probability_deviation"].get<double>();
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu steps over 200 branches, max |p - 0.5| = %.2e",
                  c.evidence["steps_checked"].get<std::size_t>(), dev);
    return {c.verdict == Verdict::Confirmed && dev <= 1e-10, buf};
}

Outcome determinism() {
    audit::AuditOptions o;
    o.data_dir = kData;
    o.seed = 424242;
    auto a = audit::to_json(audit::audit_all(o)).dump(2);
    auto b = audit::to_json(audit::audit_all(o)).dump(2);
    return {a == b, std::to_string(a.size()) + " bytes, identical: " + (a == b ? "yes" : "no")};
}

}  // namespace

int main() {
    const std::pair<const char *, std::function<Outcome()>> criteria[] = {
        {"stabilizer suite", stabilizer_suite},
        {"stabilizer products", stabilizer_products},
        {"CNOT conjugation identities", cnot_conjugation},
        {"end-to-end gate determinism", gate_determinism},
        {"byproduct formula audit", byproduct_audit},
        {"table regression", table_regression},
        {"reference state comparison", reference_comparison},
        {"projected eigenvalue equations", projected_equations},
        {"uniform outcome randomness", uniform_randomness},
        {"report determinism", determinism},
    };
    int failures = 0;
    int k = 0;
    for (const auto &[name, fn] : criteria) {
        ++k;
        Outcome o{false, ""};
        try {
            o = fn();
        } catch (const std::exception &e) {
            o.detail = std::string("exception: ") + e.what();
        }
        failures += o.pass ? 0 : 1;
        std::printf("criterion %2d %s  %s: %s\n", k, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", k - failures, k);
    return failures == 0 ? 0 : 1;
}
