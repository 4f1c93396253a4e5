#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace causalnli {

struct CheckOptions {
    int n_max = 6;           // largest node count to reproduce
    std::uint64_t seed = 0;  // split assignment and random sampling
    int jobs = 1;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    bool hard = true;  // soft checks report a warning instead of failing
    std::string detail;
};

/// Runs the full reproduction suite: source-graph table, equivalence-class
/// table, corpus sizes/labels/splits, PC-vs-CPDAG equivalence, dual
/// d-separation agreement, the class-member oracle, text statistics,
/// random baselines, and the n-gram/label association analysis.
std::vector<CheckResult> run_acceptance_checks(const CheckOptions& options);

/// One "[PASS]/[FAIL]/[WARN] name: detail" line per check; returns the
/// process exit code (0 iff no hard check failed).
int print_check_report(const std::vector<CheckResult>& results,
                       std::ostream& out);

}  // namespace causalnli
