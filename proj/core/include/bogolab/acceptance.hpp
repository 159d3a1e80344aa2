#ifndef BOGOLAB_ACCEPTANCE_HPP
#define BOGOLAB_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace bogolab {

struct CheckResult {
    int criterion = 0;  // 1..8, 0 for extended lemma checks
    std::string name;
    double value = 0.0;      // measured deviation, slope, gap, ...
    double threshold = 0.0;  // pinned from the criterion statement
    bool larger_is_fail = true;
    bool pass = false;
    std::string detail;
};

struct AcceptanceOptions {
    std::uint64_t seed = 7;
    int threads = 1;
};

// Runs the full acceptance battery (criteria 1-8), one or more rows per
// criterion. Deterministic for a fixed seed.
std::vector<CheckResult> run_acceptance(const AcceptanceOptions& opt);

// The operator-algebra battery. The core rows carry criterion tag 3; with
// extended = true the remaining lemma identities (Weyl shift, quadratic
// conjugation, parity-vanishing traces, dressed-state positivity, order
// independence, negative control) are appended with tag 0.
std::vector<CheckResult> fock_lemma_battery(std::uint64_t seed, bool extended);

// CSV serialization of the results; byte-stable across runs and thread
// counts (no timing rows).
std::string acceptance_csv(const std::vector<CheckResult>& results);

// Fixed-width human table with one pass/fail line per row.
std::string acceptance_table(const std::vector<CheckResult>& results);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace bogolab

#endif
