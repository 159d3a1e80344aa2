// Acceptance gate: runs every criterion at its stated tolerance and prints
// one pass/fail line per check. Exit code 0 only if all pass.

#include <cstdlib>
#include <iostream>

#include "bogolab/acceptance.hpp"

int main(int argc, char** argv) {
    bogolab::AcceptanceOptions opt;
    if (argc > 1) opt.seed = std::strtoull(argv[1], nullptr, 10);
    const auto results = bogolab::run_acceptance(opt);
    std::cout << bogolab::acceptance_table(results);
    const bool ok = bogolab::all_pass(results);
    std::cout << (ok ? "ACCEPTANCE: all criteria pass\n" : "ACCEPTANCE: FAILURES present\n");
    return ok ? 0 : 1;
}
