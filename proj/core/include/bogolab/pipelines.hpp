#ifndef BOGOLAB_PIPELINES_HPP
#define BOGOLAB_PIPELINES_HPP

#include <string>

#include "bogolab/config.hpp"

namespace bogolab {

struct RunResult {
    int exit_code = 0;  // 0 pass, 1 check failure, 2 usage error
    std::string output;  // human-readable report (also printed by the CLI)
};

// Dispatches on cfg.command; writes CSV artifacts atomically when cfg.out is
// set. Throws std::invalid_argument for usage-level errors.
RunResult run(const RunConfig& cfg);

// The individual pipelines (exposed for tests).
RunResult run_scattering(const RunConfig& cfg);
RunResult run_free_energy(const RunConfig& cfg);
RunResult run_verify(const RunConfig& cfg);
RunResult run_fock_demo(const RunConfig& cfg);
RunResult run_localize(const RunConfig& cfg);

// The free-energy CSV body (exposed so determinism checks can compare bytes
// without touching the filesystem).
std::string free_energy_csv(const RunConfig& cfg);

// temp file + rename
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace bogolab

#endif
