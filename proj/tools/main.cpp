#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "bogolab/config.hpp"
#include "bogolab/pipelines.hpp"

using bogolab::RunConfig;

namespace {

// flags land in strings first so that unset flags keep config-file values
struct FlagSet {
    std::string config_path;
    std::string potential, rho, temp_ratio, N, alpha_source, out, c_eps, dump_ops, dump_coeffs;
    double gamma = -1.0, epsilon = -1.0, kappa = -1.0, cap_factor = -1.0, tol = -1.0;
    long long seed = -1;
    int threads = -1;
};

void apply_flags(const FlagSet& f, RunConfig& cfg) {
    if (!f.potential.empty()) cfg.potential = f.potential;
    if (!f.rho.empty()) cfg.rho = bogolab::parse_double_list(f.rho);
    if (!f.temp_ratio.empty()) cfg.temp_ratio = bogolab::parse_double_list(f.temp_ratio);
    if (!f.N.empty()) cfg.N_ladder = bogolab::parse_double_list(f.N);
    if (!f.alpha_source.empty()) {
        if (f.alpha_source != "full" && f.alpha_source != "box")
            throw CLI::ValidationError("--alpha-source must be 'full' or 'box'");
        cfg.alpha_source = f.alpha_source;
    }
    if (!f.out.empty()) cfg.out = f.out;
    if (!f.c_eps.empty()) {
        const auto parts = bogolab::parse_double_list(f.c_eps);
        cfg.c_eps_c = parts.size() > 0 ? parts[0] : 0.0;
        cfg.c_eps_eps = parts.size() > 1 ? parts[1] : 0.0;
    }
    if (!f.dump_ops.empty()) cfg.dump_ops = f.dump_ops;
    if (!f.dump_coeffs.empty()) cfg.dump_coeffs = f.dump_coeffs;
    if (f.gamma > 0) cfg.gamma = f.gamma;
    if (f.epsilon > 0) cfg.epsilon = f.epsilon;
    if (f.kappa > 0) cfg.kappa = f.kappa;
    if (f.cap_factor > 0) cfg.cap_factor = f.cap_factor;
    if (f.tol > 0) cfg.tol = f.tol;
    if (f.seed >= 0) cfg.seed = std::uint64_t(f.seed);
    if (f.threads > 0) cfg.threads = f.threads;
}

void add_common(CLI::App* sub, FlagSet& f) {
    sub->add_option("--config", f.config_path, "flat key-value config file; flags override");
    sub->add_option("--potential", f.potential, "potential spec, e.g. soft-sphere:V0=2,R=1");
    sub->add_option("--rho", f.rho, "density list rho1,rho2,...");
    sub->add_option("--gamma", f.gamma, "box exponent gamma > 1");
    sub->add_option("--epsilon", f.epsilon, "shell half-width exponent");
    sub->add_option("--temp-ratio", f.temp_ratio, "T/(rho*a) list");
    sub->add_option("--N", f.N, "explicit N ladder (overrides rho-derived)");
    sub->add_option("--kappa", f.kappa, "kappa used with --N");
    sub->add_option("--cap-factor", f.cap_factor, "lattice cap as multiple of N^(1-kappa)");
    sub->add_option("--tol", f.tol, "solver tolerance");
    sub->add_option("--seed", f.seed, "seed for randomized checks");
    sub->add_option("--alpha-source", f.alpha_source, "a entering shell quantities: full|box");
    sub->add_option("--out", f.out, "output CSV path (written atomically)");
    sub->add_option("--c-eps", f.c_eps, "error allowance c,eps of the assembled bound");
    sub->add_option("--threads", f.threads, "row-level parallelism");
    sub->add_option("--dump-ops", f.dump_ops, "directory for sparse triplet operator dumps");
    sub->add_option("--dump-coeffs", f.dump_coeffs, "directory for coefficient CSV tables");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for the dilute Bose gas free-energy upper bound"};
    app.require_subcommand(1);

    FlagSet flags;
    for (const char* name : {"scattering", "free-energy", "verify", "fock-demo", "localize"}) {
        auto* sub = app.add_subcommand(name);
        add_common(sub, flags);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = flags.config_path.empty() ? RunConfig{}
                                                  : RunConfig::load_file(flags.config_path);
        apply_flags(flags, cfg);
        cfg.command = app.get_subcommands().front()->get_name();
        const bogolab::RunResult res = bogolab::run(cfg);
        std::cout << res.output;
        return res.exit_code;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
