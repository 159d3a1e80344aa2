#include "bogolab/pipelines.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>

#include "bogolab/acceptance.hpp"
#include "bogolab/bogoliubov.hpp"
#include "bogolab/fock_transforms.hpp"
#include "bogolab/localization.hpp"
#include "bogolab/numerics.hpp"
#include "bogolab/potential.hpp"
#include "bogolab/regime.hpp"
#include "bogolab/scattering.hpp"
#include "bogolab/thermal.hpp"

namespace bogolab {

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

namespace {

std::vector<double> scattering_ladder(const RunConfig& cfg) {
    if (!cfg.N_ladder.empty()) return cfg.N_ladder;
    // ladder from the rho list through the regime dictionary, or a default
    if (cfg.rho.size() >= 2) {
        std::vector<double> ns;
        for (double rho : cfg.rho)
            ns.push_back(derive_regime(rho, cfg.gamma, cfg.epsilon, 0.0).N);
        return ns;
    }
    return {128, 256, 512, 1024};
}

}  // namespace

RunResult run_scattering(const RunConfig& cfg) {
    std::ostringstream os;
    const RadialPotential pot = RadialPotential::parse(cfg.potential);
    const FullSpaceScatteringLength oracle = full_space_scattering_length(pot);
    os << "potential: " << pot.name() << "\n";
    os << "full-space a (ode) = " << format_double(oracle.a_ode);
    if (oracle.a_analytic) os << ", analytic = " << format_double(*oracle.a_analytic);
    os << "\n";

    const std::vector<double> ladder = scattering_ladder(cfg);
    const double kappa = cfg.N_ladder.empty() && cfg.rho.size() >= 2
                             ? derive_regime(cfg.rho.front(), cfg.gamma, cfg.epsilon, 0.0).kappa
                             : cfg.kappa;
    std::ostringstream csv;
    csv << "N,kappa,cap,a_oracle,a_N,a_N_corrected,correction,tail_8pi,residual,iterations\n";
    std::vector<double> lx, ly;
    std::vector<NormReport> norms;
    std::vector<double> ns_used;
    for (double N : ladder) {
        const RegimeParams par = regime_from_box(N, kappa, cfg.epsilon, 0.0, oracle.a);
        const double cap = cfg.cap_factor * std::pow(N, 1.0 - kappa);
        const ScatteringSolution sol = solve_box_scattering(pot, par, cap, cfg.tol);
        const double diff = std::abs(sol.a_N_tail_corrected - oracle.a);
        os << "N=" << format_double(N) << "  a_N=" << format_double(sol.a_N)
           << "  corrected=" << format_double(sol.a_N_tail_corrected)
           << "  |a_N - a|=" << format_double(diff) << "  residual="
           << format_double(sol.residual) << "  iters=" << sol.iterations << "\n";
        csv << format_double(N) << ',' << format_double(kappa) << ',' << format_double(cap)
            << ',' << format_double(oracle.a) << ',' << format_double(sol.a_N) << ','
            << format_double(sol.a_N_tail_corrected) << ',' << format_double(sol.correction)
            << ',' << format_double(sol.tail_correction_8pi) << ','
            << format_double(sol.residual) << ',' << sol.iterations << "\n";
        lx.push_back(std::log(N));
        ly.push_back(std::log(diff));
        const double alpha = kappa / 2.0 + cfg.epsilon;
        norms.push_back(lemma21_norm_report(sol, par, alpha));
        ns_used.push_back(N);

        if (!cfg.dump_coeffs.empty()) {
            std::filesystem::create_directories(cfg.dump_coeffs);
            std::ostringstream pcsv;
            pcsv << "px,py,pz,phi\n";
            for (std::size_t i = 0; i < sol.lattice.size(); ++i)
                pcsv << sol.lattice[i][0] << ',' << sol.lattice[i][1] << ','
                     << sol.lattice[i][2] << ',' << format_double(sol.phi[i]) << "\n";
            write_file_atomic(cfg.dump_coeffs + "/phi_N" + format_double(N) + ".csv",
                              pcsv.str());
            const auto high = high_branch(sol, N, par);
            std::ostringstream hcsv;
            hcsv << "px,py,pz,c,s\n";
            for (const auto& h : high)
                hcsv << h.mode[0] << ',' << h.mode[1] << ',' << h.mode[2] << ','
                     << format_double(h.c) << ',' << format_double(h.s) << "\n";
            write_file_atomic(cfg.dump_coeffs + "/high_N" + format_double(N) + ".csv",
                              hcsv.str());
            try {
                const MomentumSets sets = momentum_sets(par, par.shell_outer() * 1.0001);
                std::vector<Mode> shell;
                for (auto idx : sets.shell) shell.push_back(sets.lattice[idx]);
                const auto sc = shell_branch(oracle.a, par, shell);
                std::ostringstream scsv;
                scsv << "px,py,pz,tau,gamma,sigma\n";
                for (const auto& s : sc)
                    scsv << s.mode[0] << ',' << s.mode[1] << ',' << s.mode[2] << ','
                         << format_double(s.tau) << ',' << format_double(s.gamma) << ','
                         << format_double(s.sigma) << "\n";
                write_file_atomic(cfg.dump_coeffs + "/shell_N" + format_double(N) + ".csv",
                                  scsv.str());
            } catch (const std::exception& e) {
                os << "shell coefficients skipped for N=" << format_double(N) << ": "
                   << e.what() << "\n";
            }
        }
    }
    int exit_code = 0;
    if (ladder.size() >= 2) {
        const double slope = fit_line(lx, ly).slope;
        os << "rate regression: slope = " << format_double(slope) << ", expected "
           << format_double(kappa - 1.0) << "\n";
        if (std::abs(slope - (kappa - 1.0)) > 0.2) exit_code = 1;
        for (const auto& f : norm_scaling_flags(ns_used, norms, kappa)) {
            os << "norm " << f.norm << ": fitted exponent " << format_double(f.fitted_exponent)
               << " expected " << format_double(f.expected_exponent)
               << (f.flagged ? "  [FLAGGED]" : "") << "\n";
            if (f.flagged) exit_code = 1;
        }
        os << "norm bounds read as absolute values of phi (phi itself is negative at small p "
              "for repulsive V)\n";
    }
    if (!cfg.out.empty()) write_file_atomic(cfg.out, csv.str());
    return {exit_code, os.str()};
}

std::string free_energy_csv(const RunConfig& cfg) {
    const RadialPotential pot = RadialPotential::parse(cfg.potential);
    const FullSpaceScatteringLength oracle = full_space_scattering_length(pot);
    const double a = oracle.a;
    struct Row {
        double rho, ratio;
    };
    std::vector<Row> rows;
    for (double rho : cfg.rho)
        for (double ratio : cfg.temp_ratio) rows.push_back({rho, ratio});
    std::vector<std::string> lines(rows.size());
    const int threads = std::max(1, cfg.threads);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const double T = rows[i].ratio * rows[i].rho * a;
            const FreeEnergyReport rep =
                free_energy_upper_bound(rows[i].rho, T, a, cfg.c_eps_c, cfg.c_eps_eps);
            lines[i] = format_double(rep.rho) + "," + format_double(rep.T) + "," +
                       format_double(rep.leading) + "," + format_double(rep.lhy) + "," +
                       format_double(rep.thermal) + "," + format_double(rep.total);
        }
    };
    if (threads == 1) {
        work(0, rows.size());
    } else {
        std::vector<std::future<void>> futs;
        const std::size_t chunk = (rows.size() + std::size_t(threads) - 1) / std::size_t(threads);
        for (int t = 0; t < threads; ++t) {
            const std::size_t b = std::min(rows.size(), std::size_t(t) * chunk);
            const std::size_t e = std::min(rows.size(), b + chunk);
            if (b < e) futs.push_back(std::async(std::launch::async, work, b, e));
        }
        for (auto& f : futs) f.get();
    }
    std::string csv = "rho,T,leading,lhy,thermal,total\n";
    for (const auto& l : lines) csv += l + "\n";
    return csv;
}

RunResult run_free_energy(const RunConfig& cfg) {
    const std::string csv = free_energy_csv(cfg);
    if (!cfg.out.empty()) write_file_atomic(cfg.out, csv);
    return {0, csv};
}

RunResult run_verify(const RunConfig& cfg) {
    const AcceptanceOptions opt{cfg.seed, cfg.threads};
    const auto results = run_acceptance(opt);
    std::string table = acceptance_table(results);
    if (!cfg.out.empty()) write_file_atomic(cfg.out, acceptance_csv(results));
    return {all_pass(results) ? 0 : 1, table};
}

RunResult run_fock_demo(const RunConfig& cfg) {
    const auto results = fock_lemma_battery(cfg.seed, true);
    std::ostringstream os;
    os << acceptance_table(results);

    const ToyLayout toy = default_toy_layout();
    const FockSpace space(toy.modes, toy.total_cap);
    os << "default layout dimension: " << space.dim() << "\n";
    for (int k : space.modes_with_tag(ModeTag::Shell))
        for (int r : space.connection_range(k)) os << describe_cutoff(space, k, r) << "\n";

    if (!cfg.dump_ops.empty()) {
        std::filesystem::create_directories(cfg.dump_ops);
        const auto phi = synthetic_phi(0.35);
        const int k = *space.find_mode({0, 0, 1});
        const CubicOps ops = cubic_generator(space, k, phi, 50.0);
        const SparseOperator tk = cubic_unitary(space, k, phi, 50.0);
        auto dump = [&cfg](const SparseOperator& op, const std::string& name) {
            std::ostringstream body;
            op.dump_triplets(body);
            write_file_atomic(cfg.dump_ops + "/" + name + ".txt", body.str());
        };
        dump(ops.b_sharp, "b_sharp_k");
        dump(tk, "t_k");
        dump(gibbs_gamma0(space,
                          [](const Mode& m) {
                              const double p2 = double(m[0]) * m[0] + double(m[1]) * m[1] +
                                                double(m[2]) * m[2];
                              return std::sqrt(p2 * (p2 + 1.0));
                          },
                          1.3),
             "gamma0");
        os << "operators dumped to " << cfg.dump_ops << "\n";
    }
    if (!cfg.out.empty()) write_file_atomic(cfg.out, acceptance_csv(results));
    return {all_pass(results) ? 0 : 1, os.str()};
}

RunResult run_localize(const RunConfig& cfg) {
    std::ostringstream os;
    const WindowSpec spec{1.0, 0.25, 0.1};
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double t = -spec.L / 2.0 - spec.ell + 2.0 * spec.ell * i / 1000.0;
        const double q1 = window_value(t, spec);
        const double q2 = window_value(t + spec.L, spec);
        worst = std::max(worst, std::abs(q1 * q1 + q2 * q2 - 1.0));
    }
    os << "partition identity max deviation: " << format_double(worst) << "\n";
    os << "int q^2 - L: " << format_double(window_sq_integral(spec) - spec.L) << "\n";

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uc(-1.0, 1.0);
    double worst_gap = 0.0;
    for (int s = 0; s < 5; ++s) {
        std::vector<double> ac(21), bc(21);
        for (int j = 0; j <= 20; ++j) {
            ac[std::size_t(j)] = uc(rng);
            bc[std::size_t(j)] = uc(rng);
        }
        auto phi = [&](double t) {
            double v = ac[0];
            for (int j = 1; j <= 20; ++j) {
                const double w = 2.0 * 3.14159265358979323846 * j * t / spec.L;
                v += ac[std::size_t(j)] * std::cos(w) + bc[std::size_t(j)] * std::sin(w);
            }
            return v;
        };
        worst_gap = std::max(worst_gap, periodic_integral_check(phi, spec));
    }
    os << "periodic integral preservation (deg 20, 5 seeds) max gap: "
       << format_double(worst_gap) << "\n";

    // dilution bookkeeping over a rho ladder with ell = L^alpha, alpha < 1/2.
    // The rho_tilde >= rho leg needs rho^((gamma+2)/2) to beat the volume
    // loss ~ 6 rho^(1+gamma(1-alpha)); with gamma = 1.1, alpha = 0.45 the
    // exponents differ by 0.055, so the chain closes only deep in the dilute
    // regime.
    const double alpha = 0.45, c1 = 1.0;
    bool chain_ok = true;
    double prev_ratio = HUGE_VAL;
    bool ratio_decays = true;
    for (double rho : {1e-20, 1e-22, 1e-24, 1e-26}) {
        const double L = std::pow(rho, -cfg.gamma);
        const WindowSpec w{L, std::pow(L, alpha), 0.1 * std::pow(L, alpha)};
        const double TrN = (rho + c1 * std::pow(rho, (cfg.gamma + 2.0) / 2.0)) * L * L * L;
        const DilutionReport rep = dilution_bookkeeping(TrN, w);
        const bool ok = rep.rho_tilde >= rho;
        chain_ok = chain_ok && ok;
        const double ratio = rep.overhead / (rho * rho);  // vs leading ~ rho^2
        ratio_decays = ratio_decays && ratio < prev_ratio;
        prev_ratio = ratio;
        os << "rho=" << format_double(rho) << "  rho_tilde/rho - 1="
           << format_double(rep.rho_tilde / rho - 1.0)
           << "  overhead/leading=" << format_double(ratio)
           << (ok ? "" : "  [rho_tilde < rho]") << "\n";
    }
    chain_ok = chain_ok && ratio_decays;
    if (!ratio_decays) os << "overhead/leading ratio failed to decay\n";
    const bool pass = worst <= 1e-10 && worst_gap <= 1e-10 && chain_ok;
    os << (pass ? "localize: all checks pass\n" : "localize: FAIL\n");
    if (!cfg.out.empty()) write_file_atomic(cfg.out, os.str());
    return {pass ? 0 : 1, os.str()};
}

RunResult run(const RunConfig& cfg) {
    if (cfg.command == "scattering") return run_scattering(cfg);
    if (cfg.command == "free-energy") return run_free_energy(cfg);
    if (cfg.command == "verify") return run_verify(cfg);
    if (cfg.command == "fock-demo") return run_fock_demo(cfg);
    if (cfg.command == "localize") return run_localize(cfg);
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

}  // namespace bogolab
