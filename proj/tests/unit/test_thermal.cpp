#include <doctest.h>

#include <cmath>

#include "bogolab/numerics.hpp"
#include "bogolab/regime.hpp"
#include "bogolab/scattering.hpp"
#include "bogolab/thermal.hpp"

using namespace bogolab;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<Mode> unit_shell() {
    return {{0, 0, 1}, {0, 0, -1}, {0, 1, 0}, {0, -1, 0}, {1, 0, 0}, {-1, 0, 0}};
}
}  // namespace

TEST_CASE("bose occupation closed values") {
    CHECK(bose_occupation(std::log(2.0), 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    // deep tail: no overflow, value ~ e^-100
    const double tail = bose_occupation(100.0, 1.0);
    CHECK(tail == doctest::Approx(std::exp(-100.0)).epsilon(1e-10));
    // second moment at n = 1: 2 + 1 = 3
    CHECK(bose_occupation_second_moment(1.0) == 3.0);
    CHECK_THROWS_AS(bose_occupation(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(bose_occupation(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("shell number splits into thermal and depletion parts") {
    const RegimeParams par = regime_from_box(64, 0.52, 0.08, 0.0);
    const double a = 0.238;
    const Dispersion d = make_dispersion(a, par);
    SUBCASE("T -> 0 leaves the depletion sum") {
        const ShellNumber sn = shell_number(unit_shell(), d, 1e-6);
        CHECK(sn.thermal < 1e-200);
        double dep = 0.0;
        for (const Mode& m : unit_shell()) {
            const double p2 = mode_norm2(m);
            dep += 0.5 * (d.A(p2) / d.e(p2) - 1.0);
        }
        CHECK(sn.depletion == doctest::Approx(dep).epsilon(1e-14));
        CHECK(sn.total() > 0.0);
    }
    SUBCASE("a = 0 reduces to the free gas") {
        const Dispersion free_d = make_dispersion(0.0, par);
        const double T_eff = 60.0;
        const ShellNumber sn = shell_number(unit_shell(), free_d, T_eff);
        CHECK(sn.depletion == 0.0);
        double direct = 0.0;
        for (const Mode& m : unit_shell()) direct += bose_occupation(mode_norm2(m), T_eff);
        CHECK(sn.thermal == doctest::Approx(direct).epsilon(1e-14));
        CHECK(sn.free_gas == doctest::Approx(direct).epsilon(1e-14));
    }
}

TEST_CASE("rotated pair moments against brute-force spectral sums") {
    // oracle: thermal average over a truncated two-mode spectrum under the
    // Bogoliubov rotation, evaluated by explicit summation of matrix
    // elements of (gamma a_p^dag + sigma a_-p)(gamma a_p + sigma a_-p^dag)
    const double tau = -0.21, T = 1.7, e = 1.1;
    const double g = std::cosh(tau), s = std::sinh(tau);
    const int cap = 60;
    double z = 0.0, first = 0.0, second = 0.0, cross = 0.0;
    for (int n1 = 0; n1 <= cap; ++n1)
        for (int n2 = 0; n2 <= cap; ++n2) {
            const double w = std::exp(-e * (n1 + n2) / T);
            z += w;
            // <n1 n2| rotated N_p |n1 n2> = g^2 n1 + s^2 (1 + n2)
            const double k1 = g * g * n1 + s * s * (1.0 + n2);
            const double k2 = g * g * n2 + s * s * (1.0 + n1);
            // off-diagonal part contributes g^2 s^2 (n1 n2 + (1+n1)(1+n2))
            const double w2 = g * g * s * s *
                              (double(n1) * n2 + (1.0 + n1) * (1.0 + n2));
            first += w * k1;
            second += w * (k1 * k1 + w2);
            cross += w * (k1 * k2 + w2);
        }
    first /= z;
    second /= z;
    cross /= z;
    const double n = bose_occupation(e, T);
    const PairMoments pm = rotated_pair_moments(g, s, n);
    CHECK(pm.first == doctest::Approx(first).epsilon(1e-10));
    CHECK(pm.second == doctest::Approx(second).epsilon(1e-10));
    CHECK(pm.cross == doctest::Approx(cross).epsilon(1e-10));
}

TEST_CASE("shell second moment tends to the factorized square") {
    const double a = 0.238;
    // ratio Tr N_S^2 / (Tr N_S)^2 -> 1 as the shell grows
    double prev_ratio = 10.0;
    for (double N : {1e4, 1e5, 1e6}) {
        const RegimeParams par = regime_from_box(N, 0.52, 0.08, 0.0);
        const MomentumSets sets = momentum_sets(par, par.shell_outer() * 1.0001);
        std::vector<Mode> shell;
        for (auto i : sets.shell) shell.push_back(sets.lattice[i]);
        const Dispersion d = make_dispersion(a, par);
        const double T_eff = d.e(mode_norm2(shell.front()));
        const ShellSecondMoment m2 = shell_number_second_moment(shell, d, T_eff);
        const ShellNumber sn = shell_number(shell, d, T_eff);
        CHECK(m2.factorized ==
              doctest::Approx(sn.total() * sn.total()).epsilon(1e-10));
        const double ratio = m2.value / m2.factorized;
        CHECK(ratio > 1.0);  // diagonal corrections are positive
        CHECK(ratio < prev_ratio);
        prev_ratio = ratio;
    }
    CHECK(prev_ratio < 1.05);
}

TEST_CASE("lhy integral: closed form, zero, scaling") {
    CHECK(lhy_integral(0.0) == 0.0);
    const double v1 = lhy_integral(1.0);
    CHECK(v1 == doctest::Approx(512.0 * std::sqrt(kPi) / 15.0).epsilon(1e-8));
    CHECK(v1 == doctest::Approx(60.4998).epsilon(1e-5));
    // a^(5/2) scaling to 1e-9 relative over {1/4, 1, 4}
    const double v14 = lhy_integral(0.25), v4 = lhy_integral(4.0);
    CHECK(v14 / std::pow(0.25, 2.5) == doctest::Approx(v1).epsilon(1e-9));
    CHECK(v4 / std::pow(4.0, 2.5) == doctest::Approx(v1).epsilon(1e-9));
}

TEST_CASE("thermal integral: free-gas series oracle, monotonicity, gap limit") {
    // -pi^(3/2) * zeta(5/2) by direct series
    double zeta52 = 0.0;
    for (int k = 1; k < 200000; ++k) zeta52 += std::pow(double(k), -2.5);
    zeta52 += std::pow(199999.5, -1.5) / 1.5;  // integral tail correction
    const double oracle = -std::pow(kPi, 1.5) * zeta52;
    CHECK(thermal_integral(0.0) == doctest::Approx(oracle).epsilon(1e-7));
    CHECK(thermal_integral(0.0) == doctest::Approx(-7.4694).epsilon(1e-4));

    // monotone increasing toward zero in the gap parameter
    double prev = thermal_integral(0.0);
    for (double y : {0.1, 1.0, 10.0, 100.0}) {
        const double v = thermal_integral(y);
        CHECK(v > prev);
        CHECK(v < 0.0);
        prev = v;
    }
    CHECK(thermal_integral(300.0) > -1e-10);  // gapped limit
}

TEST_CASE("riemann gap") {
    const RegimeParams par = regime_from_box(4e4, 0.52, 0.08, 0.0);
    SUBCASE("zero integrand") {
        const RiemannGap g = riemann_gap(par, 0.2, 2.0, [](double) { return 0.0; });
        CHECK(g.gap == 0.0);
    }
    SUBCASE("constant integrand counts the annulus volume") {
        const RiemannGap g = riemann_gap(par, 0.0, 2.0, [](double) { return 1.0; });
        const double vol = 4.0 * kPi / 3.0 * 8.0;
        CHECK(g.integral == doctest::Approx(vol).epsilon(1e-9));
        CHECK(g.gap / vol < 0.05);  // boundary-count error
    }
    SUBCASE("smooth integrand decays across an N ladder") {
        auto f = [](double r) { return std::exp(-2.0 * r * r); };
        std::vector<double> lx, ly;
        for (double N : {1e4, 4e4, 1.6e5, 6.4e5}) {
            const RegimeParams p = regime_from_box(N, 0.52, 0.08, 0.0);
            const RiemannGap g = riemann_gap(p, 0.0, 3.0, f);
            lx.push_back(std::log(N));
            ly.push_back(std::log(std::max(g.gap, 1e-300)));
        }
        const double slope = fit_line(lx, ly).slope;
        CHECK(slope <= -0.52 / 2.0 + 0.2);
    }
}

TEST_CASE("condensate number choice") {
    const RegimeParams par = regime_from_box(1e6, 0.52, 0.08, 0.0);
    SUBCASE("slack term exponent") {
        const N0Choice c = choose_N0(par, 1000.0);
        CHECK(c.slack == doctest::Approx(std::pow(1e6, 0.76)).epsilon(1e-12));
        CHECK(c.N0 == doctest::Approx(par.N - 1000.0 + c.slack).epsilon(1e-14));
        CHECK_FALSE(c.exceeds_N);
    }
    SUBCASE("zero shell number exceeds N and carries the warning") {
        const N0Choice c = choose_N0(par, 0.0);
        CHECK(c.N0 > par.N);
        CHECK(c.exceeds_N);
    }
    SUBCASE("shell number at N violates the regime") {
        CHECK_THROWS_WITH_AS(choose_N0(par, par.N), "regime violated: Tr N_S Gamma >= N",
                             std::runtime_error);
    }
}

TEST_CASE("total particle number bookkeeping") {
    const RadialPotential pot = RadialPotential::soft_sphere(2.0, 1.0);
    const RegimeParams par = regime_from_box(256, 0.52, 0.08, 0.0);
    const double cap = 5.0 * std::pow(par.N, 1.0 - par.kappa);
    const ScatteringSolution sol = solve_box_scattering(pot, par, cap, 1e-10);
    const double N0 = par.N * 0.98, shell_n = 10.0;
    SUBCASE("vacuum H occupancy kills the thermal correction") {
        const ParticleNumber pn =
            total_particle_number(par, sol, N0, shell_n, [](const Mode&) { return 0.0; });
        CHECK(pn.high_thermal == 0.0);
        CHECK(pn.lower == doctest::Approx(N0 + shell_n));
        CHECK(pn.high_static > 0.0);
    }
    SUBCASE("static correction equals N0^2 ||phi^(alpha)||_2^2 from the norm report") {
        const ParticleNumber pn =
            total_particle_number(par, sol, N0, shell_n, nullptr);
        const NormReport rep = lemma21_norm_report(sol, par, par.kappa / 2.0 + par.epsilon);
        CHECK(pn.high_static ==
              doctest::Approx(N0 * N0 * rep.l2_alpha * rep.l2_alpha).epsilon(1e-12));
    }
}

TEST_CASE("free energy report") {
    const double a = 1.0 - std::tanh(1.0);
    SUBCASE("T = 0 has no thermal term and matches the LHY form term by term") {
        const FreeEnergyReport rep = free_energy_upper_bound(1e-4, 0.0, a);
        CHECK(rep.thermal == 0.0);
        CHECK(rep.leading == doctest::Approx(4.0 * kPi * a * 1e-8).epsilon(1e-14));
        const double lhy_ratio = 128.0 / (15.0 * std::sqrt(kPi)) * std::sqrt(1e-4 * a * a * a);
        CHECK(rep.lhy == doctest::Approx(rep.leading * lhy_ratio).epsilon(1e-13));
        CHECK(rep.total == doctest::Approx(rep.leading + rep.lhy).epsilon(1e-14));
        CHECK(128.0 / (15.0 * std::sqrt(kPi)) == doctest::Approx(4.81444).epsilon(1e-5));
    }
    SUBCASE("thermal term at T = rho a uses the x = 16 pi substitution") {
        const double rho = 1e-4, T = rho * a;
        const FreeEnergyReport rep = free_energy_upper_bound(rho, T, a);
        const double expected =
            std::pow(T, 2.5) / std::pow(2.0 * kPi, 3.0) * thermal_integral(1.0);
        CHECK(rep.thermal == doctest::Approx(expected).epsilon(1e-13));
        CHECK(rep.thermal < 0.0);
    }
    SUBCASE("total grows with rho at fixed small T") {
        double prev = 0.0;
        for (double rho : {1e-5, 2e-5, 4e-5}) {
            const FreeEnergyReport rep = free_energy_upper_bound(rho, 1e-9, a);
            CHECK(rep.total > prev);
            prev = rep.total;
        }
    }
    SUBCASE("dilution guard") {
        CHECK_THROWS_AS(free_energy_upper_bound(2.0, 0.0, 1.0), std::runtime_error);
    }
    SUBCASE("error allowance with c > 0") {
        const FreeEnergyReport rep = free_energy_upper_bound(1e-4, 0.0, a, 2.0, 0.1);
        CHECK(rep.error_allowance ==
              doctest::Approx(rep.leading * 2.0 * std::pow(1e-4 * a * a * a, 0.6))
                  .epsilon(1e-12));
    }
}

TEST_CASE("gamma0 free energy: one-mode closed form and the Gibbs identity") {
    const RegimeParams par = regime_from_box(64, 0.52, 0.08, 0.0);
    SUBCASE("single mode at e/T = ln 2") {
        // dispersion with e(p2) = ln2 * T_eff at the first shell vector
        const double T_eff = 3.0;
        const double p2 = mode_norm2(Mode{0, 0, 1});
        Dispersion d;
        d.a = 0.0;
        const double target = std::log(2.0) * T_eff;
        d.coupling = target * target / p2 - p2;
        REQUIRE(d.e(p2) == doctest::Approx(target).epsilon(1e-12));
        const std::vector<Mode> one = {{0, 0, 1}};
        CHECK(gamma0_free_energy(one, d, T_eff) ==
              doctest::Approx(-T_eff * std::log(2.0)).epsilon(1e-13));
        CHECK(gamma0_free_energy_energy_entropy(one, d, T_eff) ==
              doctest::Approx(-T_eff * std::log(2.0)).epsilon(1e-13));
    }
    SUBCASE("T -> 0 limit vanishes") {
        const Dispersion d = make_dispersion(0.3, par);
        CHECK(std::abs(gamma0_free_energy(unit_shell(), d, 1e-8)) < 1e-200);
    }
}
