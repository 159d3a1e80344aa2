#ifndef BOGOLAB_THERMAL_HPP
#define BOGOLAB_THERMAL_HPP

#include <functional>
#include <vector>

#include "bogolab/bogoliubov.hpp"
#include "bogolab/regime.hpp"
#include "bogolab/scattering.hpp"

namespace bogolab {

// n = 1/(exp(e/T_eff) - 1) through expm1. The condensate mode never enters
// the Gibbs state, so e <= 0 is rejected.
double bose_occupation(double e, double T_eff);

// <N_p^2> = 2 n^2 + n for a single thermal mode.
inline double bose_occupation_second_moment(double n) { return 2.0 * n * n + n; }

struct ThermalOccupations {
    double T_eff = 0.0;
    std::vector<Mode> modes;
    std::vector<double> n;   // <N_p>
    std::vector<double> n2;  // <N_p^2>
};

ThermalOccupations thermal_occupations(const std::vector<Mode>& shell, const Dispersion& disp,
                                       double T_eff);

struct ShellNumber {
    double thermal = 0.0;    // sum_S (A/e) n_p
    double depletion = 0.0;  // 1/2 sum_S (A/e - 1)
    double total() const { return thermal + depletion; }
    double free_gas = 0.0;   // sum_S n_p at a = 0 dispersion, cross-check value
};

// Tr N_S Gamma = sum_S (A_p/e_p) n_p + 1/2 sum_S (A_p/e_p - 1).
ShellNumber shell_number(const std::vector<Mode>& shell, const Dispersion& disp, double T_eff);

struct ShellSecondMoment {
    double value = 0.0;        // Tr N_S^2 Gamma
    double factorized = 0.0;   // (Tr N_S Gamma)^2
    double diagonal = 0.0;     // sum_p [<N_p^2> - <N_p>^2]
    double pair = 0.0;         // sum_p [<N_p N_-p> - <N_p><N_-p>]
};

// Tr N_S^2 Gamma via the factorization of the Gibbs state: the square of the
// first moment plus the exact p = q and q = -p corrections of the
// pair-correlated modes.
ShellSecondMoment shell_number_second_moment(const std::vector<Mode>& shell,
                                             const Dispersion& disp, double T_eff);

// Exact one-mode-pair moments for a Bogoliubov-rotated thermal pair (p, -p):
// returns {<N_p>, <N_p^2>, <N_p N_-p>} given gamma, sigma and the bare
// occupation n of both modes. Independent oracle target for the Fock
// simulator.
struct PairMoments {
    double first = 0.0;
    double second = 0.0;
    double cross = 0.0;
};
PairMoments rotated_pair_moments(double gamma, double sigma, double n);

// (1/(2pi)^3) int [ sqrt(q^4 + 16 pi a q^2) - q^2 - 8 pi a + (8 pi a)^2 /
// (2 q^2) ] dq = 4 pi a * 128 a^(3/2) / (15 sqrt(pi)); quadrature value,
// matching the closed form to 1e-6 relative. Throws on non-convergence with
// the achieved estimate in the message.
double lhy_integral(double a);
double lhy_integral_closed_form(double a);

// int_R3 log[1 - exp(-sqrt(q^4 + 16 pi y q^2))] dq for y = a/x >= 0,
// x = T N^(2-3kappa); negative and finite, log(-expm1(-e)) inside.
double thermal_integral(double a_over_x);

struct RiemannGap {
    double lattice_sum = 0.0;  // h^3 sum f(q_i), h = 2*pi/N^(kappa/2)
    double integral = 0.0;
    double gap = 0.0;
};

// Riemann-sum-to-integral comparison on the rescaled shell annulus
// r0 < |q| <= r1 for a radial integrand.
RiemannGap riemann_gap(const RegimeParams& params, double r0, double r1,
                       const std::function<double(double)>& radial_integrand);

struct N0Choice {
    double N0 = 0.0;
    double slack = 0.0;          // N^(3kappa/2 - (kappa - 1/2))
    bool exceeds_N = false;      // N0 > N: allowed by the choice rule, flagged
    double depletion_ratio = 0.0;  // (N - N0)/N^(3kappa/2), reported constant
};

// N0 = N - Tr N_S Gamma + N^(3kappa/2-(kappa-1/2)). Errors if the shell
// number reaches N ("regime violated"); warns (never clamps) if N0 > N.
N0Choice choose_N0(const RegimeParams& params, double shell_number);

struct ParticleNumber {
    double lower = 0.0;          // N0 + Tr N_S Gamma
    double high_thermal = 0.0;   // 2 sum_{p in H} N0^2 phi_p^2 <N_p>
    double high_static = 0.0;    // sum_{|p| > N^(k/2+e)} N0^2 phi_p^2
    double total() const { return lower + high_thermal + high_static; }
    double slack_constant = 0.0;  // (total - lower)/N^(3kappa/2 - eps)
};

// Expected particle number of the dressed state: N0 + Tr N_S Gamma plus the
// two quadratic-branch corrections. occupancy_H maps high modes to <N_p>
// (empty = vacuum occupancy).
ParticleNumber total_particle_number(const RegimeParams& params, const ScatteringSolution& phi,
                                     double N0, double shell_number,
                                     const std::function<double(const Mode&)>& occupancy_H);

struct FreeEnergyReport {
    double rho = 0.0;
    double T = 0.0;
    double leading = 0.0;          // 4 pi a rho^2
    double lhy = 0.0;              // leading * 128/(15 sqrt(pi)) * sqrt(rho a^3)
    double error_allowance = 0.0;  // leading * c * (rho a^3)^(1/2+eps)
    double thermal = 0.0;          // T^(5/2)/(2pi)^3 * thermal_integral(rho a / T)
    double total = 0.0;
};

// Theorem-level assembly of the free-energy upper bound per unit volume.
// c_eps = (c, eps) of the error allowance; c defaults to 0.
FreeEnergyReport free_energy_upper_bound(double rho, double T, double a, double c = 0.0,
                                         double eps = 0.0);

// -T_eff log Z = T_eff sum_S log(1 - exp(-e_p/T_eff)).
double gamma0_free_energy(const std::vector<Mode>& shell, const Dispersion& disp, double T_eff);

// Independent route: Tr(H Gamma_0) - T_eff S(Gamma_0) with the mode-wise
// entropy sum [(1+n)log(1+n) - n log n].
double gamma0_free_energy_energy_entropy(const std::vector<Mode>& shell, const Dispersion& disp,
                                         double T_eff);

}  // namespace bogolab

#endif
