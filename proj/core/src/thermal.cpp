#include "bogolab/thermal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bogolab/numerics.hpp"

namespace bogolab {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

double bose_occupation(double e, double T_eff) {
    if (!(e > 0.0)) throw std::invalid_argument("bose_occupation: e must be positive");
    if (!(T_eff > 0.0)) throw std::invalid_argument("bose_occupation: T_eff must be positive");
    return bose_factor(e / T_eff);
}

ThermalOccupations thermal_occupations(const std::vector<Mode>& shell, const Dispersion& disp,
                                       double T_eff) {
    ThermalOccupations occ;
    occ.T_eff = T_eff;
    occ.modes = shell;
    occ.n.reserve(shell.size());
    occ.n2.reserve(shell.size());
    for (const Mode& m : shell) {
        const double n = bose_occupation(disp.e(mode_norm2(m)), T_eff);
        occ.n.push_back(n);
        occ.n2.push_back(bose_occupation_second_moment(n));
    }
    return occ;
}

ShellNumber shell_number(const std::vector<Mode>& shell, const Dispersion& disp, double T_eff) {
    if (shell.empty()) throw std::invalid_argument("shell_number: shell must be nonempty");
    ShellNumber out;
    KahanSum thermal, depletion, free_gas;
    for (const Mode& m : shell) {
        const double p2 = mode_norm2(m);
        const double e = disp.e(p2);
        const double ratio = disp.A(p2) / e;
        thermal.add(ratio * bose_occupation(e, T_eff));
        depletion.add(0.5 * (ratio - 1.0));
        free_gas.add(bose_occupation(p2, T_eff));
    }
    out.thermal = thermal.value();
    out.depletion = depletion.value();
    out.free_gas = free_gas.value();
    return out;
}

PairMoments rotated_pair_moments(double gamma, double sigma, double n) {
    const double g2 = gamma * gamma, s2 = sigma * sigma;
    const double n2 = 2.0 * n * n + n;          // <n^2> thermal
    const double np1 = n * (1.0 + n);           // <n(1+n)> across modes
    const double onep2 = 2.0 * n * n + 3.0 * n + 1.0;  // <(1+n)^2>
    PairMoments pm;
    pm.first = (g2 + s2) * n + s2;
    const double w2 = g2 * s2 * (n * n + (1.0 + n) * (1.0 + n));
    pm.second = g2 * g2 * n2 + 2.0 * g2 * s2 * np1 + s2 * s2 * onep2 + w2;
    pm.cross = g2 * g2 * n * n + 2.0 * g2 * s2 * (2.0 * n * n + 2.0 * n) +
               s2 * s2 * (1.0 + n) * (1.0 + n) + w2;
    return pm;
}

ShellSecondMoment shell_number_second_moment(const std::vector<Mode>& shell,
                                             const Dispersion& disp, double T_eff) {
    ShellSecondMoment out;
    KahanSum first, diag, pair;
    for (const Mode& m : shell) {
        const double p2 = mode_norm2(m);
        const double e = disp.e(p2);
        const double A = disp.A(p2);
        // gamma^2 + sigma^2 = A/e, gamma^2 - sigma^2 = 1
        const double g2 = 0.5 * (A / e + 1.0), s2 = 0.5 * (A / e - 1.0);
        const PairMoments pm =
            rotated_pair_moments(std::sqrt(g2), -std::sqrt(s2), bose_occupation(e, T_eff));
        first.add(pm.first);
        diag.add(pm.second - pm.first * pm.first);
        pair.add(pm.cross - pm.first * pm.first);
    }
    out.factorized = first.value() * first.value();
    out.diagonal = diag.value();
    out.pair = pair.value();
    out.value = out.factorized + out.diagonal + out.pair;
    return out;
}

double lhy_integral_closed_form(double a) {
    return 4.0 * kPi * a * (128.0 * std::pow(a, 1.5)) / (15.0 * std::sqrt(kPi));
}

double lhy_integral(double a) {
    if (a < 0.0) throw std::invalid_argument("lhy_integral: a must be >= 0");
    if (a == 0.0) return 0.0;
    const double b = 16.0 * kPi * a;  // dispersion coupling
    auto radial = [b](double q) {
        const double q2 = q * q;
        const double e = q * std::sqrt(q2 * (q2 + b) > 0 ? q2 + b : 0.0);
        return q2 * (e - q2 - 0.5 * b + b * b / (8.0 * q2));
    };
    // radial integrand tends to (8 pi a)^2/2 at q -> 0
    auto radial0 = [&](double q) { return q == 0.0 ? b * b / 8.0 : radial(q); };
    const double Q = 12.0 * std::sqrt(b);
    const auto head = integrate(radial0, 0.0, Q, 1e-10, 0.0, 8000);
    if (!head.converged)
        throw std::runtime_error("lhy_integral: quadrature did not converge, estimate " +
                                 std::to_string(head.value / (2.0 * kPi * kPi)));
    // tail: q^2 f(q) = q^4 sum_{k>=3} C(1/2,k) (b/q^2)^k, integrated termwise
    double tail = 0.0;
    double c = 1.0 / 16.0;  // C(1/2,3)
    double bk = b * b * b;
    for (int k = 3; k < 60; ++k) {
        const double term = c * bk * std::pow(Q, 5.0 - 2.0 * k) / (2.0 * k - 5.0);
        tail += term;
        if (std::abs(term) < 1e-18 * std::abs(head.value + tail)) break;
        c *= (0.5 - k) / (k + 1.0);
        bk *= b;
    }
    return (head.value + tail) / (2.0 * kPi * kPi);
}

double thermal_integral(double a_over_x) {
    if (a_over_x < 0.0) throw std::invalid_argument("thermal_integral: a/x must be >= 0");
    const double b = 16.0 * kPi * a_over_x;
    // radial cutoff where the exponent reaches 700
    const double e_max = 700.0;
    const double q2_max = 0.5 * (-b + std::sqrt(b * b + 4.0 * e_max * e_max));
    const double q_max = std::sqrt(q2_max);
    auto radial = [b](double q) {
        if (q == 0.0) return 0.0;
        const double e = q * std::sqrt(q * q + b);
        return q * q * std::log(-std::expm1(-e));
    };
    const auto res = integrate(radial, 0.0, q_max, 1e-10, 1e-14, 8000);
    return 4.0 * kPi * res.value;
}

RiemannGap riemann_gap(const RegimeParams& params, double r0, double r1,
                       const std::function<double(double)>& radial_integrand) {
    if (!(r1 > r0) || r0 < 0.0) throw std::invalid_argument("riemann_gap: bad annulus");
    const double h = kTwoPi / std::pow(params.N, params.kappa / 2.0);
    RiemannGap out;
    const int M = int(std::floor(r1 / h));
    KahanSum acc;
    for (int x = -M; x <= M; ++x)
        for (int y = -M; y <= M; ++y)
            for (int z = -M; z <= M; ++z) {
                const double r =
                    h * std::sqrt(double(x) * x + double(y) * y + double(z) * z);
                if (r <= r0 || r > r1) continue;
                acc.add(radial_integrand(r));
            }
    out.lattice_sum = h * h * h * acc.value();
    auto f = [&](double r) { return 4.0 * kPi * r * r * radial_integrand(r); };
    out.integral = integrate(f, r0, r1, 1e-11, 1e-14, 8000).value;
    out.gap = std::abs(out.lattice_sum - out.integral);
    return out;
}

N0Choice choose_N0(const RegimeParams& params, double shell_number) {
    if (shell_number >= params.N)
        throw std::runtime_error("regime violated: Tr N_S Gamma >= N");
    N0Choice out;
    out.slack = std::pow(params.N, 1.5 * params.kappa - (params.kappa - 0.5));
    out.N0 = params.N - shell_number + out.slack;
    out.exceeds_N = out.N0 > params.N;
    out.depletion_ratio = (params.N - out.N0) / std::pow(params.N, 1.5 * params.kappa);
    return out;
}

ParticleNumber total_particle_number(const RegimeParams& params, const ScatteringSolution& phi,
                                     double N0, double shell_number,
                                     const std::function<double(const Mode&)>& occupancy_H) {
    ParticleNumber out;
    out.lower = N0 + shell_number;
    const double h_cut = params.high_cut();
    const double s_cut = params.shell_outer();
    KahanSum high_thermal, high_static;
    for (std::size_t i = 0; i < phi.lattice.size(); ++i) {
        const double norm = std::sqrt(mode_norm2(phi.lattice[i]));
        const double s2 = N0 * N0 * phi.phi[i] * phi.phi[i];
        if (norm > h_cut && occupancy_H)
            high_thermal.add(2.0 * s2 * occupancy_H(phi.lattice[i]));
        if (norm > s_cut) high_static.add(s2);
    }
    out.high_thermal = high_thermal.value();
    out.high_static = high_static.value();
    out.slack_constant = (out.high_thermal + out.high_static) /
                         std::pow(params.N, 1.5 * params.kappa - params.epsilon);
    return out;
}

FreeEnergyReport free_energy_upper_bound(double rho, double T, double a, double c, double eps) {
    if (!(rho > 0.0) || a < 0.0 || T < 0.0)
        throw std::invalid_argument("free_energy_upper_bound: bad arguments");
    const double dilute = rho * a * a * a;
    if (dilute >= 1.0) throw std::runtime_error("not dilute: rho*a^3 >= 1");
    FreeEnergyReport rep;
    rep.rho = rho;
    rep.T = T;
    rep.leading = 4.0 * kPi * a * rho * rho;
    rep.lhy = rep.leading * (128.0 / (15.0 * std::sqrt(kPi))) * std::sqrt(dilute);
    rep.error_allowance = c == 0.0 ? 0.0 : rep.leading * c * std::pow(dilute, 0.5 + eps);
    rep.thermal =
        T > 0.0 ? std::pow(T, 2.5) / std::pow(kTwoPi, 3.0) * thermal_integral(rho * a / T) : 0.0;
    rep.total = rep.leading + rep.lhy + rep.error_allowance + rep.thermal;
    return rep;
}

double gamma0_free_energy(const std::vector<Mode>& shell, const Dispersion& disp, double T_eff) {
    if (shell.empty()) throw std::invalid_argument("gamma0_free_energy: empty shell");
    if (!(T_eff > 0.0)) throw std::invalid_argument("gamma0_free_energy: T_eff must be > 0");
    KahanSum acc;
    for (const Mode& m : shell) {
        const double e = disp.e(mode_norm2(m));
        acc.add(std::log(-std::expm1(-e / T_eff)));
    }
    return T_eff * acc.value();
}

double gamma0_free_energy_energy_entropy(const std::vector<Mode>& shell, const Dispersion& disp,
                                         double T_eff) {
    KahanSum energy, entropy;
    for (const Mode& m : shell) {
        const double e = disp.e(mode_norm2(m));
        const double n = bose_occupation(e, T_eff);
        energy.add(e * n);
        if (n > 0.0) entropy.add((1.0 + n) * std::log1p(n) - n * std::log(n));
    }
    return energy.value() - T_eff * entropy.value();
}

}  // namespace bogolab
