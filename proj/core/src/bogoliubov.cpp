#include "bogolab/bogoliubov.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "bogolab/numerics.hpp"

namespace bogolab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double Dispersion::e(double p2) const { return std::sqrt(p2 * (p2 + coupling)); }

Dispersion make_dispersion(double a, const RegimeParams& params) {
    Dispersion d;
    d.a = a;
    d.coupling = 16.0 * kPi * a * std::pow(params.N, params.kappa);
    return d;
}

std::vector<HighCoeff> high_branch(const ScatteringSolution& phi, double N0,
                                   const RegimeParams& params) {
    const double cut = params.shell_outer();
    std::vector<HighCoeff> out;
    out.reserve(phi.lattice.size());
    for (std::size_t i = 0; i < phi.lattice.size(); ++i) {
        HighCoeff hc;
        hc.mode = phi.lattice[i];
        if (std::sqrt(mode_norm2(hc.mode)) > cut) {
            hc.s = N0 * phi.phi[i];
            hc.c = std::sqrt(1.0 + hc.s * hc.s);
        }
        out.push_back(hc);
    }
    return out;
}

std::vector<ShellCoeff> shell_branch(double a, const RegimeParams& params,
                                     const std::vector<Mode>& shell) {
    const Dispersion d = make_dispersion(a, params);
    std::vector<ShellCoeff> out;
    out.reserve(shell.size());
    for (const Mode& m : shell) {
        const double p2 = mode_norm2(m);
        const double x = -d.B() / d.A(p2);
        if (!(x > -1.0 && x <= 0.0))
            throw std::runtime_error("shell_branch: tanh argument out of (-1, 0]");
        ShellCoeff sc;
        sc.mode = m;
        sc.tau = half_artanh(x);
        sc.gamma = std::cosh(sc.tau);
        sc.sigma = std::sinh(sc.tau);
        out.push_back(sc);
    }
    return out;
}

double diago_constant(const std::vector<Mode>& shell, double a, const RegimeParams& params) {
    if (shell.empty()) throw std::invalid_argument("diago_constant: shell must be nonempty");
    const Dispersion d = make_dispersion(a, params);
    KahanSum acc;
    for (const Mode& m : shell) {
        const double p2 = mode_norm2(m);
        acc.add(d.e(p2) - p2 - d.B());
    }
    return 0.5 * acc.value();
}

double diago_constant_via_A(const std::vector<Mode>& shell, double a,
                            const RegimeParams& params) {
    const Dispersion d = make_dispersion(a, params);
    KahanSum acc;
    for (const Mode& m : shell) {
        const double A = d.A(mode_norm2(m));
        acc.add(std::sqrt(A * A - d.B() * d.B()) - A);
    }
    return 0.5 * acc.value();
}

double renormalized_constant_direct(const ScatteringSolution& phi,
                                    const RadialPotential& potential, double N0,
                                    const RegimeParams& params) {
    const auto coeffs = high_branch(phi, N0, params);
    // collect the support of s (the branch acts trivially below the cutoff)
    std::vector<Mode> modes;
    std::vector<double> s;
    for (const auto& hc : coeffs) {
        if (hc.s == 0.0) continue;
        modes.push_back(hc.mode);
        s.push_back(hc.s);
    }
    KahanSum total;
    total.add(0.5 * N0 * N0 * rescaled_fourier(potential, params, 0.0));
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const double p2 = mode_norm2(modes[i]);
        total.add(p2 * s[i] * s[i]);
        total.add(N0 * rescaled_fourier(potential, params, std::sqrt(p2)) * s[i]);
    }
    // 1/2 sum_{p,r} V_N(p-r) s_p s_r as 1/2 <s, V_N * s>, fixed outer order
    const std::vector<double> conv = lattice_convolve(potential, params, modes, s);
    KahanSum quad;
    for (std::size_t i = 0; i < modes.size(); ++i) quad.add(s[i] * conv[i]);
    total.add(0.5 * quad.value());
    return total.value();
}

RenormalizedConstant renormalized_constant_closed(double a, double N0,
                                                  const RegimeParams& params,
                                                  const std::vector<Mode>& shell) {
    RenormalizedConstant rc;
    const double Nk = std::pow(params.N, params.kappa);
    rc.leading = 4.0 * kPi * a * params.N * Nk;
    rc.depletion = -8.0 * kPi * a * Nk * (params.N - N0);
    const double c = 4.0 * kPi * a * Nk;
    KahanSum acc;
    for (const Mode& m : shell) acc.add(c * c / mode_norm2(m));
    rc.shell_sum = acc.value();
    rc.value = rc.leading + rc.depletion + rc.shell_sum;
    return rc;
}

}  // namespace bogolab
