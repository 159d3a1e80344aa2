#include "bogolab/regime.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bogolab {

double RegimeParams::shell_inner() const { return std::pow(N, kappa / 2.0 - epsilon); }
double RegimeParams::shell_outer() const { return std::pow(N, kappa / 2.0 + epsilon); }
double RegimeParams::high_cut() const { return std::pow(N, 1.0 - kappa - epsilon); }

namespace {

void validate_exponents(double kappa, double epsilon) {
    if (!(kappa > 0.5))
        throw std::invalid_argument("kappa must exceed 1/2 (requires gamma > 1)");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    const double disjoint = -2.0 + 3.0 * kappa + 4.0 * epsilon;
    if (!(disjoint < 0.0))
        throw std::invalid_argument(
            "momentum sets overlap: -2 + 3*kappa + 4*epsilon = " + std::to_string(disjoint) +
            " must be < 0");
}

RegimeParams finish(RegimeParams p) {
    validate_exponents(p.kappa, p.epsilon);
    p.T = p.temp_ratio * p.rho * p.a;
    p.T_eff = p.T * std::pow(p.N, 2.0 - 2.0 * p.kappa);
    p.full_theorem_window = p.kappa < 8.0 / 15.0 - 2.0 * p.epsilon / 3.0;
    return p;
}

}  // namespace

RegimeParams derive_regime(double rho, double gamma, double epsilon, double temp_ratio,
                           double a) {
    if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
    if (!(gamma > 1.0))
        throw std::invalid_argument("kappa must exceed 1/2 (requires gamma > 1)");
    if (temp_ratio < 0.0) throw std::invalid_argument("temp_ratio must be >= 0");
    RegimeParams p;
    p.rho = rho;
    p.gamma = gamma;
    p.epsilon = epsilon;
    p.temp_ratio = temp_ratio;
    p.a = a;
    p.kappa = (2.0 * gamma - 1.0) / (3.0 * gamma - 1.0);
    p.N = std::pow(rho, 1.0 - 3.0 * gamma);
    p.L = std::pow(rho, -gamma);
    // consistency of the two routes to L
    const double L_alt = std::pow(p.N, 1.0 - p.kappa);
    if (std::abs(p.L - L_alt) > 1e-12 * std::abs(p.L))
        throw std::runtime_error("regime dictionary inconsistent: L = rho^-gamma vs N^(1-kappa)");
    return finish(p);
}

RegimeParams regime_from_box(double N, double kappa, double epsilon, double temp_ratio,
                             double a) {
    if (!(N > 1.0)) throw std::invalid_argument("N must exceed 1");
    RegimeParams p;
    p.kappa = kappa;
    p.epsilon = epsilon;
    p.temp_ratio = temp_ratio;
    p.a = a;
    p.N = N;
    p.L = std::pow(N, 1.0 - kappa);
    p.rho = std::pow(N, 3.0 * kappa - 2.0);
    p.gamma = (1.0 - kappa) / (2.0 - 3.0 * kappa);
    return finish(p);
}

std::size_t MomentumSets::count(ModeClass c) const {
    std::size_t n = 0;
    for (auto x : classes)
        if (x == c) ++n;
    return n;
}

MomentumSets momentum_sets(const RegimeParams& params, double radius_cap) {
    const double s_in = params.shell_inner();
    const double s_out = params.shell_outer();
    const double h_cut = params.high_cut();
    if (radius_cap < s_out)
        throw std::invalid_argument("radius_cap " + std::to_string(radius_cap) +
                                    " is below the shell outer radius " + std::to_string(s_out));
    MomentumSets sets;
    sets.radius_cap = radius_cap;
    const double pi2 = 2.0 * 3.14159265358979323846;
    const int M = static_cast<int>(std::floor(radius_cap / pi2));
    sets.lattice.reserve(static_cast<std::size_t>(8 * (M + 1.0) * (M + 1.0) * (M + 1.0)));
    for (int x = -M; x <= M; ++x)
        for (int y = -M; y <= M; ++y)
            for (int z = -M; z <= M; ++z) {
                const Mode m{x, y, z};
                const double norm = std::sqrt(mode_norm2(m));
                if (norm > radius_cap) continue;
                sets.lattice.push_back(m);
                ModeClass cls;
                if (x == 0 && y == 0 && z == 0)
                    cls = ModeClass::Condensate;
                else if (norm > h_cut)
                    cls = ModeClass::High;
                else if (norm > s_in && norm <= s_out)
                    cls = ModeClass::Shell;
                else
                    cls = ModeClass::Low;
                sets.classes.push_back(cls);
                if (cls == ModeClass::Shell) sets.shell.push_back(sets.lattice.size() - 1);
                if (cls == ModeClass::High) sets.high.push_back(sets.lattice.size() - 1);
            }
    if (sets.shell.empty())
        throw std::runtime_error("shell empty: no lattice point in (N^(k/2-e), N^(k/2+e)]; "
                                 "N too small for the chosen epsilon");
    return sets;
}

}  // namespace bogolab
