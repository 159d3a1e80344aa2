#ifndef BOGOLAB_REGIME_HPP
#define BOGOLAB_REGIME_HPP

#include <array>
#include <cstdint>
#include <vector>

namespace bogolab {

// Integer lattice label m; the physical momentum is p = 2*pi*m.
using Mode = std::array<int, 3>;

inline double mode_norm2(const Mode& m) {
    const double pi2 = 2.0 * 3.14159265358979323846;
    return pi2 * pi2 * (double(m[0]) * m[0] + double(m[1]) * m[1] + double(m[2]) * m[2]);
}

// Scaling dictionary between the thermodynamic picture (rho, L, T) and the
// rescaled unit-torus picture (N, kappa, epsilon).
//
// kappa = (2*gamma-1)/(3*gamma-1), N = rho^(1-3*gamma), L = rho^(-gamma) =
// N^(1-kappa), T_eff = T*N^(2-2*kappa). Units: hbar = 2m = 1, so kinetic
// energy is p^2.
struct RegimeParams {
    double rho = 0.0;         // number density
    double gamma = 0.0;       // box exponent, > 1
    double kappa = 0.0;       // (2g-1)/(3g-1), in (1/2, 2/3)
    double epsilon = 0.0;     // shell half-width exponent, > 0
    double N = 0.0;           // rescaled particle scale
    double L = 0.0;           // box side
    double T = 0.0;           // temperature
    double T_eff = 0.0;       // T * N^(2-2*kappa)
    double a = 1.0;           // full-space scattering length used for T = temp_ratio*rho*a
    double temp_ratio = 0.0;  // T / (rho*a)
    bool full_theorem_window = false;  // 1/2 < kappa < 8/15 - 2*eps/3

    double shell_inner() const;  // N^(kappa/2 - epsilon)
    double shell_outer() const;  // N^(kappa/2 + epsilon)
    double high_cut() const;     // N^(1 - kappa - epsilon)
};

// Validates gamma > 1 and the set-disjointness inequality -2+3k+4e < 0; the
// diagnostic names the violated inequality. temp_ratio >= 0 fixes
// T = temp_ratio * rho * a (a defaults to 1 until the oracle value is known).
RegimeParams derive_regime(double rho, double gamma, double epsilon, double temp_ratio,
                           double a = 1.0);

// Same dictionary entered from the unit-torus side: N and kappa given
// directly (desk-scale lattice runs), rho = N^(3*kappa-2) implied.
RegimeParams regime_from_box(double N, double kappa, double epsilon, double temp_ratio,
                             double a = 1.0);

enum class ModeClass : std::uint8_t { Condensate, Low, Shell, High, OutsideCap };

struct MomentumSets {
    double radius_cap = 0.0;
    std::vector<Mode> lattice;           // all |p| <= radius_cap, lexicographic order
    std::vector<ModeClass> classes;      // parallel to lattice
    std::vector<std::size_t> shell;      // indices into lattice
    std::vector<std::size_t> high;       // indices into lattice
    std::size_t count(ModeClass c) const;
};

// Classifies every lattice point with |p| <= radius_cap exactly once.
// Throws if the cap misses the shell or the shell is empty (N too small for
// the chosen epsilon).
MomentumSets momentum_sets(const RegimeParams& params, double radius_cap);

}  // namespace bogolab

#endif
