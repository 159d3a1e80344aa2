#ifndef BOGOLAB_BOGOLIUBOV_HPP
#define BOGOLAB_BOGOLIUBOV_HPP

#include <vector>

#include "bogolab/potential.hpp"
#include "bogolab/regime.hpp"
#include "bogolab/scattering.hpp"

namespace bogolab {

// Excitation energy e(p) = sqrt(p^4 + 16*pi*a*N^kappa*p^2). With the
// notation A(p) = p^2 + 8*pi*a*N^kappa and B = 8*pi*a*N^kappa this is
// sqrt(A^2 - B^2), the algebraic identity behind the shell diagonalization.
struct Dispersion {
    double a = 0.0;
    double coupling = 0.0;  // 16*pi*a*N^kappa
    double B() const { return 0.5 * coupling; }
    double A(double p2) const { return p2 + B(); }
    double e(double p2) const;
    double e_norm(double p) const { return e(p * p); }
};

Dispersion make_dispersion(double a, const RegimeParams& params);

struct HighCoeff {
    Mode mode;
    double c = 1.0;  // sqrt(1 + N0^2 phi^2)
    double s = 0.0;  // N0 * phi, zero for |p| <= N^(kappa/2+eps)
};

struct ShellCoeff {
    Mode mode;
    double tau = 0.0;    // tanh(2 tau) = -B/A(p), negative for a > 0
    double gamma = 1.0;  // cosh tau
    double sigma = 0.0;  // sinh tau
};

struct BogoliubovCoeffs {
    std::vector<HighCoeff> high;
    std::vector<ShellCoeff> shell;
    double N0 = 0.0;
};

// Correlation branch c_p, s_p from the scattering solution; acts trivially
// (c=1, s=0) for |p| <= N^(kappa/2+epsilon).
std::vector<HighCoeff> high_branch(const ScatteringSolution& phi, double N0,
                                   const RegimeParams& params);

// Shell diagonalization branch tau_p, gamma_p, sigma_p on the given shell
// modes; tau through artanh in log1p form.
std::vector<ShellCoeff> shell_branch(double a, const RegimeParams& params,
                                     const std::vector<Mode>& shell);

// 1/2 sum_{p in S} [ e(p) - p^2 - 8*pi*a*N^kappa ]; each summand <= 0.
double diago_constant(const std::vector<Mode>& shell, double a, const RegimeParams& params);

// Same value through the A/e route, 1/2 sum (e - A); agreement to 1e-12 is a
// property test of the dispersion identity.
double diago_constant_via_A(const std::vector<Mode>& shell, double a,
                            const RegimeParams& params);

struct RenormalizedConstant {
    double value = 0.0;
    // itemized pieces of the closed form
    double leading = 0.0;     // 4*pi*a*N^(1+kappa)
    double depletion = 0.0;   // -8*pi*a*N^kappa*(N - N0)
    double shell_sum = 0.0;   // sum_S (4*pi*a*N^kappa)^2 / p^2
};

// Direct route: N0^2 V_N(0)/2 + sum_p [p^2 s_p^2 + N0 V_N(p) s_p
//   + 1/2 sum_r V_N(p-r) s_p s_r], with the double sum done by an exact
// convolution and compensated outer summation.
double renormalized_constant_direct(const ScatteringSolution& phi,
                                    const RadialPotential& potential, double N0,
                                    const RegimeParams& params);

// Closed route: 4*pi*a*N^(1+kappa) - 8*pi*a*N^kappa (N-N0) + sum_S (4 pi a
// N^kappa)^2/p^2, components reported separately.
RenormalizedConstant renormalized_constant_closed(double a, double N0,
                                                  const RegimeParams& params,
                                                  const std::vector<Mode>& shell);

}  // namespace bogolab

#endif
