#ifndef BOGOLAB_LOCALIZATION_HPP
#define BOGOLAB_LOCALIZATION_HPP

#include <functional>

namespace bogolab {

// Dirichlet window geometry: inner box side L, cosine ramp half-width ell,
// interaction corridor R, with 0 < R < ell < L.
struct WindowSpec {
    double L = 1.0;
    double ell = 0.25;
    double R = 0.1;
    void validate() const;
};

// The one-dimensional window q_{L,ell}: 1 on |t| < L/2 - ell, cosine ramps of
// width 2*ell around +-L/2, 0 outside [-L/2-ell, L/2+ell]. Continuous, even,
// values in [0, 1].
double window_value(double t, const WindowSpec& spec);

// int q^2 over the real line, by the exact piecewise-cosine antiderivative;
// equals L.
double window_sq_integral(const WindowSpec& spec);

// Gap of the preservation identity
//   int_{-L/2-ell}^{L/2+ell} Phi(t) q(t)^2 dt = int_{-L/2}^{L/2} Phi(t) dt
// for an L-periodic Phi, both sides by quadrature split at the ramp seams.
double periodic_integral_check(const std::function<double(double)>& phi_periodic,
                               const WindowSpec& spec);

struct DilutionReport {
    double rho_tilde = 0.0;        // Tr N Gamma_L / (L + 2*ell + R)^3
    double overhead = 0.0;         // c * rho_tilde / (L * ell)
    double volume_ratio = 0.0;     // (L/(L+2*ell+R))^3
};

// Box bookkeeping: diluted density and the kinetic localization overhead with
// configurable constant c (the paper never pins it; default 1).
DilutionReport dilution_bookkeeping(double TrN, const WindowSpec& spec, double c = 1.0);

}  // namespace bogolab

#endif
