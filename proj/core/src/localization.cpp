#include "bogolab/localization.hpp"

#include <cmath>
#include <stdexcept>

#include "bogolab/numerics.hpp"

namespace bogolab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void WindowSpec::validate() const {
    if (!(0.0 < R && R < ell && ell < L))
        throw std::invalid_argument("window spec requires 0 < R < ell < L");
}

double window_value(double t, const WindowSpec& spec) {
    const double L = spec.L, ell = spec.ell;
    if (std::abs(t + L / 2.0) <= ell) return std::cos(kPi * (t + L / 2.0 - ell) / (4.0 * ell));
    if (std::abs(t) < L / 2.0 - ell) return 1.0;
    if (std::abs(t - L / 2.0) <= ell) return std::cos(kPi * (t - L / 2.0 + ell) / (4.0 * ell));
    return 0.0;
}

double window_sq_integral(const WindowSpec& spec) {
    // interior: L - 2*ell. Each ramp: int cos^2(pi(u - ell)/(4 ell)) du over
    // |u| <= ell = ell (the cos^2 averages to 1/2 over the quarter period
    // plus the exact boundary terms); antiderivative u/2 + (ell/pi)
    // sin(pi(u-ell)/(2 ell)).
    const double ell = spec.ell;
    auto F = [ell](double u) {
        return 0.5 * u + (ell / kPi) * std::sin(kPi * (u - ell) / (2.0 * ell));
    };
    const double ramp = F(ell) - F(-ell);
    return (spec.L - 2.0 * ell) + 2.0 * ramp;
}

double periodic_integral_check(const std::function<double(double)>& phi_periodic,
                               const WindowSpec& spec) {
    spec.validate();
    const double L = spec.L, ell = spec.ell;
    auto weighted = [&](double t) {
        const double q = window_value(t, spec);
        return phi_periodic(t) * q * q;
    };
    // split at the ramp seams where q is only C^0
    const double seams[] = {-L / 2.0 - ell, -L / 2.0 + ell, L / 2.0 - ell, L / 2.0 + ell};
    KahanSum lhs;
    for (int i = 0; i + 1 < 4; ++i)
        lhs.add(integrate(weighted, seams[i], seams[i + 1], 1e-12, 1e-13, 8000).value);
    const double rhs = integrate(phi_periodic, -L / 2.0, L / 2.0, 1e-12, 1e-13, 8000).value;
    return std::abs(lhs.value() - rhs);
}

DilutionReport dilution_bookkeeping(double TrN, const WindowSpec& spec, double c) {
    spec.validate();
    if (TrN < 0.0) throw std::invalid_argument("dilution_bookkeeping: TrN must be >= 0");
    DilutionReport rep;
    const double side = spec.L + 2.0 * spec.ell + spec.R;
    rep.rho_tilde = TrN / (side * side * side);
    rep.overhead = c * rep.rho_tilde / (spec.L * spec.ell);
    rep.volume_ratio = std::pow(spec.L / side, 3.0);
    return rep;
}

}  // namespace bogolab
