#ifndef BOGOLAB_POTENTIAL_HPP
#define BOGOLAB_POTENTIAL_HPP

#include <functional>
#include <optional>
#include <string>

namespace bogolab {

// Non-negative, radial, compactly supported two-body potential. Energy units
// with hbar = 2m = 1.
class RadialPotential {
public:
    // V(|x|) = V0 for |x| <= R, else 0. Closed-form Fourier transform and
    // analytic scattering length a = R - tanh(k0 R)/k0, k0 = sqrt(V0/2).
    static RadialPotential soft_sphere(double V0, double R);

    // Arbitrary radial profile on [0, R]; the Fourier transform falls back to
    // radial quadrature. Rejects profiles that are negative or not square
    // integrable on their support.
    static RadialPotential from_profile(std::function<double(double)> profile, double R,
                                        std::string name = "custom");

    // Parses the CLI spec string, e.g. "soft-sphere:V0=2,R=1".
    static RadialPotential parse(const std::string& spec);

    double operator()(double r) const { return r > R_ ? 0.0 : profile_(r); }
    double radius() const { return R_; }
    const std::string& name() const { return name_; }
    bool is_zero() const { return zero_; }

    // hat V(p) = int V(x) e^{-ipx} dx = 4*pi int_0^R r^2 V(r) sinc(pr) dr.
    double fourier(double p) const;
    double fourier_zero() const { return v_hat_zero_; }

    // sup over u of u^2 |hat V(u)|; envelope constant for tail estimates.
    double fourier_tail_envelope() const;

    std::optional<double> analytic_scattering_length() const { return full_space_a_; }

private:
    RadialPotential() = default;
    std::function<double(double)> profile_;
    double R_ = 0.0;
    double v_hat_zero_ = 0.0;
    std::string name_;
    bool zero_ = false;
    bool soft_sphere_ = false;
    double V0_ = 0.0;
    std::optional<double> full_space_a_;
    mutable double tail_env_ = -1.0;
};

}  // namespace bogolab

#endif
