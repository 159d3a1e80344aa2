#include "bogolab/potential.hpp"

#include <cmath>
#include <stdexcept>

#include "bogolab/numerics.hpp"

namespace bogolab {

namespace {
constexpr double kPi = 3.14159265358979323846;

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid potential spec: cannot parse " + what + " from '" +
                                    s + "'");
    }
}
}  // namespace

RadialPotential RadialPotential::soft_sphere(double V0, double R) {
    if (V0 < 0.0) throw std::invalid_argument("potential must be non-negative");
    if (R <= 0.0) throw std::invalid_argument("support radius must be positive");
    RadialPotential p;
    p.profile_ = [V0](double) { return V0; };
    p.R_ = R;
    p.V0_ = V0;
    p.soft_sphere_ = true;
    p.zero_ = V0 == 0.0;
    p.v_hat_zero_ = 4.0 / 3.0 * kPi * V0 * R * R * R;
    p.name_ = "soft-sphere(V0=" + std::to_string(V0) + ",R=" + std::to_string(R) + ")";
    if (V0 > 0.0) {
        const double k0 = std::sqrt(V0 / 2.0);
        p.full_space_a_ = R - std::tanh(k0 * R) / k0;
    } else {
        p.full_space_a_ = 0.0;
    }
    return p;
}

RadialPotential RadialPotential::from_profile(std::function<double(double)> profile, double R,
                                              std::string name) {
    if (R <= 0.0) throw std::invalid_argument("support radius must be positive");
    // reject negative values and require square integrability on a sample grid
    KahanSum l2;
    const int n = 4096;
    bool all_zero = true;
    for (int i = 0; i <= n; ++i) {
        const double r = R * i / n;
        const double v = profile(r);
        if (v < 0.0) throw std::invalid_argument("potential must be non-negative");
        if (!std::isfinite(v)) throw std::invalid_argument("potential not in L2 on its support");
        if (v != 0.0) all_zero = false;
        l2.add(v * v * r * r);
    }
    if (!std::isfinite(l2.value())) throw std::invalid_argument("potential not in L2");
    RadialPotential p;
    p.profile_ = std::move(profile);
    p.R_ = R;
    p.zero_ = all_zero;
    p.name_ = std::move(name);
    auto f = [&p](double r) { return r * r * p.profile_(r); };
    p.v_hat_zero_ = 4.0 * kPi * integrate(f, 0.0, R, 1e-12, 1e-14).value;
    return p;
}

RadialPotential RadialPotential::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    if (kind != "soft-sphere")
        throw std::invalid_argument("invalid potential spec '" + spec +
                                    "': expected soft-sphere:V0=<f>,R=<f>");
    double V0 = 0.0, R = 0.0;
    bool have_v0 = false, have_r = false;
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string field = rest.substr(0, comma);
        rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
        const auto eq = field.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("invalid potential spec field '" + field + "'");
        const std::string key = field.substr(0, eq);
        const std::string val = field.substr(eq + 1);
        if (key == "V0") {
            V0 = parse_double(val, "V0");
            have_v0 = true;
        } else if (key == "R") {
            R = parse_double(val, "R");
            have_r = true;
        } else {
            throw std::invalid_argument("invalid potential spec key '" + key + "'");
        }
    }
    if (!have_v0 || !have_r)
        throw std::invalid_argument("invalid potential spec '" + spec + "': need V0 and R");
    return soft_sphere(V0, R);
}

double RadialPotential::fourier(double p) const {
    p = std::abs(p);
    if (zero_) return 0.0;
    if (soft_sphere_) {
        const double x = p * R_;
        if (x < 1e-4) {
            // 4*pi*V0*(sin x - x cos x)/p^3 expanded around x = 0
            return v_hat_zero_ * (1.0 - x * x / 10.0 + x * x * x * x / 280.0);
        }
        return 4.0 * kPi * V0_ * (std::sin(x) - x * std::cos(x)) / (p * p * p);
    }
    if (p * R_ < 1e-6) return v_hat_zero_;
    auto f = [this, p](double r) {
        const double x = p * r;
        const double sinc = x < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
        return r * r * profile_(r) * sinc;
    };
    return 4.0 * kPi * integrate(f, 0.0, R_, 1e-12, 1e-14).value;
}

double RadialPotential::fourier_tail_envelope() const {
    if (tail_env_ >= 0.0) return tail_env_;
    double env = 0.0;
    for (int i = 1; i <= 20000; ++i) {
        const double u = 0.05 * i;  // out to u = 1000
        env = std::max(env, u * u * std::abs(fourier(u)));
    }
    tail_env_ = env;
    return env;
}

}  // namespace bogolab
