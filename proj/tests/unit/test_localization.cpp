#include <doctest.h>

#include <cmath>
#include <random>

#include "bogolab/localization.hpp"

using namespace bogolab;

namespace {
const WindowSpec kSpec{1.0, 0.25, 0.1};
constexpr double kPi = 3.14159265358979323846;
}  // namespace

TEST_CASE("window values at the named points") {
    CHECK(window_value(0.0, kSpec) == 1.0);
    CHECK(std::abs(window_value(-kSpec.L / 2.0 - kSpec.ell, kSpec)) < 1e-15);
    CHECK(std::abs(window_value(kSpec.L / 2.0 + kSpec.ell, kSpec)) < 1e-15);
    CHECK(window_value(kSpec.L, kSpec) == 0.0);
    // continuity at the seams
    for (double seam : {-kSpec.L / 2.0 - kSpec.ell, -kSpec.L / 2.0 + kSpec.ell,
                        kSpec.L / 2.0 - kSpec.ell, kSpec.L / 2.0 + kSpec.ell}) {
        CHECK(std::abs(window_value(seam - 1e-12, kSpec) - window_value(seam + 1e-12, kSpec)) <
              1e-10);
    }
}

TEST_CASE("window is even and bounded") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double t = u(rng);
        const double q = window_value(t, kSpec);
        CHECK(q == window_value(-t, kSpec));
        CHECK(q >= 0.0);
        CHECK(q <= 1.0);
    }
}

TEST_CASE("partition identity on the overlap") {
    for (int i = 0; i <= 500; ++i) {
        const double t = -kSpec.L / 2.0 - kSpec.ell + 2.0 * kSpec.ell * i / 500.0;
        const double q1 = window_value(t, kSpec), q2 = window_value(t + kSpec.L, kSpec);
        CHECK(std::abs(q1 * q1 + q2 * q2 - 1.0) < 1e-14);
    }
}

TEST_CASE("squared window integrates to L") {
    CHECK(window_sq_integral(kSpec) == doctest::Approx(kSpec.L).epsilon(1e-12));
    const WindowSpec other{3.0, 0.5, 0.2};
    CHECK(window_sq_integral(other) == doctest::Approx(other.L).epsilon(1e-12));
}

TEST_CASE("periodic integral preservation") {
    SUBCASE("constant") {
        CHECK(periodic_integral_check([](double) { return 1.0; }, kSpec) < 1e-12);
    }
    SUBCASE("mean-zero harmonic: both sides vanish") {
        auto phi = [](double t) { return std::cos(2.0 * kPi * t / kSpec.L); };
        CHECK(periodic_integral_check(phi, kSpec) < 1e-12);
    }
    SUBCASE("random degree-10 trig polynomials, 5 seeds") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int s = 0; s < 5; ++s) {
            std::vector<double> a(11), b(11);
            for (int j = 0; j <= 10; ++j) {
                a[std::size_t(j)] = u(rng);
                b[std::size_t(j)] = u(rng);
            }
            auto phi = [&](double t) {
                double v = a[0];
                for (int j = 1; j <= 10; ++j) {
                    v += a[std::size_t(j)] * std::cos(2.0 * kPi * j * t / kSpec.L) +
                         b[std::size_t(j)] * std::sin(2.0 * kPi * j * t / kSpec.L);
                }
                return v;
            };
            CHECK(periodic_integral_check(phi, kSpec) <= 1e-10);
        }
    }
}

TEST_CASE("dilution bookkeeping") {
    SUBCASE("vanishing corridor recovers TrN / L^3") {
        const WindowSpec tiny{1.0, 1e-9, 1e-10};
        const DilutionReport rep = dilution_bookkeeping(5.0, tiny);
        CHECK(rep.rho_tilde == doctest::Approx(5.0).epsilon(1e-8));
    }
    SUBCASE("geometry guard") {
        CHECK_THROWS_AS(dilution_bookkeeping(1.0, WindowSpec{1.0, 0.1, 0.2}),
                        std::invalid_argument);
        CHECK_THROWS_AS(dilution_bookkeeping(-1.0, kSpec), std::invalid_argument);
    }
    SUBCASE("overhead/leading ratio decays like rho^(gamma + alpha gamma - 1)") {
        const double gamma = 1.1, alpha = 0.45;
        std::vector<double> lx, ly;
        for (double rho : {1e-10, 1e-12, 1e-14}) {
            const double L = std::pow(rho, -gamma);
            const WindowSpec w{L, std::pow(L, alpha), 0.1 * std::pow(L, alpha)};
            const DilutionReport rep = dilution_bookkeeping(rho * L * L * L, w);
            lx.push_back(std::log(rho));
            ly.push_back(std::log(rep.overhead / (rho * rho)));
        }
        const double slope = (ly.back() - ly.front()) / (lx.back() - lx.front());
        CHECK(slope == doctest::Approx(gamma + alpha * gamma - 1.0).epsilon(1e-6));
    }
}
