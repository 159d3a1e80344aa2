#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bogolab/numerics.hpp"
#include "bogolab/potential.hpp"

using namespace bogolab;

TEST_CASE("soft sphere zero mode is the volume integral") {
    const RadialPotential p = RadialPotential::soft_sphere(2.0, 1.0);
    CHECK(p.fourier_zero() == doctest::Approx(8.0 * 3.14159265358979323846 / 3.0).epsilon(1e-14));
    CHECK(p.fourier_zero() == doctest::Approx(8.37758).epsilon(1e-5));
    // quadrature oracle for hat V at a few momenta
    for (double q : {0.3, 1.0, 4.0, 20.0}) {
        auto f = [q](double r) {
            return r * r * 2.0 * (q * r < 1e-8 ? 1.0 : std::sin(q * r) / (q * r));
        };
        const double oracle = 4.0 * 3.14159265358979323846 * integrate(f, 0.0, 1.0, 1e-12).value;
        CHECK(p.fourier(q) == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("fourier is even and decays") {
    const RadialPotential p = RadialPotential::soft_sphere(2.0, 1.0);
    CHECK(p.fourier(3.0) == p.fourier(-3.0));
    CHECK(std::abs(p.fourier(100.0)) < std::abs(p.fourier_zero()) * 0.01);
}

TEST_CASE("zero potential") {
    const RadialPotential p = RadialPotential::soft_sphere(0.0, 1.0);
    CHECK(p.is_zero());
    CHECK(p.fourier(2.0) == 0.0);
    CHECK(*p.analytic_scattering_length() == 0.0);
}

TEST_CASE("spec string parsing") {
    const RadialPotential p = RadialPotential::parse("soft-sphere:V0=2,R=1");
    CHECK(p.fourier_zero() == doctest::Approx(8.37758).epsilon(1e-5));
    CHECK_THROWS_AS(RadialPotential::parse("hard-core:R=1"), std::invalid_argument);
    CHECK_THROWS_AS(RadialPotential::parse("soft-sphere:V0=x,R=1"), std::invalid_argument);
    CHECK_THROWS_AS(RadialPotential::parse("soft-sphere:V0=2"), std::invalid_argument);
}

TEST_CASE("negative profiles are rejected") {
    CHECK_THROWS_AS(RadialPotential::soft_sphere(-1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(RadialPotential::from_profile([](double r) { return 0.5 - r; }, 1.0),
                    std::invalid_argument);
}

TEST_CASE("custom profile matches soft sphere") {
    const RadialPotential ss = RadialPotential::soft_sphere(2.0, 1.0);
    const RadialPotential custom =
        RadialPotential::from_profile([](double) { return 2.0; }, 1.0, "flat");
    CHECK(custom.fourier_zero() == doctest::Approx(ss.fourier_zero()).epsilon(1e-10));
    CHECK(custom.fourier(2.5) == doctest::Approx(ss.fourier(2.5)).epsilon(1e-9));
}
