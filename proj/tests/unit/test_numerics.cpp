#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bogolab/numerics.hpp"

using namespace bogolab;

TEST_CASE("pairwise sum matches a long-double reference") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> xs(10001);
    long double ref = 0.0;
    for (auto& x : xs) {
        x = u(rng);
        ref += x;
    }
    CHECK(std::abs(pairwise_sum(xs) - double(ref)) < 1e-12);
    // deterministic: same input, same bits
    CHECK(pairwise_sum(xs) == pairwise_sum(xs));
}

TEST_CASE("kahan accumulator survives cancellation") {
    KahanSum acc;
    acc.add(1.0);
    for (int i = 0; i < 10000; ++i) acc.add(1e-16);
    CHECK(acc.value() == doctest::Approx(1.0 + 1e-12).epsilon(1e-12));
}

TEST_CASE("half_artanh solves tanh(2 tau) = x") {
    for (double x : {-0.9, -0.5, -1e-12, 0.0}) {
        const double tau = half_artanh(x);
        CHECK(std::tanh(2.0 * tau) == doctest::Approx(x).epsilon(1e-14));
    }
    CHECK(half_artanh(-0.5) == doctest::Approx(-0.25 * std::log(3.0)).epsilon(1e-15));
}

TEST_CASE("adaptive quadrature on known integrals") {
    auto r1 = integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r1.converged);
    CHECK(r1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    auto r2 = integrate([](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846);
    CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-12));

    // integrable log singularity
    auto r3 = integrate([](double x) { return std::log(x); }, 0.0, 1.0, 1e-10, 1e-12);
    CHECK(r3.value == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("line fit recovers slope and intercept") {
    std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    std::vector<double> y;
    for (double xi : x) y.push_back(-0.48 * xi + 2.25);
    const LinearFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(-0.48).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(f.max_residual < 1e-12);
}

TEST_CASE("radial integrator: free equation gives u = r") {
    const auto [u, du] = integrate_radial_u([](double) { return 0.0; }, 2.0, 1000);
    CHECK(u == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(du == doctest::Approx(1.0).epsilon(1e-13));
}
