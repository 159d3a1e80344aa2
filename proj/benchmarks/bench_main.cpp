#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "bogolab/fock_transforms.hpp"
#include "bogolab/numerics.hpp"
#include "bogolab/potential.hpp"
#include "bogolab/regime.hpp"
#include "bogolab/scattering.hpp"
#include "bogolab/thermal.hpp"

namespace {

void BM_PairwiseSum(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> xs(std::size_t(state.range(0)));
    for (auto& x : xs) x = u(rng);
    for (auto _ : state) benchmark::DoNotOptimize(bogolab::pairwise_sum(xs));
}
BENCHMARK(BM_PairwiseSum)->Arg(1 << 12)->Arg(1 << 18);

void BM_LhyIntegral(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(bogolab::lhy_integral(1.0));
}
BENCHMARK(BM_LhyIntegral);

void BM_ThermalIntegral(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(bogolab::thermal_integral(1.0));
}
BENCHMARK(BM_ThermalIntegral);

void BM_BoxScatteringSolve(benchmark::State& state) {
    const auto pot = bogolab::RadialPotential::soft_sphere(2.0, 1.0);
    const double N = double(state.range(0));
    const auto par = bogolab::regime_from_box(N, 0.52, 0.08, 0.0);
    const double cap = 4.0 * std::pow(N, 0.48);
    for (auto _ : state)
        benchmark::DoNotOptimize(bogolab::solve_box_scattering(pot, par, cap, 1e-10));
}
BENCHMARK(BM_BoxScatteringSolve)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_CubicUnitary(benchmark::State& state) {
    const auto layout = bogolab::default_toy_layout();
    const bogolab::FockSpace space(layout.modes, layout.total_cap);
    const int k = *space.find_mode({0, 0, 1});
    const auto phi = bogolab::synthetic_phi(0.35);
    for (auto _ : state)
        benchmark::DoNotOptimize(bogolab::cubic_unitary(space, k, phi, 50.0));
}
BENCHMARK(BM_CubicUnitary)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
