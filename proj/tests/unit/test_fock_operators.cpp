#include <doctest.h>

#include <cmath>
#include <complex>

#include "bogolab/fock_operators.hpp"

using namespace bogolab;

TEST_CASE("ladder operators on a single capped mode") {
    const FockSpace space({{{0, 0, 0}, ModeTag::Condensate, 3}}, 10);
    const auto [a, ad] = ladder(space, 0);
    // a^dag a has eigenvalues {0, 1, 2, 3}
    const SparseOperator n = ad * a;
    const DenseMat nd = n.to_dense();
    for (int k = 0; k <= 3; ++k) {
        Occupation occ = {std::uint8_t(k)};
        const auto idx = *space.index_of(occ);
        CHECK(nd(Eigen::Index(idx), Eigen::Index(idx)).real() == doctest::Approx(double(k)));
    }
    CHECK(n.max_abs_diff(number_op(space, 0)) == 0.0);

    // a annihilates the vacuum
    DenseVec vac = DenseVec::Zero(4);
    vac[Eigen::Index(*space.index_of({0}))] = 1.0;
    CHECK(a.apply(vac).norm() == 0.0);

    // [a, a^dag] = 1 away from the cap
    const SparseOperator comm = a * ad - ad * a;
    const DenseMat cd = comm.to_dense();
    for (int k = 0; k < 3; ++k) {
        const auto idx = *space.index_of({std::uint8_t(k)});
        CHECK(cd(Eigen::Index(idx), Eigen::Index(idx)).real() == doctest::Approx(1.0));
    }
    // a^dag is the adjoint of a
    CHECK(ad.max_abs_diff(a.adjoint()) == 0.0);
}

TEST_CASE("commutator across distinct modes vanishes") {
    const FockSpace space(
        {{{0, 0, 1}, ModeTag::Shell, 3}, {{0, 0, -1}, ModeTag::Shell, 3}}, 6);
    const auto [a1, ad1] = ladder(space, 0);
    const auto [a2, ad2] = ladder(space, 1);
    CHECK((a1 * ad2 - ad2 * a1).max_abs() == 0.0);
    CHECK((a1 * a2 - a2 * a1).max_abs() == 0.0);
}

TEST_CASE("projectors and number sums") {
    const ToyLayout toy = default_toy_layout();
    const FockSpace space(toy.modes, toy.total_cap);
    const SparseOperator xi = xi_projector(space);
    // vacuum is in the range of Xi
    Occupation vac(std::size_t(space.n_modes()), 0);
    const auto vi = *space.index_of(vac);
    CHECK(xi.matrix().coeff(Eigen::Index(vi), Eigen::Index(vi)) == Complex(1.0));
    // idempotent
    CHECK((xi * xi).max_abs_diff(xi) == 0.0);
    const SparseOperator p = shell_support_projector(space);
    CHECK((p * p).max_abs_diff(p) == 0.0);
    // N_S + N_H + N_cond equals N on every basis state
    const SparseOperator n_all = number_sum_tag(space, ModeTag::Shell) +
                                 number_sum_tag(space, ModeTag::High) +
                                 number_sum_tag(space, ModeTag::Condensate);
    Eigen::VectorXd d(Eigen::Index(space.dim()));
    for (std::size_t j = 0; j < space.dim(); ++j) {
        int t = 0;
        for (int m = 0; m < space.n_modes(); ++m) t += space.occupation(j)[std::size_t(m)];
        d[Eigen::Index(j)] = double(t);
    }
    CHECK(n_all.max_abs_diff(SparseOperator::diagonal(d)) == 0.0);
}

TEST_CASE("pade exponential on closed-form cases") {
    // nilpotent
    DenseMat n2 = DenseMat::Zero(2, 2);
    n2(0, 1) = 3.0;
    const DenseMat e2 = expm_pade(n2);
    CHECK(std::abs(e2(0, 1) - Complex(3.0)) < 1e-14);
    CHECK(std::abs(e2(0, 0) - Complex(1.0)) < 1e-14);
    // rotation generator: exp(theta J), J = [[0,-1],[1,0]]
    DenseMat j = DenseMat::Zero(2, 2);
    const double th = 0.7;
    j(0, 1) = -th;
    j(1, 0) = th;
    const DenseMat r = expm_pade(j);
    CHECK(std::abs(r(0, 0) - Complex(std::cos(th))) < 1e-14);
    CHECK(std::abs(r(1, 0) - Complex(std::sin(th))) < 1e-14);
    // large norm exercises the squaring phase
    DenseMat big = DenseMat::Zero(2, 2);
    big(0, 0) = 20.0;
    CHECK(std::abs(expm_pade(big)(0, 0) - Complex(std::exp(20.0))) / std::exp(20.0) < 1e-12);
}

TEST_CASE("displacement block exponential is the coherent shift") {
    const FockSpace space({{{0, 0, 0}, ModeTag::Condensate, 30}}, 30);
    const double th = 0.4;
    const SparseOperator w = displacement_exp(space, 0, th);
    CHECK(w.unitarity_deviation() < 1e-12);
    // against the dense oracle
    const auto [a, ad] = ladder(space, 0);
    const DenseMat gen = (ad - a).scaled(th).to_dense();
    CHECK((w.to_dense() - expm_pade(gen)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pair squeeze block exponential matches the dense oracle") {
    const FockSpace space(
        {{{0, 0, 1}, ModeTag::Shell, 10}, {{0, 0, -1}, ModeTag::Shell, 10}}, 20);
    const double eta = -0.17;
    const SparseOperator u = pair_squeeze_exp(space, 0, 1, eta);
    CHECK(u.unitarity_deviation() < 1e-12);
    const auto [a1, ad1] = ladder(space, 0);
    const auto [a2, ad2] = ladder(space, 1);
    const DenseMat gen = (ad1 * ad2 - a2 * a1).scaled(eta).to_dense();
    CHECK((u.to_dense() - expm_pade(gen)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("exp_apply matches the assembled exponential on a vector") {
    const FockSpace space(
        {{{0, 0, 1}, ModeTag::Shell, 8}, {{0, 0, -1}, ModeTag::Shell, 8}}, 16);
    const auto [a1, ad1] = ladder(space, 0);
    const auto [a2, ad2] = ladder(space, 1);
    const SparseOperator gen = (ad1 * ad2 - a2 * a1).scaled(0.3);
    DenseVec v = DenseVec::Zero(Eigen::Index(space.dim()));
    v[Eigen::Index(*space.index_of({1, 2}))] = 1.0;
    const DenseVec via_taylor = exp_apply(gen.matrix(), v);
    const DenseVec via_dense = expm_pade(gen.to_dense()) * v;
    CHECK((via_taylor - via_dense).norm() < 1e-12);
}

TEST_CASE("flag validation") {
    SpMat m(2, 2);
    m.insert(0, 1) = 1.0;  // not hermitian
    CHECK_THROWS_AS(SparseOperator(m, true, false), std::runtime_error);
    CHECK_THROWS_AS(SparseOperator(m, false, true), std::runtime_error);
}

TEST_CASE("trace against a density matrix") {
    const FockSpace space({{{0, 0, 1}, ModeTag::Shell, 2}}, 2);
    Eigen::VectorXd w(3);
    w << 0.5, 0.3, 0.2;
    const SparseOperator rho = SparseOperator::diagonal(w);
    const SparseOperator n = number_op(space, 0);
    CHECK(n.trace_against(rho).real() == doctest::Approx(0.3 + 0.4));
}
