#ifndef BOGOLAB_SCATTERING_HPP
#define BOGOLAB_SCATTERING_HPP

#include <optional>
#include <vector>

#include "bogolab/potential.hpp"
#include "bogolab/regime.hpp"

namespace bogolab {

// hat V_N(p) = N^(-1+kappa) * hat V(p / N^(1-kappa)).
double rescaled_fourier(const RadialPotential& potential, const RegimeParams& params, double p);

// Solution of the box scattering equation
//   p^2 phi_p + 1/2 sum_{q != 0} hat V_N(p-q) phi_q = -1/2 hat V_N(p)
// on the lattice 2*pi*Z^3 truncated to |p| <= cap, phi treated as 0 beyond.
struct ScatteringSolution {
    std::vector<Mode> lattice;  // nonzero modes with |p| <= cap, lexicographic
    std::vector<double> phi;    // parallel to lattice, phi_0 excluded (== 0)
    double cap = 0.0;
    double tol = 0.0;
    int iterations = 0;
    double residual = 0.0;       // max-norm, recomputed by a fresh operator apply
    double pointwise_C = 0.0;    // max |p^2 phi_p| / N^(kappa-1)

    // eq:scatlength pieces, restricted to the cap
    double a_N = 0.0;            // box scattering length from the in-cap sum
    double correction = 0.0;     // N^(1-kappa) sum_p hat V_N(p) phi_p (negative for V >= 0)
    double a_N_shell_order = 0.0;  // same sum accumulated by |p|^2 shells (order cross-check)

    // Beyond-cap contribution to 8*pi*a_N, never silently dropped: a Born
    // estimate plus an envelope bound on what the estimate can miss.
    double tail_correction_8pi = 0.0;
    double tail_uncertainty_8pi = 0.0;
    double a_N_tail_corrected = 0.0;

    int grid_M = 0;  // lattice coordinates span [-M, M]^3
    double phi_at(const Mode& m) const;  // 0 for m = 0 or beyond the cap

private:
    friend ScatteringSolution solve_box_scattering(const RadialPotential&, const RegimeParams&,
                                                   double, double, int);
    std::vector<int> grid_index_;  // (2M+1)^3 cube -> index into lattice, -1 if absent
};

// Preconditioned CG on the SPD operator p^2 + 1/2 hat V_N * restricted to the
// truncated lattice. The convolution runs by direct summation at small caps
// and through an FFT on the enclosing cube at large caps. Throws on
// non-convergence, carrying the best residual in the message.
ScatteringSolution solve_box_scattering(const RadialPotential& potential,
                                        const RegimeParams& params, double cap,
                                        double tol = 1e-10, int max_iter = 500);

// Direct evaluation of p^2 phi_p + 1/2 sum_q hat V_N(p-q) phi_q - rhs_p,
// independent of the solver's internal state. O(n^2); test/diagnostic use.
double residual_by_direct_summation(const RadialPotential& potential, const RegimeParams& params,
                                    const ScatteringSolution& sol);

// out_p = sum_q hat V_N(p-q) in_q over the given mode list; direct summation
// below the seam size, FFT on the enclosing cube above it.
std::vector<double> lattice_convolve(const RadialPotential& potential,
                                     const RegimeParams& params,
                                     const std::vector<Mode>& modes,
                                     const std::vector<double>& in);

struct FullSpaceScatteringLength {
    double a = 0.0;                       // analytic when available, else ODE
    std::optional<double> a_analytic;     // soft sphere: R - tanh(k0 R)/k0
    double a_ode = 0.0;                   // radial zero-energy integration
};

// Full-space oracle: integrates -u'' + 1/2 V u = 0, u(0)=0 and reads a from
// u(r) = c*(r - a) beyond the support. Radial profiles only (by construction
// of RadialPotential).
FullSpaceScatteringLength full_space_scattering_length(const RadialPotential& potential);

struct NormReport {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
    double p_phi_l2_sq = 0.0;  // sum p^2 phi_p^2
    double pointwise_C = 0.0;  // max |p^2 phi_p| / N^(kappa-1)
    double alpha = 0.0;
    double l2_alpha = 0.0;     // || phi 1_{|p| > N^alpha} ||_2
    double linf_alpha = 0.0;
};

// The norms all bound |phi| in absolute value; phi itself is negative at
// small |p| for repulsive V, as solved.
NormReport lemma21_norm_report(const ScatteringSolution& sol, const RegimeParams& params,
                               double alpha);

struct NormScalingFlag {
    const char* norm = "";
    double fitted_exponent = 0.0;
    double expected_exponent = 0.0;
    bool flagged = false;  // |fitted - expected| > 0.15
};

// Regression of each norm against N across a ladder of solutions.
std::vector<NormScalingFlag> norm_scaling_flags(const std::vector<double>& Ns,
                                                const std::vector<NormReport>& reports,
                                                double kappa);

}  // namespace bogolab

#endif
