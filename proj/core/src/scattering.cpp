#include "bogolab/scattering.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "bogolab/numerics.hpp"

namespace bogolab {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

int next_fast_size(int n) {
    for (int p = n;; ++p) {
        int m = p;
        for (int f : {2, 3, 5, 7})
            while (m % f == 0) m /= f;
        if (m == 1) return p;
    }
}

// Radial cache of 1/2 * hat V_N over integer squared norms.
class HalfKernel {
public:
    HalfKernel(const RadialPotential& pot, const RegimeParams& par) : pot_(pot), par_(par) {}
    double operator()(long long d2) {
        auto it = cache_.find(d2);
        if (it != cache_.end()) return it->second;
        const double v = 0.5 * rescaled_fourier(pot_, par_, kTwoPi * std::sqrt(double(d2)));
        cache_.emplace(d2, v);
        return v;
    }

private:
    const RadialPotential& pot_;
    const RegimeParams& par_;
    std::unordered_map<long long, double> cache_;
};

struct FftConvolver {
    int M;          // lattice coordinates in [-M, M]
    int P;          // cyclic grid size, >= 4M+2 so no alias lands in [-M, M]
    std::vector<double> kernel_hat;  // FFT of 1/2 V_N on the difference cube
    fftw_plan fwd = nullptr, bwd = nullptr;
    double* real_buf = nullptr;
    fftw_complex* cplx_buf = nullptr;
    std::size_t n_cplx = 0;

    FftConvolver(int M_, HalfKernel& kern) : M(M_) {
        P = next_fast_size(4 * M + 2);
        const std::size_t pn = std::size_t(P) * P * P;
        n_cplx = std::size_t(P) * P * (P / 2 + 1);
        real_buf = fftw_alloc_real(pn);
        cplx_buf = fftw_alloc_complex(n_cplx);
        fwd = fftw_plan_dft_r2c_3d(P, P, P, real_buf, cplx_buf, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_3d(P, P, P, cplx_buf, real_buf, FFTW_ESTIMATE);
        // kernel: 1/2 V_N at differences d in [-2M, 2M]^3, cyclically embedded
        std::fill(real_buf, real_buf + pn, 0.0);
        for (int x = -2 * M; x <= 2 * M; ++x)
            for (int y = -2 * M; y <= 2 * M; ++y)
                for (int z = -2 * M; z <= 2 * M; ++z) {
                    const long long d2 =
                        (long long)x * x + (long long)y * y + (long long)z * z;
                    real_buf[wrap_index(x, y, z)] = kern(d2);
                }
        fftw_execute(fwd);
        kernel_hat.resize(2 * n_cplx);
        std::memcpy(kernel_hat.data(), cplx_buf, 2 * n_cplx * sizeof(double));
    }
    ~FftConvolver() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(real_buf);
        fftw_free(cplx_buf);
    }
    FftConvolver(const FftConvolver&) = delete;
    FftConvolver& operator=(const FftConvolver&) = delete;

    std::size_t wrap_index(int x, int y, int z) const {
        const int xi = (x % P + P) % P, yi = (y % P + P) % P, zi = (z % P + P) % P;
        return (std::size_t(xi) * P + yi) * P + zi;
    }

    // out_p = sum_q kernel(p - q) in_q for p, q in the stored lattice
    void apply(const std::vector<Mode>& lattice, const std::vector<double>& in,
               std::vector<double>& out) {
        const std::size_t pn = std::size_t(P) * P * P;
        std::fill(real_buf, real_buf + pn, 0.0);
        for (std::size_t i = 0; i < lattice.size(); ++i)
            real_buf[wrap_index(lattice[i][0], lattice[i][1], lattice[i][2])] = in[i];
        fftw_execute(fwd);
        const double scale = 1.0 / double(pn);
        for (std::size_t i = 0; i < n_cplx; ++i) {
            const double ar = cplx_buf[i][0], ai = cplx_buf[i][1];
            const double br = kernel_hat[2 * i], bi = kernel_hat[2 * i + 1];
            cplx_buf[i][0] = (ar * br - ai * bi) * scale;
            cplx_buf[i][1] = (ar * bi + ai * br) * scale;
        }
        fftw_execute(bwd);
        out.resize(lattice.size());
        for (std::size_t i = 0; i < lattice.size(); ++i)
            out[i] = real_buf[wrap_index(lattice[i][0], lattice[i][1], lattice[i][2])];
    }
};

// O(n^2) convolution for small caps and cross-checks.
void apply_direct(const std::vector<Mode>& lattice, const std::vector<double>& in,
                  HalfKernel& kern, std::vector<double>& out) {
    const std::size_t n = lattice.size();
    out.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        KahanSum acc;
        for (std::size_t j = 0; j < n; ++j) {
            const int dx = lattice[i][0] - lattice[j][0];
            const int dy = lattice[i][1] - lattice[j][1];
            const int dz = lattice[i][2] - lattice[j][2];
            const long long d2 = (long long)dx * dx + (long long)dy * dy + (long long)dz * dz;
            acc.add(kern(d2) * in[j]);
        }
        out[i] = acc.value();
    }
}

}  // namespace

double rescaled_fourier(const RadialPotential& potential, const RegimeParams& params, double p) {
    const double scale = std::pow(params.N, 1.0 - params.kappa);
    return potential.fourier(p / scale) / scale;
}

double ScatteringSolution::phi_at(const Mode& m) const {
    if (m[0] == 0 && m[1] == 0 && m[2] == 0) return 0.0;
    if (std::abs(m[0]) > grid_M || std::abs(m[1]) > grid_M || std::abs(m[2]) > grid_M)
        return 0.0;
    const int side = 2 * grid_M + 1;
    const std::size_t idx =
        (std::size_t(m[0] + grid_M) * side + (m[1] + grid_M)) * side + (m[2] + grid_M);
    const int k = grid_index_[idx];
    return k < 0 ? 0.0 : phi[std::size_t(k)];
}

ScatteringSolution solve_box_scattering(const RadialPotential& potential,
                                        const RegimeParams& params, double cap, double tol,
                                        int max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("tol must be positive");
    const double support_scale = std::pow(params.N, 1.0 - params.kappa);
    if (cap < support_scale)
        throw std::invalid_argument("cap must cover the interaction scale N^(1-kappa)");

    ScatteringSolution sol;
    sol.cap = cap;
    sol.tol = tol;
    const int M = int(std::floor(cap / kTwoPi));
    sol.grid_M = M;
    const int side = 2 * M + 1;
    sol.grid_index_.assign(std::size_t(side) * side * side, -1);
    const double cap2 = cap * cap / (kTwoPi * kTwoPi);
    for (int x = -M; x <= M; ++x)
        for (int y = -M; y <= M; ++y)
            for (int z = -M; z <= M; ++z) {
                if (x == 0 && y == 0 && z == 0) continue;
                const long long m2 = (long long)x * x + (long long)y * y + (long long)z * z;
                if (double(m2) > cap2) continue;
                sol.lattice.push_back({x, y, z});
                const std::size_t idx =
                    (std::size_t(x + M) * side + (y + M)) * side + (z + M);
                sol.grid_index_[idx] = int(sol.lattice.size()) - 1;
            }
    const std::size_t n = sol.lattice.size();
    if (n == 0) throw std::invalid_argument("cap excludes every nonzero lattice point");

    HalfKernel kern(potential, params);

    if (potential.is_zero()) {
        sol.phi.assign(n, 0.0);
        sol.a_N = sol.a_N_shell_order = sol.a_N_tail_corrected = 0.0;
        return sol;
    }

    std::vector<double> p2(n);
    for (std::size_t i = 0; i < n; ++i) p2[i] = mode_norm2(sol.lattice[i]);

    const bool use_fft = n > 3000;
    std::unique_ptr<FftConvolver> fft;
    if (use_fft) fft = std::make_unique<FftConvolver>(M, kern);
    std::vector<double> conv;
    auto apply_A = [&](const std::vector<double>& v, std::vector<double>& out) {
        if (use_fft)
            fft->apply(sol.lattice, v, conv);
        else
            apply_direct(sol.lattice, v, kern, conv);
        out.resize(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = p2[i] * v[i] + conv[i];
    };

    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = -kern(
        (long long)sol.lattice[i][0] * sol.lattice[i][0] +
        (long long)sol.lattice[i][1] * sol.lattice[i][1] +
        (long long)sol.lattice[i][2] * sol.lattice[i][2]);

    // PCG with Jacobi (p^2) preconditioner
    std::vector<double> x(n, 0.0), r = b, z(n), pdir(n), Ap(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / p2[i];
    pdir = z;
    double rz = 0.0;
    for (std::size_t i = 0; i < n; ++i) rz += r[i] * z[i];
    double best_res = HUGE_VAL;
    int it = 0;
    for (; it < max_iter; ++it) {
        double rmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) rmax = std::max(rmax, std::abs(r[i]));
        best_res = std::min(best_res, rmax);
        if (rmax <= 0.5 * tol) break;  // headroom for the fresh-residual check
        apply_A(pdir, Ap);
        double pAp = 0.0;
        for (std::size_t i = 0; i < n; ++i) pAp += pdir[i] * Ap[i];
        const double alpha = rz / pAp;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * pdir[i];
            r[i] -= alpha * Ap[i];
        }
        for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / p2[i];
        double rz_new = 0.0;
        for (std::size_t i = 0; i < n; ++i) rz_new += r[i] * z[i];
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < n; ++i) pdir[i] = z[i] + beta * pdir[i];
    }
    sol.iterations = it;

    // fresh residual, not the CG recurrence
    apply_A(x, Ap);
    double rmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) rmax = std::max(rmax, std::abs(Ap[i] - b[i]));
    sol.residual = rmax;
    if (rmax > tol)
        throw std::runtime_error("box scattering solve did not converge: best residual " +
                                 std::to_string(std::min(best_res, rmax)) + " > tol " +
                                 std::to_string(tol));
    sol.phi = std::move(x);

    const double Nk1 = std::pow(params.N, params.kappa - 1.0);
    for (std::size_t i = 0; i < n; ++i)
        sol.pointwise_C = std::max(sol.pointwise_C, std::abs(p2[i] * sol.phi[i]) / Nk1);

    // eq:scatlength in two summation orders
    const double pref = std::pow(params.N, 1.0 - params.kappa);
    {
        KahanSum lex;
        for (std::size_t i = 0; i < n; ++i)
            lex.add(2.0 * kern((long long)sol.lattice[i][0] * sol.lattice[i][0] +
                               (long long)sol.lattice[i][1] * sol.lattice[i][1] +
                               (long long)sol.lattice[i][2] * sol.lattice[i][2]) *
                    sol.phi[i]);
        sol.correction = pref * lex.value();
        sol.a_N = (potential.fourier_zero() + sol.correction) / (8.0 * kPi);

        std::map<long long, KahanSum> by_shell;
        for (std::size_t i = 0; i < n; ++i) {
            const long long m2 = (long long)sol.lattice[i][0] * sol.lattice[i][0] +
                                 (long long)sol.lattice[i][1] * sol.lattice[i][1] +
                                 (long long)sol.lattice[i][2] * sol.lattice[i][2];
            by_shell[m2].add(2.0 * kern(m2) * sol.phi[i]);
        }
        KahanSum shells;
        for (const auto& [m2, acc] : by_shell) shells.add(acc.value());
        sol.a_N_shell_order = (potential.fourier_zero() + pref * shells.value()) / (8.0 * kPi);
    }

    // Beyond-cap accounting. Born level: phi_p ~ -V_N(p)/(2 p^2), so the
    // missing part of 8*pi*a_N is -(1/(4*pi^2)) int_{u_c}^inf hat V(u)^2 du
    // after substituting u = p / N^(1-kappa); N cancels. The uncertainty
    // envelope charges the neglected (V_N * phi) feedback with the l1 mass of
    // phi against sup u^2 |hat V(u)|.
    {
        const double u_c = cap / support_scale;
        const double U = u_c + 400.0;
        auto vhat2 = [&](double u) { const double v = potential.fourier(u); return v * v; };
        const double head = integrate(vhat2, u_c, U, 1e-10, 1e-16, 20000).value;
        const double cV = potential.fourier_tail_envelope();
        const double osc_tail = cV * cV / (3.0 * U * U * U);  // envelope of int_U^inf
        sol.tail_correction_8pi = -(head + 0.5 * osc_tail) / (4.0 * kPi * kPi);
        KahanSum l1;
        for (double v : sol.phi) l1.add(std::abs(v));
        const double env_int = cV * cV / (3.0 * u_c * u_c * u_c);
        sol.tail_uncertainty_8pi =
            (env_int * (l1.value() + 0.5 * osc_tail / std::max(env_int, 1e-300))) /
            (4.0 * kPi * kPi);
        sol.a_N_tail_corrected = sol.a_N + sol.tail_correction_8pi / (8.0 * kPi);
    }
    return sol;
}

std::vector<double> lattice_convolve(const RadialPotential& potential,
                                     const RegimeParams& params,
                                     const std::vector<Mode>& modes,
                                     const std::vector<double>& in) {
    if (modes.size() != in.size())
        throw std::invalid_argument("lattice_convolve: size mismatch");
    HalfKernel kern(potential, params);
    std::vector<double> out;
    if (modes.size() <= 3000) {
        apply_direct(modes, in, kern, out);
    } else {
        int M = 0;
        for (const Mode& m : modes)
            M = std::max({M, std::abs(m[0]), std::abs(m[1]), std::abs(m[2])});
        FftConvolver fft(M, kern);
        fft.apply(modes, in, out);
    }
    for (double& v : out) v *= 2.0;  // kernel carried the 1/2
    return out;
}

double residual_by_direct_summation(const RadialPotential& potential, const RegimeParams& params,
                                    const ScatteringSolution& sol) {
    HalfKernel kern(potential, params);
    std::vector<double> conv;
    apply_direct(sol.lattice, sol.phi, kern, conv);
    double rmax = 0.0;
    for (std::size_t i = 0; i < sol.lattice.size(); ++i) {
        const long long m2 = (long long)sol.lattice[i][0] * sol.lattice[i][0] +
                             (long long)sol.lattice[i][1] * sol.lattice[i][1] +
                             (long long)sol.lattice[i][2] * sol.lattice[i][2];
        const double lhs = mode_norm2(sol.lattice[i]) * sol.phi[i] + conv[i] + kern(m2);
        rmax = std::max(rmax, std::abs(lhs));
    }
    return rmax;
}

FullSpaceScatteringLength full_space_scattering_length(const RadialPotential& potential) {
    FullSpaceScatteringLength out;
    out.a_analytic = potential.analytic_scattering_length();
    if (potential.is_zero()) {
        out.a = out.a_ode = 0.0;
        out.a_analytic = 0.0;
        return out;
    }
    const double R = potential.radius();
    auto g = [&potential](double r) { return 0.5 * potential(r); };
    const auto [u, du] = integrate_radial_u(g, R, 20000);
    if (du == 0.0) throw std::runtime_error("zero-energy solution has vanishing slope at R");
    out.a_ode = R - u / du;
    out.a = out.a_analytic ? *out.a_analytic : out.a_ode;
    return out;
}

NormReport lemma21_norm_report(const ScatteringSolution& sol, const RegimeParams& params,
                               double alpha) {
    NormReport rep;
    rep.alpha = alpha;
    const double cut = std::pow(params.N, alpha);
    KahanSum l1, l2, pphi, l2a;
    for (std::size_t i = 0; i < sol.lattice.size(); ++i) {
        const double v = sol.phi[i];
        const double p2 = mode_norm2(sol.lattice[i]);
        l1.add(std::abs(v));
        l2.add(v * v);
        pphi.add(p2 * v * v);
        rep.linf = std::max(rep.linf, std::abs(v));
        if (p2 > cut * cut) {
            l2a.add(v * v);
            rep.linf_alpha = std::max(rep.linf_alpha, std::abs(v));
        }
    }
    rep.l1 = l1.value();
    rep.l2 = std::sqrt(l2.value());
    rep.p_phi_l2_sq = pphi.value();
    rep.l2_alpha = std::sqrt(l2a.value());
    rep.pointwise_C = sol.pointwise_C;
    return rep;
}

std::vector<NormScalingFlag> norm_scaling_flags(const std::vector<double>& Ns,
                                                const std::vector<NormReport>& reports,
                                                double kappa) {
    if (Ns.size() != reports.size() || Ns.size() < 2)
        throw std::invalid_argument("norm_scaling_flags: need a ladder of >= 2 solutions");
    const double alpha = reports.front().alpha;
    struct Entry {
        const char* name;
        double expected;
        double (*get)(const NormReport&);
    };
    const Entry entries[] = {
        {"l1", 0.0, [](const NormReport& r) { return r.l1; }},
        {"l2", kappa - 1.0, [](const NormReport& r) { return r.l2; }},
        {"linf", kappa - 1.0, [](const NormReport& r) { return r.linf; }},
        {"p_phi_l2_sq", kappa - 1.0, [](const NormReport& r) { return r.p_phi_l2_sq; }},
        {"l2_alpha", kappa - 1.0 - alpha / 2.0, [](const NormReport& r) { return r.l2_alpha; }},
        {"linf_alpha", kappa - 1.0 - 2.0 * alpha,
         [](const NormReport& r) { return r.linf_alpha; }},
    };
    std::vector<NormScalingFlag> flags;
    for (const auto& e : entries) {
        std::vector<double> lx, ly;
        for (std::size_t i = 0; i < Ns.size(); ++i) {
            const double v = e.get(reports[i]);
            if (v <= 0.0) continue;
            lx.push_back(std::log(Ns[i]));
            ly.push_back(std::log(v));
        }
        NormScalingFlag f;
        f.norm = e.name;
        f.expected_exponent = e.expected;
        if (lx.size() >= 2) {
            f.fitted_exponent = fit_line(lx, ly).slope;
            f.flagged = std::abs(f.fitted_exponent - e.expected) > 0.15;
        }
        flags.push_back(f);
    }
    return flags;
}

}  // namespace bogolab
