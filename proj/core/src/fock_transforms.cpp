#include "bogolab/fock_transforms.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bogolab {

namespace {

double int_norm2(const Mode& m) {
    return double(m[0]) * m[0] + double(m[1]) * m[1] + double(m[2]) * m[2];
}

Mode add(const Mode& a, const Mode& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Mode neg(const Mode& a) { return {-a[0], -a[1], -a[2]}; }
Mode sub(const Mode& a, const Mode& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// high modes t with -t and t+k present and high: the detection range of
// existing k-connections
std::vector<std::array<int, 2>> connection_pairs(const FockSpace& space, const Mode& k) {
    std::vector<std::array<int, 2>> pairs;  // (index of -t, index of t+k)
    for (int t = 0; t < space.n_modes(); ++t) {
        if (space.mode(t).tag != ModeTag::High) continue;
        const auto mt = space.find_mode(neg(space.mode(t).label));
        const auto tk = space.find_mode(add(space.mode(t).label, k));
        if (!mt || !tk) continue;
        if (space.mode(*mt).tag != ModeTag::High || space.mode(*tk).tag != ModeTag::High)
            continue;
        pairs.push_back({*mt, *tk});
    }
    return pairs;
}

}  // namespace

SparseOperator weyl(const FockSpace& space, double amplitude) {
    const auto cond = space.condensate();
    if (!cond) throw std::invalid_argument("weyl: no condensate mode in the layout");
    const double needed = amplitude * amplitude + 4.0 * std::abs(amplitude) + 4.0;
    if (double(space.mode(*cond).cap) < needed)
        throw std::invalid_argument("weyl: condensate cap " +
                                    std::to_string(space.mode(*cond).cap) +
                                    " too small for amplitude; need >= " +
                                    std::to_string(int(std::ceil(needed))));
    return displacement_exp(space, *cond, amplitude);
}

std::vector<EtaPair> pair_up(const FockSpace& space, ModeTag tag,
                             const std::function<double(const Mode&)>& eta_of_mode) {
    std::vector<EtaPair> pairs;
    for (int i = 0; i < space.n_modes(); ++i) {
        if (space.mode(i).tag != tag) continue;
        const Mode label = space.mode(i).label;
        const Mode m = neg(label);
        if (std::lexicographical_compare(label.begin(), label.end(), m.begin(), m.end()))
            continue;  // visit each pair once, from its lexicographically larger member
        const auto j = space.find_mode(m);
        if (!j || space.mode(*j).tag != tag)
            throw std::invalid_argument("pair_up: unpaired mode in layout");
        pairs.push_back({i, *j, eta_of_mode(label)});
    }
    return pairs;
}

SparseOperator quadratic_bogoliubov(const FockSpace& space, const std::vector<EtaPair>& pairs) {
    std::vector<bool> used(std::size_t(space.n_modes()), false);
    SparseOperator u = SparseOperator::identity(space.dim());
    for (const EtaPair& p : pairs) {
        if (p.mode_p < 0 || p.mode_m < 0 || p.mode_p == p.mode_m)
            throw std::invalid_argument("quadratic_bogoliubov: bad pair");
        if (space.mode(p.mode_p).label != neg(space.mode(p.mode_m).label))
            throw std::invalid_argument("quadratic_bogoliubov: unpaired mode in eta map");
        if (used[std::size_t(p.mode_p)] || used[std::size_t(p.mode_m)])
            throw std::invalid_argument("quadratic_bogoliubov: mode reused across pairs");
        used[std::size_t(p.mode_p)] = used[std::size_t(p.mode_m)] = true;
        if (p.eta == 0.0) continue;
        u = u * pair_squeeze_exp(space, p.mode_p, p.mode_m, p.eta);
    }
    u.unitary_flag = true;
    return u;
}

SparseOperator cutoff_theta(const FockSpace& space, int k_mode, int r_mode) {
    if (space.mode(k_mode).tag != ModeTag::Shell)
        throw std::invalid_argument("cutoff_theta: k must be shell-tagged");
    if (space.mode(r_mode).tag != ModeTag::High)
        throw std::invalid_argument("cutoff_theta: r must be high-tagged");
    const Mode k = space.mode(k_mode).label;
    const Mode r = space.mode(r_mode).label;
    const auto rk = space.find_mode(add(r, k));
    if (!rk || space.mode(*rk).tag != ModeTag::High)
        throw std::invalid_argument("cutoff_theta: r+k must be a high mode");

    const auto theta1 = connection_pairs(space, k);
    // factor (2): for each shell q, the modes r+q and -(k+r)+q must be empty
    std::vector<std::vector<int>> theta2;
    const Mode mkr = neg(add(k, r));
    for (int q : space.modes_with_tag(ModeTag::Shell)) {
        const Mode ql = space.mode(q).label;
        std::vector<int> watch;
        if (auto i = space.find_mode(add(r, ql))) watch.push_back(*i);
        if (auto i = space.find_mode(add(mkr, ql))) watch.push_back(*i);
        if (!watch.empty()) theta2.push_back(std::move(watch));
    }
    return diagonal_projector(space, [theta1, theta2](const Occupation& occ) {
        for (const auto& [mt, tk] : theta1)
            if (occ[std::size_t(mt)] > 0 && occ[std::size_t(tk)] > 0) return false;
        for (const auto& watch : theta2) {
            int s = 0;
            for (int m : watch) s += occ[std::size_t(m)];
            if (s > 0) return false;
        }
        return true;
    });
}

std::string describe_cutoff(const FockSpace& space, int k_mode, int r_mode) {
    std::ostringstream os;
    auto show = [&](const Mode& m) {
        os << '(' << m[0] << ',' << m[1] << ',' << m[2] << ')';
    };
    const Mode k = space.mode(k_mode).label;
    const Mode r = space.mode(r_mode).label;
    os << "Theta[k=";
    show(k);
    os << ",r=";
    show(r);
    os << "]: factor1 pairs";
    for (const auto& [mt, tk] : connection_pairs(space, k)) {
        os << ' ';
        show(space.mode(mt).label);
        os << '+';
        show(space.mode(tk).label);
    }
    os << "; factor2 watches";
    const Mode mkr = neg(add(k, r));
    int active = 0;
    for (int q : space.modes_with_tag(ModeTag::Shell)) {
        const Mode ql = space.mode(q).label;
        for (const Mode& cand : {add(r, ql), add(mkr, ql)})
            if (space.find_mode(cand)) {
                os << ' ';
                show(cand);
                ++active;
            }
    }
    if (active == 0) os << " none (vacuous on this layout)";
    return os.str();
}

CubicOps cubic_generator(const FockSpace& space, int k_mode,
                         const std::function<double(const Mode&)>& phi, double N) {
    CubicOps ops;
    ops.range = space.connection_range(k_mode);
    const std::size_t dim = space.dim();
    ops.b_sharp = SparseOperator::zero(dim);
    const auto [a_k, ad_k] = ladder(space, k_mode);
    for (int r_mode : ops.range) {
        const Mode r = space.mode(r_mode).label;
        const Mode k = space.mode(k_mode).label;
        const int mr = *space.find_mode(neg(r));
        const int rk = *space.find_mode(add(r, k));
        const SparseOperator theta = cutoff_theta(space, k_mode, r_mode);
        const auto [a_mr, ad_mr] = ladder(space, mr);
        const auto [a_rk, ad_rk] = ladder(space, rk);
        const double coeff = std::sqrt(N) * phi(r);
        ops.b_sharp =
            ops.b_sharp + (ad_mr * ad_rk * a_k * theta).scaled(Complex(coeff, 0.0));
    }
    ops.b_sharp.prune(0.0);
    ops.b_circ = ops.b_sharp.adjoint();
    ops.b = ops.b_sharp - ops.b_circ;
    return ops;
}

XkResult xk_operator(const FockSpace& space, int k_mode, const CubicOps& ops,
                     const std::function<double(const Mode&)>& phi, double N) {
    XkResult res;
    res.x2 = ops.b_circ * ops.b_sharp;
    res.x2.prune(1e-300);

    // closed diagonal formula, carried on the truncated space: the creation
    // headroom indicator reflects the cap restriction of b_sharp
    const Mode k = space.mode(k_mode).label;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(Eigen::Index(space.dim()));
    for (int r_mode : ops.range) {
        const Mode r = space.mode(r_mode).label;
        const int mr = *space.find_mode(neg(r));
        const int rk = *space.find_mode(add(r, k));
        const bool partner_in_range =
            std::find(ops.range.begin(), ops.range.end(),
                      *space.find_mode(neg(add(k, r)))) != ops.range.end();
        const double weight =
            N * phi(r) * (phi(r) + (partner_in_range ? phi(add(r, k)) : 0.0));
        const SparseOperator theta = cutoff_theta(space, k_mode, r_mode);
        const SpMat& tm = theta.matrix();
        for (std::size_t j = 0; j < space.dim(); ++j) {
            const Occupation& occ = space.occupation(j);
            if (occ[std::size_t(k_mode)] == 0) continue;
            if (tm.coeff(Eigen::Index(j), Eigen::Index(j)) == Complex(0.0)) continue;
            // headroom: the pair creation after a_k must stay inside the caps
            Occupation next = occ;
            next[std::size_t(k_mode)] -= 1;
            next[std::size_t(mr)] += 1;
            next[std::size_t(rk)] += 1;
            bool fits = next[std::size_t(mr)] <= space.mode(mr).cap &&
                        next[std::size_t(rk)] <= space.mode(rk).cap;
            if (fits) {
                int total = 0;
                for (auto v : next) total += v;
                fits = total <= space.total_cap();
                if (fits) fits = space.index_of(next).has_value();
            }
            if (!fits) continue;
            diag[Eigen::Index(j)] += weight * double(occ[std::size_t(k_mode)]);
        }
    }
    res.formula_x2 = SparseOperator::diagonal(diag);
    res.formula_deviation = res.x2.max_abs_diff(res.formula_x2);

    // principal square root; x2 is diagonal, entries must be >= -1e-12
    Eigen::VectorXd d = Eigen::VectorXd::Zero(Eigen::Index(space.dim()));
    double off = 0.0;
    const SpMat& m = res.x2.matrix();
    for (int c = 0; c < m.outerSize(); ++c)
        for (SpMat::InnerIterator it(m, c); it; ++it) {
            if (it.row() == it.col())
                d[it.row()] = it.value().real();
            else
                off = std::max(off, std::abs(it.value()));
        }
    if (off > 1e-12)
        throw std::runtime_error("xk_operator: X_k^2 is not diagonal (construction bug)");
    res.min_eigenvalue = d.size() ? d.minCoeff() : 0.0;
    if (res.min_eigenvalue < -1e-12)
        throw std::runtime_error("xk_operator: X_k^2 has negative eigenvalue " +
                                 std::to_string(res.min_eigenvalue));
    Eigen::VectorXd sq(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) sq[i] = std::sqrt(std::max(0.0, d[i]));
    res.x = SparseOperator::diagonal(sq);
    return res;
}

namespace {

// entrywise spectral functions of X given the diagonal of X^2; series below
// y = 1e-8
Eigen::VectorXd spectral_cos(const Eigen::VectorXd& y) {
    Eigen::VectorXd out(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i)
        out[i] = y[i] < 1e-8 ? 1.0 - y[i] / 2.0 + y[i] * y[i] / 24.0
                             : std::cos(std::sqrt(y[i]));
    return out;
}
Eigen::VectorXd spectral_sinc(const Eigen::VectorXd& y) {
    Eigen::VectorXd out(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i)
        out[i] = y[i] < 1e-8 ? 1.0 - y[i] / 6.0 + y[i] * y[i] / 120.0
                             : std::sin(std::sqrt(y[i])) / std::sqrt(y[i]);
    return out;
}
Eigen::VectorXd spectral_cosm1_over(const Eigen::VectorXd& y) {
    Eigen::VectorXd out(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i)
        out[i] = y[i] < 1e-8 ? -0.5 + y[i] / 24.0 - y[i] * y[i] / 720.0
                             : (std::cos(std::sqrt(y[i])) - 1.0) / y[i];
    return out;
}

Eigen::VectorXd diag_of(const SparseOperator& op) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(Eigen::Index(op.dimension()));
    const SpMat& m = op.matrix();
    for (int c = 0; c < m.outerSize(); ++c)
        for (SpMat::InnerIterator it(m, c); it; ++it)
            if (it.row() == it.col()) d[it.row()] = it.value().real();
    return d;
}

}  // namespace

SparseOperator cubic_unitary(const FockSpace& space, int k_mode,
                             const std::function<double(const Mode&)>& phi, double N) {
    const CubicOps ops = cubic_generator(space, k_mode, phi, N);
    const XkResult xk = xk_operator(space, k_mode, ops, phi, N);
    const Eigen::VectorXd y = diag_of(xk.x2);
    SparseOperator t = SparseOperator::diagonal(spectral_cos(y)) +
                       ops.b_sharp * SparseOperator::diagonal(spectral_sinc(y)) -
                       SparseOperator::diagonal(spectral_sinc(y)) * ops.b_circ +
                       ops.b_sharp * SparseOperator::diagonal(spectral_cosm1_over(y)) *
                           ops.b_circ;
    t.prune(0.0);
    const double udev = t.unitarity_deviation();
    if (udev > 1e-10)
        throw std::runtime_error("cubic_unitary: T_k not unitary, deviation " +
                                 std::to_string(udev));
    t.unitary_flag = true;
    return t;
}

SparseOperator cubic_product(const FockSpace& space, const std::vector<int>& shell_order,
                             const std::function<double(const Mode&)>& phi, double N) {
    SparseOperator t = SparseOperator::identity(space.dim());
    for (int k : shell_order) t = t * cubic_unitary(space, k, phi, N);
    t.unitary_flag = true;
    return t;
}

ParityOps parity_ops(const FockSpace& space, int k_mode) {
    if (space.mode(k_mode).tag != ModeTag::Shell)
        throw std::invalid_argument("parity_ops: k must be shell-tagged");
    const Mode k = space.mode(k_mode).label;
    const auto mk_mode = space.find_mode(neg(k));
    if (!mk_mode || space.mode(*mk_mode).tag != ModeTag::Shell)
        throw std::invalid_argument("parity_ops: -k must be a shell mode");

    auto m_diag = [&space](int kk, const Mode& klabel) {
        Eigen::VectorXd d = Eigen::VectorXd::Zero(Eigen::Index(space.dim()));
        const auto pairs = connection_pairs(space, klabel);
        for (std::size_t j = 0; j < space.dim(); ++j) {
            const Occupation& occ = space.occupation(j);
            double v = occ[std::size_t(kk)];
            for (const auto& [mt, tk] : pairs)
                v += 0.5 * double(occ[std::size_t(mt)]) * double(occ[std::size_t(tk)]);
            d[Eigen::Index(j)] = v;
        }
        return d;
    };
    ParityOps out;
    const Eigen::VectorXd dk = m_diag(k_mode, k);
    const Eigen::VectorXd dm = m_diag(*mk_mode, neg(k));
    out.m_k = SparseOperator::diagonal(dk);
    out.m_minus = SparseOperator::diagonal(dm);
    Eigen::VectorXd p(dk.size());
    for (Eigen::Index i = 0; i < dk.size(); ++i) {
        const double v = dk[i] + dm[i];
        const double r = std::round(v);
        if (std::abs(v - r) > 1e-9)
            throw std::runtime_error("parity_ops: non-integer connection count (mislabeled "
                                     "modes in layout)");
        p[i] = (long long)(r) % 2 == 0 ? 1.0 : 0.0;
    }
    out.p_k = SparseOperator::diagonal(p);
    out.q_k = SparseOperator::identity(space.dim()) - out.p_k;
    return out;
}

SparseOperator chi_projector(const FockSpace& space, int p_mode, bool strict) {
    if (space.mode(p_mode).tag != ModeTag::High)
        throw std::invalid_argument("chi_projector: p must be high-tagged");
    const Mode p = space.mode(p_mode).label;
    std::vector<int> neighbors;  // existing modes -p + x, x in S
    for (int q : space.modes_with_tag(ModeTag::Shell))
        if (auto i = space.find_mode(add(neg(p), space.mode(q).label)))
            neighbors.push_back(*i);
    Eigen::VectorXd d(Eigen::Index(space.dim()));
    for (std::size_t j = 0; j < space.dim(); ++j) {
        const Occupation& occ = space.occupation(j);
        const int np = occ[std::size_t(p_mode)];
        double v = 0.0;
        if (np == 0) {
            v = 1.0;
        } else if (np == 1) {
            if (strict) {
                for (std::size_t x = 0; x < neighbors.size(); ++x) {
                    if (occ[std::size_t(neighbors[x])] != 1) continue;
                    bool others_empty = true;
                    for (std::size_t y = 0; y < neighbors.size(); ++y)
                        if (y != x && occ[std::size_t(neighbors[y])] != 0) others_empty = false;
                    if (others_empty) v += 1.0;
                }
            } else {
                for (int nb : neighbors)
                    if (occ[std::size_t(nb)] == 1) v += 1.0;
            }
        }
        d[Eigen::Index(j)] = v;
    }
    return SparseOperator::diagonal(d);
}

MonogamyReport monogamy_check(const FockSpace& space, const SparseOperator& t_c,
                              const SparseOperator& gamma, int p_mode) {
    const SparseOperator p = shell_support_projector(space);
    const SparseOperator projected = p * gamma * p;
    const double scale = std::max(1.0, gamma.max_abs());
    if (gamma.max_abs_diff(projected) > 1e-13 * scale)
        throw std::invalid_argument(
            "monogamy_check: Gamma not supported on N_{S^c} = 0 (precondition)");
    SparseOperator x = t_c * gamma * t_c.adjoint();
    x.prune(1e-300);
    MonogamyReport rep;
    const SparseOperator chi = chi_projector(space, p_mode, true);
    const SparseOperator chi_t = chi_projector(space, p_mode, false);
    rep.dev_chi = (chi * x * chi).max_abs_diff(x);
    rep.dev_chi_tilde = (chi_t * x * chi_t).max_abs_diff(x);
    return rep;
}

SparseOperator gibbs_gamma0(const FockSpace& space,
                            const std::function<double(const Mode&)>& e_of_mode,
                            double T_eff) {
    if (!(T_eff > 0.0)) throw std::invalid_argument("gibbs_gamma0: T_eff must be positive");
    const auto shell = space.modes_with_tag(ModeTag::Shell);
    if (shell.empty()) throw std::invalid_argument("gibbs_gamma0: no shell modes");
    Eigen::VectorXd w = Eigen::VectorXd::Zero(Eigen::Index(space.dim()));
    double z = 0.0;
    for (std::size_t j = 0; j < space.dim(); ++j) {
        const Occupation& occ = space.occupation(j);
        bool supported = true;
        for (int m = 0; m < space.n_modes(); ++m)
            if (space.mode(m).tag != ModeTag::Shell && occ[std::size_t(m)] != 0)
                supported = false;
        if (!supported) continue;
        double energy = 0.0;
        for (int m : shell)
            energy += e_of_mode(space.mode(m).label) * double(occ[std::size_t(m)]);
        const double weight = std::exp(-energy / T_eff);
        w[Eigen::Index(j)] = weight;
        z += weight;
    }
    return SparseOperator::diagonal(w / z);
}

WeylDecomposition hamiltonian_assembly(const FockSpace& space,
                                       const std::function<double(const Mode&)>& vn,
                                       double N0) {
    const auto cond = space.condensate();
    if (!cond) throw std::invalid_argument("hamiltonian_assembly: layout has no condensate");
    const int nm = space.n_modes();
    const std::size_t dim = space.dim();
    std::vector<SparseOperator> a(std::size_t(nm)), ad(std::size_t(nm));
    for (int i = 0; i < nm; ++i) {
        auto [ai, adi] = ladder(space, i);
        a[std::size_t(i)] = std::move(ai);
        ad[std::size_t(i)] = std::move(adi);
    }
    Eigen::VectorXd kin = Eigen::VectorXd::Zero(Eigen::Index(dim));
    for (std::size_t j = 0; j < dim; ++j) {
        double v = 0.0;
        for (int m = 0; m < nm; ++m)
            v += int_norm2(space.mode(m).label) * double(space.occupation(j)[std::size_t(m)]);
        kin[Eigen::Index(j)] = v;
    }
    const SparseOperator kinetic = SparseOperator::diagonal(kin);

    WeylDecomposition out;
    // retained momentum-conserving quadruples (A,B,C,D) = (p+r, q, q+r, p)
    struct Quad {
        int A, B, C, D;
        double coeff;
    };
    std::vector<Quad> quads;
    for (int A = 0; A < nm; ++A)
        for (int B = 0; B < nm; ++B)
            for (int D = 0; D < nm; ++D) {
                const Mode c =
                    sub(add(space.mode(A).label, space.mode(B).label), space.mode(D).label);
                const auto C = space.find_mode(c);
                if (!C) continue;
                quads.push_back(
                    {A, B, *C, D,
                     0.5 * vn(sub(space.mode(A).label, space.mode(D).label))});
            }
    out.retained_quartic = quads.size();

    SparseOperator quartic = SparseOperator::zero(dim);
    SparseOperator shifted = SparseOperator::zero(dim);
    const double rt = std::sqrt(N0);
    for (const Quad& q : quads) {
        const SparseOperator term =
            ad[std::size_t(q.A)] * ad[std::size_t(q.B)] * a[std::size_t(q.C)] *
            a[std::size_t(q.D)];
        quartic = quartic + term.scaled(q.coeff);
        // route 1: substitute a_0 -> a_0 + sqrt(N0) leg by leg
        const int legs[4] = {q.A, q.B, q.C, q.D};
        for (int mask = 0; mask < 16; ++mask) {
            bool ok = true;
            double scalar = q.coeff;
            SparseOperator prod = SparseOperator::identity(dim);
            for (int l = 0; l < 4; ++l) {
                const bool replaced = mask & (1 << l);
                if (replaced) {
                    if (legs[l] != *cond) {
                        ok = false;
                        break;
                    }
                    scalar *= rt;
                } else {
                    prod = prod * (l < 2 ? ad[std::size_t(legs[l])] : a[std::size_t(legs[l])]);
                }
            }
            if (!ok) continue;
            shifted = shifted + prod.scaled(scalar);
        }
        quartic.prune(0.0);
        shifted.prune(0.0);
    }
    out.h_n = kinetic + quartic;
    out.conjugated = kinetic + shifted;

    // route 2: the displayed decomposition over the same retained set
    out.const_term = 0.5 * N0 * N0 * vn(Mode{0, 0, 0});
    out.q1 = (a[std::size_t(*cond)] + ad[std::size_t(*cond)])
                 .scaled(std::pow(N0, 1.5) * vn(Mode{0, 0, 0}));
    SparseOperator q2 = SparseOperator::zero(dim);
    for (int p = 0; p < nm; ++p) {
        const auto mp = space.find_mode(neg(space.mode(p).label));
        if (!mp) continue;
        q2 = q2 + (ad[std::size_t(p)] * ad[std::size_t(*mp)] +
                   a[std::size_t(*mp)] * a[std::size_t(p)])
                      .scaled(0.5 * N0 * vn(space.mode(p).label));
    }
    out.q2 = q2;
    SparseOperator q3s = SparseOperator::zero(dim);
    std::size_t nq3 = 0;
    for (int mr = 0; mr < nm; ++mr)  // mr carries the label -r
        for (int p = 0; p < nm; ++p) {
            const Mode r = neg(space.mode(mr).label);
            const auto rp = space.find_mode(add(r, space.mode(p).label));
            if (!rp) continue;
            q3s = q3s + (ad[std::size_t(mr)] * ad[std::size_t(*rp)] * a[std::size_t(p)])
                            .scaled(rt * vn(r));
            ++nq3;
        }
    out.retained_q3 = nq3;
    out.q3 = q3s + q3s.adjoint();
    out.q4 = quartic;
    Eigen::VectorXd dg = Eigen::VectorXd::Zero(Eigen::Index(dim));
    for (std::size_t j = 0; j < dim; ++j) {
        double v = 0.0;
        for (int m = 0; m < nm; ++m)
            v += (int_norm2(space.mode(m).label) + N0 * vn(Mode{0, 0, 0}) +
                  N0 * vn(space.mode(m).label)) *
                 double(space.occupation(j)[std::size_t(m)]);
        dg[Eigen::Index(j)] = v;
    }
    out.assembled = SparseOperator::identity(dim).scaled(out.const_term) + out.q1 + out.q2 +
                    out.q3 + out.q4 + SparseOperator::diagonal(dg);
    out.route_deviation = out.conjugated.max_abs_diff(out.assembled);
    return out;
}

MomentTransportReport moment_transport_check(const FockSpace& space, const SparseOperator& t_c,
                                             const SparseOperator& gamma, int j,
                                             const std::function<double(const Mode&)>& phi,
                                             double N) {
    if (j != 1 && j != 2)
        throw std::invalid_argument("moment_transport_check: j must be 1 or 2");
    const auto shell = space.modes_with_tag(ModeTag::Shell);
    const auto high = space.modes_with_tag(ModeTag::High);
    SparseOperator ns = number_sum(space, shell);
    SparseOperator nsj = j == 1 ? ns : ns * ns;
    SparseOperator nh = number_sum(space, high);

    const SparseOperator after = t_c.adjoint() * nsj * t_c;

    // subspace of shell-only occupation
    std::vector<std::size_t> sub;
    for (std::size_t b = 0; b < space.dim(); ++b) {
        bool ok = true;
        for (int m = 0; m < space.n_modes(); ++m)
            if (space.mode(m).tag != ModeTag::Shell && space.occupation(b)[std::size_t(m)] != 0)
                ok = false;
        if (ok) sub.push_back(b);
    }
    const SparseOperator diff = nsj - after;
    DenseMat d = DenseMat::Zero(Eigen::Index(sub.size()), Eigen::Index(sub.size()));
    for (std::size_t r = 0; r < sub.size(); ++r)
        for (std::size_t c = 0; c < sub.size(); ++c)
            d(Eigen::Index(r), Eigen::Index(c)) =
                diff.matrix().coeff(Eigen::Index(sub[r]), Eigen::Index(sub[c]));
    Eigen::SelfAdjointEigenSolver<DenseMat> es(d);
    MomentTransportReport rep;
    rep.min_eigenvalue = es.eigenvalues().size() ? es.eigenvalues().minCoeff() : 0.0;
    rep.trace_before = nsj.trace_against(gamma).real();
    rep.trace_after = after.trace_against(gamma).real();
    rep.nh_after = (t_c.adjoint() * nh * t_c).trace_against(gamma).real();
    double phi_h2 = 0.0;
    for (int m : high) {
        const double v = phi(space.mode(m).label);
        phi_h2 += v * v;
    }
    const double ns_mean = ns.trace_against(gamma).real();
    rep.nh_bound_constant =
        rep.nh_after / std::max(2.0 * N * phi_h2 * ns_mean, 1e-300);
    return rep;
}

}  // namespace bogolab
