#include "bogolab/fock_operators.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace bogolab {

SparseOperator::SparseOperator(SpMat m, bool hermitian, bool unitary)
    : hermitian_flag(hermitian), unitary_flag(unitary), m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("SparseOperator: must be square");
    m_.makeCompressed();
    if (hermitian_flag && hermiticity_deviation() > 1e-12 * std::max(1.0, max_abs()))
        throw std::runtime_error("SparseOperator: hermitian flag violated");
    if (unitary_flag && unitarity_deviation() > 1e-10)
        throw std::runtime_error("SparseOperator: unitary flag violated");
}

SparseOperator SparseOperator::zero(std::size_t dim) {
    return SparseOperator(SpMat(Eigen::Index(dim), Eigen::Index(dim)));
}

SparseOperator SparseOperator::identity(std::size_t dim) {
    SpMat m(Eigen::Index(dim), Eigen::Index(dim));
    m.setIdentity();
    return SparseOperator(std::move(m), true, true);
}

SparseOperator SparseOperator::diagonal(const Eigen::VectorXd& d) {
    SpMat m(d.size(), d.size());
    std::vector<Eigen::Triplet<Complex>> trips;
    for (Eigen::Index i = 0; i < d.size(); ++i)
        if (d[i] != 0.0) trips.emplace_back(i, i, Complex(d[i], 0.0));
    m.setFromTriplets(trips.begin(), trips.end());
    return SparseOperator(std::move(m), true, false);
}

SparseOperator SparseOperator::adjoint() const {
    return SparseOperator(SpMat(m_.adjoint()), hermitian_flag, unitary_flag);
}

SparseOperator SparseOperator::operator+(const SparseOperator& o) const {
    return SparseOperator(SpMat(m_ + o.m_), hermitian_flag && o.hermitian_flag, false);
}

SparseOperator SparseOperator::operator-(const SparseOperator& o) const {
    return SparseOperator(SpMat(m_ - o.m_), hermitian_flag && o.hermitian_flag, false);
}

SparseOperator SparseOperator::operator*(const SparseOperator& o) const {
    return SparseOperator(SpMat(m_ * o.m_), false, unitary_flag && o.unitary_flag);
}

SparseOperator SparseOperator::scaled(Complex c) const {
    return SparseOperator(SpMat(m_ * c), hermitian_flag && c.imag() == 0.0, false);
}

double SparseOperator::max_abs() const {
    double v = 0.0;
    for (int k = 0; k < m_.outerSize(); ++k)
        for (SpMat::InnerIterator it(m_, k); it; ++it) v = std::max(v, std::abs(it.value()));
    return v;
}

double SparseOperator::max_abs_diff(const SparseOperator& o) const {
    SpMat d = m_ - o.m_;
    double v = 0.0;
    for (int k = 0; k < d.outerSize(); ++k)
        for (SpMat::InnerIterator it(d, k); it; ++it) v = std::max(v, std::abs(it.value()));
    return v;
}

double SparseOperator::hermiticity_deviation() const {
    SpMat d = m_ - SpMat(m_.adjoint());
    double v = 0.0;
    for (int k = 0; k < d.outerSize(); ++k)
        for (SpMat::InnerIterator it(d, k); it; ++it) v = std::max(v, std::abs(it.value()));
    return v;
}

double SparseOperator::unitarity_deviation() const {
    SpMat p = SpMat(m_.adjoint()) * m_;
    SpMat i(m_.rows(), m_.cols());
    i.setIdentity();
    SpMat d = p - i;
    double v = 0.0;
    for (int k = 0; k < d.outerSize(); ++k)
        for (SpMat::InnerIterator it(d, k); it; ++it) v = std::max(v, std::abs(it.value()));
    return v;
}

Complex SparseOperator::trace() const {
    Complex t = 0.0;
    for (int k = 0; k < m_.outerSize(); ++k)
        for (SpMat::InnerIterator it(m_, k); it; ++it)
            if (it.row() == it.col()) t += it.value();
    return t;
}

Complex SparseOperator::trace_against(const SparseOperator& rho) const {
    // Tr(A rho) = sum_ij A_ij rho_ji
    Complex t = 0.0;
    const SpMat& r = rho.m_;
    for (int k = 0; k < m_.outerSize(); ++k)
        for (SpMat::InnerIterator it(m_, k); it; ++it) t += it.value() * r.coeff(it.col(), it.row());
    return t;
}

void SparseOperator::dump_triplets(std::ostream& os) const {
    for (int k = 0; k < m_.outerSize(); ++k)
        for (SpMat::InnerIterator it(m_, k); it; ++it)
            os << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' '
               << it.value().imag() << '\n';
}

void SparseOperator::prune(double tol) {
    m_.prune([tol](const Eigen::Index&, const Eigen::Index&, const Complex& v) {
        return std::abs(v) > tol;
    });
}

std::pair<SparseOperator, SparseOperator> ladder(const FockSpace& space, int mode) {
    if (mode < 0 || mode >= space.n_modes())
        throw std::invalid_argument("ladder: mode out of range");
    std::vector<Eigen::Triplet<Complex>> trips;
    Occupation occ;
    for (std::size_t j = 0; j < space.dim(); ++j) {
        occ = space.occupation(j);
        const int n = occ[std::size_t(mode)];
        if (n == 0) continue;
        occ[std::size_t(mode)] = std::uint8_t(n - 1);
        const auto i = space.index_of(occ);
        if (!i) continue;
        trips.emplace_back(Eigen::Index(*i), Eigen::Index(j), Complex(std::sqrt(double(n)), 0.0));
    }
    SpMat a(Eigen::Index(space.dim()), Eigen::Index(space.dim()));
    a.setFromTriplets(trips.begin(), trips.end());
    SparseOperator A(std::move(a));
    SparseOperator Ad = A.adjoint();
    return {std::move(A), std::move(Ad)};
}

SparseOperator number_op(const FockSpace& space, int mode) {
    Eigen::VectorXd d(Eigen::Index(space.dim()));
    for (std::size_t j = 0; j < space.dim(); ++j)
        d[Eigen::Index(j)] = double(space.occupation(j)[std::size_t(mode)]);
    return SparseOperator::diagonal(d);
}

SparseOperator number_sum(const FockSpace& space, const std::vector<int>& modes) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(Eigen::Index(space.dim()));
    for (std::size_t j = 0; j < space.dim(); ++j) {
        double s = 0.0;
        for (int m : modes) s += double(space.occupation(j)[std::size_t(m)]);
        d[Eigen::Index(j)] = s;
    }
    return SparseOperator::diagonal(d);
}

SparseOperator number_sum_tag(const FockSpace& space, ModeTag tag) {
    return number_sum(space, space.modes_with_tag(tag));
}

SparseOperator diagonal_projector(const FockSpace& space,
                                  const std::function<bool(const Occupation&)>& keep) {
    Eigen::VectorXd d(Eigen::Index(space.dim()));
    for (std::size_t j = 0; j < space.dim(); ++j)
        d[Eigen::Index(j)] = keep(space.occupation(j)) ? 1.0 : 0.0;
    return SparseOperator::diagonal(d);
}

SparseOperator xi_projector(const FockSpace& space) {
    std::vector<int> outside, high;
    for (int m = 0; m < space.n_modes(); ++m) {
        const ModeTag t = space.mode(m).tag;
        if (t == ModeTag::High)
            high.push_back(m);
        else if (t != ModeTag::Shell)
            outside.push_back(m);
    }
    return diagonal_projector(space, [outside, high](const Occupation& occ) {
        for (int m : outside)
            if (occ[std::size_t(m)] != 0) return false;
        int nh = 0;
        for (int m : high) nh += occ[std::size_t(m)];
        return nh % 2 == 0;
    });
}

SparseOperator shell_support_projector(const FockSpace& space) {
    std::vector<int> outside;
    for (int m = 0; m < space.n_modes(); ++m)
        if (space.mode(m).tag != ModeTag::Shell) outside.push_back(m);
    return diagonal_projector(space, [outside](const Occupation& occ) {
        for (int m : outside)
            if (occ[std::size_t(m)] != 0) return false;
        return true;
    });
}

DenseMat expm_pade(const DenseMat& a) {
    // Higham's degree-13 Pade approximant with scaling and squaring
    static const double b[14] = {64764752532480000., 32382376266240000., 7771770303897600.,
                                 1187353796428800.,  129060195264000.,   10559470521600.,
                                 670442572800.,      33522128640.,       1323241920.,
                                 40840800.,          960960.,            16380.,
                                 182.,               1.};
    const Eigen::Index n = a.rows();
    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int s = 0;
    const double theta13 = 5.371920351148152;
    if (norm1 > theta13) s = int(std::ceil(std::log2(norm1 / theta13)));
    DenseMat A = a / std::pow(2.0, s);
    const DenseMat A2 = A * A;
    const DenseMat A4 = A2 * A2;
    const DenseMat A6 = A2 * A4;
    const DenseMat I = DenseMat::Identity(n, n);
    DenseMat U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 +
                      b[3] * A2 + b[1] * I);
    DenseMat V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 +
                 b[2] * A2 + b[0] * I;
    DenseMat R = (V - U).partialPivLu().solve(V + U);
    for (int i = 0; i < s; ++i) R = R * R;
    return R;
}

namespace {

// Groups basis states by everything except the listed modes: within one
// group the generator acts as a small dense block.
std::map<std::string, std::vector<std::size_t>> group_by_rest(const FockSpace& space,
                                                              const std::vector<int>& moved) {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t j = 0; j < space.dim(); ++j) {
        Occupation occ = space.occupation(j);
        std::string k;
        for (int m = 0; m < space.n_modes(); ++m) {
            const bool is_moved =
                std::find(moved.begin(), moved.end(), m) != moved.end();
            k.push_back(is_moved ? char(0) : char(occ[std::size_t(m)] + 1));
        }
        groups[k].push_back(j);
    }
    return groups;
}

SparseOperator blockwise_exp(const FockSpace& space, const std::vector<int>& moved,
                             const std::function<Complex(const Occupation&, const Occupation&)>&
                                 generator_entry) {
    const auto groups = group_by_rest(space, moved);
    std::vector<Eigen::Triplet<Complex>> trips;
    for (const auto& [k, members] : groups) {
        const Eigen::Index b = Eigen::Index(members.size());
        DenseMat G = DenseMat::Zero(b, b);
        for (Eigen::Index r = 0; r < b; ++r)
            for (Eigen::Index c = 0; c < b; ++c) {
                const Complex v = generator_entry(space.occupation(members[std::size_t(r)]),
                                                  space.occupation(members[std::size_t(c)]));
                G(r, c) = v;
            }
        // exp of the antihermitian block via the hermitian eigensolve of iG
        Eigen::SelfAdjointEigenSolver<DenseMat> es(DenseMat(Complex(0, 1) * G));
        DenseVec phase(b);
        for (Eigen::Index i = 0; i < b; ++i)
            phase[i] = std::exp(Complex(0, -1) * es.eigenvalues()[i]);
        DenseMat E = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
        for (Eigen::Index r = 0; r < b; ++r)
            for (Eigen::Index c = 0; c < b; ++c)
                if (std::abs(E(r, c)) > 1e-300)
                    trips.emplace_back(Eigen::Index(members[std::size_t(r)]),
                                       Eigen::Index(members[std::size_t(c)]), E(r, c));
    }
    SpMat m(Eigen::Index(space.dim()), Eigen::Index(space.dim()));
    m.setFromTriplets(trips.begin(), trips.end());
    return SparseOperator(std::move(m), false, true);
}

}  // namespace

SparseOperator displacement_exp(const FockSpace& space, int mode, double theta) {
    auto entry = [&space, mode, theta](const Occupation& row, const Occupation& col) -> Complex {
        // theta (a^dag - a) entry between two occupation vectors
        for (std::size_t m = 0; m < row.size(); ++m)
            if (int(m) != mode && row[m] != col[m]) return 0.0;
        const int nr = row[std::size_t(mode)], nc = col[std::size_t(mode)];
        if (nr == nc + 1) return Complex(theta * std::sqrt(double(nr)), 0.0);
        if (nr == nc - 1) return Complex(-theta * std::sqrt(double(nc)), 0.0);
        return 0.0;
    };
    return blockwise_exp(space, {mode}, entry);
}

SparseOperator pair_squeeze_exp(const FockSpace& space, int mode_p, int mode_m, double eta) {
    if (mode_p == mode_m)
        throw std::invalid_argument("pair_squeeze_exp: modes must differ");
    auto entry = [&space, mode_p, mode_m, eta](const Occupation& row,
                                               const Occupation& col) -> Complex {
        for (std::size_t m = 0; m < row.size(); ++m)
            if (int(m) != mode_p && int(m) != mode_m && row[m] != col[m]) return 0.0;
        const int rp = row[std::size_t(mode_p)], rm = row[std::size_t(mode_m)];
        const int cp = col[std::size_t(mode_p)], cm = col[std::size_t(mode_m)];
        if (rp == cp + 1 && rm == cm + 1)
            return Complex(eta * std::sqrt(double(rp) * double(rm)), 0.0);
        if (rp == cp - 1 && rm == cm - 1)
            return Complex(-eta * std::sqrt(double(cp) * double(cm)), 0.0);
        return 0.0;
    };
    return blockwise_exp(space, {mode_p, mode_m}, entry);
}

DenseVec exp_apply(const SpMat& generator, const DenseVec& v, double tol) {
    // scale so the Taylor series converges fast, then square by repetition
    double norm1 = 0.0;
    {
        Eigen::VectorXd colsum = Eigen::VectorXd::Zero(generator.cols());
        for (int k = 0; k < generator.outerSize(); ++k)
            for (SpMat::InnerIterator it(generator, k); it; ++it)
                colsum[it.col()] += std::abs(it.value());
        norm1 = colsum.size() ? colsum.maxCoeff() : 0.0;
    }
    const int s = std::max(0, int(std::ceil(std::log2(std::max(norm1, 1e-30)))) + 1);
    const double scale = std::pow(2.0, -s);
    DenseVec out = v;
    for (int rep = 0; rep < (1 << s); ++rep) {
        DenseVec term = out;
        DenseVec acc = out;
        for (int k = 1; k < 80; ++k) {
            term = (generator * term) * (scale / double(k));
            acc += term;
            if (term.norm() <= tol * std::max(1.0, acc.norm())) break;
        }
        out = acc;
    }
    return out;
}

}  // namespace bogolab
