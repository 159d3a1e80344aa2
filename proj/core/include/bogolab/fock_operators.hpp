#ifndef BOGOLAB_FOCK_OPERATORS_HPP
#define BOGOLAB_FOCK_OPERATORS_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <iosfwd>

#include "bogolab/fock_space.hpp"

namespace bogolab {

using Complex = std::complex<double>;
using SpMat = Eigen::SparseMatrix<Complex>;
using DenseMat = Eigen::MatrixXcd;
using DenseVec = Eigen::VectorXcd;

// Sparse coefficient matrix on a FockSpace basis, with the hermitian/unitary
// bookkeeping the checks rely on.
class SparseOperator {
public:
    SparseOperator() = default;
    explicit SparseOperator(SpMat m, bool hermitian = false, bool unitary = false);

    static SparseOperator zero(std::size_t dim);
    static SparseOperator identity(std::size_t dim);
    static SparseOperator diagonal(const Eigen::VectorXd& d);

    std::size_t dimension() const { return std::size_t(m_.rows()); }
    std::size_t nnz() const { return std::size_t(m_.nonZeros()); }
    const SpMat& matrix() const { return m_; }

    bool hermitian_flag = false;
    bool unitary_flag = false;

    SparseOperator adjoint() const;
    SparseOperator operator+(const SparseOperator& o) const;
    SparseOperator operator-(const SparseOperator& o) const;
    SparseOperator operator*(const SparseOperator& o) const;
    SparseOperator scaled(Complex c) const;

    DenseVec apply(const DenseVec& v) const { return m_ * v; }

    double max_abs() const;
    double max_abs_diff(const SparseOperator& o) const;
    double hermiticity_deviation() const;   // ||A - A^dagger||_max
    double unitarity_deviation() const;     // ||A^dagger A - I||_max
    Complex trace() const;
    // Tr(A * rho) without forming the product
    Complex trace_against(const SparseOperator& rho) const;

    DenseMat to_dense() const { return DenseMat(m_); }

    // sparse triplet text, one "row col re im" line per entry
    void dump_triplets(std::ostream& os) const;

    void prune(double tol = 0.0);

private:
    SpMat m_;
};

// Annihilation/creation pair for one mode: a lowers the occupation with
// factor sqrt(n); a_dagger is its adjoint. [a, a^dagger] = 1 away from the
// caps.
std::pair<SparseOperator, SparseOperator> ladder(const FockSpace& space, int mode);

SparseOperator number_op(const FockSpace& space, int mode);
SparseOperator number_sum(const FockSpace& space, const std::vector<int>& modes);
SparseOperator number_sum_tag(const FockSpace& space, ModeTag tag);

// Diagonal 0/1 projector from a predicate on occupation vectors.
SparseOperator diagonal_projector(const FockSpace& space,
                                  const std::function<bool(const Occupation&)>& keep);

// Xi = 1_{N_{(S u H)^c} = 0} 1_{N_H even}.
SparseOperator xi_projector(const FockSpace& space);
// 1_{N_{S^c} = 0}: support constraint of the shell Gibbs state.
SparseOperator shell_support_projector(const FockSpace& space);

// Pade 13 scaling-and-squaring matrix exponential; the generic oracle the
// closed-form unitaries are checked against.
DenseMat expm_pade(const DenseMat& a);

// exp(theta (a^dagger - a)) on one mode, assembled exactly from the
// block-diagonal structure (the generator only moves this mode's
// occupation). Unitary to machine precision on the truncated space.
SparseOperator displacement_exp(const FockSpace& space, int mode, double theta);

// exp(eta (a_p^dag a_m^dag - a_m a_p)) for a mode pair (p, m), exact by
// blockwise eigensolves; p != m required.
SparseOperator pair_squeeze_exp(const FockSpace& space, int mode_p, int mode_m, double eta);

// exp(B) applied to a vector by scaled Taylor summation of the sparse
// generator; used where the full unitary matrix is never needed.
DenseVec exp_apply(const SpMat& generator, const DenseVec& v, double tol = 1e-16);

}  // namespace bogolab

#endif
