#ifndef BOGOLAB_FOCK_TRANSFORMS_HPP
#define BOGOLAB_FOCK_TRANSFORMS_HPP

#include <string>
#include <vector>

#include "bogolab/fock_operators.hpp"

namespace bogolab {

// W = exp(amplitude (a_0^dag - a_0)). Throws when the condensate cap cannot
// hold the coherent occupation, with the required cap in the message.
SparseOperator weyl(const FockSpace& space, double amplitude);

struct EtaPair {
    int mode_p = -1;
    int mode_m = -1;  // the partner -p
    double eta = 0.0;
};

// exp(1/2 sum eta_p (a_p^dag a_-p^dag - h.c.)) as an ordered product of
// exact pair unitaries; modes must come in (p, -p) pairs.
SparseOperator quadratic_bogoliubov(const FockSpace& space, const std::vector<EtaPair>& pairs);

// Pairs (p, -p) over non-condensate modes with eta = asinh(N0 phi_p) for the
// correlation branch, or tau_p for the shell branch.
std::vector<EtaPair> pair_up(const FockSpace& space, ModeTag tag,
                             const std::function<double(const Mode&)>& eta_of_mode);

// Theta_{k,r}: diagonal 0/1 cutoff. Factor (1) scans existing k-connections,
// factor (2) demands empty shell-neighborhoods of r and -(k+r). Factors whose
// modes are absent from the layout are vacuous; describe_cutoff lists the
// active ones.
SparseOperator cutoff_theta(const FockSpace& space, int k_mode, int r_mode);
std::string describe_cutoff(const FockSpace& space, int k_mode, int r_mode);

struct CubicOps {
    SparseOperator b_sharp;  // sum_r sqrt(N) phi_r a_-r^dag a_{r+k}^dag a_k Theta_{k,r}
    SparseOperator b_circ;   // adjoint
    SparseOperator b;        // b_sharp - b_circ
    std::vector<int> range;  // connection range actually used
};

CubicOps cubic_generator(const FockSpace& space, int k_mode,
                         const std::function<double(const Mode&)>& phi, double N);

struct XkResult {
    SparseOperator x2;          // b_circ * b_sharp, diagonal
    SparseOperator x;           // principal square root
    SparseOperator formula_x2;  // sum_r N phi_r (phi_r + phi_{r+k}) n_k Theta_{k,r}
    double formula_deviation = 0.0;
    double min_eigenvalue = 0.0;
};

// Verifies positivity (throws below -1e-12) and the closed diagonal formula.
XkResult xk_operator(const FockSpace& space, int k_mode, const CubicOps& ops,
                     const std::function<double(const Mode&)>& phi, double N);

// T_k = cos X + B# sinc X - sinc X B0 + B# (cos X - 1)/X^2 B0, with the
// spectral functions evaluated on the diagonal of X^2 (series below 1e-8).
SparseOperator cubic_unitary(const FockSpace& space, int k_mode,
                             const std::function<double(const Mode&)>& phi, double N);

// Ordered product over the given shell modes.
SparseOperator cubic_product(const FockSpace& space, const std::vector<int>& shell_order,
                             const std::function<double(const Mode&)>& phi, double N);

struct ParityOps {
    SparseOperator m_k;      // N_k + 1/2 sum_{t in H_k} N_-t N_{t+k}, diagonal
    SparseOperator m_minus;  // same for -k
    SparseOperator p_k;      // projector on even M_k + M_-k
    SparseOperator q_k;      // 1 - p_k
};

ParityOps parity_ops(const FockSpace& space, int k_mode);

// chi_p / chi-tilde_p of the monogamy lemma for a high mode p.
SparseOperator chi_projector(const FockSpace& space, int p_mode, bool strict);

struct MonogamyReport {
    double dev_chi = 0.0;        // max |chi X chi - X|, X = Tc Gamma Tc^dag
    double dev_chi_tilde = 0.0;
    bool pass(double tol = 1e-12) const { return dev_chi <= tol && dev_chi_tilde <= tol; }
};

// Gamma must be supported on N_{S^c} = 0 (precondition error otherwise).
MonogamyReport monogamy_check(const FockSpace& space, const SparseOperator& t_c,
                              const SparseOperator& gamma, int p_mode);

// Gibbs state of sum_S e_p n_p at effective temperature T_eff, supported on
// N_{S^c} = 0, trace 1. Diagonal.
SparseOperator gibbs_gamma0(const FockSpace& space,
                            const std::function<double(const Mode&)>& e_of_mode, double T_eff);

struct WeylDecomposition {
    SparseOperator h_n;        // retained kinetic + quartic Hamiltonian
    SparseOperator conjugated; // route 1: a_0 -> a_0 + sqrt(N0) substitution
    SparseOperator assembled;  // route 2: const + Q1..Q4 + diagonal
    SparseOperator q1, q2, q3, q4;
    double const_term = 0.0;
    std::size_t retained_quartic = 0;
    std::size_t retained_q3 = 0;
    double route_deviation = 0.0;
};

// Both routes of the excitation-Hamiltonian identity on the retained
// momentum-conserving term set; kinetic weights |m|^2 on the integer labels.
WeylDecomposition hamiltonian_assembly(const FockSpace& space,
                                       const std::function<double(const Mode&)>& vn, double N0);

struct MomentTransportReport {
    double min_eigenvalue = 0.0;   // of P(N_S^j - Tc^dag N_S^j Tc)P on Ran P
    double trace_before = 0.0;     // Tr N_S^j Gamma
    double trace_after = 0.0;      // Tr Tc^dag N_S^j Tc Gamma
    double nh_after = 0.0;         // Tr Tc^dag N_H Tc Gamma
    double nh_bound_constant = 0.0;  // nh_after / (2 N ||phi_H||_2^2 * Tr N_S Gamma)
};

MomentTransportReport moment_transport_check(const FockSpace& space, const SparseOperator& t_c,
                                             const SparseOperator& gamma, int j,
                                             const std::function<double(const Mode&)>& phi,
                                             double N);

}  // namespace bogolab

#endif
