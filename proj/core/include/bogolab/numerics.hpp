#ifndef BOGOLAB_NUMERICS_HPP
#define BOGOLAB_NUMERICS_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bogolab {

// Fixed-tree pairwise summation. The association tree depends only on the
// element order, so results are bit-identical across runs and thread counts.
double pairwise_sum(std::span<const double> xs);

// Kahan-Babuska compensated accumulator for long sequential sums.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// tanh(2*tau) = x  =>  tau = artanh(x)/2, in log1p form for x near -1.
inline double half_artanh(double x) {
    return 0.25 * (std::log1p(x) - std::log1p(-x));
}

// Bose factor 1/(e^x - 1) through expm1, stable for small x.
inline double bose_factor(double x) { return 1.0 / std::expm1(x); }

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;     // estimated absolute error
    int evaluations = 0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod 7-15 on [a,b]. Bisects the worst panel until the
// summed error estimate meets rel_tol*|value| + abs_tol or the panel budget
// runs out.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-9, double abs_tol = 0.0,
                           int max_panels = 4000);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

// Least-squares line fit; used for the log-log scaling regressions.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

// Fixed-step RK4 for u'' = g(r)*u with u(0)=0, u'(0)=1; returns (u, u') at r1.
std::pair<double, double> integrate_radial_u(const std::function<double(double)>& g,
                                             double r1, int steps);

}  // namespace bogolab

#endif
