#include "bogolab/numerics.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace bogolab {

double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n <= 16) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

namespace {

// Kronrod 15 nodes/weights on [-1,1]; Gauss 7 weights at the odd positions.
constexpr std::array<double, 15> kKronrodX = {
    -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245, 0.0,
    0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
    0.991455371120812639206854697526329};

constexpr std::array<double, 15> kKronrodW = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

constexpr std::array<double, 7> kGaussW = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

struct Panel {
    double a, b;
    double value;
    double error;
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double gk = 0.0, g = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double fx = f(c + h * kKronrodX[i]);
        gk += kKronrodW[i] * fx;
        if (i % 2 == 1) g += kGaussW[i / 2] * fx;
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = gk * h;
    const double diff = std::abs((gk - g) * h);
    // standard QUADPACK-style sharpening of the raw (GK - G) difference
    p.error = diff;
    if (diff > 0.0) p.error = diff * std::min(1.0, std::pow(200.0 * diff / std::max(std::abs(gk * h), 1e-300), 1.5));
    p.error = std::max(p.error, 1e-300);
    return p;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, double abs_tol, int max_panels) {
    QuadratureResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    auto cmp = [](const Panel& l, const Panel& r) {
        if (l.error != r.error) return l.error > r.error;
        return l.a < r.a;
    };
    std::multiset<Panel, decltype(cmp)> panels(cmp);
    panels.insert(evaluate_panel(f, a, b));
    out.evaluations = 15;
    int n_panels = 1;
    while (true) {
        double total = 0.0, err = 0.0;
        for (const auto& p : panels) {
            total += p.value;
            err += p.error;
        }
        out.value = total;
        out.error = err;
        if (err <= rel_tol * std::abs(total) + abs_tol) {
            out.converged = true;
            return out;
        }
        if (n_panels >= max_panels) return out;
        Panel worst = *panels.begin();
        panels.erase(panels.begin());
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // interval exhausted at machine precision
            panels.insert(worst);
            out.converged = out.error <= 1e2 * (rel_tol * std::abs(out.value) + abs_tol);
            return out;
        }
        panels.insert(evaluate_panel(f, worst.a, mid));
        panels.insert(evaluate_panel(f, mid, worst.b));
        out.evaluations += 30;
        ++n_panels;
    }
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need >= 2 matching points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LinearFit fit;
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t i = 0; i < x.size(); ++i)
        fit.max_residual = std::max(fit.max_residual,
                                    std::abs(y[i] - fit.slope * x[i] - fit.intercept));
    return fit;
}

std::pair<double, double> integrate_radial_u(const std::function<double(double)>& g,
                                             double r1, int steps) {
    if (steps < 1 || r1 <= 0.0) throw std::invalid_argument("integrate_radial_u: bad arguments");
    const double h = r1 / steps;
    double u = 0.0, v = 1.0, r = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double k1u = v, k1v = g(r) * u;
        const double k2u = v + 0.5 * h * k1v, k2v = g(r + 0.5 * h) * (u + 0.5 * h * k1u);
        const double k3u = v + 0.5 * h * k2v, k3v = g(r + 0.5 * h) * (u + 0.5 * h * k2u);
        const double k4u = v + h * k3v, k4v = g(r + h) * (u + h * k3u);
        u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
        v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        r += h;
    }
    return {u, v};
}

}  // namespace bogolab
