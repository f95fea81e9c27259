#include "maximal/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace maximal {

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1,1]
const double kNodes[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
const double kWeights[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

double gl16(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double x = h * kNodes[i];
        s += kWeights[i] * (f(c - x) + f(c + x));
    }
    return s * h;
}

double composite(const std::function<double(double)>& f, double a, double b, int panels) {
    double s = 0.0;
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) s += gl16(f, a + i * h, a + (i + 1) * h);
    return s;
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& breakpoints, const QuadratureOptions& opt) {
    if (!(b > a)) return 0.0;

    std::vector<double> edges{a, b};
    for (double x : breakpoints)
        if (x > a && x < b) edges.push_back(x);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    double total = 0.0;
    for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
        const double lo = edges[s], hi = edges[s + 1];
        int panels = std::max(1, opt.initial_panels);
        double prev = composite(f, lo, hi, panels);
        double cur = prev;
        bool converged = false;
        while (2 * panels <= opt.max_total_panels) {
            panels *= 2;
            cur = composite(f, lo, hi, panels);
            const double err = std::fabs(cur - prev);
            if (err <= opt.rel_tol * std::fabs(cur) + opt.abs_tol) {
                converged = true;
                break;
            }
            prev = cur;
        }
        if (!converged) {
            const double residual = std::fabs(cur - prev);
            if (residual > opt.rel_tol * std::fabs(cur) + opt.abs_tol)
                throw QuadratureError("quadrature did not converge on segment", residual);
        }
        total += cur;
    }
    return total;
}

} // namespace maximal
