// Adaptive composite Gauss-Legendre quadrature with breakpoint splitting and
// per-period panelling for oscillatory integrands.

#ifndef MAXIMAL_QUADRATURE_HPP
#define MAXIMAL_QUADRATURE_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace maximal {

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& msg, double residual)
        : std::runtime_error(msg), residual(residual) {}
    double residual;
};

struct QuadratureOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    // initial panels per segment; raised by the caller for oscillatory integrands
    // (per-period panelling: one panel per oscillation period or better)
    int initial_panels = 1;
    int max_total_panels = 1 << 18;
};

// Integrate f over [a,b], splitting first at the given breakpoints (clipped to
// the interval).  Panel counts double until the composite GL16 value settles.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& breakpoints = {},
                 const QuadratureOptions& opt = {});

} // namespace maximal

#endif
