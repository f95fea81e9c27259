// Spherical means of radial functions, maximal fields over dilation sets,
// Lorentz quasinorms from sampled fields, the Fourier transform of the surface
// measure, and the dyadic frequency-band multiplier sweep.

#ifndef MAXIMAL_SPHERICAL_HPP
#define MAXIMAL_SPHERICAL_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "maximal/dilation_set.hpp"

namespace maximal {

struct RadialProfile {
    std::function<double(double)> g;   // value at radius r >= 0
    std::vector<double> breakpoints;   // radii where g jumps or kinks
    double r_support = -1.0;           // g == 0 beyond this radius (negative: unknown)
};

RadialProfile indicator_ball(double radius);         // chi_{B(0,radius)}
RadialProfile radial_exp();                          // e^{-r}
RadialProfile radial_step(double lo, double hi, double value);

// Average of g(|x - t y|) over the unit sphere y, |x| = r:
//   c_d * int_0^pi g(sqrt(r^2 + t^2 - 2 r t cos theta)) sin^(d-2) theta dtheta,
// c_d = Gamma(d/2) / (sqrt(pi) Gamma((d-1)/2)).  r = 0 short-circuits to g(t).
double spherical_mean_radial(const RadialProfile& g, int d, double t, double r,
                             double rel_tol = 1e-8);

struct MaximalField {
    std::vector<double> r;        // sample radii (ascending)
    std::vector<double> weight;   // d-volume weights s_d r^(d-1) dr
    std::vector<double> value;    // sup over the truncated dilation set
    std::vector<double> t_used;   // the finite truncation of E that was swept
};

// Pointwise sup of |A_t g| over the materialized dilation set (points, cell
// endpoints, and dense runs stepped at t_resolution).  Lower-bound semantics:
// the discrete sup never exceeds the true maximal function.
MaximalField maximal_field(const RadialProfile& g, int d, const DilationSet& set,
                           double t_lo, double t_hi, double t_resolution,
                           const std::vector<double>& r_grid);
MaximalField maximal_field_serial(const RadialProfile& g, int d, const DilationSet& set,
                                  double t_lo, double t_hi, double t_resolution,
                                  const std::vector<double>& r_grid);

struct LorentzEstimate {
    double p = 0, q = 0;
    double value = 0;
    // sampled distribution lambda(alpha) on a log alpha grid, for reports
    std::vector<double> alphas;
    std::vector<double> lambdas;
};

// Lorentz quasinorm of a weighted sample set (exact for the sampled data via
// the decreasing rearrangement; q = inf gives sup alpha lambda(alpha)^(1/p)).
LorentzEstimate lorentz_norm(const std::vector<double>& values,
                             const std::vector<double>& weights, double p, double q);
LorentzEstimate lorentz_norm(const MaximalField& field, double p, double q);

// L^p norm of a radial profile over R^d by quadrature.
double radial_Lp_norm(const RadialProfile& g, int d, double p, double r_max);

struct SmallBallProbe {
    std::vector<double> eps;
    std::vector<double> ratio;      // ||M_E chi_{B(0,eps)}||_{p,inf} / ||chi||_p
    double slope = 0;               // log ratio vs log(1/eps)
};

// Tests the maximal operator on small balls; under a failing sup condition the
// ratio grows as eps -> 0 (positive slope).
SmallBallProbe weak_type_ratio_probe(const DilationSet& set, int d, double p,
                                     const std::vector<double>& eps_list);

// Fourier transform of the normalized surface measure at |xi| = rho:
//   c_d * int_0^pi cos(rho cos theta) sin^(d-2) theta dtheta
// (d = 3 has the closed form sin(rho)/rho, used as a cross-check in tests).
double sphere_hat(int d, double rho, double rel_tol = 1e-10);

// Dyadic frequency cutoffs: beta_0 = 1 on |xi|<=1, 0 on |xi|>=2, smooth between;
// beta_j(xi) = beta_0(2^-j xi) - beta_0(2^(1-j) xi).
double beta0(double rho);
double beta_j(int j, double rho);

struct MultiplierRow {
    int j;
    double M;           // sup over the band of |sigma_hat * beta_j|
    double normalized;  // M * 2^(j(d-1)/2)
    double rho_at_max;
};

// Scans each dyadic band for the peak of the frequency-localized multiplier;
// normalized values must stay in a bounded band when the decay is (d-1)/2.
std::vector<MultiplierRow> multiplier_decay(int d, int j_lo, int j_hi);

} // namespace maximal

#endif
