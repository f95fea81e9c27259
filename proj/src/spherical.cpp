#include "maximal/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "maximal/quadrature.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maximal {

namespace {
const double kPi = 3.14159265358979323846264338327950288;

double radial_constant(int d) {
    // Gamma(d/2) / (sqrt(pi) Gamma((d-1)/2)) via log-gamma
    return std::exp(std::lgamma(d / 2.0) - std::lgamma((d - 1) / 2.0)) / std::sqrt(kPi);
}
} // namespace

RadialProfile indicator_ball(double radius) {
    RadialProfile p;
    p.g = [radius](double r) { return r <= radius ? 1.0 : 0.0; };
    p.breakpoints = {radius};
    p.r_support = radius;
    return p;
}

RadialProfile radial_exp() {
    RadialProfile p;
    p.g = [](double r) { return std::exp(-r); };
    return p;
}

RadialProfile radial_step(double lo, double hi, double value) {
    RadialProfile p;
    p.g = [lo, hi, value](double r) { return (r >= lo && r <= hi) ? value : 0.0; };
    p.breakpoints = {lo, hi};
    p.r_support = hi;
    return p;
}

double spherical_mean_radial(const RadialProfile& g, int d, double t, double r,
                             double rel_tol) {
    if (d < 2) throw std::invalid_argument("spherical mean needs d >= 2");
    if (!(t > 0)) throw std::invalid_argument("spherical mean needs t > 0");
    if (r < 0) throw std::invalid_argument("spherical mean needs r >= 0");
    if (r == 0.0) return g.g(t);

    // distance from |x| = r to a sphere point at angle theta: sqrt(r^2+t^2-2rt cos)
    const double cd = radial_constant(d);
    const auto dist = [r, t](double theta) {
        const double c = std::cos(theta);
        return std::sqrt(std::max(0.0, r * r + t * t - 2.0 * r * t * c));
    };

    // map g's radial breakpoints into theta
    std::vector<double> theta_breaks;
    for (double R : g.breakpoints) {
        if (R < std::fabs(r - t) || R > r + t) continue;
        const double c = (r * r + t * t - R * R) / (2.0 * r * t);
        theta_breaks.push_back(std::acos(std::clamp(c, -1.0, 1.0)));
    }

    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    const auto integrand = [&](double theta) {
        const double s = std::sin(theta);
        return g.g(dist(theta)) * std::pow(s, d - 2);
    };
    return cd * integrate(integrand, 0.0, kPi, theta_breaks, opt);
}

// ---------------------------------------------------------------------------
// maximal fields
// ---------------------------------------------------------------------------

namespace {

// Finite truncation of E within [t_lo, t_hi]: materialized points, interval
// endpoints, and dense runs stepped on true set points at ~t_resolution.
std::vector<double> truncate_set(const DilationSet& set, double t_lo, double t_hi,
                                 double t_res) {
    std::vector<double> ts;
    const int k_lo = static_cast<int>(std::floor(std::log2(std::max(t_lo, 1e-300))));
    const int k_hi = static_cast<int>(std::floor(std::log2(t_hi)));
    for (int k = k_lo; k <= k_hi; ++k) {
        if (!set.contains_block(k)) continue;
        ResolvedSet rs = block(set, k, t_res);
        for (const auto& item : rs.items) {
            if (item.kind == ItemKind::point) {
                ts.push_back(item.lo);
            } else if (item.kind == ItemKind::dense && rs.next_above) {
                ts.push_back(item.hi);
                double x = item.lo;
                while (x < item.hi) {
                    ts.push_back(x);
                    double nxt = rs.next_above(x + t_res);
                    if (!(nxt > x) || !(nxt <= item.hi)) break;
                    x = nxt;
                }
            } else {
                ts.push_back(item.lo);
                ts.push_back(item.hi);
                for (double x = item.lo + t_res; x < item.hi; x += t_res) ts.push_back(x);
            }
        }
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    ts.erase(std::remove_if(ts.begin(), ts.end(),
                            [&](double t) { return t < t_lo || t > t_hi || t <= 0; }),
             ts.end());
    return ts;
}

MaximalField field_impl(const RadialProfile& g, int d, const DilationSet& set, double t_lo,
                        double t_hi, double t_res, const std::vector<double>& r_grid,
                        bool parallel) {
    MaximalField f;
    f.r = r_grid;
    f.t_used = truncate_set(set, t_lo, t_hi, t_res);
    f.value.assign(r_grid.size(), 0.0);
    f.weight.assign(r_grid.size(), 0.0);

    const double sd = 2.0 * std::pow(kPi, d / 2.0) / std::exp(std::lgamma(d / 2.0));
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        const double lo = i ? 0.5 * (r_grid[i - 1] + r_grid[i]) : r_grid[i];
        const double hi = i + 1 < r_grid.size() ? 0.5 * (r_grid[i] + r_grid[i + 1]) : r_grid[i];
        const double dr = std::max(0.0, hi - lo);
        f.weight[i] = sd * std::pow(r_grid[i], d - 1) * dr;
    }

    const double support = g.r_support;
    const auto eval_point = [&](std::size_t i) {
        const double r = r_grid[i];
        double best = 0.0;
        // only radii with | r - t | <= support can see the profile
        auto lo_it = f.t_used.begin(), hi_it = f.t_used.end();
        if (support >= 0) {
            lo_it = std::lower_bound(f.t_used.begin(), f.t_used.end(), r - support);
            hi_it = std::upper_bound(f.t_used.begin(), f.t_used.end(), r + support);
        }
        for (auto it = lo_it; it != hi_it; ++it) {
            const double v = std::fabs(spherical_mean_radial(g, d, *it, r));
            if (v > best) best = v;
        }
        f.value[i] = best;
        return best;
    };

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(r_grid.size()); ++i)
            eval_point(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < r_grid.size(); ++i) eval_point(i);
    }
    return f;
}

} // namespace

MaximalField maximal_field(const RadialProfile& g, int d, const DilationSet& set, double t_lo,
                           double t_hi, double t_res, const std::vector<double>& r_grid) {
    return field_impl(g, d, set, t_lo, t_hi, t_res, r_grid, true);
}

MaximalField maximal_field_serial(const RadialProfile& g, int d, const DilationSet& set,
                                  double t_lo, double t_hi, double t_res,
                                  const std::vector<double>& r_grid) {
    return field_impl(g, d, set, t_lo, t_hi, t_res, r_grid, false);
}

// ---------------------------------------------------------------------------
// Lorentz quasinorms
// ---------------------------------------------------------------------------

LorentzEstimate lorentz_norm(const std::vector<double>& values,
                             const std::vector<double>& weights, double p, double q) {
    if (values.size() != weights.size())
        throw std::invalid_argument("lorentz_norm: values/weights size mismatch");
    LorentzEstimate est;
    est.p = p;
    est.q = q;

    // decreasing rearrangement of |values| with cumulative weights
    std::vector<std::size_t> idx(values.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::fabs(values[a]) > std::fabs(values[b]);
    });

    double cum = 0.0;
    double best = 0.0;
    double sum_q = 0.0;
    double prev_cum = 0.0;
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const double v = std::fabs(values[idx[r]]);
        const double w = weights[idx[r]];
        if (v <= 0.0 || w <= 0.0) continue;
        cum += w;
        if (q == std::numeric_limits<double>::infinity()) {
            best = std::max(best, v * std::pow(cum, 1.0 / p));
        } else {
            // piecewise-constant rearrangement: f* = v on [prev_cum, cum)
            sum_q += std::pow(v, q) * (p / q) *
                     (std::pow(cum, q / p) - std::pow(prev_cum, q / p));
        }
        prev_cum = cum;
    }
    est.value = (q == std::numeric_limits<double>::infinity()) ? best
                                                               : std::pow(sum_q, 1.0 / q);

    // sampled distribution for reports
    double vmax = 0.0;
    for (double v : values) vmax = std::max(vmax, std::fabs(v));
    if (vmax > 0) {
        for (int s = 0; s < 48; ++s) {
            const double alpha = vmax * std::pow(10.0, -4.0 * s / 47.0);
            double lam = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i)
                if (std::fabs(values[i]) > alpha) lam += weights[i];
            est.alphas.push_back(alpha);
            est.lambdas.push_back(lam);
        }
    }
    return est;
}

LorentzEstimate lorentz_norm(const MaximalField& field, double p, double q) {
    return lorentz_norm(field.value, field.weight, p, q);
}

double radial_Lp_norm(const RadialProfile& g, int d, double p, double r_max) {
    const double sd = 2.0 * std::pow(kPi, d / 2.0) / std::exp(std::lgamma(d / 2.0));
    const auto integrand = [&](double r) {
        return std::pow(std::fabs(g.g(r)), p) * sd * std::pow(r, d - 1);
    };
    return std::pow(integrate(integrand, 0.0, r_max, g.breakpoints), 1.0 / p);
}

SmallBallProbe weak_type_ratio_probe(const DilationSet& set, int d, double p,
                                     const std::vector<double>& eps_list) {
    SmallBallProbe probe;
    for (double eps : eps_list) {
        if (!(eps > 0) || !(eps < 0.25))
            throw std::invalid_argument("ball radii must lie in (0, 1/4)");
        const RadialProfile f = indicator_ball(eps);

        // truncation and grid: one dyadic band of the set around [1, 2]
        const double t_lo = 0.5, t_hi = 2.5;
        const double grid_h = eps / 8.0;
        const double t_res = grid_h / 8.0;
        const auto ts = truncate_set(set, t_lo, t_hi, t_res);

        // evaluate only near the set: the field vanishes at distance > eps
        std::vector<double> r_grid;
        double cursor = 0.0;
        for (double t : ts) {
            double lo = std::max(cursor + grid_h, t - 2.0 * eps);
            const double hi = t + 2.0 * eps;
            if (lo > hi) continue;
            if (lo < cursor + grid_h) lo = cursor + grid_h;
            for (double r = lo; r <= hi; r += grid_h) r_grid.push_back(r);
            cursor = r_grid.empty() ? cursor : r_grid.back();
        }

        const MaximalField field = maximal_field(f, d, set, t_lo, t_hi, t_res, r_grid);
        const double weak = lorentz_norm(field, p, std::numeric_limits<double>::infinity()).value;
        const double fp = radial_Lp_norm(f, d, p, 2.0 * eps);
        probe.eps.push_back(eps);
        probe.ratio.push_back(weak / fp);
    }

    // slope of log ratio against log(1/eps)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const std::size_t m = probe.eps.size();
    for (std::size_t i = 0; i < m; ++i) {
        const double x = std::log(1.0 / probe.eps[i]);
        const double y = std::log(probe.ratio[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    if (m >= 2 && m * sxx - sx * sx > 0) probe.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return probe;
}

// ---------------------------------------------------------------------------
// surface-measure transform and frequency bands
// ---------------------------------------------------------------------------

double sphere_hat(int d, double rho, double rel_tol) {
    if (rho == 0.0) return 1.0;
    const double cd = radial_constant(d);
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    // one panel per oscillation period of cos(rho cos theta)
    opt.initial_panels = std::max(1, static_cast<int>(rho / kPi) + 1);
    const auto integrand = [&](double theta) {
        return std::cos(rho * std::cos(theta)) * std::pow(std::sin(theta), d - 2);
    };
    return cd * integrate(integrand, 0.0, kPi, {}, opt);
}

namespace {
double smooth_step(double x) {
    // 0 for x<=0, 1 for x>=1, exp(-1/x)-style in between
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}
} // namespace

double beta0(double rho) {
    const double a = std::fabs(rho);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    return 1.0 - smooth_step(a - 1.0);
}

double beta_j(int j, double rho) {
    if (j == 0) return beta0(rho);
    return beta0(std::ldexp(std::fabs(rho), -j)) - beta0(std::ldexp(std::fabs(rho), 1 - j));
}

std::vector<MultiplierRow> multiplier_decay(int d, int j_lo, int j_hi) {
    if (j_lo < 4) throw std::invalid_argument("multiplier sweep needs j >= 4");
    std::vector<MultiplierRow> rows;
    const double phase = (d - 1) * kPi / 4.0;  // asymptotic peak offset of sigma_hat

    for (int j = j_lo; j <= j_hi; ++j) {
        const double lo = std::ldexp(1.0, j - 1), hi = std::ldexp(1.0, j + 1);
        // candidate maxima: the oscillation peaks |cos(rho - phase)| = 1 plus a
        // uniform backstop grid
        std::vector<double> cand;
        const double first = std::ceil((lo - phase) / kPi) * kPi + phase;
        for (double rho = first; rho <= hi; rho += kPi) cand.push_back(rho);
        for (int s = 0; s <= 64; ++s) cand.push_back(lo + (hi - lo) * s / 64.0);

        MultiplierRow row{j, 0.0, 0.0, lo};
        for (double rho : cand) {
            if (rho < lo || rho > hi) continue;
            const double b = beta_j(j, rho);
            if (b <= 0.0) continue;
            const double v = std::fabs(sphere_hat(d, rho, 1e-9)) * b;
            if (v > row.M) {
                row.M = v;
                row.rho_at_max = rho;
            }
        }
        row.normalized = row.M * std::exp2(j * (d - 1) / 2.0);
        rows.push_back(row);
    }
    return rows;
}

} // namespace maximal
