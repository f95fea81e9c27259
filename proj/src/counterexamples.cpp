#include "maximal/counterexamples.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "maximal/entropy.hpp"
#include "maximal/rng.hpp"
#include "maximal/spherical.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maximal {

namespace {
const double kPi = 3.14159265358979323846264338327950288;
const double kTwoPi = 2.0 * kPi;
} // namespace

// ---------------------------------------------------------------------------
// grid fields
// ---------------------------------------------------------------------------

bool GridField2D::contains(double x, double y) const {
    return x >= x0 && y >= y0 && x <= x0 + h * (nx - 1) && y <= y0 + h * (ny - 1);
}

double GridField2D::bilinear(double x, double y) const {
    const double fx = (x - x0) / h, fy = (y - y0) / h;
    int i = static_cast<int>(std::floor(fx)), j = static_cast<int>(std::floor(fy));
    i = std::clamp(i, 0, nx - 2);
    j = std::clamp(j, 0, ny - 2);
    const double ax = fx - i, ay = fy - j;
    return at(i, j) * (1 - ax) * (1 - ay) + at(i + 1, j) * ax * (1 - ay) +
           at(i, j + 1) * (1 - ax) * ay + at(i + 1, j + 1) * ax * ay;
}

double circle_average_grid(const GridField2D& f, double cx, double cy) {
    const int M = std::max(256, static_cast<int>(std::ceil(kTwoPi / f.h)));
    double s = 0.0;
    for (int m = 0; m < M; ++m) {
        const double phi = kTwoPi * m / M;
        const double x = cx + std::cos(phi), y = cy + std::sin(phi);
        if (!f.contains(x, y))
            throw std::runtime_error("circle sample leaves the field domain");
        s += f.bilinear(x, y);
    }
    return s / M;
}

double modified_maximal(const GridField2D& f, const std::vector<double>& radii,
                        double x, double y) {
    double best = 0.0;
    for (double r : radii) best = std::max(best, circle_average_grid(f, x + r, y));
    return best;
}

// ---------------------------------------------------------------------------
// layered Cantor test function
// ---------------------------------------------------------------------------

CantorTestFunction::CantorTestFunction(int levels, double a) : N_(levels), a_(a) {
    if (levels < 1) throw std::invalid_argument("need at least one level");
    if (!(a > 0 && a < 0.25))
        throw std::invalid_argument("ball factor a must lie in (0, 1/4)");
    centers_.resize(static_cast<std::size_t>(levels));
    std::vector<double> prev{0.0};
    for (int i = 1; i <= levels; ++i) {
        std::vector<double> cur;
        cur.reserve(prev.size() * 2);
        const double step = 2.0 * std::pow(4.0, -i);  // digit contribution to 2c
        for (double c : prev) {
            cur.push_back(c);
            cur.push_back(c + step);
        }
        std::sort(cur.begin(), cur.end());
        centers_[static_cast<std::size_t>(i - 1)] = cur;
        prev = std::move(cur);
    }
}

double CantorTestFunction::eval(double x, double y) const {
    double f = 0.0;
    for (int i = 1; i <= N_; ++i) {
        const auto& cs = centers_[static_cast<std::size_t>(i - 1)];
        const double s = a_ * std::pow(4.0, -i);
        auto it = std::lower_bound(cs.begin(), cs.end(), x);
        bool inside = false;
        for (int off = -1; off <= 0 && !inside; ++off) {
            auto jt = it + off;
            if (jt < cs.begin() || jt >= cs.end()) continue;
            const double dx = x - *jt;
            inside = dx * dx + y * y <= s * s;
        }
        if (inside) f += std::pow(4.0, i);
    }
    return f;
}

namespace {
// angular measure of { phi : |center + e(phi) - (q, 0)| <= s } on the unit circle
double disk_arc(Vec2 center, double q, double s) {
    const double dx = center.x - q, dy = center.y;
    const double D = std::sqrt(dx * dx + dy * dy);
    if (D + 1.0 <= s) return kTwoPi;        // circle entirely inside the disk
    if (D < 1e-14) return 0.0;              // concentric, radius 1 >> s
    const double c = (D * D + 1.0 - s * s) / (2.0 * D);
    if (c >= 1.0) return 0.0;
    if (c <= -1.0) return kTwoPi;
    return 2.0 * std::acos(c);
}
} // namespace

double CantorTestFunction::circle_average(Vec2 center) const {
    // the circle meets the axis strip only near its two axis crossings
    if (std::fabs(center.y) > 1.0 + a_) return 0.0;
    const double half = std::sqrt(std::max(0.0, 1.0 - center.y * center.y));
    const double px[2] = {center.x - half, center.x + half};

    double total = 0.0;
    for (int i = 1; i <= N_; ++i) {
        const auto& cs = centers_[static_cast<std::size_t>(i - 1)];
        const double s = a_ * std::pow(4.0, -i);
        const double window = 8.0 * s / std::max(0.3, half > 0 ? half : 0.3);
        double arc = 0.0;
        double last_q = std::numeric_limits<double>::quiet_NaN();
        for (double p : px) {
            auto lo = std::lower_bound(cs.begin(), cs.end(), p - window);
            auto hi = std::upper_bound(cs.begin(), cs.end(), p + window);
            for (auto it = lo; it != hi; ++it) {
                if (*it == last_q) continue;  // crossing windows may overlap
                arc += disk_arc(center, *it, s);
                last_q = *it;
            }
        }
        total += std::pow(4.0, i) * arc;
    }
    return total / kTwoPi;
}

double CantorTestFunction::norm32_rings() const {
    // distinct centers keyed by their minimal level m0 (trailing-zero digits
    // make every level-m0 point reappear at all deeper levels, concentric)
    double sum = 0.0;
    for (int m0 = 1; m0 <= N_; ++m0) {
        // count of centers whose last 1-digit sits at m0; m0 = 1 also covers c = 0
        const double count = (m0 == 1) ? 2.0 : std::pow(2.0, m0 - 1);
        double per_center = 0.0;
        for (int i = m0; i <= N_; ++i) {
            double value = 0.0;
            for (int m = m0; m <= i; ++m) value += std::pow(4.0, m);
            const double r_out = a_ * std::pow(4.0, -i);
            const double r_next = (i == N_) ? 0.0 : a_ * std::pow(4.0, -(i + 1));
            const double area = kPi * (r_out * r_out - r_next * r_next);
            per_center += std::pow(value, 1.5) * area;
        }
        sum += count * per_center;
    }
    return std::pow(sum, 2.0 / 3.0);
}

double CantorTestFunction::norm32_raster(double h) const {
    // patches around each distinct outermost disk, merged into clusters
    struct Patch {
        double lo, hi, r;
    };
    std::vector<Patch> patches;
    // distinct centers with their outermost radius a 4^-m0
    std::vector<std::pair<double, double>> outer;  // (center, radius)
    {
        std::vector<double> seen;
        for (int i = 1; i <= N_; ++i) {
            const double s = a_ * std::pow(4.0, -i);
            for (double c : centers_[static_cast<std::size_t>(i - 1)]) {
                auto it = std::lower_bound(seen.begin(), seen.end(), c);
                if (it != seen.end() && *it == c) continue;
                seen.insert(it, c);
                outer.push_back({c, s});
            }
        }
        std::sort(outer.begin(), outer.end());
    }
    for (const auto& [c, r] : outer) patches.push_back({c - r - 2 * h, c + r + 2 * h, r + 2 * h});

    std::vector<Patch> clusters;
    for (const auto& p : patches) {
        if (!clusters.empty() && p.lo <= clusters.back().hi) {
            clusters.back().hi = std::max(clusters.back().hi, p.hi);
            clusters.back().r = std::max(clusters.back().r, p.r);
        } else {
            clusters.push_back(p);
        }
    }

    std::vector<double> partial(clusters.size(), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(clusters.size()); ++ci) {
        const auto& cl = clusters[static_cast<std::size_t>(ci)];
        const std::int64_t mx = static_cast<std::int64_t>(std::ceil((cl.hi - cl.lo) / h));
        const std::int64_t my = static_cast<std::int64_t>(std::ceil(2.0 * cl.r / h));
        double s = 0.0;
        for (std::int64_t iy = 0; iy <= my; ++iy) {
            const double y = -cl.r + iy * h;
            for (std::int64_t ix = 0; ix <= mx; ++ix) {
                const double f = eval(cl.lo + ix * h, y);
                if (f > 0) s += std::pow(f, 1.5);
            }
        }
        partial[static_cast<std::size_t>(ci)] = s * h * h;
    }
    double sum = 0.0;
    for (double s : partial) sum += s;
    return std::pow(sum, 2.0 / 3.0);
}

GridField2D CantorTestFunction::rasterize_window(double x_lo, double x_hi, double y_lo,
                                                 double y_hi, double h) const {
    GridField2D g;
    g.x0 = x_lo;
    g.y0 = y_lo;
    g.h = h;
    g.nx = static_cast<int>(std::ceil((x_hi - x_lo) / h)) + 1;
    g.ny = static_cast<int>(std::ceil((y_hi - y_lo) / h)) + 1;
    g.v.assign(static_cast<std::size_t>(g.nx) * g.ny, 0.0);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            g.at(i, j) = eval(x_lo + i * h, y_lo + j * h);
    return g;
}

CantorCexReport cantor_counterexample(int N, double a, double grid_h, std::int64_t samples,
                                      std::uint64_t seed) {
    if (N < 1 || N > 8) throw std::invalid_argument("layer count out of desk range");
    const CantorTestFunction f(N, a);

    CantorCexReport rep;
    rep.N = N;
    rep.a = a;
    rep.grid_h = grid_h;
    rep.samples = samples;
    rep.seed = seed;
    rep.threshold_c = a / (4.0 * kPi);

    rep.f_norm32_rings = f.norm32_rings();
    rep.f_norm32 = f.norm32_raster(grid_h);

    // radii: digits-{0,2} middle-halves set on [1, 5/3], deep enough that the
    // crossing point granularity resolves the deepest disks
    const int extra = std::max(1, static_cast<int>(std::ceil(std::log(1.0 / a) / std::log(4.0))));
    DilationSet e0 = make_middle_halves_set(N + extra, 1.0, 5.0 / 3.0);
    // resolve exactly at the depth cap
    const double e0_delta = 8.0 * (2.0 / 3.0) * std::pow(4.0, -(N + extra));
    const ResolvedSet rs = block(e0, 0, e0_delta);
    std::vector<double> radii;
    for (const auto& item : rs.items) {
        radii.push_back(item.lo);
        if (item.hi > item.lo) radii.push_back(item.hi);
    }

    // sample region: the annulus portion whose right axis crossing reaches the
    // disk stack: xi + r + sqrt(1-eta^2) in [0 - a, 2/3 + a]
    const double xi_lo = -8.0 / 3.0, xi_hi = -4.0 / 3.0;
    const double eta_lo = -0.125, eta_hi = 0.125;
    const double region_area = (xi_hi - xi_lo) * (eta_hi - eta_lo);

    const CounterRng rng(seed, 8201);
    std::vector<double> values(static_cast<std::size_t>(samples), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64)
#endif
    for (std::int64_t s = 0; s < samples; ++s) {
        const double xi = rng.uniform(2 * static_cast<std::uint64_t>(s), xi_lo, xi_hi);
        const double eta = rng.uniform(2 * static_cast<std::uint64_t>(s) + 1, eta_lo, eta_hi);
        double best = 0.0;
        for (double r : radii)
            best = std::max(best, f.circle_average({xi + r, eta}));
        values[static_cast<std::size_t>(s)] = best;
    }

    std::vector<double> weights(values.size(), region_area / static_cast<double>(samples));
    rep.weak_norm = lorentz_norm(values, weights, 1.5,
                                 std::numeric_limits<double>::infinity()).value;
    rep.ratio = rep.weak_norm / rep.f_norm32;

    double meas = 0.0;
    const double threshold = rep.threshold_c * N;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] > threshold) meas += weights[i];
    rep.meas_above = meas;
    return rep;
}

// ---------------------------------------------------------------------------
// Perron-tree rectangles
// ---------------------------------------------------------------------------

bool OrientedRect::contains(Vec2 p) const {
    const double dx = p.x - center.x, dy = p.y - center.y;
    const double along = dx * axis.x + dy * axis.y;
    const double across = -dx * axis.y + dy * axis.x;
    return std::fabs(along) <= hl && std::fabs(across) <= hw;
}

RectangleFamily besicovitch_family(int n) {
    if (n < 3 || n > 8) throw std::invalid_argument("besicovitch_family needs 3 <= n <= 8");
    const int m = 1 << n;
    const double H = std::ldexp(1.0, -n - 2);
    const double hl = std::ldexp(1.0, -n - 4);
    const double hw = std::ldexp(1.0, -2 * n - 7);

    // elementary wedges: apex on the x(pre)-axis, base chord on the line y = H;
    // wedge l spans ray angles [l 2^-n, (l+1) 2^-n] measured from the vertical
    std::vector<double> shift(static_cast<std::size_t>(m), 0.0);
    std::vector<double> base_lo(static_cast<std::size_t>(m)), base_hi(static_cast<std::size_t>(m));
    for (int l = 0; l < m; ++l) {
        base_lo[static_cast<std::size_t>(l)] = H * std::tan(l * std::ldexp(1.0, -n));
        base_hi[static_cast<std::size_t>(l)] = H * std::tan((l + 1) * std::ldexp(1.0, -n));
    }

    // Perron bisection: slide the right half of each group left so the two
    // half-trees overlap on a common heartland
    const double alpha = 1.0 - 1.0 / (n + 1.0);
    const auto merge = [&](auto&& self, int lo, int hi) -> void {
        if (hi - lo <= 1) return;
        const int mid = lo + (hi - lo) / 2;
        self(self, lo, mid);
        self(self, mid, hi);
        double a_lo = std::numeric_limits<double>::infinity(), a_hi = -a_lo;
        double b_lo = a_lo;
        for (int l = lo; l < mid; ++l) {
            a_lo = std::min(a_lo, base_lo[static_cast<std::size_t>(l)] + shift[static_cast<std::size_t>(l)]);
            a_hi = std::max(a_hi, base_hi[static_cast<std::size_t>(l)] + shift[static_cast<std::size_t>(l)]);
        }
        for (int l = mid; l < hi; ++l)
            b_lo = std::min(b_lo, base_lo[static_cast<std::size_t>(l)] + shift[static_cast<std::size_t>(l)]);
        const double target = a_lo + (2.0 * alpha - 1.0) * (a_hi - a_lo);
        const double delta = target - b_lo;
        for (int l = mid; l < hi; ++l) shift[static_cast<std::size_t>(l)] += delta;
    };
    merge(merge, 0, m);

    RectangleFamily fam;
    fam.n = n;
    fam.rects.reserve(static_cast<std::size_t>(m));
    for (int l = 0; l < m; ++l) {
        const double theta = l * std::ldexp(1.0, -n);
        // pre-rotation frame: ray direction (sin theta, cos theta), inward
        // normal (cos theta, -sin theta); the rectangle rides the lower half
        // of the wedge's left edge
        const double t_mid = 0.5 * H + hl;
        const double cx = shift[static_cast<std::size_t>(l)] + t_mid * std::sin(theta) +
                          hw * std::cos(theta);
        const double cy = t_mid * std::cos(theta) - hw * std::sin(theta);
        // final frame swaps coordinates so the long axis is (cos theta, sin theta)
        OrientedRect r;
        r.center = {cy, cx};
        r.axis = {std::cos(theta), std::sin(theta)};
        r.hl = hl;
        r.hw = hw;
        fam.rects.push_back(r);
    }

    const double bound = std::ldexp(1.0, -n);
    for (const auto& r : fam.rects) {
        if (std::fabs(r.center.x) > bound || std::fabs(r.center.y) > bound)
            throw std::runtime_error("perron tree left the bounding square");
    }
    return fam;
}

namespace {

AreaEstimate area_impl(const RectangleFamily& fam, std::int64_t samples, std::uint64_t seed,
                       bool parallel) {
    const double bound = std::ldexp(1.0, -fam.n);
    const double box = 4.0 * bound * bound;
    const CounterRng rng(seed, 4177);
    std::int64_t hits = 0;

    const auto body = [&](std::int64_t i) -> int {
        const double x = rng.uniform(2 * static_cast<std::uint64_t>(i), -bound, bound);
        const double y = rng.uniform(2 * static_cast<std::uint64_t>(i) + 1, -bound, bound);
        for (const auto& r : fam.rects)
            if (r.contains({x, y})) return 1;
        return 0;
    };

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : hits) schedule(static)
#endif
        for (std::int64_t i = 0; i < samples; ++i) hits += body(i);
    } else {
        for (std::int64_t i = 0; i < samples; ++i) hits += body(i);
    }

    AreaEstimate est;
    est.samples = samples;
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    est.value = p * box;
    est.ci99 = 2.576 * std::sqrt(std::max(p * (1 - p), 1e-12) / static_cast<double>(samples)) * box;
    return est;
}

} // namespace

AreaEstimate mc_union_area(const RectangleFamily& fam, std::int64_t samples,
                           std::uint64_t seed) {
    return area_impl(fam, samples, seed, true);
}

AreaEstimate mc_union_area_serial(const RectangleFamily& fam, std::int64_t samples,
                                  std::uint64_t seed) {
    return area_impl(fam, samples, seed, false);
}

// ---------------------------------------------------------------------------
// circle-rectangle arcs
// ---------------------------------------------------------------------------

namespace {

struct Arc {
    double lo, hi;  // subinterval of [0, 2pi)
};

// solutions of cos(psi) in [c1, c2] as arcs in psi, then shifted by phase
void cos_band_arcs(double c1, double c2, double phase, std::vector<Arc>& out) {
    if (c1 > 1.0 || c2 < -1.0 || c1 > c2) return;
    const double lo = std::acos(std::clamp(c2, -1.0, 1.0));
    const double hi = std::acos(std::clamp(c1, -1.0, 1.0));
    const auto push = [&](double a, double b) {
        if (b - a < 1e-15) return;
        a += phase;
        b += phase;
        a = std::fmod(std::fmod(a, kTwoPi) + kTwoPi, kTwoPi);
        b = std::fmod(std::fmod(b, kTwoPi) + kTwoPi, kTwoPi);
        if (b >= a)
            out.push_back({a, b});
        else {  // wrapped
            out.push_back({a, kTwoPi});
            out.push_back({0.0, b});
        }
    };
    push(lo, hi);
    push(-hi, -lo);
}

// arcs of { phi : center + t e(phi) inside rect }
std::vector<Arc> rect_arcs(const OrientedRect& r, Vec2 center, double t) {
    const double dx = center.x - r.center.x, dy = center.y - r.center.y;
    const double au = dx * r.axis.x + dy * r.axis.y;
    const double av = -dx * r.axis.y + dy * r.axis.x;
    const double phi_u = std::atan2(r.axis.y, r.axis.x);

    std::vector<Arc> arcs_u, arcs_v;
    // |au + t cos(phi - phi_u)| <= hl
    cos_band_arcs((-r.hl - au) / t, (r.hl - au) / t, phi_u, arcs_u);
    // |av + t cos(phi - phi_u - pi/2)| <= hw
    cos_band_arcs((-r.hw - av) / t, (r.hw - av) / t, phi_u + 0.5 * kPi, arcs_v);
    if (arcs_u.empty() || arcs_v.empty()) return {};

    std::vector<Arc> out;
    for (const auto& a : arcs_u)
        for (const auto& b : arcs_v) {
            const double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
            if (hi > lo) out.push_back({lo, hi});
        }
    return out;
}

} // namespace

double circle_arc_in_union(const std::vector<OrientedRect>& rects, Vec2 center, double t) {
    std::vector<Arc> all;
    for (const auto& r : rects) {
        // cheap reject: circle must pass within the rectangle's circumradius
        const double dx = center.x - r.center.x, dy = center.y - r.center.y;
        const double D = std::sqrt(dx * dx + dy * dy);
        const double rad = std::sqrt(r.hl * r.hl + r.hw * r.hw);
        if (std::fabs(D - t) > rad) continue;
        auto arcs = rect_arcs(r, center, t);
        all.insert(all.end(), arcs.begin(), arcs.end());
    }
    if (all.empty()) return 0.0;
    std::sort(all.begin(), all.end(), [](const Arc& a, const Arc& b) { return a.lo < b.lo; });
    double total = 0.0, cur_lo = all[0].lo, cur_hi = all[0].hi;
    for (std::size_t i = 1; i < all.size(); ++i) {
        if (all[i].lo > cur_hi) {
            total += cur_hi - cur_lo;
            cur_lo = all[i].lo;
            cur_hi = all[i].hi;
        } else {
            cur_hi = std::max(cur_hi, all[i].hi);
        }
    }
    total += cur_hi - cur_lo;
    return total;
}

// ---------------------------------------------------------------------------
// restricted weak type probe
// ---------------------------------------------------------------------------

KakeyaProbeReport restricted_weak_type_probe(const DilationSet& set, int n, double B_min,
                                             std::uint64_t seed, int stride) {
    KakeyaProbeReport rep;
    rep.n = n;
    rep.seed = seed;
    rep.stride = stride;
    rep.threshold_c = 0.005;

    // dyadic cells of length 2^-2n covering E^0
    const double cell = std::ldexp(1.0, -2 * n);
    const ResolvedSet rs = block(set, 0, cell / 8.0);
    std::vector<std::int64_t> occupied;
    {
        std::vector<bool> occ(static_cast<std::size_t>(1) << (2 * n), false);
        const auto mark = [&](double lo, double hi) {
            auto i0 = static_cast<std::int64_t>(std::floor((lo - 1.0) / cell));
            auto i1 = static_cast<std::int64_t>(std::floor((hi - 1.0) / cell));
            i0 = std::max<std::int64_t>(i0, 0);
            i1 = std::min<std::int64_t>(i1, (static_cast<std::int64_t>(1) << (2 * n)) - 1);
            for (std::int64_t i = i0; i <= i1; ++i) occ[static_cast<std::size_t>(i)] = true;
        };
        for (const auto& item : rs.items)
            mark(item.lo, item.hi > item.lo ? std::nextafter(item.hi, item.lo) : item.lo);
        for (std::size_t i = 0; i < occ.size(); ++i)
            if (occ[i]) occupied.push_back(static_cast<std::int64_t>(i));
    }
    rep.N_dyadic = static_cast<std::int64_t>(occupied.size());
    rep.B = static_cast<double>(rep.N_dyadic) * n / std::ldexp(1.0, 2 * n);
    if (rep.B < B_min) {
        rep.applicable = false;
        return rep;
    }
    rep.applicable = true;

    const RectangleFamily fam = besicovitch_family(n);
    const AreaEstimate area = mc_union_area(fam, 8'000'000, seed);
    rep.area = area.value;
    rep.area_upper_ci = area.value + area.ci99;
    rep.chi_l21 = 2.0 * std::sqrt(std::max(area.value, 1e-300));

    // translated rectangles: every stride-th cell endpoint along the normal of
    // every stride-th rectangle
    std::vector<double> a_sel;
    for (std::size_t i = 0; i < occupied.size(); i += static_cast<std::size_t>(stride))
        a_sel.push_back(1.0 + static_cast<double>(occupied[i]) * cell);
    std::vector<std::size_t> l_sel;
    for (std::size_t l = 0; l < fam.rects.size(); l += static_cast<std::size_t>(stride))
        l_sel.push_back(l);

    struct Translate {
        OrientedRect rect;
        double a;
    };
    std::vector<Translate> translates;
    for (std::size_t l : l_sel)
        for (double a : a_sel) {
            OrientedRect r = fam.rects[l];
            const Vec2 perp{-r.axis.y, r.axis.x};
            r.center.x += a * perp.x;
            r.center.y += a * perp.y;
            translates.push_back({r, a});
        }

    // pairwise disjointness (separating-axis test on both rectangles' frames)
    const auto overlap = [](const OrientedRect& A, const OrientedRect& B) {
        const auto project_gap = [](const OrientedRect& P, const OrientedRect& Q) {
            const Vec2 axes[2] = {P.axis, {-P.axis.y, P.axis.x}};
            const double ext_p[2] = {P.hl, P.hw};
            for (int a = 0; a < 2; ++a) {
                const double cx = Q.center.x - P.center.x, cy = Q.center.y - P.center.y;
                const double dist = std::fabs(cx * axes[a].x + cy * axes[a].y);
                const double qext =
                    Q.hl * std::fabs(Q.axis.x * axes[a].x + Q.axis.y * axes[a].y) +
                    Q.hw * std::fabs(-Q.axis.y * axes[a].x + Q.axis.x * axes[a].y);
                if (dist > ext_p[a] + qext) return true;  // separating axis found
            }
            return false;
        };
        return !(project_gap(A, B) || project_gap(B, A));
    };
    rep.translates_disjoint = true;
    for (std::size_t i = 0; i < translates.size() && rep.translates_disjoint; ++i)
        for (std::size_t j = i + 1; j < translates.size(); ++j)
            if (overlap(translates[i].rect, translates[j].rect)) {
                rep.translates_disjoint = false;
                break;
            }

    // sample the maximal circle averages of the union indicator on the translates
    const double t_res = std::ldexp(1.0, -2 * n - 3);
    const int samples_per_rect = 64;
    const CounterRng rng(seed, 5501);

    std::vector<double> values(translates.size() * samples_per_rect, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t ti = 0; ti < static_cast<std::int64_t>(translates.size()); ++ti) {
        const auto& tr = translates[static_cast<std::size_t>(ti)];
        const Vec2 u = tr.rect.axis;
        const Vec2 v{-u.y, u.x};
        for (int sidx = 0; sidx < samples_per_rect; ++sidx) {
            const std::uint64_t ctr =
                (static_cast<std::uint64_t>(ti) * samples_per_rect + sidx) * 2;
            const int gi = sidx % 8, gj = sidx / 8;
            const double su = ((gi + rng.uniform(ctr)) / 8.0 * 2.0 - 1.0) * tr.rect.hl;
            const double sv = ((gj + rng.uniform(ctr + 1)) / 8.0 * 2.0 - 1.0) * tr.rect.hw;
            const Vec2 x{tr.rect.center.x + su * u.x + sv * v.x,
                         tr.rect.center.y + su * u.y + sv * v.y};

            // sup over the dilation set near the translate distance
            double best = 0.0;
            const double t_lo = tr.a - 8.0 * cell, t_hi = tr.a + 8.0 * cell;
            // candidate radii: set points in [t_lo, t_hi] stepped at t_res
            for (const auto& item : rs.items) {
                if (item.hi < t_lo || item.lo > t_hi) continue;
                double t0 = std::max(item.lo, t_lo), t1 = std::min(item.hi, t_hi);
                for (double t = t0; t <= t1 + 1e-18; t += t_res) {
                    const double arc = circle_arc_in_union(fam.rects, x, t);
                    if (arc > 0) best = std::max(best, arc / kTwoPi);
                    if (item.kind == ItemKind::point) break;
                }
            }
            values[static_cast<std::size_t>(ti) * samples_per_rect +
                   static_cast<std::size_t>(sidx)] = best;
        }
    }

    // per-rect fraction above the threshold c 2^-n
    const double threshold = rep.threshold_c * std::ldexp(1.0, -n);
    double min_frac = 1.0;
    for (std::size_t ti = 0; ti < translates.size(); ++ti) {
        int above = 0;
        for (int sidx = 0; sidx < samples_per_rect; ++sidx)
            if (values[ti * samples_per_rect + static_cast<std::size_t>(sidx)] > threshold)
                ++above;
        min_frac = std::min(min_frac, static_cast<double>(above) / samples_per_rect);
    }
    rep.min_rect_fraction = min_frac;

    const double rect_area = 4.0 * fam.rects.front().hl * fam.rects.front().hw;
    std::vector<double> weights(values.size(), rect_area / samples_per_rect);
    rep.weak_lower =
        lorentz_norm(values, weights, 2.0, std::numeric_limits<double>::infinity()).value;
    rep.ratio = rep.weak_lower / rep.chi_l21;
    rep.ratio_over_sqrtB = rep.ratio / std::sqrt(rep.B);
    return rep;
}

} // namespace maximal
