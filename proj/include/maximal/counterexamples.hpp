// Executable counterexample machinery:
//  - the shifted-center maximal function on plane fields, tested against a
//    layered Cantor test function (weights 4^i on disks of radius a 4^-i at
//    scaled Cantor centers), whose weak-(3/2) ratio grows with the number of
//    layers; and
//  - a Perron-tree family of thin rectangles pointing in 2^n equally spaced
//    directions, used to probe restricted weak type (2,2) failure through
//    tangent circles.

#ifndef MAXIMAL_COUNTEREXAMPLES_HPP
#define MAXIMAL_COUNTEREXAMPLES_HPP

#include <cstdint>
#include <vector>

#include "maximal/dilation_set.hpp"

namespace maximal {

struct Vec2 {
    double x = 0, y = 0;
};

// ---------------------------------------------------------------------------
// plane fields
// ---------------------------------------------------------------------------

struct GridField2D {
    double x0 = 0, y0 = 0;  // lower-left corner
    double h = 1;           // spacing
    int nx = 0, ny = 0;
    std::vector<double> v;  // row-major, v[j*nx + i]

    double& at(int i, int j) { return v[static_cast<std::size_t>(j) * nx + i]; }
    double at(int i, int j) const { return v[static_cast<std::size_t>(j) * nx + i]; }
    bool contains(double x, double y) const;
    double bilinear(double x, double y) const;
};

// sup over r in radii of the unit-circle average of f centered at (x + r, y),
// by M-point trapezoid sampling with M = max(256, ceil(2 pi / h)).
// Throws if any circle leaves the field domain.
double modified_maximal(const GridField2D& f, const std::vector<double>& radii,
                        double x, double y);

// unit-circle average of a grid field at one center
double circle_average_grid(const GridField2D& f, double cx, double cy);

// ---------------------------------------------------------------------------
// layered Cantor test function (analytic form)
// ---------------------------------------------------------------------------

// f(z) = sum_{i=1..N} 4^i chi(dist(z, (2c, 0)) <= a 4^-i), c over level-i
// prefix sums of the digits-{0,1} base-4 Cantor set.  Since level-i centers
// extend by zeros to all deeper levels, overlapping disks are concentric for
// a <= 1/16 and the 3/2-norm has a closed ring form (used as an oracle).
class CantorTestFunction {
public:
    CantorTestFunction(int levels, double a);

    int levels() const { return N_; }
    double a() const { return a_; }

    double eval(double x, double y) const;
    // exact unit-circle average using per-disk arc windows
    double circle_average(Vec2 center) const;

    double norm32_rings() const;            // closed concentric-ring integral
    double norm32_raster(double h) const;   // sparse patch rasterization
    GridField2D rasterize_window(double x_lo, double x_hi, double y_lo, double y_hi,
                                 double h) const;

    const std::vector<double>& level_centers(int i) const {
        return centers_[static_cast<std::size_t>(i - 1)];
    }

private:
    int N_;
    double a_;
    std::vector<std::vector<double>> centers_;  // level i: sorted x-coords 2c
};

struct CantorCexReport {
    int N = 0;
    double a = 0;
    double grid_h = 0;
    double f_norm32 = 0;         // rasterized
    double f_norm32_rings = 0;   // closed form
    double weak_norm = 0;        // || M~ f ||_{3/2,inf} from sampled field
    double ratio = 0;            // weak_norm / f_norm32
    double meas_above = 0;       // meas{ M~ f > c N }
    double threshold_c = 0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
};

// Samples the shifted maximal function of the Cantor test function over the
// annulus portion where sums r + 2c reach the disk stack, and reports the
// weak-(3/2) ratio.  E0 is the digits-{0,2} middle-halves set on [1, 5/3].
CantorCexReport cantor_counterexample(int N, double a, double grid_h,
                                      std::int64_t samples, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Perron-tree rectangle family
// ---------------------------------------------------------------------------

struct OrientedRect {
    Vec2 center;
    Vec2 axis;       // unit vector along the long side: (cos l 2^-n, sin l 2^-n)
    double hl = 0;   // half of the long side  (2^-n-4)
    double hw = 0;   // half of the short side (2^-2n-7)

    bool contains(Vec2 p) const;
};

struct RectangleFamily {
    int n = 0;
    std::vector<OrientedRect> rects;
};

// 2^n rectangles with sides 2^(-n-3) x 2^(-2n-6) in directions l 2^-n, packed
// by the Perron bisection scheme inside [-2^-n, 2^-n]^2.
RectangleFamily besicovitch_family(int n);

struct AreaEstimate {
    double value = 0;
    double ci99 = 0;  // 99% half-width
    std::int64_t samples = 0;
};

AreaEstimate mc_union_area(const RectangleFamily& fam, std::int64_t samples,
                           std::uint64_t seed);
AreaEstimate mc_union_area_serial(const RectangleFamily& fam, std::int64_t samples,
                                  std::uint64_t seed);

// total angular measure of { phi : center + t e(phi) inside some rectangle }
double circle_arc_in_union(const std::vector<OrientedRect>& rects, Vec2 center, double t);

struct KakeyaProbeReport {
    int n = 0;
    bool applicable = false;
    std::int64_t N_dyadic = 0;  // occupied length-4^-n... dyadic cells of E^0
    double B = 0;               // N * n / 2^(2n)
    double area = 0, area_upper_ci = 0;
    bool translates_disjoint = false;
    double weak_lower = 0;   // restricted weak-(2) lower bound from rect samples
    double chi_l21 = 0;      // L^{2,1} of the indicator of the union
    double ratio = 0;        // weak_lower / chi_l21
    double ratio_over_sqrtB = 0;
    double min_rect_fraction = 0;  // min over rects of samples above c 2^-n
    double threshold_c = 0;
    int stride = 10;
    std::uint64_t seed = 0;
};

// Covers E^0 by dyadic cells of length 2^-2n, translates every stride-th
// selected rectangle by the stride-th cell endpoints along its normal, and
// evaluates circle averages of the union indicator on the translates.
KakeyaProbeReport restricted_weak_type_probe(const DilationSet& set, int n, double B_min,
                                             std::uint64_t seed, int stride = 10);

} // namespace maximal

#endif
