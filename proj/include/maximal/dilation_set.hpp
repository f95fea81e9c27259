// Certified representations of dilation sets E in (0,inf) and their dyadic
// blocks E^k = E intersect [2^k, 2^(k+1)).
//
// Four representations:
//   ExplicitFinite   -- a finite sorted list of radii
//   MonotoneGenerator-- one block's decreasing sequence t_nu -> L, given by a
//                       relative offset function g with g(nu) = t_nu/2^k - 1
//   CantorIFS        -- attractor of a contracting IFS on a base interval,
//                       truncated at a certified depth
//   full block       -- the whole interval [1,2) (so E = (0,inf) when periodic)
//
// A set marked periodic tiles all of (0,inf): block k is exactly 2^k times
// block 0 (multiplication by an exact power of two, so scaling is bit-exact).
//
// block() resolves E^k into a ResolvedSet: a sorted disjoint list of points and
// closed intervals.  Interval items are either IFS cells shorter than a
// quarter of the certified resolution (they over-cover the set but each one
// meets it), an exact sub-interval of the set (full block), or a "dense run"
// of a generator: the stretch where consecutive gaps drop below the certified
// resolution.  Dense runs keep a handle to the generator so that downstream
// covering sweeps can anchor on true set points, which keeps entropy counts
// exact even though the run is stored as one interval.

#ifndef MAXIMAL_DILATION_SET_HPP
#define MAXIMAL_DILATION_SET_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace maximal {

class ResolutionError : public std::runtime_error {
public:
    explicit ResolutionError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class SetKind { explicit_finite, generator, cantor, full_block };

// Offsets are relative to the block's left edge: point(nu) = 2^k * (1 + g(nu)).
// g is strictly decreasing to 0.  inverse_offset is the real-valued inverse
// (inverse_offset(g(nu)) == nu); it may return +inf when the index overflows
// doubles, which downstream code treats as "denser than machine precision".
struct GeneratorSpec {
    std::function<double(double)> offset;
    std::function<double(double)> inverse_offset;
    double nu_min = 1;       // first index with g(nu) < 1 (inside the block)
    bool limit_in_set = false;

    // smallest integer nu with g(nu) < rel (may be +inf); certified so that
    // g(tail_index(rel)) < rel <= g(tail_index(rel)-1)
    double tail_index(double rel) const;
    // value of the largest offset that is < rel, i.e. the first point of the
    // tail below L + rel*2^k; used to place tail tops exactly
    double largest_offset_below(double rel) const;
    // smallest offset strictly greater than rel (next set point above), or a
    // negative value if none exists below the block top
    double smallest_offset_above(double rel) const;
};

struct CantorParams {
    double lo = 1.0, hi = 2.0;
    double ratio = 1.0 / 3.0;
    std::vector<double> offsets{0.0, 2.0 / 3.0};  // fractions of (hi-lo), in [0, 1-ratio]
    int max_depth = 20;
};

struct KRange {
    bool all = false;
    int lo = 0, hi = 0;
};

class DilationSet {
public:
    SetKind kind = SetKind::explicit_finite;
    bool periodic = false;
    KRange k_range;
    std::string name;

    std::vector<double> points;  // explicit_finite (absolute radii, sorted)
    GeneratorSpec gen;           // generator
    CantorParams cantor;         // cantor

    bool contains_block(int k) const {
        return k_range.all || (k >= k_range.lo && k <= k_range.hi);
    }
};

enum class ItemKind { point, cell, dense, interval };

struct ResolvedItem {
    double lo = 0, hi = 0;
    ItemKind kind = ItemKind::point;
    double length() const { return hi - lo; }
};

struct ResolvedSet {
    std::vector<ResolvedItem> items;  // sorted by lo, pairwise disjoint
    double certified_resolution = 0;  // 0 = exact at every scale
    // exact next set point strictly above x inside dense items (empty if none)
    std::function<double(double)> next_above;

    bool empty() const { return items.empty(); }
    double min_coord() const { return items.front().lo; }
    double max_coord() const { return items.back().hi; }
};

// E^k resolved at delta_cert.  Throws ResolutionError when the representation
// cannot certify that resolution (IFS depth cap, runaway generator walk).
ResolvedSet block(const DilationSet& set, int k, double delta_cert);

// Standard sets.
DilationSet make_power_set(double alpha);                 // {2^k (1 + nu^-alpha)}
DilationSet make_log_set(double beta);                    // {2^k (1 + log^-beta(2+nu))}
DilationSet make_lacunary_set();                          // {2^k}
DilationSet make_full_set();                              // (0, inf)
DilationSet make_explicit_set(std::vector<double> pts);
DilationSet make_cantor_set(double ratio, std::vector<double> offsets, int depth,
                            double lo = 1.0, double hi = 2.0);
DilationSet make_middle_third_set(int depth = 20);        // ratio 1/3, offsets {0, 2/3}
DilationSet make_middle_halves_set(int depth = 20, double lo = 1.0, double hi = 2.0);

// Descriptor JSON:
// {"type": "power"|"log"|"cantor"|"lacunary"|"full"|"explicit",
//  "alpha":..,"beta":..,"ratio":..,"offsets":[..],"depth":..,"points":[..],
//  "k_range":[lo,hi]|"all"}
DilationSet set_from_descriptor(const std::string& json_text);
DilationSet set_from_descriptor_file(const std::string& path);
std::string set_to_descriptor(const DilationSet& set);

} // namespace maximal

#endif
