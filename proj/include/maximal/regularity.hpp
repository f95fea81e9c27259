// Equally spaced sets and the constructive decomposition of convex blocks:
// points of E^k are grouped by the dyadic class of the gap below them, each
// class forming an equally spaced set of width 2^(k-mu) with deviation 2.
// A generator's unresolved tail enters as one synthetic equally spaced set at
// the deepest certified class (its card is the covering count at that width,
// which is what the endpoint covering argument uses).

#ifndef MAXIMAL_REGULARITY_HPP
#define MAXIMAL_REGULARITY_HPP

#include <cstdint>
#include <vector>

#include "maximal/conditions.hpp"
#include "maximal/dilation_set.hpp"
#include "maximal/entropy.hpp"

namespace maximal {

class ConvexityError : public std::runtime_error {
public:
    ConvexityError(const std::string& msg, double t0, double t1, double t2)
        : std::runtime_error(msg), triple{t0, t1, t2} {}
    double triple[3];
};

// nearest-neighbour distances all within [width/C, C*width]; singleton -> true
bool is_equally_spaced(const std::vector<double>& sorted_points, double width, double C);

struct SpacedFamily {
    int mu = 0;
    double width = 0;          // 2^(k-mu)
    std::int64_t card = 0;     // synthetic tail: covering count at this width
    double a = 0, b = 0;       // endpoints (min, max)
    bool synthetic_tail = false;
};

struct EquallySpacedDecomposition {
    int k = 0;
    double deviation = 2.0;
    std::vector<SpacedFamily> families;              // ascending mu
    std::vector<double> endpoint_set;                // sorted union of (a, b)
    std::vector<std::vector<double>> member_points;  // per family, ascending (tail empty)
    double block_min = 0, block_max = 0;             // inf/sup of the materialized block
};

// Requires the block to be a monotone point sequence with monotone gaps
// (checked; violations raise ConvexityError naming the offending triple).
EquallySpacedDecomposition decompose_convex(const DilationSet& set, int k, double delta_cert);

struct RegularityReport {
    ConditionVerdict verdict;  // stabilization of the endpoint norm C0
    double C0 = 0;             // (1.9)-style weighted endpoint norm, truncated
    double C1 = 0;             // smallest constant in the family-card bound
    double endpoint_entropy_slope = 0;  // fitted slope of log2 N(D, 2^-j) vs j
    std::int64_t worst_mu = 0;          // where C1 is attained
};

// Family/endpoint hypothesis with the per-class card bound
// sum_{J in class mu} card(J) <= C1 * N(E^k, 2^(k-mu)).
RegularityReport check_R_p(const DilationSet& set, const EntropyProfile& prof,
                           const Exponents& e, const WeightSequence& w, int dec_depth,
                           const TrendPolicy& policy = {});

// Cumulative variant: sum_{mu>=n} 2^-mu sum_J card(J) <= C1 * 2^-n * N(E^k, 2^(k-n)).
RegularityReport check_R_tilde(const DilationSet& set, const EntropyProfile& prof,
                               const Exponents& e, const WeightSequence& w, int dec_depth,
                               const TrendPolicy& policy = {});

} // namespace maximal

#endif
