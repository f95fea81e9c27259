// Covering numbers N(E, delta) (minimal count of closed length-delta intervals
// covering E, with N(empty) = 1), dyadic entropy profiles N(E^k, 2^(k-n)), and
// the critical exponent p(E) = 1 + sup_n log N / ((d-1) n log 2).

#ifndef MAXIMAL_ENTROPY_HPP
#define MAXIMAL_ENTROPY_HPP

#include <cstdint>
#include <vector>

#include "maximal/dilation_set.hpp"

namespace maximal {

// Exact minimal covering count of the resolved union by closed intervals of
// length delta, by the left-anchored greedy sweep.  Anchors land on true set
// points inside dense generator runs (via ResolvedSet::next_above), so counts
// are exact there; IFS cells shorter than delta/16 contribute at most their
// own width of slack.  Empty set -> 1.
std::int64_t entropy_number(const ResolvedSet& resolved, double delta);

struct EntropyProfile {
    int d = 2;
    int n_max = 0;
    bool translation_invariant = false;  // periodic sets: one block represents all k
    std::vector<int> ks;                 // evaluated block indices (size 1 if invariant)
    std::vector<std::vector<std::int64_t>> table;  // [k index][n] for n = 0..n_max

    std::int64_t at(int k, int n) const {
        if (translation_invariant) return table[0][static_cast<std::size_t>(n)];
        for (std::size_t i = 0; i < ks.size(); ++i)
            if (ks[i] == k) return table[i][static_cast<std::size_t>(n)];
        return 1;  // blocks outside the window are empty by convention
    }
    bool has_block(int k) const {
        if (translation_invariant) return true;
        for (int kk : ks)
            if (kk == k) return true;
        return false;
    }
};

// Fills N(E^k, 2^(k-n)) = entropy_number(block(set, k, 2^(k-n)/4), 2^(k-n))
// for n = 0..n_max over the block window.  Periodic sets evaluate one block.
// k_lo/k_hi are ignored for periodic sets; for explicit sets they default to
// the blocks containing points.
EntropyProfile profile(const DilationSet& set, int d, int n_max);
EntropyProfile profile(const DilationSet& set, int d, int n_max, int k_lo, int k_hi);
EntropyProfile profile_serial(const DilationSet& set, int d, int n_max);

struct CriticalExponentEstimate {
    double p_estimate = 1.0;   // 1 + slope_fit/(d-1), the asymptotic estimate
    double sup_ratio = 0.0;    // max of log N / (n log 2) over the deep-scale window
    double slope_fit = 0.0;    // least-squares slope of log N vs n log 2, deep half
    double residual = 0.0;     // rms residual of the fit
    bool converged = false;    // sup and slope agree within 0.05
};

// n_min = 4 levels are excluded from the sup; the sup is taken over the same
// deep window as the fit (n >= max(4, n_max/2)) because shallow levels carry
// an O(1/n) upward bias from covering constants.
CriticalExponentEstimate critical_exponent(const EntropyProfile& profile);

} // namespace maximal

#endif
