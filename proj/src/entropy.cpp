#include "maximal/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace maximal {

std::int64_t entropy_number(const ResolvedSet& resolved, double delta) {
    if (!(delta > 0)) throw ResolutionError("entropy_number requires delta > 0");
    if (resolved.certified_resolution > 0 && delta < 4.0 * resolved.certified_resolution)
        throw ResolutionError("delta below certified resolution; re-resolve the block");
    if (resolved.empty()) return 1;

    std::int64_t count = 0;
    double covered = -std::numeric_limits<double>::infinity();

    for (const auto& item : resolved.items) {
        if (item.hi <= covered && !(item.kind == ItemKind::point && item.lo > covered)) continue;
        if (item.kind == ItemKind::point) {
            if (item.lo > covered) {
                ++count;
                covered = item.lo + delta;
            }
            continue;
        }
        if (item.kind == ItemKind::dense && resolved.next_above) {
            while (true) {
                double anchor;
                if (item.lo > covered) {
                    anchor = item.lo;
                } else {
                    anchor = resolved.next_above(covered);
                    if (!(anchor <= item.hi)) break;  // no set point left in this run
                }
                ++count;
                covered = anchor + delta;
                if (item.hi <= covered) break;
            }
            continue;
        }
        // continuum item: tiles from the first anchor in one arithmetic step
        const double anchor = item.lo > covered ? item.lo : covered;
        const double remaining = item.hi - anchor;
        std::int64_t m = static_cast<std::int64_t>(std::floor(remaining / delta));
        if (anchor + static_cast<double>(m) * delta < item.hi) m += 1;
        if (m < 1) m = 1;
        count += m;
        covered = anchor + static_cast<double>(m) * delta;
    }
    return count;
}

namespace {

std::vector<int> block_window(const DilationSet& set, int n_max, int k_lo, int k_hi,
                              bool have_window) {
    if (set.periodic) return {0};
    if (!have_window) {
        k_lo = set.k_range.lo;
        k_hi = set.k_range.hi;
    }
    std::vector<int> ks;
    for (int k = k_lo; k <= k_hi; ++k) ks.push_back(k);
    if (ks.empty()) ks.push_back(0);
    (void)n_max;
    return ks;
}

EntropyProfile fill_profile(const DilationSet& set, int d, int n_max,
                            const std::vector<int>& ks, bool parallel) {
    if (n_max < 1) throw std::invalid_argument("profile needs n_max >= 1");
    EntropyProfile prof;
    prof.d = d;
    prof.n_max = n_max;
    prof.translation_invariant = set.periodic;
    prof.ks = ks;
    prof.table.assign(ks.size(), std::vector<std::int64_t>(n_max + 1, 1));

    // flatten (k, n) cells; each cell is independent and pure
    struct Cell {
        int ki, n;
    };
    std::vector<Cell> cells;
    cells.reserve(ks.size() * (n_max + 1));
    for (std::size_t ki = 0; ki < ks.size(); ++ki)
        for (int n = 0; n <= n_max; ++n) cells.push_back({static_cast<int>(ki), n});

    const auto eval_cell = [&](const Cell& c) {
        const int k = ks[static_cast<std::size_t>(c.ki)];
        const double delta = std::ldexp(1.0, k - c.n);
        const auto resolved = block(set, k, delta / 4.0);
        prof.table[static_cast<std::size_t>(c.ki)][static_cast<std::size_t>(c.n)] =
            entropy_number(resolved, delta);
    };

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(cells.size()); ++i)
            eval_cell(cells[static_cast<std::size_t>(i)]);
    } else {
        for (const auto& c : cells) eval_cell(c);
    }
    return prof;
}

} // namespace

EntropyProfile profile(const DilationSet& set, int d, int n_max) {
    return fill_profile(set, d, n_max, block_window(set, n_max, 0, 0, false), true);
}

EntropyProfile profile(const DilationSet& set, int d, int n_max, int k_lo, int k_hi) {
    return fill_profile(set, d, n_max, block_window(set, n_max, k_lo, k_hi, true), true);
}

EntropyProfile profile_serial(const DilationSet& set, int d, int n_max) {
    return fill_profile(set, d, n_max, block_window(set, n_max, 0, 0, false), false);
}

CriticalExponentEstimate critical_exponent(const EntropyProfile& prof) {
    CriticalExponentEstimate est;
    const int n_max = prof.n_max;
    const int n_lo = std::max(4, (n_max + 1) / 2);

    // per-level sup over blocks
    std::vector<double> logN(n_max + 1, 0.0);
    for (int n = 0; n <= n_max; ++n) {
        std::int64_t best = 1;
        for (const auto& row : prof.table) best = std::max(best, row[static_cast<std::size_t>(n)]);
        logN[static_cast<std::size_t>(n)] = std::log(static_cast<double>(best));
    }

    bool all_ones = true;
    for (double v : logN)
        if (v != 0.0) all_ones = false;
    if (all_ones) {
        est.converged = true;
        return est;
    }

    double sup = 0.0;
    for (int n = std::min(n_lo, n_max); n <= n_max; ++n)
        sup = std::max(sup, logN[static_cast<std::size_t>(n)] / (n * std::log(2.0)));
    est.sup_ratio = sup;

    // least-squares slope of log N against n log 2 over the deep half
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int n = std::min(n_lo, n_max); n <= n_max; ++n) {
        const double x = n * std::log(2.0), y = logN[static_cast<std::size_t>(n)];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m >= 2 && sxx * m - sx * sx > 0) {
        est.slope_fit = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        const double b = (sy - est.slope_fit * sx) / m;
        double rss = 0;
        for (int n = std::min(n_lo, n_max); n <= n_max; ++n) {
            const double x = n * std::log(2.0), y = logN[static_cast<std::size_t>(n)];
            const double r = y - (est.slope_fit * x + b);
            rss += r * r;
        }
        est.residual = std::sqrt(rss / m);
    } else {
        est.slope_fit = est.sup_ratio;
    }

    est.p_estimate = std::max(1.0, 1.0 + est.slope_fit / (prof.d - 1));
    est.converged = std::fabs(est.sup_ratio - est.slope_fit) < 0.05;
    return est;
}

} // namespace maximal
