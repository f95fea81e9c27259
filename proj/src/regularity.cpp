#include "maximal/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace maximal {

bool is_equally_spaced(const std::vector<double>& pts, double width, double C) {
    if (pts.size() <= 1) return true;
    if (!(width > 0) || !(C >= 1)) return false;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double nn = std::numeric_limits<double>::infinity();
        if (i > 0) nn = std::min(nn, pts[i] - pts[i - 1]);
        if (i + 1 < pts.size()) nn = std::min(nn, pts[i + 1] - pts[i]);
        if (nn < width / C - 1e-15 || nn > C * width + 1e-15) return false;
    }
    return true;
}

namespace {

int gap_class(double gap, int k) {
    // mu with 2^(k-mu) <= gap < 2^(k-mu+1)
    int e;
    std::frexp(gap, &e);  // gap in [2^(e-1), 2^e)
    return k - (e - 1);
}

} // namespace

EquallySpacedDecomposition decompose_convex(const DilationSet& set, int k, double delta_cert) {
    const ResolvedSet rs = block(set, k, delta_cert);
    if (rs.empty()) throw ConvexityError("empty block cannot be decomposed", 0, 0, 0);

    // collect the materialized point sequence (ascending) and an optional
    // leading tail interval
    std::vector<double> pts;
    bool have_tail = false;
    double tail_lo = 0, tail_hi = 0;
    for (const auto& item : rs.items) {
        if (item.kind == ItemKind::point) {
            pts.push_back(item.lo);
        } else if (item.kind == ItemKind::dense && !have_tail && pts.empty()) {
            have_tail = true;
            tail_lo = item.lo;
            tail_hi = item.hi;
        } else {
            // interval items in the interior: expose the endpoints as points
            // so the convexity check sees the true gap pattern
            pts.push_back(item.lo);
            if (item.hi > item.lo) pts.push_back(item.hi);
        }
    }
    std::sort(pts.begin(), pts.end());

    // gaps below each point, in descending enumeration t_1 > t_2 > ...
    // convexity demands these gaps be non-increasing as we descend
    const std::size_t m = pts.size();
    std::vector<double> gap_below(m, 0.0);
    for (std::size_t i = 0; i + 1 < m; ++i) gap_below[i + 1] = pts[i + 1] - pts[i];
    if (m > 0) gap_below[0] = have_tail ? pts[0] - tail_hi : (m > 1 ? gap_below[1] : 0.0);

    // monotone gaps in one direction: record the first strict rise and fall
    bool rises = false, falls = false;
    for (std::size_t i = 2; i < m; ++i) {
        if (gap_below[i] > gap_below[i - 1] * (1.0 + 1e-9)) rises = true;
        if (gap_below[i] < gap_below[i - 1] * (1.0 - 1e-9)) falls = true;
        if (rises && falls)
            throw ConvexityError("gap sequence is not monotone (convexity violated)",
                                 pts[i - 2], pts[i - 1], pts[i]);
    }

    EquallySpacedDecomposition dec;
    dec.k = k;
    dec.deviation = 2.0;
    dec.block_min = have_tail ? tail_lo : (m ? pts[0] : 0.0);
    dec.block_max = m ? pts[m - 1] : tail_hi;

    // group ascending points into dyadic gap classes; by convexity each class
    // is a contiguous run
    std::vector<SpacedFamily> fams;
    std::vector<std::vector<double>> members;
    for (std::size_t i = 0; i < m; ++i) {
        const double g = gap_below[i];
        const int mu = g > 0 ? gap_class(g, k) : 0;
        if (fams.empty() || fams.back().mu != mu) {
            fams.push_back({mu, std::ldexp(1.0, k - mu), 0, pts[i], pts[i], false});
            members.emplace_back();
        }
        fams.back().card += 1;
        fams.back().b = std::max(fams.back().b, pts[i]);
        fams.back().a = std::min(fams.back().a, pts[i]);
        members.back().push_back(pts[i]);
    }

    if (have_tail) {
        // synthetic family at the deepest certified class
        const int mu_t = std::max(1, gap_class(delta_cert, k));
        const double width = std::ldexp(1.0, k - mu_t);
        const double len = tail_hi - tail_lo;
        SpacedFamily tail{mu_t, width, std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                            std::ceil(len / width))),
                          tail_lo, tail_hi, true};
        fams.push_back(tail);
        members.emplace_back();
    }

    // order families by ascending mu, keeping member lists aligned
    std::vector<std::size_t> order(fams.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return fams[x].mu < fams[y].mu;
    });
    for (std::size_t i : order) {
        dec.families.push_back(fams[i]);
        dec.member_points.push_back(std::move(members[i]));
    }
    for (const auto& f : dec.families) {
        dec.endpoint_set.push_back(f.a);
        if (f.b != f.a) dec.endpoint_set.push_back(f.b);
    }
    std::sort(dec.endpoint_set.begin(), dec.endpoint_set.end());
    dec.endpoint_set.erase(std::unique(dec.endpoint_set.begin(), dec.endpoint_set.end()),
                           dec.endpoint_set.end());
    return dec;
}

namespace {

ResolvedSet explicit_resolved(const std::vector<double>& pts) {
    ResolvedSet rs;
    for (double p : pts) rs.items.push_back({p, p, ItemKind::point});
    return rs;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t m = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double den = m * sxx - sx * sx;
    if (!(den > 0)) return 0.0;
    return (m * sxy - sx * sy) / den;
}

struct RegularityContext {
    std::vector<int> ks;
    std::vector<EquallySpacedDecomposition> decs;
};

RegularityContext build_context(const DilationSet& set, const EntropyProfile& prof,
                                int dec_depth) {
    RegularityContext ctx;
    ctx.ks = prof.translation_invariant ? std::vector<int>{0} : prof.ks;
    for (int k : ctx.ks)
        ctx.decs.push_back(decompose_convex(set, k, std::ldexp(1.0, k - dec_depth)));
    return ctx;
}

// weighted endpoint norm at truncation depth T:
// max_k ( sum_{j<=T} N(D^{k+j}, 2^k) 2^{-j(d-1)p/p'} omega_j^p )^{1/p}
double endpoint_norm(const RegularityContext& ctx, const EntropyProfile& prof,
                     const Exponents& e, const WeightSequence& w, int T) {
    const double decay = (e.d - 1) * e.p / e.p_conj();
    double best = 0.0;
    for (std::size_t i = 0; i < ctx.ks.size(); ++i) {
        const int k = ctx.ks[i];
        double sum = 0.0;
        std::vector<double> terms;
        for (int j = 0; j <= T; ++j) {
            double N = 1.0;  // empty blocks beyond the window, by convention
            if (prof.translation_invariant) {
                // D^{k+j} at scale 2^k is a scaled copy of D^0 at 2^{-j}
                const auto& D = ctx.decs[0].endpoint_set;
                N = static_cast<double>(entropy_number(
                    explicit_resolved(D), std::ldexp(1.0, ctx.decs[0].k - j)));
            } else if (i + static_cast<std::size_t>(j) < ctx.decs.size()) {
                const auto& D = ctx.decs[i + static_cast<std::size_t>(j)].endpoint_set;
                N = static_cast<double>(
                    entropy_number(explicit_resolved(D), std::ldexp(1.0, k)));
            }
            const double term =
                N * std::exp2(-static_cast<double>(j) * decay) * std::pow(w.omega(j), e.p);
            terms.push_back(term);
            sum += term;
        }
        sum += series_tail_estimate(terms);
        best = std::max(best, std::pow(sum, 1.0 / e.p));
    }
    return best;
}

} // namespace

RegularityReport check_R_p(const DilationSet& set, const EntropyProfile& prof,
                           const Exponents& e, const WeightSequence& w, int dec_depth,
                           const TrendPolicy& policy) {
    RegularityReport rep;
    rep.verdict.condition_id = "r_p";
    RegularityContext ctx = build_context(set, prof, dec_depth);

    // (b) endpoint norm with truncation trend
    const int T = prof.n_max;
    const double v2 = endpoint_norm(ctx, prof, e, w, T / 2);
    const double v3 = endpoint_norm(ctx, prof, e, w, 3 * T / 4);
    const double v4 = endpoint_norm(ctx, prof, e, w, T);
    rep.C0 = v4;

    // (c) smallest C1 with sum_{J in class mu} card(J) <= C1 N(E^k, 2^{k-mu})
    double C1 = 0.0;
    for (const auto& dec : ctx.decs) {
        for (const auto& f : dec.families) {
            if (f.mu < 1) continue;
            const double delta = std::ldexp(1.0, dec.k - f.mu);
            const auto resolved = block(set, dec.k, delta / 4.0);
            const double N = static_cast<double>(entropy_number(resolved, delta));
            const double ratio = static_cast<double>(f.card) / N;
            if (ratio > C1) {
                C1 = ratio;
                rep.worst_mu = f.mu;
            }
        }
    }
    rep.C1 = C1;

    // endpoint entropy growth (deep half)
    {
        std::vector<double> xs, ys;
        const auto& D = ctx.decs.front().endpoint_set;
        const int k0 = ctx.decs.front().k;
        for (int j = std::max(2, dec_depth / 2); j <= dec_depth; ++j) {
            const double N = static_cast<double>(
                entropy_number(explicit_resolved(D), std::ldexp(1.0, k0 - j)));
            xs.push_back(j);
            ys.push_back(std::log2(N));
        }
        rep.endpoint_entropy_slope = fit_slope(xs, ys);
    }

    rep.verdict.truncated_value = v4;
    rep.verdict.trend = (v2 > 0 && v4 > 0) ? std::log(v4 / v2) / std::log(2.0) : 0.0;
    const double s1 = (v2 > 0 && v3 > 0) ? std::log(v3 / v2) / std::log(1.5) : 0.0;
    const double s2 = (v3 > 0 && v4 > 0) ? std::log(v4 / v3) / std::log(4.0 / 3.0) : 0.0;
    if (rep.verdict.trend >= policy.fail_slope)
        rep.verdict.verdict = Verdict::Fails;
    else if (s1 < policy.hold_slope && s2 < policy.hold_slope)
        rep.verdict.verdict = Verdict::Holds;
    else
        rep.verdict.verdict = Verdict::Inconclusive;
    rep.verdict.witness = {ctx.ks.front(), rep.worst_mu, rep.C1};
    return rep;
}

RegularityReport check_R_tilde(const DilationSet& set, const EntropyProfile& prof,
                               const Exponents& e, const WeightSequence& w, int dec_depth,
                               const TrendPolicy& policy) {
    RegularityReport rep;
    rep.verdict.condition_id = "r_tilde";
    (void)w;

    // C1(depth) = max over (k, n) of
    //   [sum_{mu>=n} 2^-mu sum_J card(J)] / [2^-n N(E^k, 2^{k-n})]
    const auto C1_at = [&](int depth, std::int64_t* worst_n) {
        RegularityContext ctx = build_context(set, prof, depth);
        double best = 0.0;
        for (const auto& dec : ctx.decs) {
            // suffix sums over mu of 2^-mu * card
            const auto& fams = dec.families;
            for (int n = 1; n <= depth; ++n) {
                double suffix = 0.0;
                for (const auto& f : fams)
                    if (f.mu >= n)
                        suffix += std::exp2(-static_cast<double>(f.mu)) *
                                  static_cast<double>(f.card);
                if (suffix == 0.0) continue;
                const double delta = std::ldexp(1.0, dec.k - n);
                const double N = static_cast<double>(
                    entropy_number(block(set, dec.k, delta / 4.0), delta));
                const double ratio = suffix / (std::exp2(-static_cast<double>(n)) * N);
                if (ratio > best) {
                    best = ratio;
                    if (worst_n) *worst_n = n;
                }
            }
        }
        return best;
    };

    const int T = dec_depth;
    std::int64_t worst_n = 0;
    const double v2 = C1_at(T / 2, nullptr);
    const double v3 = C1_at(3 * T / 4, nullptr);
    const double v4 = C1_at(T, &worst_n);
    rep.C1 = v4;
    rep.worst_mu = worst_n;

    rep.verdict.truncated_value = v4;
    rep.verdict.trend = (v2 > 0 && v4 > 0) ? std::log(v4 / v2) / std::log(2.0) : 0.0;
    const double s1 = (v2 > 0 && v3 > 0) ? std::log(v3 / v2) / std::log(1.5) : 0.0;
    const double s2 = (v3 > 0 && v4 > 0) ? std::log(v4 / v3) / std::log(4.0 / 3.0) : 0.0;
    if (rep.verdict.trend >= policy.fail_slope)
        rep.verdict.verdict = Verdict::Fails;
    else if (s1 < policy.hold_slope && s2 < policy.hold_slope)
        rep.verdict.verdict = Verdict::Holds;
    else
        rep.verdict.verdict = Verdict::Inconclusive;
    rep.verdict.witness = {prof.translation_invariant ? 0 : prof.ks.front(), worst_n, v4};
    (void)e;
    return rep;
}

} // namespace maximal
