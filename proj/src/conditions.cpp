#include "maximal/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace maximal {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Exponents::Exponents(int d, double p, double q) : d(d), p(p), q(q) {
    if (d < 2) throw std::invalid_argument("dimension must be >= 2");
    if (!(p > 1.0) || !(p <= 2.0)) throw std::invalid_argument("p must lie in (1, 2]");
    if (!(q >= p)) throw std::invalid_argument("q must satisfy q >= p");
}

double WeightSequence::omega(std::int64_t j) const {
    return std::pow(zeta_value * std::pow(1.0 + static_cast<double>(j), 1.0 + eps),
                    1.0 / p_conj);
}

WeightSequence make_weights(double p, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("make_weights needs eps > 0");
    if (!(p > 1.0)) throw std::invalid_argument("make_weights needs p > 1");

    // zeta(1+eps) by Euler-Maclaurin
    const double s = 1.0 + eps;
    const std::int64_t M = 100000;
    double z = 0.0;
    for (std::int64_t m = M; m >= 1; --m) z += std::pow(static_cast<double>(m), -s);
    const double Md = static_cast<double>(M);
    z += std::pow(Md, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(Md, -s) +
         s / 12.0 * std::pow(Md, -s - 1.0);

    WeightSequence w;
    w.eps = eps;
    w.p_conj = p / (p - 1.0);
    w.zeta_value = z;

    // certify sum omega_j^-p' = (1/z) * zeta(1+eps): partial sum plus an
    // Euler-Maclaurin tail bound (alternating remainder), must not exceed 1 + 1e-9
    double partial = 0.0;
    const std::int64_t J = 100000;
    for (std::int64_t j = J - 1; j >= 0; --j)
        partial += 1.0 / (z * std::pow(1.0 + static_cast<double>(j), s));
    const double Jd = static_cast<double>(J);
    const double tail = std::pow(Jd, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(Jd, -s) +
                        s / 12.0 * std::pow(Jd, -s - 1.0);
    partial += tail / z;
    w.partial_check = partial;
    if (!(partial <= 1.0 + 1e-9))
        throw std::runtime_error("weight normalization failed certification");
    return w;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "Holds";
        case Verdict::Fails: return "Fails";
        default: return "Inconclusive";
    }
}

double series_tail_estimate(const std::vector<double>& terms) {
    const std::size_t m = terms.size();
    if (m < 6) return 0.0;
    for (std::size_t i = m - 4; i < m; ++i)
        if (!(terms[i] > 0) || !(terms[i] < terms[i - 1])) return 0.0;

    const double rho = std::max(terms[m - 1] / terms[m - 2], terms[m - 2] / terms[m - 3]);
    if (rho < 0.9) return terms[m - 1] * rho / (1.0 - rho);

    // power-law: decay exponent from the last doubling of the index
    const std::size_t half = m / 2;
    if (!(terms[half] > 0)) return 0.0;
    const double s = -std::log(terms[m - 1] / terms[half]) /
                     std::log(static_cast<double>(m - 1) / static_cast<double>(half));
    if (s > 1.1) return terms[m - 1] * static_cast<double>(m - 1) / (s - 1.0);
    return 0.0;  // not summable (or undecidable): leave the partial sum bare
}

namespace {

double loglog_slope(double v_from, double v_to, double t_from, double t_to) {
    if (!(v_from > 0) || !(v_to > 0)) return 0.0;
    return std::log(v_to / v_from) / std::log(t_to / t_from);
}

// Classify a truncated value evaluated at depths T/2, 3T/4, T.
void classify(ConditionVerdict& out, double v_half, double v_three_quarter, double v_full,
              double t_half, double t_three_quarter, double t_full, const TrendPolicy& policy) {
    out.truncated_value = v_full;
    out.trend = loglog_slope(v_half, v_full, t_half, t_full);
    if (v_full <= 0) {
        out.verdict = Verdict::Holds;
        return;
    }
    if (out.trend >= policy.fail_slope) {
        out.verdict = Verdict::Fails;
        return;
    }
    const double s1 = loglog_slope(v_half, v_three_quarter, t_half, t_three_quarter);
    const double s2 = loglog_slope(v_three_quarter, v_full, t_three_quarter, t_full);
    if (s1 < policy.hold_slope && s2 < policy.hold_slope)
        out.verdict = Verdict::Holds;
    else
        out.verdict = Verdict::Inconclusive;
}

std::vector<int> scale_indices(const EntropyProfile& prof) {
    if (prof.translation_invariant) return {0};
    std::vector<int> js = prof.ks;
    return js;
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

} // namespace

ConditionVerdict check_Cpq(const EntropyProfile& prof, const Exponents& e,
                           const TrendPolicy& policy) {
    if (!(e.q < kInf)) throw std::invalid_argument("check_Cpq needs q < inf; use check_Cp_inf");
    ConditionVerdict out;
    out.condition_id = "cpq";

    const double qp = e.q / e.p;
    const double decay = (e.d - 1) * e.q / e.p_conj();
    const int T = prof.n_max;

    const auto value_at = [&](int depth, Witness* wit) {
        double best = 0.0;
        for (int j : scale_indices(prof)) {
            std::vector<double> terms;
            double sum = 0.0;
            double top_term = 0.0;
            std::int64_t top_n = 0;
            for (int n = 0; n <= depth; ++n) {
                const int kb = j + n;
                if (!prof.translation_invariant && !prof.has_block(kb)) break;
                const double N = static_cast<double>(
                    prof.translation_invariant ? prof.at(0, n) : prof.at(kb, n));
                const double term = std::pow(N, qp) * std::exp2(-static_cast<double>(n) * decay);
                terms.push_back(term);
                sum += term;
                if (term > top_term) {
                    top_term = term;
                    top_n = n;
                }
            }
            sum += series_tail_estimate(terms);
            const double v = std::pow(sum, 1.0 / e.q);
            if (v > best) {
                best = v;
                if (wit) *wit = {j, top_n, top_term};
            }
        }
        return best;
    };

    const double v2 = value_at(T / 2, nullptr);
    const double v3 = value_at(3 * T / 4, nullptr);
    const double v4 = value_at(T, &out.witness);
    classify(out, v2, v3, v4, T / 2.0, 3.0 * T / 4.0, static_cast<double>(T), policy);
    return out;
}

ConditionVerdict check_Cp_inf(const EntropyProfile& prof, const Exponents& e,
                              const TrendPolicy& policy) {
    ConditionVerdict out;
    out.condition_id = "cpinf";

    const double decay = (e.d - 1) / e.p_conj();
    const int T = prof.n_max;

    const auto sup_at = [&](int depth, Witness* wit) {
        double best = 0.0;
        for (std::size_t ki = 0; ki < prof.table.size(); ++ki) {
            for (int n = 0; n <= depth; ++n) {
                const double N = static_cast<double>(prof.table[ki][static_cast<std::size_t>(n)]);
                const double term =
                    std::pow(N, 1.0 / e.p) * std::exp2(-static_cast<double>(n) * decay);
                if (term > best) {
                    best = term;
                    if (wit) *wit = {prof.ks[ki], n, term};
                }
            }
        }
        return best;
    };

    const double v2 = sup_at(T / 2, nullptr);
    const double v3 = sup_at(3 * T / 4, nullptr);
    const double v4 = sup_at(T, &out.witness);
    classify(out, v2, v3, v4, T / 2.0, 3.0 * T / 4.0, static_cast<double>(T), policy);
    return out;
}

ConditionVerdict check_prop12(const EntropyProfile& prof, const Exponents& e,
                              const WeightSequence& w, const TrendPolicy& policy) {
    ConditionVerdict out;
    out.condition_id = "prop12";

    const double decay = (e.d - 1) * e.p / e.p_conj();  // = (d-1)(p-1)
    const int T = prof.n_max;

    const auto value_at = [&](int depth, Witness* wit) {
        double best = 0.0;
        for (int k : scale_indices(prof)) {
            std::vector<double> terms;
            double sum = 0.0;
            double top_term = 0.0;
            std::int64_t top_j = 0;
            for (int j = 0; j <= depth; ++j) {
                const int kb = k + j;
                if (!prof.translation_invariant && !prof.has_block(kb)) break;
                const double N = static_cast<double>(
                    prof.translation_invariant ? prof.at(0, j) : prof.at(kb, j));
                const double term = std::pow(w.omega(j), e.p) * N *
                                    std::exp2(-static_cast<double>(j) * decay);
                terms.push_back(term);
                sum += term;
                if (term > top_term) {
                    top_term = term;
                    top_j = j;
                }
            }
            sum += series_tail_estimate(terms);
            const double v = std::pow(sum, 1.0 / e.p);  // A_0
            if (v > best) {
                best = v;
                if (wit) *wit = {k, top_j, top_term};
            }
        }
        return best;
    };

    const double v2 = value_at(T / 2, nullptr);
    const double v3 = value_at(3 * T / 4, nullptr);
    const double v4 = value_at(T, &out.witness);
    classify(out, v2, v3, v4, T / 2.0, 3.0 * T / 4.0, static_cast<double>(T), policy);
    return out;
}

ConditionVerdict check_carleson(const EntropyProfile& prof, const Exponents& e, int L_max,
                                const TrendPolicy& policy) {
    ConditionVerdict out;
    out.condition_id = "carleson";
    if (L_max > prof.n_max)
        throw std::invalid_argument("carleson needs n_max >= L_max in the profile");

    const double ex = 1.0 / (e.d - 1);

    // per-block inner sums g_k(L) = sum_{1<=n<=L} N(E^k, 2^{k-n}) 2^{-n} n^{1/(d-1)}
    const auto value_at = [&](int Lcap, Witness* wit) {
        double best = 0.0;
        for (int L = 1; L <= Lcap; L *= 2) {
            if (prof.translation_invariant) {
                std::vector<double> terms;
                double g = 0.0;
                for (int n = 1; n <= L; ++n) {
                    const double term = static_cast<double>(prof.at(0, n)) *
                                        std::exp2(-static_cast<double>(n)) * std::pow(n, ex);
                    terms.push_back(term);
                    g += term;
                }
                g += series_tail_estimate(terms);
                if (g > best) {
                    best = g;
                    if (wit) *wit = {0, L, g};
                }
            } else {
                const int K = static_cast<int>(prof.ks.size());
                for (int pos = 0; pos + 1 <= K; ++pos) {
                    double sum = 0.0;
                    for (int i = pos; i < std::min(K, pos + L); ++i)
                        for (int n = 1; n <= L; ++n)
                            sum += static_cast<double>(
                                       prof.table[static_cast<std::size_t>(i)]
                                                 [static_cast<std::size_t>(n)]) *
                                   std::exp2(-static_cast<double>(n)) * std::pow(n, ex);
                    const double v = sum / L;
                    if (v > best) {
                        best = v;
                        if (wit) *wit = {prof.ks[static_cast<std::size_t>(pos)], L, v};
                    }
                }
            }
        }
        return best;
    };

    // truncation depths stay on powers of two so every leg gains content
    const double v2 = value_at(std::max(1, L_max / 4), nullptr);
    const double v3 = value_at(std::max(1, L_max / 2), nullptr);
    const double v4 = value_at(L_max, &out.witness);
    classify(out, v2, v3, v4, std::max(1.0, L_max / 4.0), std::max(1.0, L_max / 2.0),
             static_cast<double>(L_max), policy);
    return out;
}

ConditionVerdict check_logbound(const EntropyProfile& prof, const Exponents& e,
                                LogBoundVariant variant, const TrendPolicy& policy) {
    ConditionVerdict out;
    out.condition_id = variant == LogBoundVariant::eq113 ? "eq113" : "eq114";

    const double ex = 1.0 / (e.d - 1);
    const int T = prof.n_max;
    const int n_lo = std::max(4, (T + 1) / 2);

    // base quantity W(n) = max_k N(E^k, 2^{k-n}) 2^{-n} (n log 2)^{1/(d-1)}
    const auto W = [&](int n, Witness* wit) {
        double best = 0.0;
        for (std::size_t ki = 0; ki < prof.table.size(); ++ki) {
            const double N = static_cast<double>(prof.table[ki][static_cast<std::size_t>(n)]);
            const double v =
                N * std::exp2(-static_cast<double>(n)) * std::pow(n * std::log(2.0), ex);
            if (v > best) {
                best = v;
                if (wit) *wit = {prof.ks[ki], n, v};
            }
        }
        return best;
    };

    // reported value: the running sup of the variant's own quantity
    double sup = 0.0;
    for (int n = 4; n <= T; ++n) {
        Witness tmp;
        double v = W(n, &tmp);
        if (variant == LogBoundVariant::eq114) v *= std::log(n * std::log(2.0));
        if (v > sup) {
            sup = v;
            out.witness = tmp;
            out.witness.term = v;
        }
    }
    out.truncated_value = sup;

    // verdict: fitted power-law exponent s of W(n) in log n over the deep half.
    // W ~ n^s: eq113 holds iff s <~ 0; eq114 = W * loglog holds iff s < 0
    // strictly (a flat W makes the loglog factor drift to infinity).
    std::vector<double> xs, ys;
    for (int n = std::min(n_lo, T); n <= T; ++n) {
        const double w = W(n, nullptr);
        if (w > 0) {
            xs.push_back(std::log(n * std::log(2.0)));
            ys.push_back(std::log(w));
        }
    }
    const double s = (xs.size() >= 3) ? fit_slope(xs, ys) : 0.0;
    out.trend = s;

    const double hold = variant == LogBoundVariant::eq113 ? policy.logbound_hold : policy.loglog_hold;
    const double fail = variant == LogBoundVariant::eq113 ? policy.logbound_fail : policy.loglog_fail;
    if (s <= hold)
        out.verdict = Verdict::Holds;
    else if (s >= fail)
        out.verdict = Verdict::Fails;
    else
        out.verdict = Verdict::Inconclusive;
    return out;
}

} // namespace maximal
