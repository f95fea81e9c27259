// Evaluators for the endpoint conditions on entropy profiles: the summed
// condition (C_{p,q}), its q=inf limiting sup form (C_{p,inf}), the weighted
// block-sum hypothesis behind the general L^p bound, the discrete Carleson
// tent condition at p_d = d/(d-1), and the two logarithmic endpoint bounds.
//
// All conditions are asymptotic statements; finite sweeps decide them with an
// explicit trend policy.  Values are computed at truncation depths T/2, 3T/4
// and T.  Fails requires log-log growth slope >= fail_slope over the last
// doubling; Holds requires both half-steps to have slope below hold_slope.
// The two log-bound variants instead classify the fitted power-law exponent
// of N * 2^-n * (n log 2)^(1/(d-1)) in log n, since their known log-log
// correction factors would otherwise dominate any reachable truncation depth.

#ifndef MAXIMAL_CONDITIONS_HPP
#define MAXIMAL_CONDITIONS_HPP

#include <cstdint>
#include <functional>
#include <string>

#include "maximal/entropy.hpp"

namespace maximal {

struct Exponents {
    int d;
    double p;
    double q;  // may be +inf

    double p_conj() const { return p / (p - 1.0); }
    double p_d() const { return static_cast<double>(d) / (d - 1); }

    Exponents(int d, double p, double q);
};

// omega_j = (Z_eps * (1+j)^(1+eps))^(1/p'), Z_eps = zeta(1+eps), so that
// sum_j omega_j^(-p') = 1 exactly in the limit.
struct WeightSequence {
    double eps = 0.1;
    double p_conj = 2.0;
    double zeta_value = 0.0;  // zeta(1+eps)
    double partial_check = 0.0;  // certified partial sum + tail bound of sum omega^-p'

    double omega(std::int64_t j) const;
};

WeightSequence make_weights(double p, double eps);

enum class Verdict { Holds, Fails, Inconclusive };

std::string to_string(Verdict v);

struct Witness {
    std::int64_t k = 0;
    std::int64_t n = 0;
    double term = 0.0;
};

struct ConditionVerdict {
    std::string condition_id;
    double truncated_value = 0.0;
    double trend = 0.0;  // log-log slope of the value over the last doubling of depth
    Verdict verdict = Verdict::Inconclusive;
    Witness witness;
};

struct TrendPolicy {
    double fail_slope = 0.1;
    double hold_slope = 0.05;
    // log-bound variants: fitted exponent bands (Holds below, Fails above)
    double logbound_hold = 0.04;
    double logbound_fail = 0.06;
    double loglog_hold = -0.055;
    double loglog_fail = -0.045;
};

// (C_{p,q}), q < inf: sup_j ( sum_n N(E^{j+n}, 2^j)^{q/p} 2^{-n(d-1)q/p'} )^{1/q}
ConditionVerdict check_Cpq(const EntropyProfile& prof, const Exponents& e,
                           const TrendPolicy& policy = {});

// (C_{p,inf}): sup_{k,n} N(E^k, 2^{k-n})^{1/p} 2^{-n(d-1)/p'}
ConditionVerdict check_Cp_inf(const EntropyProfile& prof, const Exponents& e,
                              const TrendPolicy& policy = {});

// A_0^p = sup_k sum_j omega_j^p N(E^{k+j}, 2^k) 2^{-j(d-1)p/p'}; reports A_0
ConditionVerdict check_prop12(const EntropyProfile& prof, const Exponents& e,
                              const WeightSequence& w, const TrendPolicy& policy = {});

// Carleson tent sums: sup over dyadic interval lengths |I| <= L_max (all
// positions in the window) of |I|^-1 sum_{k in I} sum_{1<=n<=|I|}
// N(E^k, 2^{k-n}) 2^{-n} n^{1/(d-1)}
ConditionVerdict check_carleson(const EntropyProfile& prof, const Exponents& e,
                                int L_max, const TrendPolicy& policy = {});

enum class LogBoundVariant { eq113, eq114 };

// Tail of a truncated positive series, estimated from the decay of its last
// terms: geometric when the ratios stay clearly below one, power-law
// extrapolation when the terms decay like n^-s with s > 1, zero otherwise.
double series_tail_estimate(const std::vector<double>& terms);

// eq113: sup_{k, n>=4} N(E^k, 2^{k-n}) 2^{-n} (n log 2)^{1/(d-1)}
// eq114: the same times log(n log 2)
ConditionVerdict check_logbound(const EntropyProfile& prof, const Exponents& e,
                                LogBoundVariant variant, const TrendPolicy& policy = {});

} // namespace maximal

#endif
