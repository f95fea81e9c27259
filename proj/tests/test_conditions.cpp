#include <doctest.h>

#include <cmath>
#include <limits>

#include "maximal/conditions.hpp"
#include "maximal/dilation_set.hpp"

using namespace maximal;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const double kPi = 3.14159265358979323846264338327950288;
} // namespace

TEST_CASE("weights: zeta(2) normalization and closed forms") {
    const auto w = make_weights(1.5, 1.0);  // p' = 3
    CHECK(w.zeta_value == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-9));
    CHECK(w.partial_check == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(w.omega(0) == doctest::Approx(std::pow(w.zeta_value, 1.0 / 3.0)).epsilon(1e-12));
    // omega_j = (Z (1+j)^2)^(1/3)
    CHECK(w.omega(4) ==
          doctest::Approx(std::pow(w.zeta_value * 25.0, 1.0 / 3.0)).epsilon(1e-12));
    CHECK_THROWS(make_weights(1.5, 0.0));
}

TEST_CASE("weights certify for a sweep of (p, eps)") {
    for (double p : {1.2, 1.5, 1.9})
        for (double eps : {0.5, 0.2, 0.1, 0.05}) {
            const auto w = make_weights(p, eps);
            CHECK(w.partial_check <= 1.0 + 1e-9);
            CHECK(w.partial_check > 0.98);
        }
}

TEST_CASE("cpq: lacunary holds with the geometric closed form") {
    const auto prof = profile(make_lacunary_set(), 2, 24);
    const Exponents e(2, 1.5, 1.5);
    const auto v = check_Cpq(prof, e);
    CHECK(v.verdict == Verdict::Holds);
    // sum_n 2^{-n(d-1)q/p'} = 1/(1 - 2^{-q(d-1)/p'}), here q/p' = 1.5/3 = 0.5
    const double expected = std::pow(1.0 / (1.0 - std::exp2(-0.5)), 1.0 / 1.5);
    CHECK(v.truncated_value == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("cpq: full interval fails at p = q = 1.4, d = 2") {
    const auto prof = profile(make_full_set(), 2, 24);
    const auto v = check_Cpq(prof, Exponents(2, 1.4, 1.4));
    CHECK(v.verdict == Verdict::Fails);
    CHECK(v.trend > 0.1);
}

TEST_CASE("cpq: power set diverges at the critical p = q (weak type only)") {
    const auto prof = profile(make_power_set(1.0), 2, 24);
    const auto v = check_Cpq(prof, Exponents(2, 1.5, 1.5));
    CHECK(v.verdict == Verdict::Fails);  // terms are bounded below, partial sums grow
}

TEST_CASE("cpinf: lacunary sup is exactly one") {
    const auto prof = profile(make_lacunary_set(), 2, 20);
    const auto v = check_Cp_inf(prof, Exponents(2, 1.5, kInf));
    CHECK(v.verdict == Verdict::Holds);
    CHECK(v.truncated_value == doctest::Approx(1.0));
}

TEST_CASE("cpinf phase boundary for the power set") {
    const auto prof = profile(make_power_set(1.0), 2, 24);
    CHECK(check_Cp_inf(prof, Exponents(2, 1.5, kInf)).verdict == Verdict::Holds);
    CHECK(check_Cp_inf(prof, Exponents(2, 1.45, kInf)).verdict == Verdict::Fails);
    CHECK(check_Cp_inf(prof, Exponents(2, 1.4, kInf)).verdict == Verdict::Fails);
}

TEST_CASE("cpinf is the large-q limit of cpq") {
    const auto prof = profile(make_power_set(1.0), 2, 20);
    const Exponents einf(2, 1.6, kInf);
    const double sup = check_Cp_inf(prof, einf).truncated_value;
    double prev_gap = kInf;
    for (double q : {8.0, 16.0, 32.0}) {
        const double vq = check_Cpq(prof, Exponents(2, 1.6, q)).truncated_value;
        const double gap = std::fabs(vq - sup) / sup;
        CHECK(gap < 0.35);
        CHECK(gap <= prev_gap + 1e-12);
        prev_gap = gap;
    }
    const double v32 = check_Cpq(prof, Exponents(2, 1.6, 32.0)).truncated_value;
    CHECK(std::fabs(v32 - sup) / sup < 0.1);
}

TEST_CASE("cpq value is monotone decreasing in q on truncated data") {
    const auto prof = profile(make_power_set(1.0), 2, 16);
    double prev = kInf;
    for (double q : {1.55, 2.0, 4.0, 8.0, 16.0}) {
        const double v = check_Cpq(prof, Exponents(2, 1.55, q)).truncated_value;
        CHECK(v <= prev * (1.0 + 1e-9));
        prev = v;
    }
}

TEST_CASE("prop12: lacunary converges, full interval diverges below p_d") {
    const auto w = make_weights(1.4, 0.1);
    const auto lac = profile(make_lacunary_set(), 2, 24);
    CHECK(check_prop12(lac, Exponents(2, 1.4, kInf), w).verdict == Verdict::Holds);

    const auto full = profile(make_full_set(), 2, 24);
    CHECK(check_prop12(full, Exponents(2, 1.4, kInf), w).verdict == Verdict::Fails);
}

TEST_CASE("prop12 with flat profile reduces to the pure weight series") {
    const auto prof = profile(make_lacunary_set(), 3, 24);
    const double p = 1.5, eps = 0.5;
    const auto w = make_weights(p, eps);
    const auto v = check_prop12(prof, Exponents(3, p, kInf), w);
    // A_0^p = sum_j omega_j^p 2^{-j(d-1)(p-1)}
    double direct = 0.0;
    for (int j = 0; j < 400; ++j)
        direct += std::pow(w.omega(j), p) * std::exp2(-j * (3 - 1) * (p - 1.0));
    CHECK(v.truncated_value == doctest::Approx(std::pow(direct, 1.0 / p)).epsilon(1e-6));
}

TEST_CASE("prop12: power set above its critical exponent") {
    const auto prof = profile(make_power_set(1.0), 2, 24);
    const double pc = 1.5;
    // comfortably above the threshold the weighted sums converge in view
    const auto w_hi = make_weights(pc + 0.2, 0.1);
    CHECK(check_prop12(prof, Exponents(2, pc + 0.2, kInf), w_hi).verdict == Verdict::Holds);
    // below it they grow geometrically
    const auto w_lo = make_weights(pc - 0.1, 0.1);
    CHECK(check_prop12(prof, Exponents(2, pc - 0.1, kInf), w_lo).verdict == Verdict::Fails);
    // at the critical exponent itself the admissible weights' polynomial
    // growth makes the sum diverge; the verdict must not claim Holds
    const auto w_c = make_weights(pc, 0.05);
    CHECK(check_prop12(prof, Exponents(2, pc, kInf), w_c).verdict != Verdict::Holds);
}

TEST_CASE("carleson: lacunary and log sets hold, full interval fails (d = 3)") {
    const Exponents e(3, 1.5, kInf);
    const auto lac = profile(make_lacunary_set(), 3, 32);
    CHECK(check_carleson(lac, e, 32).verdict == Verdict::Holds);

    const auto full = profile(make_full_set(), 3, 32);
    const auto vf = check_carleson(full, e, 32);
    CHECK(vf.verdict == Verdict::Fails);

    const auto logset = profile(make_log_set(2.0), 3, 32);
    CHECK(check_carleson(logset, e, 32).verdict == Verdict::Holds);
}

TEST_CASE("log bounds: lacunary holds both variants") {
    const auto prof = profile(make_lacunary_set(), 3, 24);
    const Exponents e(3, 1.5, kInf);
    CHECK(check_logbound(prof, e, LogBoundVariant::eq113).verdict == Verdict::Holds);
    CHECK(check_logbound(prof, e, LogBoundVariant::eq114).verdict == Verdict::Holds);
}

TEST_CASE("verdicts are deterministic under reruns") {
    const auto prof = profile(make_power_set(1.0), 2, 18);
    const Exponents e(2, 1.5, kInf);
    const auto a = check_Cp_inf(prof, e);
    const auto b = check_Cp_inf(prof, e);
    CHECK(a.truncated_value == b.truncated_value);
    CHECK(a.trend == b.trend);
    CHECK(to_string(a.verdict) == to_string(b.verdict));
}

TEST_CASE("exponent construction validates its domain") {
    CHECK_THROWS(Exponents(1, 1.5, kInf));
    CHECK_THROWS(Exponents(2, 1.0, kInf));
    CHECK_THROWS(Exponents(2, 1.5, 1.2));
    const Exponents e(2, 1.5, kInf);
    CHECK(e.p_conj() == doctest::Approx(3.0));
    CHECK(e.p_d() == doctest::Approx(2.0));
}
