// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned here; no external configuration.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "maximal/conditions.hpp"
#include "maximal/counterexamples.hpp"
#include "maximal/dilation_set.hpp"
#include "maximal/entropy.hpp"
#include "maximal/regularity.hpp"
#include "maximal/report.hpp"
#include "maximal/rng.hpp"
#include "maximal/spherical.hpp"
#include "oracles.hpp"

using namespace maximal;
using Clock = std::chrono::steady_clock;

namespace {

const double kInf = std::numeric_limits<double>::infinity();
int g_failures = 0;

struct Criterion {
    int id;
    const char* label;
    double time_budget_s;
    std::function<bool(std::string&)> body;
};

void run(const Criterion& c) {
    std::string detail;
    bool ok = false;
    const auto t0 = Clock::now();
    try {
        ok = c.body(detail);
    } catch (const std::exception& ex) {
        detail = std::string("exception: ") + ex.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs > c.time_budget_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("[%s] criterion %2d: %-34s (%6.1fs)%s%s\n", ok ? "PASS" : "FAIL", c.id,
                c.label, secs, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

bool within(double value, double target, double tol) {
    return std::fabs(value - target) <= tol;
}

// ---------------------------------------------------------------------------

bool crit1_entropy_oracle(std::string& detail) {
    const CounterRng rng(20240601, 1);
    int mismatches = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::uint64_t base = static_cast<std::uint64_t>(trial) * 64;
        const int n = 1 + static_cast<int>(rng.uniform(base) * 12);
        std::vector<double> pts;
        for (int i = 0; i < n; ++i)
            pts.push_back(0.5 + 3.0 * rng.uniform(base + 1 + static_cast<std::uint64_t>(i)));
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const double delta = 0.003 + 1.2 * rng.uniform(base + 40);

        ResolvedSet rs;
        for (double p : pts) rs.items.push_back({p, p, ItemKind::point});
        if (entropy_number(rs, delta) != oracles::min_cover_points(pts, delta)) ++mismatches;
    }
    detail = "mismatches " + std::to_string(mismatches) + "/500";
    return mismatches == 0;
}

bool crit2_critical_exponents(std::string& detail) {
    char buf[256];
    for (int d : {2, 3}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            const auto est = critical_exponent(profile(make_power_set(alpha), d, 20));
            const double target = 1.0 + 1.0 / ((d - 1) * (alpha + 1));
            if (!within(est.p_estimate, target, 0.02)) {
                std::snprintf(buf, sizeof buf, "power alpha=%.1f d=%d: %.4f vs %.4f", alpha,
                              d, est.p_estimate, target);
                detail = buf;
                return false;
            }
        }
        const auto full = critical_exponent(profile(make_full_set(), d, 20));
        if (!within(full.p_estimate, static_cast<double>(d) / (d - 1), 0.02)) {
            detail = "full interval d=" + std::to_string(d);
            return false;
        }
    }
    const auto lac = critical_exponent(profile(make_lacunary_set(), 2, 20));
    if (lac.p_estimate != 1.0) {
        detail = "lacunary p != 1";
        return false;
    }
    return true;
}

bool crit3_cantor_dimension(std::string& detail) {
    const auto set = make_middle_third_set(14);  // depth-14 certification
    const auto prof = profile(set, 2, 18);
    const auto est = critical_exponent(prof);
    const double target = std::log(2.0) / std::log(3.0);
    char buf[128];
    std::snprintf(buf, sizeof buf, "slope %.4f vs %.4f", est.slope_fit, target);
    detail = buf;
    return within(est.slope_fit, target, 0.02);
}

bool crit4_phase_boundary(std::string& detail) {
    const auto prof_e1 = profile(make_power_set(1.0), 2, 24);
    const auto hold = check_Cp_inf(prof_e1, Exponents(2, 1.5, kInf));
    const auto fail = check_Cp_inf(prof_e1, Exponents(2, 1.4, kInf));

    const auto prof_b06 = profile(make_log_set(0.6), 3, 24);
    const auto prof_b05 = profile(make_log_set(0.5), 3, 24);
    const auto h114 = check_logbound(prof_b06, Exponents(3, 1.5, kInf), LogBoundVariant::eq114);
    const auto f114 = check_logbound(prof_b05, Exponents(3, 1.5, kInf), LogBoundVariant::eq114);

    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "cpinf(1.5)=%s cpinf(1.4)=%s eq114(0.6)=%s [s=%.3f] eq114(0.5)=%s [s=%.3f]",
                  to_string(hold.verdict).c_str(), to_string(fail.verdict).c_str(),
                  to_string(h114.verdict).c_str(), h114.trend,
                  to_string(f114.verdict).c_str(), f114.trend);
    detail = buf;
    return hold.verdict == Verdict::Holds && fail.verdict == Verdict::Fails &&
           h114.verdict == Verdict::Holds && f114.verdict == Verdict::Fails;
}

bool crit5_decomposition(std::string& detail) {
    for (double alpha : {0.5, 1.0, 2.0}) {
        const auto set = make_power_set(alpha);

        // (i) exact partition and (ii) spacing with C = 2 at depth 16
        const auto dec = decompose_convex(set, 0, std::ldexp(1.0, -16));
        std::size_t member_total = 0;
        for (std::size_t f = 0; f < dec.families.size(); ++f) {
            if (dec.families[f].synthetic_tail) continue;
            member_total += dec.member_points[f].size();
            if (!is_equally_spaced(dec.member_points[f], dec.families[f].width, 2.0)) {
                detail = "family spacing failed (alpha " + std::to_string(alpha) + ")";
                return false;
            }
        }
        const auto rs = block(set, 0, std::ldexp(1.0, -16));
        std::size_t block_points = 0;
        for (const auto& it : rs.items)
            if (it.kind == ItemKind::point) ++block_points;
        if (member_total != block_points) {
            detail = "partition not exact (alpha " + std::to_string(alpha) + ")";
            return false;
        }

        // (iii) C1 stabilization across depths 12/16/20 within 10%
        const auto prof = profile(set, 2, 20);
        const Exponents e(2, std::min(2.0, 1.0 + 1.0 / (alpha + 1.0) + 0.1), kInf);
        const auto w = make_weights(e.p, 0.2);
        std::vector<double> c10, c11;
        for (int depth : {12, 16, 20}) {
            c10.push_back(check_R_p(set, prof, e, w, depth).C1);
            c11.push_back(check_R_tilde(set, prof, e, w, depth).C1);
        }
        for (const auto& c : {c10, c11}) {
            const double lo = std::min({c[0], c[1], c[2]});
            const double hi = std::max({c[0], c[1], c[2]});
            if (hi > lo * 1.10) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "C1 drift alpha=%.1f: {%.3f, %.3f, %.3f}",
                              alpha, c[0], c[1], c[2]);
                detail = buf;
                return false;
            }
        }

        // (iv) endpoint entropy growth bounded by 1/(1+alpha) + 0.05
        const auto rp = check_R_p(set, prof, e, w, 20);
        if (rp.endpoint_entropy_slope > 1.0 / (1.0 + alpha) + 0.05) {
            detail = "endpoint entropy slope too steep (alpha " + std::to_string(alpha) + ")";
            return false;
        }
    }
    return true;
}

bool crit6_multiplier_decay(std::string& detail) {
    // d = 3: cross-validate the quadrature against sin(rho)/rho to 1e-8
    for (double rho : {16.0, 123.0, 1024.0, 3000.0}) {
        if (std::fabs(sphere_hat(3, rho) - std::sin(rho) / rho) > 1e-8) {
            detail = "closed-form cross-validation failed";
            return false;
        }
    }
    char buf[128];
    for (int d : {2, 3}) {
        const auto rows = multiplier_decay(d, 4, 12);
        double lo = kInf, hi = 0.0;
        for (const auto& r : rows) {
            lo = std::min(lo, r.normalized);
            hi = std::max(hi, r.normalized);
        }
        if (!(hi / lo <= 4.0)) {
            std::snprintf(buf, sizeof buf, "d=%d band ratio %.2f", d, hi / lo);
            detail = buf;
            return false;
        }
        if (d == 2) std::snprintf(buf, sizeof buf, "d=2 band ratio %.2f", hi / lo);
    }
    detail = buf;
    return true;
}

bool crit7_quadrature_fidelity(std::string& detail) {
    // trivial identities to 1e-10
    RadialProfile one;
    one.g = [](double) { return 1.0; };
    for (int d : {2, 3, 4})
        if (std::fabs(spherical_mean_radial(one, d, 1.3, 0.9) - 1.0) > 1e-10) {
            detail = "constant identity failed";
            return false;
        }
    const auto ball = indicator_ball(1.0);
    if (std::fabs(spherical_mean_radial(ball, 3, 0.5, 0.0) - 1.0) > 1e-10 ||
        std::fabs(spherical_mean_radial(ball, 3, 1.5, 0.0)) > 1e-10) {
        detail = "origin step identity failed";
        return false;
    }

    // 20 randomized instances vs the Monte Carlo sphere oracle
    const CounterRng rng(777, 3);
    for (int i = 0; i < 20; ++i) {
        const std::uint64_t b = static_cast<std::uint64_t>(i) * 16;
        const int d = 2 + static_cast<int>(rng.uniform(b) * 3);
        const double t = 0.4 + 1.6 * rng.uniform(b + 1);
        const double r = 0.2 + 2.0 * rng.uniform(b + 2);
        const int kind = static_cast<int>(rng.uniform(b + 3) * 3);
        const double R = 0.3 + 1.5 * rng.uniform(b + 4);

        RadialProfile g;
        std::function<double(double)> plain;
        if (kind == 0) {
            g = indicator_ball(R);
            plain = [R](double u) { return u <= R ? 1.0 : 0.0; };
        } else if (kind == 1) {
            g = radial_exp();
            plain = [](double u) { return std::exp(-u); };
        } else {
            g = radial_step(R * 0.5, R, 2.0);
            plain = [R](double u) { return (u >= 0.5 * R && u <= R) ? 2.0 : 0.0; };
        }
        const auto mc = oracles::mc_spherical_mean(plain, d, t, r, 400000,
                                                   1000 + static_cast<std::uint64_t>(i));
        const double quad = spherical_mean_radial(g, d, t, r);
        if (std::fabs(quad - mc.mean) > 3.0 * (mc.std_error + 1e-8)) {
            char buf[192];
            std::snprintf(buf, sizeof buf, "instance %d (d=%d kind=%d): |%.6g - %.6g| > 3se",
                          i, d, kind, quad, mc.mean);
            detail = buf;
            return false;
        }
    }
    return true;
}

bool crit8_small_ball(std::string& detail) {
    const auto set = make_power_set(1.0);
    const std::vector<double> eps{1e-2, 1e-3, 1e-4};
    const auto low = weak_type_ratio_probe(set, 2, 1.35, eps);
    const auto high = weak_type_ratio_probe(set, 2, 1.65, eps);
    char buf[128];
    std::snprintf(buf, sizeof buf, "slope(p=1.35)=%.4f slope(p=1.65)=%.4f", low.slope,
                  high.slope);
    detail = buf;
    return low.slope > 0.05 && high.slope < 0.02;
}

bool crit9_cantor_counterexample(std::string& detail) {
    std::vector<double> logN, log_fnorm, log_ratio;
    const double a = 1.0 / 16.0;
    for (int N = 2; N <= 6; ++N) {
        const double h = a * std::pow(4.0, -N) / 4.0;
        const auto rep = cantor_counterexample(N, a, h, 20000, 424242);
        logN.push_back(std::log(static_cast<double>(N)));
        log_fnorm.push_back(std::log(rep.f_norm32));
        log_ratio.push_back(std::log(rep.ratio));
    }
    const double s_norm = oracles::fit_slope(logN, log_fnorm);
    const double s_ratio = oracles::fit_slope(logN, log_ratio);
    char buf[128];
    std::snprintf(buf, sizeof buf, "norm slope %.3f (2/3), ratio slope %.3f (1/3)", s_norm,
                  s_ratio);
    detail = buf;
    return within(s_norm, 2.0 / 3.0, 0.1) && within(s_ratio, 1.0 / 3.0, 0.15);
}

bool crit10_besicovitch(std::string& detail) {
    // area certificates
    for (int n : {4, 5, 6}) {
        const auto fam = besicovitch_family(n);
        const auto est = mc_union_area(fam, 8'000'000, 2024);
        const double bound = 8.0 * std::exp2(-2.0 * n) / n;
        if (!(est.value + est.ci99 <= bound)) {
            detail = "area bound failed at n=" + std::to_string(n);
            return false;
        }
    }

    // probe on the full interval: disjoint translates and the ratio scaling
    std::vector<double> logB, logR;
    bool disjoint = true;
    for (int n : {3, 4, 5}) {
        const auto rep = restricted_weak_type_probe(make_full_set(), n, 1.0, 2024);
        if (!rep.applicable) {
            detail = "probe inapplicable on the full set";
            return false;
        }
        disjoint = disjoint && rep.translates_disjoint;
        logB.push_back(std::log(rep.B));
        logR.push_back(std::log(rep.ratio));
    }
    const double slope = oracles::fit_slope(logB, logR);
    char buf[128];
    std::snprintf(buf, sizeof buf, "disjoint=%d ratio-vs-B slope %.3f (target 0.5 +- 0.2)",
                  disjoint ? 1 : 0, slope);
    detail = buf;
    return disjoint && within(slope, 0.5, 0.2);
}

bool crit11_determinism(std::string& detail) {
    RunOptions opt;
    opt.seed = 991;
    opt.with_timing = false;  // timestamps excluded by contract

    std::vector<std::string> dumps;
    for (int threads : {1, 2, 4}) {
        opt.threads = threads;
        Json parts = Json::array();
        parts.push_back(run_analyze(make_power_set(1.0), 2, 16, opt));
        parts.push_back(run_check(make_power_set(1.0), 2, 1.5, kInf, "cpinf", 20, 0.1, 16, opt));
        parts.push_back(run_counterexample_kakeya(make_full_set(), 3, opt));
        parts.push_back(run_counterexample_cantor(3, 1.0 / 16.0, 1e-4, 4000, opt));
        dumps.push_back(parts.dump());
    }
    for (std::size_t i = 1; i < dumps.size(); ++i)
        if (dumps[i] != dumps[0]) {
            detail = "reports differ across thread counts";
            return false;
        }
    detail = "3 thread counts, byte-identical";
    return true;
}

} // namespace

int main() {
    std::printf("acceptance suite (%s)\n", kVersion);
    const std::vector<Criterion> criteria{
        {1, "entropy oracle equivalence", 10, crit1_entropy_oracle},
        {2, "critical exponents", 60, crit2_critical_exponents},
        {3, "cantor dimension", 30, crit3_cantor_dimension},
        {4, "condition phase boundary", 60, crit4_phase_boundary},
        {5, "convex decomposition", 60, crit5_decomposition},
        {6, "multiplier decay", 30, crit6_multiplier_decay},
        {7, "quadrature fidelity", 60, crit7_quadrature_fidelity},
        {8, "small-ball necessity probe", 300, crit8_small_ball},
        {9, "layered counterexample slopes", 600, crit9_cantor_counterexample},
        {10, "thin-rectangle probe", 900, crit10_besicovitch},
        {11, "determinism", 300, crit11_determinism},
    };
    for (const auto& c : criteria) run(c);
    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
