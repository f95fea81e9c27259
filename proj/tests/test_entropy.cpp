#include <doctest.h>

#include <cmath>

#include "maximal/dilation_set.hpp"
#include "maximal/entropy.hpp"
#include "maximal/rng.hpp"
#include "oracles.hpp"

using namespace maximal;

namespace {
ResolvedSet points_resolved(const std::vector<double>& pts) {
    ResolvedSet rs;
    for (double p : pts) rs.items.push_back({p, p, ItemKind::point});
    std::sort(rs.items.begin(), rs.items.end(),
              [](const ResolvedItem& a, const ResolvedItem& b) { return a.lo < b.lo; });
    return rs;
}
} // namespace

TEST_CASE("empty set covers with one interval by convention") {
    CHECK(entropy_number(ResolvedSet{}, 0.5) == 1);
}

TEST_CASE("four spread points need four intervals at delta 0.25") {
    const auto rs = points_resolved({1.0, 1.3, 1.6, 1.9});
    CHECK(entropy_number(rs, 0.25) == 4);
    CHECK(oracles::min_cover_points({1.0, 1.3, 1.6, 1.9}, 0.25) == 4);
}

TEST_CASE("greedy equals brute force on random explicit sets") {
    const CounterRng rng(2024, 7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t base = static_cast<std::uint64_t>(trial) * 64;
        const int n = 1 + static_cast<int>(rng.uniform(base) * 12);
        std::vector<double> pts;
        for (int i = 0; i < n; ++i)
            pts.push_back(1.0 + rng.uniform(base + 1 + static_cast<std::uint64_t>(i)));
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const double delta = 0.01 + 0.6 * rng.uniform(base + 40);
        CHECK(entropy_number(points_resolved(pts), delta) ==
              oracles::min_cover_points(pts, delta));
    }
}

TEST_CASE("resolved power block matches the item-cloud covering oracle") {
    const auto E1 = make_power_set(1.0);
    const auto rs = block(E1, 0, std::ldexp(1.0, -12));
    std::vector<std::pair<double, double>> items;
    for (const auto& it : rs.items) items.push_back({it.lo, it.hi});
    const double delta = std::ldexp(1.0, -6);
    CHECK(entropy_number(rs, delta) == oracles::min_cover_items(items, delta));
}

TEST_CASE("dense-run stepping matches a full materialization sweep") {
    // independent path: enumerate every point of E(1)^0 down to offset 2^-18
    // and cover the raw cloud, tail as one interval
    const double delta = std::ldexp(1.0, -11);
    std::vector<double> pts;
    for (int nu = 2; nu <= (1 << 18); ++nu) pts.push_back(1.0 + 1.0 / nu);
    std::vector<std::pair<double, double>> items;
    items.push_back({1.0, 1.0 + 1.0 / (1 << 18)});
    for (double p : pts) items.push_back({p, p});

    // oracle greedy over raw materialized points (left-anchored sweep)
    std::sort(pts.begin(), pts.end());
    std::int64_t oracle = 1;  // first interval anchored at the limit 1
    double covered = 1.0 + delta;
    for (double p : pts) {
        if (p <= covered) continue;
        ++oracle;
        covered = p + delta;
    }

    const auto E1 = make_power_set(1.0);
    const auto rs = block(E1, 0, delta / 4.0);
    CHECK(entropy_number(rs, delta) == oracle);
}

TEST_CASE("scale covariance and delta monotonicity") {
    const std::vector<double> pts{1.0, 1.07, 1.22, 1.3, 1.55, 1.71, 1.9};
    for (double c : {2.0, 4.0}) {
        std::vector<double> scaled;
        for (double p : pts) scaled.push_back(c * p);
        for (double delta : {0.05, 0.11, 0.4}) {
            CHECK(entropy_number(points_resolved(pts), delta) ==
                  entropy_number(points_resolved(scaled), c * delta));
        }
    }
    std::int64_t prev = 1 << 20;
    for (double delta : {0.02, 0.05, 0.13, 0.29, 0.61}) {
        const auto n = entropy_number(points_resolved(pts), delta);
        CHECK(n <= prev);
        prev = n;
    }
}

TEST_CASE("profile: lacunary is identically one, full interval doubles") {
    const auto lac_prof = profile(make_lacunary_set(), 2, 12);
    for (int n = 0; n <= 12; ++n) CHECK(lac_prof.at(0, n) == 1);

    const auto full_prof = profile(make_full_set(), 2, 12);
    for (int n = 0; n <= 12; ++n) {
        const auto N = full_prof.at(0, n);
        CHECK(std::llabs(N - (1LL << n)) <= 1);
    }
}

TEST_CASE("profile monotonicity in n") {
    for (const auto& set :
         {make_power_set(0.5), make_power_set(1.0), make_log_set(2.0), make_full_set()}) {
        const auto prof = profile(set, 2, 14);
        for (int n = 0; n < 14; ++n) {
            const auto a = prof.at(0, n), b = prof.at(0, n + 1);
            CHECK(a <= b);
            CHECK(b <= 2 * a + 1);
            CHECK(b <= (1LL << (n + 1)) + 1);
        }
    }
}

TEST_CASE("power profile approaches the expected growth exponent") {
    const auto prof = profile(make_power_set(1.0), 2, 16);
    const double ratio = std::log2(static_cast<double>(prof.at(0, 16))) / 16.0;
    CHECK(ratio == doctest::Approx(0.5).epsilon(0.12));
    const auto est = critical_exponent(prof);
    CHECK(est.slope_fit == doctest::Approx(0.5).epsilon(0.04));
}

TEST_CASE("critical exponents: lacunary, full, power") {
    const auto lac = critical_exponent(profile(make_lacunary_set(), 2, 16));
    CHECK(lac.p_estimate == 1.0);
    CHECK(lac.converged);

    const auto full3 = critical_exponent(profile(make_full_set(), 3, 16));
    CHECK(full3.p_estimate == doctest::Approx(1.5).epsilon(0.0001));

    const auto e1 = critical_exponent(profile(make_power_set(1.0), 2, 20));
    CHECK(e1.p_estimate == doctest::Approx(1.5).epsilon(0.014));
}

TEST_CASE("entropy errors below the certified resolution") {
    const auto rs = block(make_middle_third_set(18), 0, std::ldexp(1.0, -8));
    CHECK_THROWS_AS(entropy_number(rs, std::ldexp(1.0, -12)), ResolutionError);
}
