#include <doctest.h>

#include <cmath>

#include "maximal/dilation_set.hpp"
#include "maximal/rng.hpp"

using namespace maximal;

namespace {
// collect all point items (the dense run, if any, is item 0)
std::vector<double> point_values(const ResolvedSet& rs) {
    std::vector<double> out;
    for (const auto& it : rs.items)
        if (it.kind == ItemKind::point) out.push_back(it.lo);
    return out;
}
} // namespace

TEST_CASE("power set block: sparse points and dense run at 2^-8") {
    const auto E1 = make_power_set(1.0);
    const auto rs = block(E1, 0, std::ldexp(1.0, -8));

    // gaps 1/(nu(nu+1)) stay above 2^-8 up to nu = 15; from nu = 16 down the
    // points are packed into one dense run [1, 1 + 1/16]
    REQUIRE(rs.items.size() >= 2);
    CHECK(rs.items.front().kind == ItemKind::dense);
    CHECK(rs.items.front().lo == doctest::Approx(1.0));
    CHECK(rs.items.front().hi == doctest::Approx(1.0 + 1.0 / 16.0));

    const auto pts = point_values(rs);
    REQUIRE(pts.size() == 14);  // nu = 2..15
    CHECK(pts.front() == doctest::Approx(1.0 + 1.0 / 15.0));
    CHECK(pts.back() == doctest::Approx(1.5));
}

TEST_CASE("tail index certification for the power and log generators") {
    const auto E1 = make_power_set(1.0);
    // smallest nu with 1/nu < 2^-10 is 1025
    CHECK(E1.gen.tail_index(std::ldexp(1.0, -10)) == 1025.0);
    for (double rel : {1e-1, 1e-3, 1e-6}) {
        const double nu = E1.gen.tail_index(rel);
        CHECK(E1.gen.offset(nu) < rel);
        CHECK(E1.gen.offset(nu - 1) >= rel);
    }

    const auto L2 = make_log_set(2.0);
    for (double rel : {0.5, 0.2, 0.1}) {
        const double nu = L2.gen.tail_index(rel);
        CHECK(L2.gen.offset(nu) < rel);
        if (nu > L2.gen.nu_min) CHECK(L2.gen.offset(nu - 1) >= rel);
    }
}

TEST_CASE("lacunary block is a single scaled point") {
    const auto lac = make_lacunary_set();
    const auto rs = block(lac, 3, 0.01);
    REQUIRE(rs.items.size() == 1);
    CHECK(rs.items[0].lo == 8.0);
    CHECK(rs.items[0].kind == ItemKind::point);
}

TEST_CASE("middle-halves cells at depth 2") {
    const auto mh = make_middle_halves_set(20);
    // delta chosen so the minimal certified depth is exactly 2
    const auto rs = block(mh, 0, 0.3);
    REQUIRE(rs.items.size() == 4);
    const double w = 1.0 / 16.0;
    CHECK(rs.items[0].lo == doctest::Approx(1.0));
    CHECK(rs.items[0].hi == doctest::Approx(1.0 + w));
    CHECK(rs.items[1].lo == doctest::Approx(1.0 + 3.0 / 16.0));
    CHECK(rs.items[1].hi == doctest::Approx(1.0 + 4.0 / 16.0));
    CHECK(rs.items[2].lo == doctest::Approx(1.0 + 12.0 / 16.0));
    CHECK(rs.items[2].hi == doctest::Approx(1.0 + 13.0 / 16.0));
    CHECK(rs.items[3].lo == doctest::Approx(1.0 + 15.0 / 16.0));
    CHECK(rs.items[3].hi == doctest::Approx(2.0));
}

TEST_CASE("cantor depth cap raises a resolution error") {
    const auto mh = make_middle_halves_set(3);
    CHECK_THROWS_AS(block(mh, 0, 1e-9), ResolutionError);
}

TEST_CASE("explicit blocks use the half-open convention") {
    const auto ex = make_explicit_set({0.5, 1.0, 1.5, 2.0, 3.999});
    const auto b0 = block(ex, 0, 0.01);
    REQUIRE(b0.items.size() == 2);  // 1.0 and 1.5; 2.0 belongs to block 1
    const auto b1 = block(ex, 1, 0.01);
    REQUIRE(b1.items.size() == 2);  // 2.0 and 3.999
    CHECK(b1.items[0].lo == 2.0);
}

TEST_CASE("refinement consistency: coarse union contains the fine one") {
    for (const auto& set : {make_power_set(0.5), make_power_set(2.0), make_log_set(1.0)}) {
        const auto coarse = block(set, 0, std::ldexp(1.0, -6));
        const auto fine = block(set, 0, std::ldexp(1.0, -12));
        // every fine item must lie inside some coarse item
        for (const auto& fi : fine.items) {
            bool inside = false;
            for (const auto& ci : coarse.items)
                if (ci.lo <= fi.lo + 1e-15 && fi.hi <= ci.hi + 1e-15) {
                    inside = true;
                    break;
                }
            if (!inside) {
                // fine sparse points above the coarse dense run must coincide
                // with coarse sparse points
                bool matches = false;
                for (const auto& ci : coarse.items)
                    if (ci.kind == ItemKind::point && ci.lo == fi.lo) matches = true;
                CHECK(matches);
            }
        }
    }
}

TEST_CASE("periodic scaling is bit-exact") {
    for (const auto& set : {make_power_set(1.0), make_middle_third_set(18)}) {
        const double delta = std::ldexp(1.0, -9);
        const auto b0 = block(set, 0, delta);
        const auto b3 = block(set, 3, 8.0 * delta);
        REQUIRE(b0.items.size() == b3.items.size());
        for (std::size_t i = 0; i < b0.items.size(); ++i) {
            CHECK(b3.items[i].lo == 8.0 * b0.items[i].lo);
            CHECK(b3.items[i].hi == 8.0 * b0.items[i].hi);
        }
    }
}

TEST_CASE("block union contains every directly enumerated point") {
    const auto E = make_power_set(1.0);
    const auto rs = block(E, 0, std::ldexp(1.0, -10));
    for (int nu = 2; nu <= 4096; ++nu) {
        const double t = 1.0 + 1.0 / nu;
        bool covered = false;
        for (const auto& it : rs.items)
            if (t >= it.lo - 1e-15 && t <= it.hi + 1e-15) {
                covered = true;
                break;
            }
        CHECK(covered);
    }
}

TEST_CASE("next_above returns exact set points inside the dense run") {
    const auto E = make_power_set(1.0);
    const auto rs = block(E, 0, std::ldexp(1.0, -8));
    REQUIRE(rs.next_above);
    // next point above 1 + 1/40 - epsilon is exactly 1 + 1/40
    const double x = 1.0 + 1.0 / 40.0 - 1e-9;
    CHECK(rs.next_above(x) == doctest::Approx(1.0 + 1.0 / 40.0).epsilon(1e-12));
    // and clearly above 1 + 1/40 it is 1 + 1/39
    CHECK(rs.next_above(1.0 + 1.0 / 40.0 + 1e-9) ==
          doctest::Approx(1.0 + 1.0 / 39.0).epsilon(1e-12));
}

TEST_CASE("descriptor round trip") {
    const auto parsed = set_from_descriptor(
        R"({"type":"cantor","ratio":0.25,"offsets":[0.0,0.75],"depth":12})");
    CHECK(parsed.kind == SetKind::cantor);
    CHECK(parsed.cantor.ratio == 0.25);
    CHECK(parsed.cantor.max_depth == 12);

    const auto lac = set_from_descriptor(R"({"type":"lacunary"})");
    CHECK(lac.periodic);

    const auto expl = set_from_descriptor(R"({"type":"explicit","points":[1.0,1.25,3.0]})");
    CHECK(expl.points.size() == 3);
    CHECK_THROWS(set_from_descriptor(R"({"type":"power","alpha":-1.0})"));
    CHECK_THROWS(set_from_descriptor(R"({"type":"bogus"})"));
}
