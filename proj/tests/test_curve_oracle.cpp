#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "dfo/curve_oracle.hpp"
#include "dfo/reference.hpp"
#include "support.hpp"

using namespace dfo;

namespace {

const Curve kLine{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
const Curve kZigzag{{0, 0}, {1, 2}, {2, -1}, {3, 3}, {4, 0}, {5, 2}, {6, -2}, {7, 1}, {8, 0}, {9, 3}, {10, 1}, {11, -1}};

struct Case {
    Curve p, q;
    std::size_t lo, hi;
    bool reversed;
};

Case random_case(std::mt19937_64& rng, std::size_t k, std::size_t max_n) {
    Case c;
    const std::size_t n = 1 + rng() % max_n;
    const bool grid = rng() % 2;
    c.p = grid ? test::grid_curve(n, rng, 4) : test::uniform_curve(n, rng);
    for (std::size_t i = 0; i < k; ++i) {
        if (rng() % 3 == 0) c.q.push_back(c.p[rng() % n]);
        else if (grid) c.q.push_back({static_cast<double>(rng() % 7) * 0.5, static_cast<double>(rng() % 7) * 0.5});
        else c.q.push_back(test::uniform_curve(1, rng)[0]);
    }
    c.lo = rng() % n;
    c.hi = rng() % n;
    if (c.lo > c.hi) std::swap(c.lo, c.hi);
    c.reversed = rng() % 2;
    return c;
}

}  // namespace

TEST_CASE("build") {
    CHECK_THROWS_AS(CurveOracle(Curve{}), Error);
    const CurveOracle one(Curve{{1, 1}});
    for (std::size_t k = 1; k <= 4; ++k) {
        const Curve q(k, Point{4, 5});
        CHECK(one.query(one.full(), q) == 5.0);
    }
    std::mt19937_64 rng(1);
    const CurveOracle big(test::uniform_curve(512, rng), 3);
    std::size_t stored = 0;
    for (const auto& nd : big.range_tree().nodes()) stored += nd.far.hull_size() + nd.near.size();
    CHECK(static_cast<double>(stored) <= 2 * 512 * std::log2(512.0));
}

TEST_CASE("k = 1") {
    const CurveOracle o(Curve{{0, 0}, {3, 0}});
    CHECK(o.query_k1(o.full(), {0, 0}) == 3.0);
    const CurveOracle z(kZigzag);
    CHECK(z.query_k1({4, 4}, {0, 0}) == 4.0);
    CHECK(z.query(z.full(), Curve{{0, 0}}) == 11.045361017187261);
    CHECK_THROWS_AS(z.query_k1({5, 4}, {0, 0}), Error);
    CHECK_THROWS_AS(z.query_k1({0, 12}, {0, 0}), Error);
}

TEST_CASE("k = 2") {
    const CurveOracle o(kLine);
    CHECK(o.decide_k2(o.full(), {0, 0}, {3, 0}, 1.0));
    CHECK_FALSE(o.decide_k2(o.full(), {0, 0}, {3, 0}, 0.999));
    CHECK_FALSE(o.decide_k2(o.full(), {0, 5}, {3, 0}, 4.9));
    CHECK(o.query_k2(o.full(), {0, 0}, {3, 0}) == 1.0);
    const CurveOracle seg(Curve{{0, 0}, {10, 0}});
    CHECK(seg.query_k2(seg.full(), {0, 0}, {10, 0}) == 0.0);
    CHECK(o.query_k2({2, 2}, {0, 0}, {3, 0}) == 2.0);
    const CurveOracle z(kZigzag);
    CHECK(z.query(z.full(), Curve{{0, 0}, {11, -1}}) == 5.385164807134504);
}

TEST_CASE("k = 3") {
    const CurveOracle tri(Curve{{0, 0}, {1, 1}, {2, 0}});
    CHECK(tri.feasibility_k3(tri.full(), {0, 0}, {1, 1}, {2, 0}, 0.0).feasible);
    CHECK(tri.query_k3(tri.full(), {0, 0}, {1, 1}, {2, 0}) == 0.0);
    const CurveOracle seg(Curve{{0, 0}, {4, 0}});
    CHECK(seg.query_k3(seg.full(), {0, 0}, {2, 1}, {4, 0}) == 2.23606797749979);
    const CurveOracle z(kZigzag);
    const Curve q{{0, 1}, {5, 5}, {11, 0}};
    const double d = z.query(z.full(), q);
    CHECK(d == 5.385164807134504);
    CHECK(z.decide_k3(z.full(), q[0], q[1], q[2], d));
    CHECK_FALSE(z.decide_k3(z.full(), q[0], q[1], q[2], std::nextafter(d, 0.0)));
    // Forward subrange p_3..p_9 and its reverse.
    CHECK(z.query({2, 8}, Curve{{2, 0}, {5, 1}, {8, 1}}) == 3.1622776601683795);
    CHECK(z.query({2, 8, true}, Curve{{8, 1}, {5, 1}, {2, 0}}) == 3.1622776601683795);
    const auto f = z.feasibility_k3(z.full(), q[0], q[1], q[2], d);
    REQUIRE(f.prefix_end);
    REQUIRE(f.suffix_begin);
    CHECK(*f.prefix_end < z.size());
    CHECK(*f.suffix_begin < z.size());
}

TEST_CASE("k = 4") {
    const CurveOracle four(Curve{{0, 0}, {1, 1}, {2, 0}, {3, 1}});
    CHECK(four.decide_k4(four.full(), {0, 0}, {1, 1}, {2, 0}, {3, 1}, 0.0));
    CHECK(four.query_k4(four.full(), {0, 0}, {1, 1}, {2, 0}, {3, 1}) == 0.0);
    const CurveOracle z(kZigzag, 5);
    CHECK(z.query(z.full(), Curve{{0, 0}, {3, 3}, {6, -2}, {11, -1}}) == 4.47213595499958);
    CHECK(z.query(z.full(), Curve{{1, 1}, {4, 4}, {7, -3}, {10, 0}}) == 3.1622776601683795);
    CHECK_FALSE(z.decide_k4(z.full(), {0, 0}, {3, 3}, {6, -2}, {11, -1}, 4.47));
}

TEST_CASE("k = 4 with a single consecutive-pair witness") {
    // a and d each cover a long run; b and c must sit on the adjacent pair
    // (p_4, p_5) near the middle, so only the edge-pair branch can succeed.
    Curve p;
    for (int i = 0; i < 4; ++i) p.push_back({0.1 * i, 0});
    p.push_back({5, 5});
    p.push_back({6, 5});
    for (int i = 0; i < 4; ++i) p.push_back({0.1 * i, 0.05});
    const CurveOracle o(p);
    const Point a{0.15, 0}, b{5, 5}, c{6, 5}, d{0.15, 0.05};
    const double r = 0.2;
    const Curve q{a, b, c, d};
    CHECK(reference::ddf_decision(p, q, r));
    CHECK(o.decide_k4(o.full(), a, b, c, d, r));
    const Point c_far{6, 8};
    CHECK_FALSE(reference::ddf_decision(p, Curve{a, b, c_far, d}, r));
    CHECK_FALSE(o.decide_k4(o.full(), a, b, c_far, d, r));
}

TEST_CASE("answer equal to the lower bound needs no extraction") {
    const CurveOracle o(kLine);
    QueryStats s;
    CHECK(o.query_k4(o.full(), {0, 0}, {1, 0}, {2, 0}, {3, 1}, &s) == 1.0);
    CHECK(s.decisions == 1);
}

TEST_CASE("dispatch and reversal") {
    const CurveOracle z(kZigzag);
    CHECK_THROWS_WITH_AS(z.query(z.full(), Curve(5, Point{0, 0})), "query size unsupported", Error);
    CHECK_THROWS_AS(z.query(z.full(), Curve{}), Error);
    std::mt19937_64 rng(3);
    for (int it = 0; it < 200; ++it) {
        const std::size_t k = 1 + it % 4;
        const Case c = random_case(rng, k, 60);
        const CurveOracle o(c.p, 1);
        Curve rq(c.q.rbegin(), c.q.rend());
        CHECK(o.query({c.lo, c.hi, true}, rq) == o.query({c.lo, c.hi, false}, c.q));
    }
}

TEST_CASE("exact against the dynamic program") {
    std::mt19937_64 rng(2024);
    for (std::size_t k = 1; k <= 4; ++k) {
        CAPTURE(k);
        for (int it = 0; it < 400; ++it) {
            const Case c = random_case(rng, k, 256);
            const CurveOracle o(c.p, static_cast<std::uint64_t>(it));
            const Curve sub = test::slice(c.p, c.lo, c.hi, c.reversed);
            const double want = reference::ddf(sub, c.q);
            const RangeRef r{c.lo, c.hi, c.reversed};
            REQUIRE(o.query(r, c.q) == want);
            CHECK(want >= reference::endpoint_bound(sub, c.q));
            CHECK(o.decide(r, c.q, want));
            CHECK_FALSE(o.decide(r, c.q, std::nextafter(want, -1.0)));
        }
    }
}

TEST_CASE("answers are vertex-query distances") {
    std::mt19937_64 rng(6);
    for (int it = 0; it < 200; ++it) {
        const std::size_t k = 1 + it % 4;
        const Case c = random_case(rng, k, 80);
        const CurveOracle o(c.p);
        const double d = o.query({c.lo, c.hi, c.reversed}, c.q);
        bool member = d == 0.0;
        for (std::size_t i = c.lo; i <= c.hi; ++i)
            for (const auto& x : c.q) member |= dist(c.p[i], x) == d;
        CHECK(member);
    }
}

TEST_CASE("decisions are monotone in the threshold") {
    std::mt19937_64 rng(12);
    for (int it = 0; it < 60; ++it) {
        const std::size_t k = 2 + it % 3;
        const Case c = random_case(rng, k, 64);
        const CurveOracle o(c.p);
        const RangeRef r{c.lo, c.hi, c.reversed};
        std::set<double> thresholds{0.0};
        for (std::size_t i = c.lo; i <= c.hi; ++i)
            for (const auto& x : c.q) thresholds.insert(dist(c.p[i], x));
        bool seen_true = false;
        for (double t : thresholds) {
            const bool yes = o.decide(r, c.q, t);
            CHECK((!seen_true || yes));
            seen_true |= yes;
        }
        CHECK(seen_true);
    }
}

TEST_CASE("k = 4 is deterministic and seed independent") {
    std::mt19937_64 rng(77);
    for (int it = 0; it < 50; ++it) {
        const Case c = random_case(rng, 4, 200);
        std::vector<double> answers;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const CurveOracle o(c.p, seed);
            const RangeRef r{c.lo, c.hi, c.reversed};
            answers.push_back(o.query(r, c.q));
            CHECK(o.query_k4_seeded(r, c.q[0], c.q[1], c.q[2], c.q[3], 99) == answers.back());
        }
        CHECK(std::all_of(answers.begin(), answers.end(), [&](double a) { return a == answers[0]; }));
        const CurveOracle x(c.p, 4), y(c.p, 4);
        QueryStats sx, sy;
        x.query({c.lo, c.hi, c.reversed}, c.q, &sx);
        y.query({c.lo, c.hi, c.reversed}, c.q, &sy);
        CHECK(sx.touches() == sy.touches());
        CHECK(sx.decisions == sy.decisions);
    }
}

TEST_CASE("oracle moves keep their structures") {
    CurveOracle a(kZigzag, 9);
    CurveOracle b(std::move(a));
    CHECK(b.query(b.full(), Curve{{0, 0}}) == 11.045361017187261);
    CurveOracle c;
    c = std::move(b);
    CHECK(c.seed() == 9);
    CHECK(c.query(c.full(), Curve{{0, 0}, {3, 3}, {6, -2}, {11, -1}}) == 4.47213595499958);
}
