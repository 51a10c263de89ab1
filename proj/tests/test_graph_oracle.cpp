#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "dfo/graph_oracle.hpp"
#include "dfo/instances.hpp"
#include "dfo/reference.hpp"
#include "support.hpp"

using namespace dfo;

TEST_CASE("build") {
    const auto tri = delaunay({{0, 0}, {1, 0}, {0.5, 0.8}});
    CHECK_NOTHROW(LocalGraphOracle(tri, 1.0));
    CHECK_THROWS_AS(LocalGraphOracle(tri, 0.5), Error);
    CHECK_THROWS_AS(LocalGraphOracle(tri, std::nan("")), Error);
    const LocalGraphOracle single(GeometricGraph({{2, 2}}, {}), 1.0);
    CHECK(single.query_segment({0, 0, {}, {}}) == 0.0);
    CHECK(single.query_segment({0, 0, Point{2, 3}, Point{2, 2}}) == 1.0);
}

TEST_CASE("segment decision examples") {
    const auto tri = delaunay({{0, 0}, {1, 0}, {0.5, 0.8}});
    const LocalGraphOracle o(tri, 1.0);
    CHECK(o.decide_segment({0, 1, {}, {}}, 0.0));
    CHECK(o.query_segment({0, 1, {}, {}}) == 0.0);
    CHECK_FALSE(o.decide_segment({0, 1, Point{0, 2}, {}}, 1.9));
    CHECK(o.decide_segment({0, 1, Point{0, 2}, {}}, 2.0));
    CHECK_THROWS_AS(o.decide_segment({0, 3, {}, {}}, 1.0), Error);
}

TEST_CASE("disconnected vertices") {
    const GeometricGraph g({{0, 0}, {1, 0}, {5, 5}}, {{0, 1}});
    const LocalGraphOracle o(g, 1.0);
    CHECK_THROWS_WITH_AS(o.query_segment({0, 2, {}, {}}), "no path", Error);
    CHECK_FALSE(o.decide_segment({0, 2, {}, {}}, 100.0));
}

TEST_CASE("exact on Delaunay graphs") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 200; ++it) {
        const std::size_t n = 2 + rng() % 255;
        const auto g = delaunay(random_points(n, rng()));
        const LocalGraphOracle o(g, 1.0, static_cast<std::uint64_t>(it));
        const auto u = static_cast<std::uint32_t>(rng() % n), v = static_cast<std::uint32_t>(rng() % n);
        SegmentQuery q{u, v, {}, {}};
        if (it % 2) {
            q.a = test::uniform_curve(1, rng)[0];
            q.b = test::uniform_curve(1, rng)[0];
        }
        const Curve seg{q.a.value_or(g.point(u)), q.b.value_or(g.point(v))};
        const double want = reference::ddf_graph(g, u, v, seg);
        REQUIRE(o.query_segment(q) == want);
        CHECK(o.query_segment({v, u, q.b, q.a}) == want);
        CHECK(o.decide_segment(q, want));
        CHECK_FALSE(o.decide_segment(q, std::nextafter(want, -1.0)));
    }
}

TEST_CASE("segment decision matches the product graph across thresholds") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 30; ++it) {
        const std::size_t n = 3 + rng() % 60;
        const auto g = delaunay(random_points(n, rng()));
        const LocalGraphOracle o(g, 1.0);
        const auto u = static_cast<std::uint32_t>(rng() % n), v = static_cast<std::uint32_t>(rng() % n);
        const Point a = test::uniform_curve(1, rng)[0], b = test::uniform_curve(1, rng)[0];
        std::set<double> ts{0.0};
        for (const auto& p : g.vertices()) {
            ts.insert(dist(p, a));
            ts.insert(dist(p, b));
        }
        bool prev = false;
        for (double t : ts) {
            const bool yes = o.decide_segment({u, v, a, b}, t);
            REQUIRE(yes == reference::ddf_graph_decision(g, u, v, Curve{a, b}, t));
            CHECK((!prev || yes));
            prev = yes;
        }
    }
}

TEST_CASE("approximation sandwich on spanners") {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 40; ++it) {
        const std::size_t n = 3 + rng() % 80;
        const auto g = greedy_spanner(random_points(n, rng()), 2.0);
        const LocalGraphOracle o(g, 4.0);
        const auto u = static_cast<std::uint32_t>(rng() % n), v = static_cast<std::uint32_t>(rng() % n);
        const double r = o.query_segment({u, v, {}, {}});
        const double d = reference::ddf_graph(g, u, v, Curve{g.point(u), g.point(v)});
        CHECK(r <= d * (1 + 1e-9));
        CHECK(d <= 2.5 * r * (1 + 1e-9));
    }
}

TEST_CASE("storage bound") {
    const auto g = std::make_shared<const GeometricGraph>(delaunay(random_points(256, 1)));
    const LocalGraphOracle o(g, 1.0);
    const double bound = static_cast<double>(256 + 2 * g->num_edges()) * 2 * std::log2(256.0);
    CHECK(static_cast<double>(o.edge_index().stored_points()) <= bound);
}
