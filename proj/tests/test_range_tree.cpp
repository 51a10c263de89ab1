#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "dfo/range_tree.hpp"
#include "support.hpp"

using namespace dfo;

namespace {
const Curve kLine{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
}

TEST_CASE("build shapes") {
    CHECK(CanonicalRangeTree(Curve{{1, 1}}).nodes().size() == 1);
    const CanonicalRangeTree t4(kLine);
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    for (const auto& nd : t4.nodes()) ranges.emplace_back(nd.lo, nd.hi);
    std::sort(ranges.begin(), ranges.end(), [](auto a, auto b) {
        if (a.second - a.first != b.second - b.first) return a.second - a.first > b.second - b.first;
        return a.first < b.first;
    });
    CHECK(ranges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 3}, {0, 1}, {2, 3}, {0, 0}, {1, 1}, {2, 2}, {3, 3}});
    const CanonicalRangeTree t5(Curve(5));
    const auto& root = t5.node(t5.root());
    CHECK(t5.node(static_cast<std::size_t>(root.left)).hi == 2);
    CHECK(t5.node(static_cast<std::size_t>(root.right)).lo == 3);
    CHECK_THROWS_AS(CanonicalRangeTree(Curve{}), Error);
}

TEST_CASE("d_max and d_min examples") {
    const CanonicalRangeTree t(kLine);
    CHECK(t.d_max({0, 3}, {0, 0}) == 3.0);
    CHECK(t.d_max({1, 2}, {0, 0}) == 2.0);
    CHECK(t.d_min({1, 2}, {0, 0}) == 1.0);
    CHECK(t.d_min({2, 2}, {0, 5}) == dist(kLine[2], {0, 5}));
    CHECK_THROWS_AS(t.d_max({2, 1}, {0, 0}), Error);
    CHECK_THROWS_AS(t.d_max({0, 4}, {0, 0}), Error);
}

TEST_CASE("prefix and suffix examples") {
    const CanonicalRangeTree t(kLine);
    const RangeRef all{0, 3};
    CHECK(t.longest_prefix(all, {0, 0}, 1.5) == 1u);
    CHECK(t.longest_prefix(all, {0, 0}, 10) == 3u);
    CHECK_FALSE(t.longest_prefix(all, {5, 5}, 1.0).has_value());
    CHECK(t.longest_suffix(all, {3, 0}, 1.5) == 2u);
    CHECK(t.longest_suffix(all, {3, 0}, 10) == 0u);
    // Reversed traversal: the prefix starts at p_3.
    const RangeRef rev{0, 3, true};
    CHECK(t.longest_prefix(rev, {3, 0}, 1.5) == 2u);
    CHECK(t.longest_suffix(rev, {0, 0}, 1.5) == 1u);
    // Equality counts as inside.
    CHECK(t.longest_prefix(all, {0, 0}, 2.0) == 2u);
}

TEST_CASE("range queries agree with scans") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 1000; ++it) {
        const std::size_t n = 1 + rng() % 512;
        const Curve c = it % 3 == 0 ? test::grid_curve(n, rng) : test::uniform_curve(n, rng);
        const CanonicalRangeTree t(c);
        std::size_t lo = rng() % n, hi = rng() % n;
        if (lo > hi) std::swap(lo, hi);
        const Point q = test::uniform_curve(1, rng)[0];
        QueryStats stats;
        REQUIRE(t.d_max({lo, hi}, q, &stats) == test::scan_max(c, lo, hi, q));
        CHECK(stats.range_nodes <= 2 * static_cast<std::uint64_t>(std::ceil(std::log2(n))) + 2);
        REQUIRE(t.d_min({lo, hi}, q) == test::scan_min(c, lo, hi, q));

        const double rad = std::uniform_real_distribution<double>(0.0, 1.2)(rng);
        std::optional<std::size_t> want_i, want_j;
        for (std::size_t i = lo; i <= hi && dist(c[i], q) <= rad; ++i) want_i = i;
        for (std::size_t j = hi + 1; j-- > lo && dist(c[j], q) <= rad;) want_j = j;
        REQUIRE(t.extend_right(lo, hi, q, rad) == want_i);
        REQUIRE(t.extend_left(lo, hi, q, rad) == want_j);
    }
}

TEST_CASE("longest prefix is monotone and piecewise constant") {
    std::mt19937_64 rng(5);
    const Curve c = test::uniform_curve(300, rng);
    const CanonicalRangeTree t(c);
    const Point a{0.5, 0.5};
    std::set<double> cuts;
    for (const auto& p : c) cuts.insert(dist(p, a));
    std::optional<std::size_t> prev;
    for (double r : cuts) {
        const auto cur = t.longest_prefix({0, 299}, a, r);
        if (prev) CHECK(cur >= prev);
        // Just below the next cut the answer does not change.
        auto next = cuts.upper_bound(r);
        if (next != cuts.end()) CHECK(t.longest_prefix({0, 299}, a, std::nextafter(*next, 0.0)) == cur);
        if (cur) prev = cur;
    }
}
