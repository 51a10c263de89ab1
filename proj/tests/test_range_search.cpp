#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <set>

#include "dfo/instances.hpp"
#include "dfo/range_search.hpp"
#include "support.hpp"

using namespace dfo;

namespace {

std::vector<std::uint32_t> disk_ids(const DiskRangeIndex& idx, const Disk& d) {
    const auto res = idx.disk_canonical(d);
    std::vector<std::uint32_t> out;
    for (auto node : res.nodes)
        for (auto i = idx.node(node).begin; i < idx.node(node).end; ++i) out.push_back(idx.ids()[i]);
    for (auto pos : res.singles) out.push_back(idx.ids()[pos]);
    return out;
}

}  // namespace

TEST_CASE("disk canonical examples") {
    const Curve pts = random_points(100, 3);
    const DiskRangeIndex idx(pts);
    const auto all = idx.disk_canonical({{0.5, 0.5}, 10.0});
    CHECK(all.nodes == std::vector<std::uint32_t>{0});
    CHECK(all.singles.empty());
    const auto none = idx.disk_canonical({{5, 5}, 1.0});
    CHECK(none.nodes.empty());
    CHECK(none.singles.empty());
}

TEST_CASE("disk canonical equals brute force") {
    std::mt19937_64 rng(9);
    for (int it = 0; it < 300; ++it) {
        const std::size_t n = 1 + rng() % 200;
        const Curve pts = it % 2 ? test::grid_curve(n, rng) : test::uniform_curve(n, rng);
        const DiskRangeIndex idx(pts);
        const Disk d{test::uniform_curve(1, rng)[0], std::uniform_real_distribution<double>(0, 0.7)(rng) * (it % 2 ? 5 : 1)};
        auto got = disk_ids(idx, d);
        const std::size_t before = got.size();
        std::sort(got.begin(), got.end());
        got.erase(std::unique(got.begin(), got.end()), got.end());
        CHECK(got.size() == before);  // pairwise disjoint
        std::vector<std::uint32_t> want;
        for (std::uint32_t i = 0; i < n; ++i)
            if (dist(pts[i], d.center) <= d.radius) want.push_back(i);
        REQUIRE(got == want);
    }
}

TEST_CASE("annulus report") {
    const Curve pts = random_points(150, 4);
    const DiskRangeIndex idx(pts);
    const auto one = idx.annulus_report({pts[17], 0.0, 0.0});
    REQUIRE(one.size() == 1);
    CHECK(one[0].id == 17);
    CHECK(idx.annulus_report({{0, 0}, 0.0, 1e9}).size() == 150);
    std::mt19937_64 rng(1);
    for (int it = 0; it < 300; ++it) {
        const Point c = test::uniform_curve(1, rng)[0];
        double r1 = std::uniform_real_distribution<double>(0, 1)(rng), r2 = std::uniform_real_distribution<double>(0, 1)(rng);
        if (it % 5 == 0) r1 = r2 = dist(c, pts[rng() % 150]);
        if (r1 > r2) std::swap(r1, r2);
        std::set<std::uint32_t> got, want;
        for (const auto& rep : idx.annulus_report({c, r1, r2})) {
            got.insert(rep.id);
            CHECK(rep.point == pts[rep.id]);
        }
        for (std::uint32_t i = 0; i < 150; ++i) {
            const double d = dist(pts[i], c);
            if (d >= r1 && d <= r2) want.insert(i);
        }
        REQUIRE(got == want);
    }
}

TEST_CASE("edge pair examples") {
    const EdgePairIndex two(Curve{{0, 0}, {1, 0}});
    CHECK(two.edge_pair_exists(0, 1, {0, 0}, {1, 0}, 0.0));
    CHECK_FALSE(two.edge_pair_exists(0, 1, {5, 5}, {5, 5}, 0.0));
    CHECK_THROWS_AS(two.edge_pair_exists(1, 0, {0, 0}, {0, 0}, 1.0), Error);
    CHECK_THROWS_AS(two.edge_pair_exists(0, 2, {0, 0}, {0, 0}, 1.0), Error);
}

TEST_CASE("edge pair equals brute force") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 400; ++it) {
        const std::size_t n = 1 + rng() % 200;
        const Curve c = it % 2 ? test::grid_curve(n, rng, 6) : test::uniform_curve(n, rng);
        const EdgePairIndex idx(c);
        std::size_t lo = rng() % n, hi = rng() % n;
        if (lo > hi) std::swap(lo, hi);
        const Point b = test::uniform_curve(1, rng)[0], cc = test::uniform_curve(1, rng)[0];
        const double scale = it % 2 ? 5.0 : 1.0;
        const double r = std::uniform_real_distribution<double>(0, 0.4)(rng) * scale;
        bool want = false;
        for (std::size_t k = lo; k <= hi && !want; ++k) {
            want |= dist(c[k], b) <= r && dist(c[k], cc) <= r;
            if (k < hi) want |= dist(c[k], b) <= r && dist(c[k + 1], cc) <= r;
        }
        REQUIRE(idx.edge_pair_exists(lo, hi, b, cc, r) == want);
        if (want) CHECK(idx.edge_pair_exists(lo, hi, b, cc, r * 1.5));
    }
}

TEST_CASE("neighbor disk min") {
    const auto g = std::make_shared<const GeometricGraph>(delaunay(random_points(100, 6)));
    const NeighborAugmentedIndex idx(g);
    CHECK_FALSE(idx.neighbor_disk_min({{5, 5}, 0.5}, {0, 0}).has_value());
    // A disk around a vertex contains it, and its neighbors are candidates.
    const auto w = g->neighbors(0)[0];
    CHECK(idx.neighbor_disk_min({g->point(0), 0.0}, g->point(w)) == 0.0);

    std::mt19937_64 rng(2);
    for (int it = 0; it < 500; ++it) {
        const Disk d{test::uniform_curve(1, rng)[0], std::uniform_real_distribution<double>(0, 0.3)(rng)};
        const Point target = test::uniform_curve(1, rng)[0];
        std::optional<double> want;
        for (std::uint32_t x = 0; x < 100; ++x) {
            if (dist(g->point(x), d.center) > d.radius) continue;
            double m = dist(g->point(x), target);
            for (auto y : g->neighbors(x)) m = std::min(m, dist(g->point(y), target));
            want = want ? std::min(*want, m) : m;
        }
        REQUIRE(idx.neighbor_disk_min(d, target) == want);
    }
}

TEST_CASE("storage stays near-linear") {
    const Curve c = random_points(4096, 1);
    const EdgePairIndex e(c);
    const double lg = std::log2(4096.0);
    CHECK(static_cast<double>(e.stored_points()) <= 4096 * lg * lg);
    const auto g = std::make_shared<const GeometricGraph>(delaunay(random_points(256, 2)));
    const NeighborAugmentedIndex na(g);
    CHECK(static_cast<double>(na.stored_points()) <= static_cast<double>(256 + 2 * g->num_edges()) * 2 * std::log2(256.0));
}

TEST_CASE("disk queries touch about sqrt(n) pieces") {
    std::vector<double> xs, ys;
    for (int e = 10; e <= 16; e += 2) {
        const std::size_t n = std::size_t{1} << e;
        const DiskRangeIndex idx(random_points(n, static_cast<std::uint64_t>(e)));
        std::mt19937_64 rng(static_cast<std::uint64_t>(e));
        double total = 0;
        for (int i = 0; i < 200; ++i) {
            QueryStats s;
            idx.disk_canonical({test::uniform_curve(1, rng)[0], std::uniform_real_distribution<double>(0.05, 0.5)(rng)}, &s);
            total += static_cast<double>(s.kd_canonical + s.kd_leaves);
        }
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(std::log(total / 200));
    }
    const double mx = (xs[0] + xs[1] + xs[2] + xs[3]) / 4, my = (ys[0] + ys[1] + ys[2] + ys[3]) / 4;
    double num = 0, den = 0;
    for (int i = 0; i < 4; ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    MESSAGE("disk piece exponent " << num / den);
    CHECK(num / den <= 0.6);
}
