#include "dfo/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>

namespace dfo {

Curve koch(int n) {
    if (n < 0) throw Error("negative koch level");
    if (n > 12) throw Error("instance too large");
    Curve cur{{0.0, 0.0}, {1.0, 0.0}};
    const double c60 = 0.5, s60 = std::sqrt(3.0) / 2.0;
    for (int level = 0; level < n; ++level) {
        Curve next;
        next.reserve(4 * (cur.size() - 1) + 1);
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
            const Point u = cur[i], v = cur[i + 1];
            const double dx = (v.x - u.x) / 3.0, dy = (v.y - u.y) / 3.0;
            const Point u1{u.x + dx, u.y + dy};
            const Point v1{u.x + 2.0 * dx, u.y + 2.0 * dy};
            // Rotate the middle third by +60 degrees: the bump points left.
            const Point w{u1.x + c60 * dx - s60 * dy, u1.y + s60 * dx + c60 * dy};
            next.insert(next.end(), {u, u1, w, v1});
        }
        next.push_back(cur.back());
        cur = std::move(next);
    }
    return cur;
}

std::vector<Point> random_points(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Point> out(n);
    for (Point& p : out) {
        p.x = unit(rng);
        p.y = unit(rng);
    }
    return out;
}

Curve random_curve(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error("empty curve");
    return random_points(n, seed);
}

GeometricGraph random_tree(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error("empty tree");
    std::vector<Point> pts = random_points(n, seed);
    std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
    std::vector<Edge> edges;
    edges.reserve(n - 1);
    for (std::uint32_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::uint32_t> pick(0, i - 1);
        edges.push_back({pick(rng), i});
    }
    return GeometricGraph(std::move(pts), std::move(edges));
}

GeometricGraph greedy_spanner(const std::vector<Point>& points, double t) {
    if (!(t > 1.0)) throw Error("spanner stretch must exceed 1");
    const std::size_t n = points.size();
    struct Pair {
        double len;
        std::uint32_t i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) pairs.push_back({dist(points[i], points[j]), i, j});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        return std::tie(a.len, a.i, a.j) < std::tie(b.len, b.i, b.j);
    });

    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> d(n * n, inf);
    for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
    std::vector<Edge> edges;
    for (const Pair& p : pairs) {
        if (d[p.i * n + p.j] <= t * p.len) continue;
        edges.push_back({p.i, p.j});
        // All-pairs update through the new edge.
        for (std::size_t x = 0; x < n; ++x) {
            const double xi = d[x * n + p.i], xj = d[x * n + p.j];
            if (xi == inf && xj == inf) continue;
            for (std::size_t y = 0; y < n; ++y) {
                const double via = std::min(xi + p.len + d[p.j * n + y], xj + p.len + d[p.i * n + y]);
                if (via < d[x * n + y]) d[x * n + y] = via;
            }
        }
    }
    return GeometricGraph(points, std::move(edges));
}

double measure_stretch(const GeometricGraph& g) {
    const auto& pts = g.vertices();
    const std::size_t n = pts.size();
    double worst = 1.0;
    std::vector<double> d(n);
    using Item = std::pair<double, std::uint32_t>;
    for (std::uint32_t s = 0; s < n; ++s) {
        std::fill(d.begin(), d.end(), std::numeric_limits<double>::infinity());
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        d[s] = 0.0;
        pq.push({0.0, s});
        while (!pq.empty()) {
            const auto [dx, x] = pq.top();
            pq.pop();
            if (dx > d[x]) continue;
            for (std::uint32_t y : g.neighbors(x)) {
                const double nd = dx + dist(pts[x], pts[y]);
                if (nd < d[y]) {
                    d[y] = nd;
                    pq.push({nd, y});
                }
            }
        }
        for (std::uint32_t y = s + 1; y < n; ++y) {
            const double e = dist(pts[s], pts[y]);
            if (e > 0.0 && std::isfinite(d[y])) worst = std::max(worst, d[y] / e);
        }
    }
    return worst;
}

double curve_stretch(CurveView c) {
    std::vector<double> arc(c.size(), 0.0);
    for (std::size_t i = 1; i < c.size(); ++i) arc[i] = arc[i - 1] + dist(c[i - 1], c[i]);
    double worst = 1.0;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
            const double e = dist(c[i], c[j]);
            if (e > 0.0) worst = std::max(worst, (arc[j] - arc[i]) / e);
        }
    return worst;
}

namespace {

struct Dsu {
    std::vector<std::uint32_t> parent, inside, rep;
    explicit Dsu(std::size_t n) : parent(n), inside(n, 0), rep(n) {
        std::iota(parent.begin(), parent.end(), 0u);
        std::iota(rep.begin(), rep.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
};

}  // namespace

LocalityPair disk_locality(const GeometricGraph& g, const Point& center, double radius) {
    const auto& pts = g.vertices();
    const std::size_t n = pts.size();
    LocalityPair out;
    out.center = center;
    out.radius = radius;
    std::vector<double> dc(n);
    for (std::size_t i = 0; i < n; ++i) dc[i] = dist(pts[i], center);
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return dc[a] != dc[b] ? dc[a] < dc[b] : a < b;
    });
    std::size_t total = 0;
    while (total < n && dc[order[total]] <= radius) ++total;
    if (total < 2) return out;
    out.p = order[0];
    out.q = order[1];

    Dsu dsu(n);
    std::vector<char> added(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint32_t x = order[k];
        added[x] = 1;
        dsu.inside[x] = k < total ? 1 : 0;
        for (std::uint32_t y : g.neighbors(x)) {
            if (!added[y]) continue;
            std::uint32_t rx = dsu.find(x), ry = dsu.find(y);
            if (rx == ry) continue;
            const std::uint32_t cx = dsu.inside[rx], cy = dsu.inside[ry];
            const std::uint32_t px = dsu.rep[rx], py = dsu.rep[ry];
            dsu.parent[ry] = rx;
            dsu.inside[rx] = cx + cy;
            if (cx == 0) dsu.rep[rx] = py;
            if (cx > 0 && cy > 0 && cx + cy == total) {
                out.p = std::min(px, py);
                out.q = std::max(px, py);
                out.scale = radius > 0.0 ? std::max(1.0, dc[x] / radius) : 1.0;
                return out;
            }
        }
    }
    throw Error("graph is disconnected");
}

LocalityReport estimate_locality(const GeometricGraph& g, std::size_t samples, std::uint64_t seed) {
    const auto& pts = g.vertices();
    const std::size_t n = pts.size();
    LocalityReport rep;
    if (n < 2) return rep;
    const auto comps = g.components();
    if (std::any_of(comps.begin(), comps.end(), [&](std::uint32_t c) { return c != comps[0]; }))
        throw Error("graph is disconnected");

    auto add = [&](const Point& c, double r) {
        if (!(r > 0.0)) return;
        LocalityPair lp = disk_locality(g, c, r);
        rep.t_hat = std::max(rep.t_hat, lp.scale);
        rep.samples.push_back(lp);
        ++rep.disks;
    };
    if (n <= 128) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const Point c{(pts[i].x + pts[j].x) / 2.0, (pts[i].y + pts[j].y) / 2.0};
                add(c, std::max(dist(c, pts[i]), dist(c, pts[j])));
            }
    }
    double x0 = pts[0].x, x1 = x0, y0 = pts[0].y, y1 = y0;
    for (const Point& p : pts) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_real_distribution<double> ux(x0, std::nextafter(x1, x1 + 1.0)), uy(y0, std::nextafter(y1, y1 + 1.0));
    for (std::size_t s = 0; s < samples; ++s) {
        const Point& p = pts[pick(rng)];
        const Point& q = pts[pick(rng)];
        if (s % 2 == 0) {
            const Point c{(p.x + q.x) / 2.0, (p.y + q.y) / 2.0};
            add(c, std::max(dist(c, p), dist(c, q)));
        } else {
            const Point c{ux(rng), uy(rng)};
            add(c, std::max(dist(c, p), dist(c, q)));
        }
    }
    return rep;
}

}  // namespace dfo
