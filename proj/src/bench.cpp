#include "dfo/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "dfo/curve_oracle.hpp"
#include "dfo/graph_oracle.hpp"

namespace dfo {

BenchRow bench_curve(const Curve& p, std::size_t queries, std::uint64_t seed) {
    const CurveOracle o(p, seed);
    std::mt19937_64 rng(seed ^ 0xc0ffeeULL);
    double x0 = p[0].x, x1 = x0, y0 = p[0].y, y1 = y0;
    for (const Point& v : p) {
        x0 = std::min(x0, v.x);
        x1 = std::max(x1, v.x);
        y0 = std::min(y0, v.y);
        y1 = std::max(y1, v.y);
    }
    std::uniform_real_distribution<double> ux(x0, std::max(x1, x0 + 1e-12)), uy(y0, std::max(y1, y0 + 1e-12));
    BenchRow row{"curve", p.size(), queries};
    double seconds = 0.0;
    for (std::size_t i = 0; i < queries; ++i) {
        Point q[4];
        for (Point& x : q) x = {ux(rng), uy(rng)};
        // Thresholds at the optimum are the hardest decisions.
        const double d = o.query_k4_seeded(o.full(), q[0], q[1], q[2], q[3], rng());
        QueryStats s4;
        const auto t0 = std::chrono::steady_clock::now();
        o.decide_k4(o.full(), q[0], q[1], q[2], q[3], d, &s4);
        seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        row.decide_touches += static_cast<double>(s4.touches());
        QueryStats s3;
        o.query_k3(o.full(), q[0], q[1], q[2], &s3);
        o.query_k2(o.full(), q[0], q[1], &s3);
        o.query_k1(o.full(), q[0], &s3);
        row.small_touches += static_cast<double>(s3.touches()) / 3.0;
    }
    if (queries) {
        row.decide_touches /= static_cast<double>(queries);
        row.small_touches /= static_cast<double>(queries);
        row.micros = seconds * 1e6 / static_cast<double>(queries);
    }
    return row;
}

BenchRow bench_graph(std::shared_ptr<const GeometricGraph> g, double t, std::size_t queries, std::uint64_t seed) {
    const LocalGraphOracle o(g, t, seed);
    const std::size_t n = g->vertices().size();
    const auto comps = g->components();
    std::mt19937_64 rng(seed ^ 0xbeefULL);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    BenchRow row{"graph", n, 0};
    double seconds = 0.0;
    for (std::size_t i = 0; i < queries; ++i) {
        const std::uint32_t u = pick(rng), v = pick(rng);
        if (comps[u] != comps[v]) continue;
        const SegmentQuery q{u, v, {}, {}};
        const double d = o.query_segment_seeded(q, rng());
        QueryStats s;
        const auto t0 = std::chrono::steady_clock::now();
        o.decide_segment(q, d, &s);
        seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        row.decide_touches += static_cast<double>(s.touches());
        ++row.queries;
    }
    if (row.queries) {
        row.decide_touches /= static_cast<double>(row.queries);
        row.micros = seconds * 1e6 / static_cast<double>(row.queries);
    }
    return row;
}

double fit_exponent(const std::vector<BenchRow>& rows, double BenchRow::*field) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (const auto& r : rows) {
        if (r.*field <= 0.0) continue;
        const double x = std::log(static_cast<double>(r.n)), y = std::log(r.*field);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) return 0.0;
    const double den = static_cast<double>(m) * sxx - sx * sx;
    return den == 0.0 ? 0.0 : (static_cast<double>(m) * sxy - sx * sy) / den;
}

}  // namespace dfo
