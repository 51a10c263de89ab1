#include "dfo/graph_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace dfo {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

LocalGraphOracle::LocalGraphOracle(std::shared_ptr<const GeometricGraph> g, double t, std::uint64_t seed)
    : graph_(std::move(g)), t_(t), seed_(seed) {
    if (!graph_) throw Error("null graph");
    if (!(t_ >= 1.0) || !std::isfinite(t_)) throw Error("locality parameter must be >= 1");
    if (graph_->vertices().empty()) throw Error("empty graph");
    edges_ = NeighborAugmentedIndex(graph_);
    far_ = FarthestStructure(graph_->vertices());
    component_ = graph_->components();
}

LocalGraphOracle::LocalGraphOracle(GeometricGraph g, double t, std::uint64_t seed)
    : LocalGraphOracle(std::make_shared<const GeometricGraph>(std::move(g)), t, seed) {}

LocalGraphOracle::Resolved LocalGraphOracle::resolve(const SegmentQuery& q) const {
    const std::size_t n = graph_->vertices().size();
    if (q.u >= n || q.v >= n) throw Error("vertex out of range");
    Resolved r;
    r.a = q.a.value_or(graph_->point(q.u));
    r.b = q.b.value_or(graph_->point(q.v));
    if (!is_finite(r.a) || !is_finite(r.b)) throw Error("non-finite query point");
    r.delta = std::max(dist(r.a, graph_->point(q.u)), dist(r.b, graph_->point(q.v)));
    return r;
}

bool LocalGraphOracle::decide(const Resolved& r, double d, QueryStats* stats) const {
    if (stats) ++stats->decisions;
    if (d < r.delta) return false;
    const auto best = edges_.neighbor_disk_min({r.a, d}, r.b, stats);
    return best && *best <= d;
}

bool LocalGraphOracle::decide_segment(const SegmentQuery& q, double d, QueryStats* stats) const {
    const Resolved r = resolve(q);
    if (component_[q.u] != component_[q.v]) return false;
    return decide(r, d, stats);
}

double LocalGraphOracle::query_segment(const SegmentQuery& q, QueryStats* stats) const {
    const std::uint64_t k = counter_.fetch_add(1, std::memory_order_relaxed);
    return query_segment_seeded(q, mix(seed_ ^ mix(k)), stats);
}

double LocalGraphOracle::query_segment_seeded(const SegmentQuery& q, std::uint64_t query_seed,
                                              QueryStats* stats) const {
    const Resolved r = resolve(q);
    if (component_[q.u] != component_[q.v]) throw Error("no path");
    if (decide(r, r.delta, stats)) return r.delta;

    // Feasible at the farthest vertex from a: every vertex is in disk(a), and
    // v itself is within delta of b.
    const double top = std::max(r.delta, far_.query(r.a).distance);
    const auto& pts = graph_->vertices();
    const std::size_t n = pts.size();
    const auto samples = static_cast<std::size_t>(std::ceil(std::sqrt(2.0 * static_cast<double>(n))));
    std::mt19937_64 rng(query_seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::bernoulli_distribution side(0.5);
    std::vector<double> cand{r.delta, top};
    for (std::size_t s = 0; s < samples; ++s) {
        const Point& p = pts[pick(rng)];
        const double v = dist(p, side(rng) ? r.a : r.b);
        if (v > r.delta && v < top) cand.push_back(v);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::size_t x = 0, y = cand.size() - 1;
    while (y - x > 1) {
        const std::size_t m = x + (y - x) / 2;
        if (decide(r, cand[m], stats)) y = m;
        else x = m;
    }
    const double d1 = cand[x], d2 = cand[y];

    std::vector<double> crit;
    for (const Point& c : {r.a, r.b}) {
        for (const auto& rep : edges_.index().annulus_report({c, d1, d2}, stats)) {
            const double v = dist(rep.point, c);
            if (v > d1 && v <= d2) crit.push_back(v);
        }
    }
    crit.push_back(d2);
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    std::size_t l = 0, h = crit.size() - 1;
    while (l < h) {
        const std::size_t m = l + (h - l) / 2;
        if (decide(r, crit[m], stats)) h = m;
        else l = m + 1;
    }
    return crit[l];
}

}  // namespace dfo
