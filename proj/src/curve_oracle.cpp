#include "dfo/curve_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace dfo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void count_decision(QueryStats* s) {
    if (s) ++s->decisions;
}

}  // namespace

CurveOracle::CurveOracle(Curve curve, std::uint64_t seed)
    : seed_(seed), tree_(std::move(curve)), edges_(tree_.curve()), vertices_(tree_.curve()) {}

CurveOracle::CurveOracle(CurveOracle&& o) noexcept
    : seed_(o.seed_),
      tree_(std::move(o.tree_)),
      edges_(std::move(o.edges_)),
      vertices_(std::move(o.vertices_)),
      counter_(o.counter_.load()) {}

CurveOracle& CurveOracle::operator=(CurveOracle&& o) noexcept {
    seed_ = o.seed_;
    tree_ = std::move(o.tree_);
    edges_ = std::move(o.edges_);
    vertices_ = std::move(o.vertices_);
    counter_.store(o.counter_.load());
    return *this;
}

std::uint64_t CurveOracle::next_query_seed() const {
    const std::uint64_t k = counter_.fetch_add(1, std::memory_order_relaxed);
    return splitmix64(seed_ ^ splitmix64(k));
}

// ---- k = 1 ----

double CurveOracle::query_k1(const RangeRef& r, const Point& a, QueryStats* stats) const {
    return tree_.d_max(r, a, stats);
}

// ---- k = 2 ----

bool CurveOracle::decide_k2(const RangeRef& r, const Point& a, const Point& b, double d,
                            QueryStats* stats) const {
    tree_.check(r);
    if (r.reversed) return decide_k2({r.lo, r.hi, false}, b, a, d, stats);
    count_decision(stats);
    const Curve& p = curve();
    if (dist(p[r.lo], a) > d || dist(p[r.hi], b) > d) return false;
    const auto i = tree_.extend_right(r.lo, r.hi, a, d, stats);
    const auto j = tree_.extend_left(r.lo, r.hi, b, d, stats);
    return *i + 1 >= *j;
}

double CurveOracle::query_k2(const RangeRef& r, const Point& a, const Point& b, QueryStats* stats) const {
    tree_.check(r);
    if (r.reversed) return k2(r.lo, r.hi, b, a, stats);
    return k2(r.lo, r.hi, a, b, stats);
}

// With A(s) = d_max(P[lo,s], a) and B(s) = d_max(P[s,hi], b), the cost of
// splitting after s is max(A(s), B(s+1)). A grows and B shrinks, so the first
// s with A(s) >= B(s+1) is found by one descent; the optimum is the split at s
// or at s - 1.
double CurveOracle::k2(std::size_t lo, std::size_t hi, const Point& a, const Point& b, QueryStats* stats) const {
    const Curve& p = curve();
    if (lo == hi) {
        count_range_node(stats);
        return std::max(dist(p[lo], a), dist(p[lo], b));
    }
    const std::vector<std::size_t> parts = tree_.canonical(lo, hi, stats);
    const std::size_t t = parts.size();
    std::vector<double> pa(t), sb(t + 1, -1.0);
    for (std::size_t k = 0; k < t; ++k) pa[k] = std::max(k ? pa[k - 1] : -1.0, tree_.node_max(parts[k], a));
    for (std::size_t k = t; k-- > 0;) sb[k] = std::max(sb[k + 1], tree_.node_max(parts[k], b));

    std::size_t k = 0;
    while (k + 1 < t && pa[k] < sb[k + 1]) ++k;
    double left = k ? pa[k - 1] : -1.0;  // A up to the node's first vertex, exclusive
    double right = sb[k + 1];            // B from just past the node
    std::size_t cur = parts[k];
    while (!tree_.node(cur).leaf()) {
        count_range_node(stats);
        const auto l = static_cast<std::size_t>(tree_.node(cur).left);
        const auto rr = static_cast<std::size_t>(tree_.node(cur).right);
        const double am = std::max(left, tree_.node_max(l, a));
        const double bm = std::max(right, tree_.node_max(rr, b));
        if (am >= bm) {
            right = bm;
            cur = l;
        } else {
            left = am;
            cur = rr;
        }
    }
    const std::size_t s = tree_.node(cur).lo;
    const double as = std::max(left, dist(p[s], a));
    const double bs = std::max(right, dist(p[s], b));
    double best = kInf;
    if (s < hi) best = std::max(as, right);
    if (s > lo) best = std::min(best, std::max(left, bs));
    return best;
}

// ---- k = 3 ----

// Smallest radius the middle vertex b needs once a holds P[lo, i] and c holds
// P[j, hi]. Uncovered vertices between them must all be near b; otherwise b
// needs only one vertex from the window where the two parts meet.
double CurveOracle::k3_middle_need(std::size_t lo, std::size_t hi, std::size_t i, std::size_t j, const Point& b,
                                   QueryStats* stats) const {
    if (j > i + 1) return tree_.d_max({i + 1, j - 1}, b, stats);
    const std::size_t from = std::max(lo + 1, j) - 1;
    const std::size_t to = std::min(hi, i + 1);
    return tree_.d_min({from, to}, b, stats);
}

FeasibilityOutcome CurveOracle::k3_feasibility(std::size_t lo, std::size_t hi, const Point& a, const Point& b,
                                               const Point& c, double d, QueryStats* stats) const {
    FeasibilityOutcome out;
    const Curve& p = curve();
    if (dist(p[lo], a) > d || dist(p[hi], c) > d) return out;
    out.prefix_end = tree_.extend_right(lo, hi, a, d, stats);
    out.suffix_begin = tree_.extend_left(lo, hi, c, d, stats);
    out.feasible = k3_middle_need(lo, hi, *out.prefix_end, *out.suffix_begin, b, stats) <= d;
    return out;
}

FeasibilityOutcome CurveOracle::feasibility_k3(const RangeRef& r, const Point& a, const Point& b, const Point& c,
                                               double d, QueryStats* stats) const {
    tree_.check(r);
    count_decision(stats);
    if (!r.reversed) return k3_feasibility(r.lo, r.hi, a, b, c, d, stats);
    // Traversal order is hi..lo: the prefix is held by a at the high end.
    FeasibilityOutcome f = k3_feasibility(r.lo, r.hi, c, b, a, d, stats);
    std::swap(f.prefix_end, f.suffix_begin);
    return f;
}

bool CurveOracle::decide_k3(const RangeRef& r, const Point& a, const Point& b, const Point& c, double d,
                            QueryStats* stats) const {
    return feasibility_k3(r, a, b, c, d, stats).feasible;
}

double CurveOracle::query_k3(const RangeRef& r, const Point& a, const Point& b, const Point& c,
                             QueryStats* stats) const {
    tree_.check(r);
    if (r.reversed) return k3(r.lo, r.hi, c, b, a, stats);
    return k3(r.lo, r.hi, a, b, c, stats);
}

double CurveOracle::k3(std::size_t lo, std::size_t hi, const Point& a, const Point& b, const Point& c,
                       QueryStats* stats) const {
    const Curve& p = curve();
    if (lo == hi) {
        count_range_node(stats);
        return std::max({dist(p[lo], a), dist(p[lo], b), dist(p[lo], c)});
    }
    const double delta = std::max(dist(p[lo], a), dist(p[hi], c));
    auto feasible = [&](double d) {
        count_decision(stats);
        return k3_feasibility(lo, hi, a, b, c, d, stats).feasible;
    };
    if (feasible(delta)) return delta;

    auto prefix_max = [&](std::size_t s) { return tree_.d_max({lo, s}, a, stats); };
    auto suffix_max = [&](std::size_t s) { return tree_.d_max({s, hi}, c, stats); };

    // Left pass: smallest L with A(L) feasible. A(lo) <= delta is infeasible,
    // so L > lo and the largest infeasible running maximum is A(L - 1).
    double dl = kInf;
    std::size_t left_end = hi;  // last index a holds just below d_L
    {
        std::size_t x = lo, y = hi + 1;  // A(x) infeasible; A(y) feasible or y past the end
        while (y - x > 1) {
            const std::size_t m = x + (y - x) / 2;
            if (feasible(prefix_max(m))) y = m;
            else x = m;
        }
        if (y <= hi) dl = prefix_max(y);
        left_end = x;
    }
    // Right pass, mirrored: C(hi) <= delta is infeasible too.
    double dr = kInf;
    std::size_t right_begin = lo;  // first index c holds just below d_R
    {
        std::size_t l = lo, h = hi;  // first infeasible C(s)
        while (l < h) {
            const std::size_t m = l + (h - l) / 2;
            if (feasible(suffix_max(m))) l = m + 1;
            else h = m;
        }
        if (l > lo) dr = suffix_max(l - 1);
        right_begin = l;
    }
    const double dl_bar = prefix_max(left_end);
    const double dr_bar = suffix_max(right_begin);
    const double need = k3_middle_need(lo, hi, left_end, right_begin, b, stats);
    const double d3 = std::max({need, delta, dl_bar, dr_bar});
    return std::min({dl, dr, d3});
}

// ---- k = 4 ----

bool CurveOracle::decide_k4(const RangeRef& r, const Point& a, const Point& b, const Point& c, const Point& d,
                            double radius, QueryStats* stats) const {
    tree_.check(r);
    if (r.reversed) return k4_decide(r.lo, r.hi, d, c, b, a, radius, stats);
    return k4_decide(r.lo, r.hi, a, b, c, d, radius, stats);
}

bool CurveOracle::k4_decide(std::size_t lo, std::size_t hi, const Point& a, const Point& b, const Point& c,
                            const Point& d, double radius, QueryStats* stats) const {
    count_decision(stats);
    const Curve& p = curve();
    if (dist(p[lo], a) > radius || dist(p[hi], d) > radius) return false;
    if (lo == hi) return dist(p[lo], b) <= radius && dist(p[lo], c) <= radius;
    const std::size_t i = *tree_.extend_right(lo, hi, a, radius, stats);
    const std::size_t j = *tree_.extend_left(lo, hi, d, radius, stats);
    // a takes all of P⊢ and (b, c, d) the rest, or symmetrically for d.
    if (i + 1 <= hi && k3_feasibility(i + 1, hi, b, c, d, radius, stats).feasible) return true;
    if (j >= lo + 1 && k3_feasibility(lo, j - 1, a, b, c, radius, stats).feasible) return true;
    if (j > i + 1) return false;
    if (j == i + 1) return dist(p[i], b) <= radius && dist(p[j], c) <= radius;
    const std::size_t from = std::max(lo + 1, j) - 1;
    const std::size_t to = std::min(hi, i + 1);
    return edges_.edge_pair_exists(from, to, b, c, radius, stats);
}

double CurveOracle::query_k4(const RangeRef& r, const Point& a, const Point& b, const Point& c, const Point& d,
                             QueryStats* stats) const {
    return query_k4_seeded(r, a, b, c, d, next_query_seed(), stats);
}

double CurveOracle::query_k4_seeded(const RangeRef& r, const Point& a, const Point& b, const Point& c,
                                    const Point& d, std::uint64_t query_seed, QueryStats* stats) const {
    tree_.check(r);
    if (r.reversed) return k4(r.lo, r.hi, d, c, b, a, query_seed, stats);
    return k4(r.lo, r.hi, a, b, c, d, query_seed, stats);
}

double CurveOracle::k4(std::size_t lo, std::size_t hi, const Point& a, const Point& b, const Point& c,
                       const Point& d, std::uint64_t query_seed, QueryStats* stats) const {
    const Curve& p = curve();
    if (lo == hi) {
        count_range_node(stats);
        return std::max({dist(p[lo], a), dist(p[lo], b), dist(p[lo], c), dist(p[lo], d)});
    }
    const Point q[4] = {a, b, c, d};
    auto decide = [&](double rad) { return k4_decide(lo, hi, a, b, c, d, rad, stats); };

    const double delta = std::max(dist(p[lo], a), dist(p[hi], d));
    if (decide(delta)) return delta;
    double top = 0.0;
    for (const Point& x : q) top = std::max(top, tree_.d_max({lo, hi}, x, stats));

    // Bracket the answer between consecutive sampled critical values.
    const std::size_t len = hi - lo + 1;
    const auto samples = static_cast<std::size_t>(std::ceil(std::sqrt(4.0 * static_cast<double>(len))));
    std::mt19937_64 rng(query_seed);
    std::uniform_int_distribution<std::size_t> pick_vertex(lo, hi);
    std::uniform_int_distribution<int> pick_query(0, 3);
    std::vector<double> cand{delta, top};
    cand.reserve(samples + 2);
    for (std::size_t s = 0; s < samples; ++s) {
        const double v = dist(p[pick_vertex(rng)], q[pick_query(rng)]);
        if (v > delta && v < top) cand.push_back(v);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::size_t x = 0, y = cand.size() - 1;  // decide(cand[x]) false, decide(cand[y]) true
    while (y - x > 1) {
        const std::size_t m = x + (y - x) / 2;
        if (decide(cand[m])) y = m;
        else x = m;
    }
    const double d1 = cand[x], d2 = cand[y];

    // Every critical value in (d1, d2] among the range's vertices.
    std::vector<double> crit;
    for (const Point& center : q) {
        for (const auto& rep : vertices_.annulus_report({center, d1, d2}, stats)) {
            if (rep.id < lo || rep.id > hi) continue;
            const double v = dist(rep.point, center);
            if (v > d1 && v <= d2) crit.push_back(v);
        }
    }
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    // d2 is itself a critical value of the range, so crit is non-empty and
    // its last element is feasible.
    std::size_t l = 0, h = crit.size() - 1;
    while (l < h) {
        const std::size_t m = l + (h - l) / 2;
        if (decide(crit[m])) h = m;
        else l = m + 1;
    }
    return crit[l];
}

// ---- dispatch ----

double CurveOracle::query(const RangeRef& r, QueryView q, QueryStats* stats) const {
    switch (q.size()) {
        case 1: return query_k1(r, q[0], stats);
        case 2: return query_k2(r, q[0], q[1], stats);
        case 3: return query_k3(r, q[0], q[1], q[2], stats);
        case 4: return query_k4(r, q[0], q[1], q[2], q[3], stats);
        case 0: throw Error("empty query");
        default: throw Error("query size unsupported");
    }
}

bool CurveOracle::decide(const RangeRef& r, QueryView q, double d, QueryStats* stats) const {
    switch (q.size()) {
        case 1: return query_k1(r, q[0], stats) <= d;
        case 2: return decide_k2(r, q[0], q[1], d, stats);
        case 3: return decide_k3(r, q[0], q[1], q[2], d, stats);
        case 4: return decide_k4(r, q[0], q[1], q[2], q[3], d, stats);
        case 0: throw Error("empty query");
        default: throw Error("query size unsupported");
    }
}

}  // namespace dfo
