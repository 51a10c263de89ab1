#include "dfo/range_tree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace dfo {

namespace {
// Nodes this small are scanned directly instead of carrying structures.
constexpr std::size_t kScanBelow = 8;
}  // namespace

CanonicalRangeTree::CanonicalRangeTree(Curve curve) : curve_(std::move(curve)) {
    if (curve_.empty()) throw Error("empty curve");
    require_finite(curve_, "curve");
    nodes_.reserve(2 * curve_.size());
    build(0, curve_.size() - 1);
}

std::int32_t CanonicalRangeTree::build(std::size_t lo, std::size_t hi) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    nodes_[id].lo = lo;
    nodes_[id].hi = hi;
    const std::size_t len = hi - lo + 1;
    if (len > kScanBelow) {
        const CurveView pts(curve_.data() + lo, len);
        std::vector<std::uint32_t> ids(len);
        std::iota(ids.begin(), ids.end(), static_cast<std::uint32_t>(lo));
        nodes_[id].far = FarthestStructure(pts, ids);
        nodes_[id].near = NearestStructure(pts, ids);
    }
    if (len > 1) {
        const std::size_t split = lo + (len + 1) / 2 - 1;
        const std::int32_t l = build(lo, split);
        const std::int32_t r = build(split + 1, hi);
        nodes_[id].left = l;
        nodes_[id].right = r;
    }
    return id;
}

void CanonicalRangeTree::check(const RangeRef& r) const {
    if (r.lo > r.hi || r.hi >= curve_.size()) throw Error("invalid range");
}

void CanonicalRangeTree::canonical_rec(std::size_t id, std::size_t lo, std::size_t hi,
                                       std::vector<std::size_t>& out, QueryStats* stats) const {
    const Node& nd = nodes_[id];
    if (hi < nd.lo || lo > nd.hi) return;
    if (lo <= nd.lo && nd.hi <= hi) {
        count_range_node(stats);
        out.push_back(id);
        return;
    }
    canonical_rec(static_cast<std::size_t>(nd.left), lo, hi, out, stats);
    canonical_rec(static_cast<std::size_t>(nd.right), lo, hi, out, stats);
}

std::vector<std::size_t> CanonicalRangeTree::canonical(std::size_t lo, std::size_t hi,
                                                       QueryStats* stats) const {
    check({lo, hi});
    std::vector<std::size_t> out;
    canonical_rec(0, lo, hi, out, stats);
    return out;
}

double CanonicalRangeTree::node_max(std::size_t id, const Point& q) const {
    const Node& nd = nodes_[id];
    if (nd.size() > kScanBelow) return nd.far.query(q).distance;
    double best2 = 0.0;
    for (std::size_t i = nd.lo; i <= nd.hi; ++i) best2 = std::max(best2, dist2(curve_[i], q));
    return std::sqrt(best2);
}

double CanonicalRangeTree::node_min(std::size_t id, const Point& q) const {
    const Node& nd = nodes_[id];
    if (nd.size() > kScanBelow) return nd.near.query(q).distance;
    double best2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = nd.lo; i <= nd.hi; ++i) best2 = std::min(best2, dist2(curve_[i], q));
    return std::sqrt(best2);
}

double CanonicalRangeTree::d_max(const RangeRef& r, const Point& q, QueryStats* stats) const {
    check(r);
    if (r.lo == r.hi) {
        count_range_node(stats);
        return dist(curve_[r.lo], q);
    }
    double best = 0.0;
    for (std::size_t id : canonical(r.lo, r.hi, stats)) best = std::max(best, node_max(id, q));
    return best;
}

double CanonicalRangeTree::d_min(const RangeRef& r, const Point& q, QueryStats* stats) const {
    check(r);
    if (r.lo == r.hi) {
        count_range_node(stats);
        return dist(curve_[r.lo], q);
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t id : canonical(r.lo, r.hi, stats)) best = std::min(best, node_min(id, q));
    return best;
}

std::optional<std::size_t> CanonicalRangeTree::extend_right(std::size_t lo, std::size_t hi, const Point& a,
                                                            double rad, QueryStats* stats) const {
    check({lo, hi});
    if (dist(curve_[lo], a) > rad) return std::nullopt;
    std::size_t last = lo;
    for (std::size_t id : canonical(lo, hi, stats)) {
        if (node_max(id, a) <= rad) {
            last = nodes_[id].hi;
            continue;
        }
        // The prefix ends inside this node.
        std::size_t cur = id;
        while (!nodes_[cur].leaf() && nodes_[cur].size() > kScanBelow) {
            count_range_node(stats);
            const auto l = static_cast<std::size_t>(nodes_[cur].left);
            if (node_max(l, a) <= rad) {
                last = nodes_[l].hi;
                cur = static_cast<std::size_t>(nodes_[cur].right);
            } else {
                cur = l;
            }
        }
        count_range_node(stats);
        for (std::size_t i = nodes_[cur].lo; i <= nodes_[cur].hi && dist(curve_[i], a) <= rad; ++i) last = i;
        return last;
    }
    return last;
}

std::optional<std::size_t> CanonicalRangeTree::extend_left(std::size_t lo, std::size_t hi, const Point& b,
                                                           double rad, QueryStats* stats) const {
    check({lo, hi});
    if (dist(curve_[hi], b) > rad) return std::nullopt;
    std::size_t first = hi;
    const std::vector<std::size_t> parts = canonical(lo, hi, stats);
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        const std::size_t id = *it;
        if (node_max(id, b) <= rad) {
            first = nodes_[id].lo;
            continue;
        }
        std::size_t cur = id;
        while (!nodes_[cur].leaf() && nodes_[cur].size() > kScanBelow) {
            count_range_node(stats);
            const auto r = static_cast<std::size_t>(nodes_[cur].right);
            if (node_max(r, b) <= rad) {
                first = nodes_[r].lo;
                cur = static_cast<std::size_t>(nodes_[cur].left);
            } else {
                cur = r;
            }
        }
        count_range_node(stats);
        for (std::size_t i = nodes_[cur].hi + 1; i-- > nodes_[cur].lo && dist(curve_[i], b) <= rad;) first = i;
        return first;
    }
    return first;
}

std::optional<std::size_t> CanonicalRangeTree::longest_prefix(const RangeRef& r, const Point& a, double rad,
                                                              QueryStats* stats) const {
    return r.reversed ? extend_left(r.lo, r.hi, a, rad, stats) : extend_right(r.lo, r.hi, a, rad, stats);
}

std::optional<std::size_t> CanonicalRangeTree::longest_suffix(const RangeRef& r, const Point& b, double rad,
                                                              QueryStats* stats) const {
    return r.reversed ? extend_right(r.lo, r.hi, b, rad, stats) : extend_left(r.lo, r.hi, b, rad, stats);
}

}  // namespace dfo
