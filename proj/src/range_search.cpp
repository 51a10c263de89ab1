#include "dfo/range_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace dfo {

// ---------------------------------------------------------------------------
// DiskRangeIndex

DiskRangeIndex::DiskRangeIndex(CurveView pts) {
    std::vector<std::uint32_t> ids(pts.size());
    std::iota(ids.begin(), ids.end(), 0u);
    *this = DiskRangeIndex(pts, ids);
}

DiskRangeIndex::DiskRangeIndex(CurveView pts, std::span<const std::uint32_t> ids)
    : pts_(pts.begin(), pts.end()), ids_(ids.begin(), ids.end()) {
    if (pts_.size() != ids_.size()) throw Error("DiskRangeIndex: id count mismatch");
    if (pts_.empty()) return;
    nodes_.reserve(2 * (pts_.size() / kLeafSize + 1));
    build(0, static_cast<std::uint32_t>(pts_.size()), 0);
}

std::int32_t DiskRangeIndex::build(std::uint32_t begin, std::uint32_t end, int axis) {
    const auto id = static_cast<std::int32_t>(nodes_.size());
    nodes_.emplace_back();
    nodes_[id].begin = begin;
    nodes_[id].end = end;
    nodes_[id].box = Box::around(CurveView(pts_.data() + begin, end - begin));
    if (end - begin <= kLeafSize) return id;

    const std::uint32_t mid = begin + (end - begin) / 2;
    std::vector<std::uint32_t> order(end - begin);
    std::iota(order.begin(), order.end(), begin);
    std::nth_element(order.begin(), order.begin() + (mid - begin), order.end(), [&](std::uint32_t i, std::uint32_t j) {
        const double ci = axis == 0 ? pts_[i].x : pts_[i].y;
        const double cj = axis == 0 ? pts_[j].x : pts_[j].y;
        return ci < cj || (ci == cj && ids_[i] < ids_[j]);
    });
    std::vector<Point> p(order.size());
    std::vector<std::uint32_t> q(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        p[k] = pts_[order[k]];
        q[k] = ids_[order[k]];
    }
    std::copy(p.begin(), p.end(), pts_.begin() + begin);
    std::copy(q.begin(), q.end(), ids_.begin() + begin);

    const std::int32_t l = build(begin, mid, axis ^ 1);
    const std::int32_t r = build(mid, end, axis ^ 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
}

void DiskRangeIndex::disk_rec(std::size_t id, const Disk& d, DiskResult& out, QueryStats* stats) const {
    const Node& nd = nodes_[id];
    if (std::sqrt(nd.box.min_dist2(d.center)) > d.radius) return;
    if (std::sqrt(nd.box.max_dist2(d.center)) <= d.radius) {
        if (stats) ++stats->kd_canonical;
        out.nodes.push_back(static_cast<std::uint32_t>(id));
        return;
    }
    if (nd.leaf()) {
        if (stats) ++stats->kd_leaves;
        for (std::uint32_t i = nd.begin; i < nd.end; ++i) {
            if (dist(pts_[i], d.center) <= d.radius) out.singles.push_back(i);
        }
        return;
    }
    disk_rec(static_cast<std::size_t>(nd.left), d, out, stats);
    disk_rec(static_cast<std::size_t>(nd.right), d, out, stats);
}

void DiskRangeIndex::disk_canonical(const Disk& d, DiskResult& out, QueryStats* stats) const {
    out.nodes.clear();
    out.singles.clear();
    if (nodes_.empty()) return;
    disk_rec(0, d, out, stats);
}

DiskRangeIndex::DiskResult DiskRangeIndex::disk_canonical(const Disk& d, QueryStats* stats) const {
    DiskResult out;
    disk_canonical(d, out, stats);
    return out;
}

void DiskRangeIndex::annulus_rec(std::size_t id, const Annulus& a, std::vector<Reported>& out,
                                 QueryStats* stats) const {
    const Node& nd = nodes_[id];
    const double near = std::sqrt(nd.box.min_dist2(a.center));
    const double far = std::sqrt(nd.box.max_dist2(a.center));
    if (near > a.outer || far < a.inner) return;
    if (near >= a.inner && far <= a.outer) {
        if (stats) ++stats->kd_canonical;
        for (std::uint32_t i = nd.begin; i < nd.end; ++i) out.push_back({ids_[i], pts_[i]});
        return;
    }
    if (nd.leaf()) {
        if (stats) ++stats->kd_leaves;
        for (std::uint32_t i = nd.begin; i < nd.end; ++i) {
            const double r = dist(pts_[i], a.center);
            if (r >= a.inner && r <= a.outer) out.push_back({ids_[i], pts_[i]});
        }
        return;
    }
    annulus_rec(static_cast<std::size_t>(nd.left), a, out, stats);
    annulus_rec(static_cast<std::size_t>(nd.right), a, out, stats);
}

std::vector<DiskRangeIndex::Reported> DiskRangeIndex::annulus_report(const Annulus& a, QueryStats* stats) const {
    std::vector<Reported> out;
    if (!nodes_.empty() && a.inner <= a.outer) annulus_rec(0, a, out, stats);
    return out;
}

void DiskRangeIndex::nearest_rec(std::size_t id, const Point& q, double& best2) const {
    const Node& nd = nodes_[id];
    if (nd.box.min_dist2(q) >= best2) return;
    if (nd.leaf()) {
        for (std::uint32_t i = nd.begin; i < nd.end; ++i) best2 = std::min(best2, dist2(pts_[i], q));
        return;
    }
    const auto l = static_cast<std::size_t>(nd.left), r = static_cast<std::size_t>(nd.right);
    if (nodes_[l].box.min_dist2(q) <= nodes_[r].box.min_dist2(q)) {
        nearest_rec(l, q, best2);
        nearest_rec(r, q, best2);
    } else {
        nearest_rec(r, q, best2);
        nearest_rec(l, q, best2);
    }
}

double DiskRangeIndex::node_nearest(std::size_t id, const Point& q) const {
    double best2 = std::numeric_limits<double>::infinity();
    nearest_rec(id, q, best2);
    return std::sqrt(best2);
}

// ---------------------------------------------------------------------------
// EdgePairIndex

namespace {
constexpr std::size_t kOuterScanBelow = 8;
}  // namespace

EdgePairIndex::EdgePairIndex(CurveView curve) : curve_(curve.begin(), curve.end()) {
    if (curve_.empty()) throw Error("empty curve");
    outer_.reserve(2 * curve_.size());
    build(0, curve_.size() - 1);
}

std::int32_t EdgePairIndex::build(std::size_t lo, std::size_t hi) {
    const auto id = static_cast<std::int32_t>(outer_.size());
    outer_.emplace_back();
    outer_[id].lo = lo;
    outer_[id].hi = hi;
    const std::size_t len = hi - lo + 1;
    if (len > kOuterScanBelow) {
        std::vector<std::uint32_t> ids(len);
        std::iota(ids.begin(), ids.end(), static_cast<std::uint32_t>(lo));
        DiskRangeIndex index(CurveView(curve_.data() + lo, len), ids);
        std::vector<NearestStructure> succ(index.nodes().size());
        const std::size_t last = curve_.size() - 1;
        std::vector<Point> pts;
        std::vector<std::uint32_t> pid;
        for (std::size_t k = 0; k < index.nodes().size(); ++k) {
            const auto& nd = index.node(k);
            if (nd.leaf()) continue;
            pts.clear();
            pid.clear();
            for (std::uint32_t i = nd.begin; i < nd.end; ++i) {
                const std::uint32_t v = index.ids()[i];
                if (v < last) {
                    pts.push_back(curve_[v + 1]);
                    pid.push_back(v);
                }
            }
            if (!pts.empty()) succ[k] = NearestStructure(pts, pid);
        }
        outer_[id].index = std::move(index);
        outer_[id].successors = std::move(succ);
    }
    if (len > 1) {
        const std::size_t split = lo + (len + 1) / 2 - 1;
        const std::int32_t l = build(lo, split);
        const std::int32_t r = build(split + 1, hi);
        outer_[id].left = l;
        outer_[id].right = r;
    }
    return id;
}

void EdgePairIndex::decompose(std::size_t id, std::size_t lo, std::size_t hi, std::vector<std::size_t>& out) const {
    const Outer& o = outer_[id];
    if (hi < o.lo || lo > o.hi) return;
    if (lo <= o.lo && o.hi <= hi) {
        out.push_back(id);
        return;
    }
    decompose(static_cast<std::size_t>(o.left), lo, hi, out);
    decompose(static_cast<std::size_t>(o.right), lo, hi, out);
}

bool EdgePairIndex::vertex_query(std::size_t id, const Point& b, const Point& c, double r, QueryStats* stats) const {
    const Outer& o = outer_[id];
    count_range_node(stats);
    if (o.index.empty()) {
        for (std::size_t k = o.lo; k <= o.hi; ++k) {
            if (dist(curve_[k], b) <= r && dist(curve_[k], c) <= r) return true;
        }
        return false;
    }
    const auto res = o.index.disk_canonical({b, r}, stats);
    for (std::uint32_t nid : res.nodes) {
        if (o.index.node_nearest(nid, c) <= r) return true;
    }
    for (std::uint32_t pos : res.singles) {
        if (dist(o.index.points()[pos], c) <= r) return true;
    }
    return false;
}

bool EdgePairIndex::edge_query(std::size_t id, const Point& b, const Point& c, double r, QueryStats* stats) const {
    const Outer& o = outer_[id];
    count_range_node(stats);
    const std::size_t last = curve_.size() - 1;
    if (o.index.empty()) {
        for (std::size_t k = o.lo; k <= o.hi && k < last; ++k) {
            if (dist(curve_[k], b) <= r && dist(curve_[k + 1], c) <= r) return true;
        }
        return false;
    }
    const auto res = o.index.disk_canonical({b, r}, stats);
    for (std::uint32_t nid : res.nodes) {
        const auto& nd = o.index.node(nid);
        if (nd.leaf()) {
            for (std::uint32_t i = nd.begin; i < nd.end; ++i) {
                const std::uint32_t k = o.index.ids()[i];
                if (k < last && dist(curve_[k + 1], c) <= r) return true;
            }
        } else if (!o.successors[nid].empty() && o.successors[nid].query(c).distance <= r) {
            return true;
        }
    }
    for (std::uint32_t pos : res.singles) {
        const std::uint32_t k = o.index.ids()[pos];
        if (k < last && dist(curve_[k + 1], c) <= r) return true;
    }
    return false;
}

bool EdgePairIndex::edge_pair_exists(std::size_t lo, std::size_t hi, const Point& b, const Point& c, double r,
                                     QueryStats* stats) const {
    if (lo > hi || hi >= curve_.size()) throw Error("invalid range");
    std::vector<std::size_t> parts;
    decompose(0, lo, hi, parts);
    for (std::size_t id : parts) {
        if (vertex_query(id, b, c, r, stats)) return true;
    }
    if (lo < hi) {
        parts.clear();
        decompose(0, lo, hi - 1, parts);
        for (std::size_t id : parts) {
            if (edge_query(id, b, c, r, stats)) return true;
        }
    }
    return false;
}

std::size_t EdgePairIndex::stored_points() const {
    std::size_t total = 0;
    for (const Outer& o : outer_) {
        total += o.index.size();
        for (const auto& s : o.successors) total += s.size();
    }
    return total;
}

// ---------------------------------------------------------------------------
// NeighborAugmentedIndex

NeighborAugmentedIndex::NeighborAugmentedIndex(std::shared_ptr<const GeometricGraph> g)
    : graph_(std::move(g)), index_(graph_->vertices()) {
    augmented_.resize(index_.nodes().size());
    std::vector<char> mark(graph_->num_vertices(), 0);
    std::vector<std::uint32_t> members;
    std::vector<Point> pts;
    for (std::size_t k = 0; k < index_.nodes().size(); ++k) {
        const auto& nd = index_.node(k);
        if (nd.leaf()) continue;
        members.clear();
        auto add = [&](std::uint32_t v) {
            if (!mark[v]) {
                mark[v] = 1;
                members.push_back(v);
            }
        };
        for (std::uint32_t i = nd.begin; i < nd.end; ++i) {
            const std::uint32_t v = index_.ids()[i];
            add(v);
            for (std::uint32_t w : graph_->neighbors(v)) add(w);
        }
        pts.clear();
        for (std::uint32_t v : members) {
            pts.push_back(graph_->point(v));
            mark[v] = 0;
        }
        augmented_[k] = NearestStructure(pts, members);
    }
}

std::optional<double> NeighborAugmentedIndex::neighbor_disk_min(const Disk& d, const Point& target,
                                                                QueryStats* stats) const {
    if (index_.empty()) return std::nullopt;
    const auto res = index_.disk_canonical(d, stats);
    if (res.nodes.empty() && res.singles.empty()) return std::nullopt;
    double best = std::numeric_limits<double>::infinity();
    auto scan_vertex = [&](std::uint32_t v) {
        best = std::min(best, dist(graph_->point(v), target));
        for (std::uint32_t w : graph_->neighbors(v)) best = std::min(best, dist(graph_->point(w), target));
    };
    for (std::uint32_t nid : res.nodes) {
        const auto& nd = index_.node(nid);
        if (nd.leaf()) {
            for (std::uint32_t i = nd.begin; i < nd.end; ++i) scan_vertex(index_.ids()[i]);
        } else {
            best = std::min(best, augmented_[nid].query(target).distance);
        }
    }
    for (std::uint32_t pos : res.singles) scan_vertex(index_.ids()[pos]);
    return best;
}

std::size_t NeighborAugmentedIndex::stored_points() const {
    std::size_t total = index_.size();
    for (const auto& s : augmented_) total += s.size();
    return total;
}

}  // namespace dfo
