#include "dfo/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

namespace dfo {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2;  // 2^-53
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;

int sign_of(const Rational& r) { return r.sign(); }

int orient_exact(const Point& a, const Point& b, const Point& c) {
    const Rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    return sign_of((ax - cx) * (by - cy) - (ay - cy) * (bx - cx));
}

int incircle_exact(const Point& a, const Point& b, const Point& c, const Point& d) {
    const Rational adx = Rational(a.x) - Rational(d.x), ady = Rational(a.y) - Rational(d.y);
    const Rational bdx = Rational(b.x) - Rational(d.x), bdy = Rational(b.y) - Rational(d.y);
    const Rational cdx = Rational(c.x) - Rational(d.x), cdy = Rational(c.y) - Rational(d.y);
    const Rational alift = adx * adx + ady * ady;
    const Rational blift = bdx * bdx + bdy * bdy;
    const Rational clift = cdx * cdx + cdy * cdy;
    return sign_of(alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                   clift * (adx * bdy - bdx * ady));
}

}  // namespace

bool is_finite(const Point& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

void require_finite(CurveView points, const char* what) {
    for (const Point& p : points) {
        if (!is_finite(p)) {
            throw Error(std::string(what) + ": non-finite coordinate");
        }
    }
}

int orient(const Point& a, const Point& b, const Point& c) {
    const double detleft = (a.x - c.x) * (b.y - c.y);
    const double detright = (a.y - c.y) * (b.x - c.x);
    const double det = detleft - detright;
    const double bound = kOrientBound * (std::abs(detleft) + std::abs(detright));
    if (det > bound) return 1;
    if (-det > bound) return -1;
    return orient_exact(a, b, c);
}

int incircle(const Point& a, const Point& b, const Point& c, const Point& d) {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;
    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;
    const double alift = adx * adx + ady * ady;
    const double blift = bdx * bdx + bdy * bdy;
    const double clift = cdx * cdx + cdy * cdy;
    const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                             (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                             (std::abs(adxbdy) + std::abs(bdxady)) * clift;
    const double bound = kIncircleBound * permanent;
    if (det > bound) return 1;
    if (-det > bound) return -1;
    return incircle_exact(a, b, c, d);
}

Box Box::around(CurveView pts) {
    Box b;
    if (pts.empty()) return b;
    b.min_x = b.max_x = pts[0].x;
    b.min_y = b.max_y = pts[0].y;
    for (const Point& p : pts) b.expand(p);
    return b;
}

void Box::expand(const Point& p) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
}

double Box::min_dist2(const Point& q) const {
    double dx = 0.0, dy = 0.0;
    if (q.x < min_x) dx = min_x - q.x;
    else if (q.x > max_x) dx = q.x - max_x;
    if (q.y < min_y) dy = min_y - q.y;
    else if (q.y > max_y) dy = q.y - max_y;
    return dx * dx + dy * dy;
}

double Box::max_dist2(const Point& q) const {
    const double dx = std::max(std::abs(q.x - min_x), std::abs(q.x - max_x));
    const double dy = std::max(std::abs(q.y - min_y), std::abs(q.y - max_y));
    return dx * dx + dy * dy;
}

// ---------------------------------------------------------------------------
// PointTree

namespace {
constexpr std::size_t kPointTreeLeaf = 6;

double coord(const Point& p, int axis) { return axis == 0 ? p.x : p.y; }
}  // namespace

PointTree::PointTree(CurveView pts) {
    std::vector<std::uint32_t> ids(pts.size());
    std::iota(ids.begin(), ids.end(), 0u);
    *this = PointTree(pts, ids);
}

PointTree::PointTree(CurveView pts, std::span<const std::uint32_t> ids)
    : pts_(pts.begin(), pts.end()), ids_(ids.begin(), ids.end()), box_(Box::around(pts)) {
    if (pts_.size() != ids_.size()) throw Error("PointTree: id count mismatch");
    build(0, pts_.size(), 0);
}

void PointTree::build(std::size_t lo, std::size_t hi, int axis) {
    // Arrange a permutation recursively, then apply it once.
    std::vector<std::uint32_t> order(pts_.size());
    std::iota(order.begin(), order.end(), 0u);
    struct Frame {
        std::size_t lo, hi;
        int axis;
    };
    std::vector<Frame> stack{{lo, hi, axis}};
    while (!stack.empty()) {
        const Frame f = stack.back();
        stack.pop_back();
        if (f.hi - f.lo <= kPointTreeLeaf) continue;
        const std::size_t mid = f.lo + (f.hi - f.lo) / 2;
        std::nth_element(order.begin() + static_cast<std::ptrdiff_t>(f.lo),
                         order.begin() + static_cast<std::ptrdiff_t>(mid),
                         order.begin() + static_cast<std::ptrdiff_t>(f.hi),
                         [&](std::uint32_t i, std::uint32_t j) {
                             const double ci = coord(pts_[i], f.axis), cj = coord(pts_[j], f.axis);
                             return ci < cj || (ci == cj && ids_[i] < ids_[j]);
                         });
        stack.push_back({f.lo, mid, f.axis ^ 1});
        stack.push_back({mid + 1, f.hi, f.axis ^ 1});
    }
    std::vector<Point> p(order.size());
    std::vector<std::uint32_t> id(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        p[k] = pts_[order[k]];
        id[k] = ids_[order[k]];
    }
    pts_ = std::move(p);
    ids_ = std::move(id);
}

void PointTree::nearest_rec(std::size_t lo, std::size_t hi, int axis, const Box& box, const Point& q,
                            double& best2, std::size_t& best) const {
    if (box.min_dist2(q) > best2) return;
    if (hi - lo <= kPointTreeLeaf) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double d2 = dist2(pts_[i], q);
            if (d2 < best2) {
                best2 = d2;
                best = i;
            }
        }
        return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    const double d2 = dist2(pts_[mid], q);
    if (d2 < best2) {
        best2 = d2;
        best = mid;
    }
    const double split = coord(pts_[mid], axis);
    Box left = box, right = box;
    if (axis == 0) {
        left.max_x = split;
        right.min_x = split;
    } else {
        left.max_y = split;
        right.min_y = split;
    }
    if (coord(q, axis) <= split) {
        nearest_rec(lo, mid, axis ^ 1, left, q, best2, best);
        nearest_rec(mid + 1, hi, axis ^ 1, right, q, best2, best);
    } else {
        nearest_rec(mid + 1, hi, axis ^ 1, right, q, best2, best);
        nearest_rec(lo, mid, axis ^ 1, left, q, best2, best);
    }
}

void PointTree::farthest_rec(std::size_t lo, std::size_t hi, int axis, const Box& box, const Point& q,
                             double& best2, std::size_t& best) const {
    if (box.max_dist2(q) < best2) return;
    if (hi - lo <= kPointTreeLeaf) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double d2 = dist2(pts_[i], q);
            if (d2 > best2) {
                best2 = d2;
                best = i;
            }
        }
        return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    const double d2 = dist2(pts_[mid], q);
    if (d2 > best2) {
        best2 = d2;
        best = mid;
    }
    const double split = coord(pts_[mid], axis);
    Box left = box, right = box;
    if (axis == 0) {
        left.max_x = split;
        right.min_x = split;
    } else {
        left.max_y = split;
        right.min_y = split;
    }
    // The far side first.
    if (coord(q, axis) > split) {
        farthest_rec(lo, mid, axis ^ 1, left, q, best2, best);
        farthest_rec(mid + 1, hi, axis ^ 1, right, q, best2, best);
    } else {
        farthest_rec(mid + 1, hi, axis ^ 1, right, q, best2, best);
        farthest_rec(lo, mid, axis ^ 1, left, q, best2, best);
    }
}

PointHit PointTree::nearest(const Point& q) const {
    if (pts_.empty()) throw Error("empty structure");
    double best2 = std::numeric_limits<double>::infinity();
    std::size_t best = 0;
    nearest_rec(0, pts_.size(), 0, box_, q, best2, best);
    return {pts_[best], dist(pts_[best], q), ids_[best]};
}

PointHit PointTree::farthest(const Point& q) const {
    if (pts_.empty()) throw Error("empty structure");
    double best2 = -1.0;
    std::size_t best = 0;
    farthest_rec(0, pts_.size(), 0, box_, q, best2, best);
    return {pts_[best], dist(pts_[best], q), ids_[best]};
}

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> convex_hull(CurveView pts) {
    std::vector<std::uint32_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t i, std::uint32_t j) {
        if (pts[i].x != pts[j].x) return pts[i].x < pts[j].x;
        if (pts[i].y != pts[j].y) return pts[i].y < pts[j].y;
        return i < j;
    });
    idx.erase(std::unique(idx.begin(), idx.end(),
                          [&](std::uint32_t i, std::uint32_t j) { return pts[i] == pts[j]; }),
              idx.end());
    if (idx.size() <= 2) return idx;

    std::vector<std::uint32_t> hull(2 * idx.size());
    std::size_t k = 0;
    for (std::uint32_t i : idx) {
        while (k >= 2 && orient(pts[hull[k - 2]], pts[hull[k - 1]], pts[i]) <= 0) --k;
        hull[k++] = i;
    }
    const std::size_t lower = k + 1;
    for (auto it = idx.rbegin() + 1; it != idx.rend(); ++it) {
        while (k >= lower && orient(pts[hull[k - 2]], pts[hull[k - 1]], pts[*it]) <= 0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull;
}

FarthestStructure::FarthestStructure(CurveView pts) {
    std::vector<std::uint32_t> ids(pts.size());
    std::iota(ids.begin(), ids.end(), 0u);
    *this = FarthestStructure(pts, ids);
}

FarthestStructure::FarthestStructure(CurveView pts, std::span<const std::uint32_t> ids) {
    if (pts.size() != ids.size()) throw Error("FarthestStructure: id count mismatch");
    const std::vector<std::uint32_t> hull = convex_hull(pts);
    std::vector<Point> hp;
    std::vector<std::uint32_t> hid;
    hp.reserve(hull.size());
    hid.reserve(hull.size());
    for (std::uint32_t h : hull) {
        hp.push_back(pts[h]);
        hid.push_back(ids[h]);
    }
    tree_ = PointTree(hp, hid);
}

PointHit FarthestStructure::query(const Point& q) const {
    if (tree_.empty()) throw Error("empty structure");
    return tree_.farthest(q);
}

PointHit NearestStructure::query(const Point& q) const {
    if (tree_.empty()) throw Error("empty structure");
    return tree_.nearest(q);
}

// ---------------------------------------------------------------------------

GeometricGraph::GeometricGraph(std::vector<Point> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)) {
    require_finite(vertices_, "graph");
    const auto n = static_cast<std::uint32_t>(vertices_.size());
    for (Edge& e : edges) {
        if (e.u >= n || e.v >= n) throw Error("graph: edge index out of range");
        if (e.u == e.v) throw Error("graph: self-loop");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw Error("graph: duplicate edge");
    }
    edges_ = std::move(edges);

    offsets_.assign(n + 1, 0);
    for (const Edge& e : edges_) {
        ++offsets_[e.u + 1];
        ++offsets_[e.v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adjacency_.resize(2 * edges_.size());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (const Edge& e : edges_) {
        adjacency_[fill[e.u]++] = e.v;
        adjacency_[fill[e.v]++] = e.u;
    }
    for (std::uint32_t v = 0; v < n; ++v) {
        std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1]);
    }
}

bool GeometricGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::uint32_t> GeometricGraph::components() const {
    constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> comp(vertices_.size(), kUnset);
    std::vector<std::uint32_t> stack;
    std::uint32_t next = 0;
    for (std::uint32_t s = 0; s < vertices_.size(); ++s) {
        if (comp[s] != kUnset) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            const std::uint32_t v = stack.back();
            stack.pop_back();
            for (std::uint32_t w : neighbors(v)) {
                if (comp[w] == kUnset) {
                    comp[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return comp;
}

}  // namespace dfo
