// Guibas-Stolfi divide-and-conquer Delaunay triangulation on a quad-edge
// structure, driven by the exact orient/incircle predicates.

#include "dfo/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace dfo {

namespace {

class QuadEdges {
public:
    explicit QuadEdges(const std::vector<Point>& pts) : pts_(pts) {}

    static std::uint32_t rot(std::uint32_t e) { return (e & ~3u) | ((e + 1) & 3u); }
    static std::uint32_t sym(std::uint32_t e) { return (e & ~3u) | ((e + 2) & 3u); }
    static std::uint32_t invrot(std::uint32_t e) { return (e & ~3u) | ((e + 3) & 3u); }

    std::uint32_t onext(std::uint32_t e) const { return next_[e]; }
    std::uint32_t oprev(std::uint32_t e) const { return rot(onext(rot(e))); }
    std::uint32_t lnext(std::uint32_t e) const { return rot(onext(invrot(e))); }
    std::uint32_t rprev(std::uint32_t e) const { return onext(sym(e)); }
    std::uint32_t org(std::uint32_t e) const { return org_[e]; }
    std::uint32_t dest(std::uint32_t e) const { return org_[sym(e)]; }

    std::uint32_t make_edge(std::uint32_t a, std::uint32_t b) {
        const auto e = static_cast<std::uint32_t>(next_.size());
        next_.insert(next_.end(), {e, e + 3, e + 2, e + 1});
        org_.insert(org_.end(), {a, 0, b, 0});
        alive_.push_back(true);
        return e;
    }

    void splice(std::uint32_t a, std::uint32_t b) {
        const std::uint32_t alpha = rot(onext(a));
        const std::uint32_t beta = rot(onext(b));
        std::swap(next_[a], next_[b]);
        std::swap(next_[alpha], next_[beta]);
    }

    std::uint32_t connect(std::uint32_t a, std::uint32_t b) {
        const std::uint32_t e = make_edge(dest(a), org(b));
        splice(e, lnext(a));
        splice(sym(e), b);
        return e;
    }

    void remove(std::uint32_t e) {
        splice(e, oprev(e));
        splice(sym(e), oprev(sym(e)));
        alive_[e / 4] = false;
    }

    bool left_of(std::uint32_t x, std::uint32_t e) const {
        return orient(pts_[x], pts_[org(e)], pts_[dest(e)]) > 0;
    }
    bool right_of(std::uint32_t x, std::uint32_t e) const {
        return orient(pts_[x], pts_[dest(e)], pts_[org(e)]) > 0;
    }
    bool in_circle(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) const {
        return incircle(pts_[a], pts_[b], pts_[c], pts_[d]) > 0;
    }

    // Returns (counterclockwise hull edge out of the leftmost vertex,
    //          clockwise hull edge out of the rightmost vertex).
    std::pair<std::uint32_t, std::uint32_t> build(std::uint32_t lo, std::uint32_t hi) {
        const std::uint32_t n = hi - lo;
        if (n == 2) {
            const std::uint32_t a = make_edge(lo, lo + 1);
            return {a, sym(a)};
        }
        if (n == 3) {
            const std::uint32_t a = make_edge(lo, lo + 1);
            const std::uint32_t b = make_edge(lo + 1, lo + 2);
            splice(sym(a), b);
            const int o = orient(pts_[lo], pts_[lo + 1], pts_[lo + 2]);
            if (o > 0) {
                connect(b, a);
                return {a, sym(b)};
            }
            if (o < 0) {
                const std::uint32_t c = connect(b, a);
                return {sym(c), c};
            }
            return {a, sym(b)};
        }
        const std::uint32_t mid = lo + n / 2;
        auto [ldo, ldi] = build(lo, mid);
        auto [rdi, rdo] = build(mid, hi);

        // Lower common tangent.
        for (;;) {
            if (left_of(org(rdi), ldi)) {
                ldi = lnext(ldi);
            } else if (right_of(org(ldi), rdi)) {
                rdi = rprev(rdi);
            } else {
                break;
            }
        }
        std::uint32_t basel = connect(sym(rdi), ldi);
        if (org(ldi) == org(ldo)) ldo = sym(basel);
        if (org(rdi) == org(rdo)) rdo = basel;

        auto valid = [&](std::uint32_t e) { return right_of(dest(e), basel); };
        for (;;) {
            std::uint32_t lcand = onext(sym(basel));
            if (valid(lcand)) {
                while (in_circle(dest(basel), org(basel), dest(lcand), dest(onext(lcand)))) {
                    const std::uint32_t t = onext(lcand);
                    remove(lcand);
                    lcand = t;
                }
            }
            std::uint32_t rcand = oprev(basel);
            if (valid(rcand)) {
                while (in_circle(dest(basel), org(basel), dest(rcand), dest(oprev(rcand)))) {
                    const std::uint32_t t = oprev(rcand);
                    remove(rcand);
                    rcand = t;
                }
            }
            const bool lvalid = valid(lcand);
            const bool rvalid = valid(rcand);
            if (!lvalid && !rvalid) break;
            if (!lvalid || (rvalid && in_circle(dest(lcand), org(lcand), org(rcand), dest(rcand)))) {
                basel = connect(rcand, sym(basel));
            } else {
                basel = connect(sym(basel), sym(lcand));
            }
        }
        return {ldo, rdo};
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (std::uint32_t q = 0; q < alive_.size(); ++q) {
            if (alive_[q]) out.push_back({org_[4 * q], org_[4 * q + 2]});
        }
        return out;
    }

private:
    const std::vector<Point>& pts_;
    std::vector<std::uint32_t> next_;
    std::vector<std::uint32_t> org_;
    std::vector<bool> alive_;
};

}  // namespace

GeometricGraph delaunay(std::vector<Point> points) {
    require_finite(points, "delaunay");
    const auto n = static_cast<std::uint32_t>(points.size());
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t i, std::uint32_t j) {
        if (points[i].x != points[j].x) return points[i].x < points[j].x;
        return points[i].y < points[j].y;
    });
    std::vector<Point> sorted(n);
    for (std::uint32_t k = 0; k < n; ++k) sorted[k] = points[order[k]];
    for (std::uint32_t k = 1; k < n; ++k) {
        if (sorted[k] == sorted[k - 1]) throw Error("duplicate input point");
    }

    std::vector<Edge> edges;
    if (n >= 2) {
        QuadEdges qe(sorted);
        qe.build(0, n);
        for (const Edge& e : qe.edges()) edges.push_back({order[e.u], order[e.v]});
    }
    return GeometricGraph(std::move(points), std::move(edges));
}

}  // namespace dfo
