#ifndef DFO_GEOMETRY_HPP
#define DFO_GEOMETRY_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dfo {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

using Curve = std::vector<Point>;
using CurveView = std::span<const Point>;

struct Disk {
    Point center;
    double radius = 0.0;
};

struct Annulus {
    Point center;
    double inner = 0.0;
    double outer = 0.0;
};

/*
 * Every distance comparison in the library goes through these two routines.
 * They are written without fused operations so that rounding is monotone in
 * each coordinate difference: a point inside an axis-aligned box is never
 * reported farther than the box's farthest corner.
 */
inline double dist2(const Point& p, const Point& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return dx * dx + dy * dy;
}

inline double dist(const Point& p, const Point& q) { return std::sqrt(dist2(p, q)); }

bool is_finite(const Point& p);

// Throws if any coordinate is NaN or infinite.
void require_finite(CurveView points, const char* what);

// Sign of the oriented area of (a, b, c): +1 counterclockwise, -1 clockwise, 0 collinear.
// Exact: falls back to rational arithmetic when the floating-point filter is inconclusive.
int orient(const Point& a, const Point& b, const Point& c);

// +1 if d lies strictly inside the circle through counterclockwise a, b, c; -1 outside; 0 on it.
int incircle(const Point& a, const Point& b, const Point& c, const Point& d);

struct Box {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

    static Box around(CurveView pts);
    void expand(const Point& p);
    // Bounds on dist2 from q to any point inside the box.
    double min_dist2(const Point& q) const;
    double max_dist2(const Point& q) const;
};

struct PointHit {
    Point point;
    double distance = 0.0;
    std::uint32_t index = 0;  // caller-supplied id of the point
};

/*
 * Static 2-d tree laid out implicitly in one array (median at the middle of
 * every subrange). Supports exact nearest and farthest queries by
 * branch-and-bound.
 */
class PointTree {
public:
    PointTree() = default;
    PointTree(CurveView pts, std::span<const std::uint32_t> ids);
    explicit PointTree(CurveView pts);

    bool empty() const { return pts_.empty(); }
    std::size_t size() const { return pts_.size(); }

    PointHit nearest(const Point& q) const;
    PointHit farthest(const Point& q) const;

private:
    void build(std::size_t lo, std::size_t hi, int axis);
    void nearest_rec(std::size_t lo, std::size_t hi, int axis, const Box& box, const Point& q,
                     double& best2, std::size_t& best) const;
    void farthest_rec(std::size_t lo, std::size_t hi, int axis, const Box& box, const Point& q,
                      double& best2, std::size_t& best) const;

    std::vector<Point> pts_;
    std::vector<std::uint32_t> ids_;
    Box box_;
};

// Convex hull in counterclockwise order, collinear points dropped. Returns
// indices into pts. One or two indices for degenerate input.
std::vector<std::uint32_t> convex_hull(CurveView pts);

/// Farthest-neighbor queries over a static set: the hull vertices indexed by a
/// PointTree. The farthest point of a set from any query always lies on the hull.
class FarthestStructure {
public:
    FarthestStructure() = default;
    FarthestStructure(CurveView pts, std::span<const std::uint32_t> ids);
    explicit FarthestStructure(CurveView pts);

    bool empty() const { return tree_.empty(); }
    std::size_t hull_size() const { return tree_.size(); }
    PointHit query(const Point& q) const;

private:
    PointTree tree_;
};

class NearestStructure {
public:
    NearestStructure() = default;
    NearestStructure(CurveView pts, std::span<const std::uint32_t> ids) : tree_(pts, ids) {}
    explicit NearestStructure(CurveView pts) : tree_(pts) {}

    bool empty() const { return tree_.empty(); }
    std::size_t size() const { return tree_.size(); }
    PointHit query(const Point& q) const;

private:
    PointTree tree_;
};

struct Edge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected geometric graph; the edge list is kept normalized (u < v, sorted, unique).
class GeometricGraph {
public:
    GeometricGraph() = default;
    GeometricGraph(std::vector<Point> vertices, std::vector<Edge> edges);

    std::size_t num_vertices() const { return vertices_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<Point>& vertices() const { return vertices_; }
    const Point& point(std::size_t v) const { return vertices_[v]; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::span<const std::uint32_t> neighbors(std::size_t v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }
    bool has_edge(std::uint32_t u, std::uint32_t v) const;

    // Component id per vertex.
    std::vector<std::uint32_t> components() const;

private:
    std::vector<Point> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> adjacency_;
};

// Delaunay triangulation (edge graph). Collinear input yields the sorted chain;
// cocircular ties keep whichever diagonal the merge order produces.
GeometricGraph delaunay(std::vector<Point> points);

}  // namespace dfo

#endif
