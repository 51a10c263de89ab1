#ifndef DFO_INSTANCES_HPP
#define DFO_INSTANCES_HPP

#include <cstdint>
#include <vector>

#include "dfo/geometry.hpp"

namespace dfo {

// Koch curve F_n on the unit segment, bumps to the left; 4^n + 1 vertices.
// Throws "instance too large" for n > 12.
Curve koch(int n);

// Uniform in the unit square, deterministic in the seed.
std::vector<Point> random_points(std::size_t n, std::uint64_t seed);
Curve random_curve(std::size_t n, std::uint64_t seed);
// Vertex i > 0 attaches to a uniformly random earlier vertex.
GeometricGraph random_tree(std::size_t n, std::uint64_t seed);

// Greedy t-spanner: pairs by increasing length, an edge is added when the
// current graph distance exceeds t times the Euclidean one.
GeometricGraph greedy_spanner(const std::vector<Point>& points, double t);

// Max over connected vertex pairs of graph distance / Euclidean distance
// (all-pairs Dijkstra). Coincident pairs are skipped.
double measure_stretch(const GeometricGraph& g);
// Same for the path graph of a curve, by arc length.
double curve_stretch(CurveView c);

struct LocalityPair {
    std::uint32_t p = 0, q = 0;  // in-disk pair connected last
    Point center;
    double radius = 0.0;
    double scale = 1.0;          // smallest s connecting every in-disk pair inside sD
};

struct LocalityReport {
    std::size_t disks = 0;
    double t_hat = 1.0;
    std::vector<LocalityPair> samples;  // worst pair per disk
};

// Empirical lower bound on the locality parameter. For n <= 128 the disks
// include the diametral disk of every vertex pair; `samples` random disks
// are added on top. Throws if the graph is disconnected.
LocalityReport estimate_locality(const GeometricGraph& g, std::size_t samples, std::uint64_t seed);

// Scale s (>= 1) at which all vertices inside disk(center, radius) become
// connected through vertices inside disk(center, s * radius).
LocalityPair disk_locality(const GeometricGraph& g, const Point& center, double radius);

}  // namespace dfo

#endif
