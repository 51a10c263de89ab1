#ifndef DFO_GRAPH_ORACLE_HPP
#define DFO_GRAPH_ORACLE_HPP

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>

#include "dfo/geometry.hpp"
#include "dfo/range_search.hpp"

namespace dfo {

struct SegmentQuery {
    std::uint32_t u = 0, v = 0;
    std::optional<Point> a, b;  // default to the points of u and v
};

/*
 * Segment queries d_dF(ab, path from u to v) against a t-local geometric
 * graph. The decision at radius d reduces to one range search: is there a
 * vertex x in disk_d(a) with x or a neighbor of x in disk_d(b)? For t = 1
 * (Delaunay) that is exact; for t > 1 the returned r satisfies
 * r <= d* <= (t + 1) r / 2 for vertex-anchored segments.
 */
class LocalGraphOracle {
public:
    LocalGraphOracle(std::shared_ptr<const GeometricGraph> g, double t, std::uint64_t seed = 0);
    LocalGraphOracle(GeometricGraph g, double t, std::uint64_t seed = 0);

    const GeometricGraph& graph() const { return *graph_; }
    double locality() const { return t_; }
    std::uint64_t seed() const { return seed_; }
    const NeighborAugmentedIndex& edge_index() const { return edges_; }

    bool decide_segment(const SegmentQuery& q, double d, QueryStats* stats = nullptr) const;
    // Throws "no path" when u and v are in different components.
    double query_segment(const SegmentQuery& q, QueryStats* stats = nullptr) const;
    double query_segment_seeded(const SegmentQuery& q, std::uint64_t query_seed, QueryStats* stats = nullptr) const;

private:
    struct Resolved {
        Point a, b;
        double delta;
    };
    Resolved resolve(const SegmentQuery& q) const;
    bool decide(const Resolved& r, double d, QueryStats* stats) const;

    std::shared_ptr<const GeometricGraph> graph_;
    double t_ = 1.0;
    std::uint64_t seed_ = 0;
    NeighborAugmentedIndex edges_;
    FarthestStructure far_;
    std::vector<std::uint32_t> component_;
    mutable std::atomic<std::uint64_t> counter_{0};
};

}  // namespace dfo

#endif
