#ifndef DFO_RANGE_SEARCH_HPP
#define DFO_RANGE_SEARCH_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dfo/geometry.hpp"
#include "dfo/range_tree.hpp"

namespace dfo {

/*
 * Kd-tree over a static point set. Every node owns a contiguous slice of the
 * kd-ordered point array, so a node doubles as a canonical subset: a disk
 * query returns the maximal nodes whose bounding box lies inside the disk,
 * plus the individual in-disk points of leaves the boundary crosses.
 *
 * Splits alternate x/y at the median (ties by id); leaves hold at most 8
 * points. Containment tests go through dist() so they agree exactly with
 * pointwise checks.
 */
class DiskRangeIndex {
public:
    static constexpr std::size_t kLeafSize = 8;

    struct Node {
        std::uint32_t begin = 0, end = 0;  // slice of the kd-ordered arrays
        std::int32_t left = -1, right = -1;
        Box box;

        bool leaf() const { return left < 0; }
        std::uint32_t size() const { return end - begin; }
    };

    struct DiskResult {
        std::vector<std::uint32_t> nodes;    // canonical node ids, pairwise disjoint
        std::vector<std::uint32_t> singles;  // kd-order positions of individually tested points
    };

    struct Reported {
        std::uint32_t id = 0;
        Point point;
    };

    DiskRangeIndex() = default;
    explicit DiskRangeIndex(CurveView pts);
    DiskRangeIndex(CurveView pts, std::span<const std::uint32_t> ids);

    bool empty() const { return pts_.empty(); }
    std::size_t size() const { return pts_.size(); }
    const std::vector<Node>& nodes() const { return nodes_; }
    const Node& node(std::size_t id) const { return nodes_[id]; }
    // kd-ordered storage.
    const std::vector<Point>& points() const { return pts_; }
    const std::vector<std::uint32_t>& ids() const { return ids_; }

    DiskResult disk_canonical(const Disk& d, QueryStats* stats = nullptr) const;
    void disk_canonical(const Disk& d, DiskResult& out, QueryStats* stats = nullptr) const;

    // All points p with inner <= dist(p, center) <= outer.
    std::vector<Reported> annulus_report(const Annulus& a, QueryStats* stats = nullptr) const;

    // Nearest point of one node's subset.
    double node_nearest(std::size_t id, const Point& q) const;

private:
    std::int32_t build(std::uint32_t begin, std::uint32_t end, int axis);
    void disk_rec(std::size_t id, const Disk& d, DiskResult& out, QueryStats* stats) const;
    void annulus_rec(std::size_t id, const Annulus& a, std::vector<Reported>& out, QueryStats* stats) const;
    void nearest_rec(std::size_t id, const Point& q, double& best2) const;

    std::vector<Point> pts_;
    std::vector<std::uint32_t> ids_;
    std::vector<Node> nodes_;
};

/*
 * Consecutive-edge two-disk queries over index ranges of a curve. An outer
 * balanced tree over vertex positions stores, per node, a DiskRangeIndex over
 * its vertices p_k and, per kd node, a nearest structure over the successors
 * p_{k+1}. The kd nodes themselves answer the "same vertex in both disks"
 * variant.
 */
class EdgePairIndex {
public:
    EdgePairIndex() = default;
    explicit EdgePairIndex(CurveView curve);

    // Is there k in [lo, hi - 1] with p_k in disk_R(b) and p_{k+1} in disk_R(c),
    // or k in [lo, hi] with p_k in both disks?
    bool edge_pair_exists(std::size_t lo, std::size_t hi, const Point& b, const Point& c, double r,
                          QueryStats* stats = nullptr) const;

    // Total number of points stored across all successor structures.
    std::size_t stored_points() const;

private:
    struct Outer {
        std::size_t lo = 0, hi = 0;
        std::int32_t left = -1, right = -1;
        DiskRangeIndex index;                      // empty for small nodes (scanned)
        std::vector<NearestStructure> successors;  // per kd node; empty for kd leaves
    };

    std::int32_t build(std::size_t lo, std::size_t hi);
    void decompose(std::size_t id, std::size_t lo, std::size_t hi, std::vector<std::size_t>& out) const;
    bool vertex_query(std::size_t id, const Point& b, const Point& c, double r, QueryStats* stats) const;
    bool edge_query(std::size_t id, const Point& b, const Point& c, double r, QueryStats* stats) const;

    Curve curve_;
    std::vector<Outer> outer_;
};

/*
 * Disk range searching over graph vertices where each canonical subset P'
 * also keeps a nearest structure over P' and its graph neighbors N(P').
 */
class NeighborAugmentedIndex {
public:
    NeighborAugmentedIndex() = default;
    explicit NeighborAugmentedIndex(std::shared_ptr<const GeometricGraph> g);

    const DiskRangeIndex& index() const { return index_; }

    // min over x in P∩D and y in {x}∪N(x) of dist(y, target); nullopt if P∩D is empty.
    std::optional<double> neighbor_disk_min(const Disk& d, const Point& target, QueryStats* stats = nullptr) const;

    std::size_t stored_points() const;

private:
    std::shared_ptr<const GeometricGraph> graph_;
    DiskRangeIndex index_;
    std::vector<NearestStructure> augmented_;  // per kd node; empty for leaves
};

}  // namespace dfo

#endif
