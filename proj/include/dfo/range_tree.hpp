#ifndef DFO_RANGE_TREE_HPP
#define DFO_RANGE_TREE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "dfo/geometry.hpp"

namespace dfo {

/// Inclusive 0-based vertex range of a curve. `reversed` means the range is
/// traversed from hi down to lo, so prefix and suffix swap roles.
struct RangeRef {
    std::size_t lo = 0;
    std::size_t hi = 0;
    bool reversed = false;

    std::size_t size() const { return hi - lo + 1; }
};

/// Work counters for query-cost measurements.
struct QueryStats {
    std::uint64_t range_nodes = 0;    // canonical nodes of a CanonicalRangeTree touched
    std::uint64_t kd_canonical = 0;   // fully-covered kd-tree nodes reported
    std::uint64_t kd_leaves = 0;      // boundary-crossing kd-tree leaves scanned
    std::uint64_t decisions = 0;      // decision-procedure invocations

    std::uint64_t touches() const { return range_nodes + kd_canonical + kd_leaves; }
    QueryStats& operator+=(const QueryStats& o) {
        range_nodes += o.range_nodes;
        kd_canonical += o.kd_canonical;
        kd_leaves += o.kd_leaves;
        decisions += o.decisions;
        return *this;
    }
};

inline void count_range_node(QueryStats* s) {
    if (s) ++s->range_nodes;
}

/*
 * Balanced binary tree over the vertex sequence of a curve. The node for
 * range [k, l] splits into [k, k + ceil(len/2) - 1] and the rest; every node
 * keeps a farthest-point and a nearest-point structure over its vertices
 * (tiny nodes are scanned instead). Answers max/min distance over any vertex
 * range from O(log n) canonical nodes, and longest-prefix/suffix queries by
 * a root-to-leaf descent.
 */
class CanonicalRangeTree {
public:
    struct Node {
        std::size_t lo = 0, hi = 0;
        std::int32_t left = -1, right = -1;
        FarthestStructure far;
        NearestStructure near;

        bool leaf() const { return left < 0; }
        std::size_t size() const { return hi - lo + 1; }
    };

    CanonicalRangeTree() = default;
    explicit CanonicalRangeTree(Curve curve);

    const Curve& curve() const { return curve_; }
    std::size_t size() const { return curve_.size(); }
    const std::vector<Node>& nodes() const { return nodes_; }
    const Node& node(std::size_t id) const { return nodes_[id]; }
    std::size_t root() const { return 0; }

    void check(const RangeRef& r) const;

    // Canonical node ids covering [lo, hi], left to right.
    std::vector<std::size_t> canonical(std::size_t lo, std::size_t hi, QueryStats* stats = nullptr) const;

    double node_max(std::size_t id, const Point& q) const;
    double node_min(std::size_t id, const Point& q) const;

    double d_max(const RangeRef& r, const Point& q, QueryStats* stats = nullptr) const;
    double d_min(const RangeRef& r, const Point& q, QueryStats* stats = nullptr) const;

    // Traversal-order prefix: storage index of the last vertex of the longest
    // prefix within distance rad of a. For a forward range that is the largest
    // i with d_max([lo, i], a) <= rad; reversed, the smallest j with
    // d_max([j, hi], a) <= rad. nullopt when the first vertex is already too far.
    std::optional<std::size_t> longest_prefix(const RangeRef& r, const Point& a, double rad,
                                              QueryStats* stats = nullptr) const;
    std::optional<std::size_t> longest_suffix(const RangeRef& r, const Point& b, double rad,
                                              QueryStats* stats = nullptr) const;

    // Storage-order scans used by both of the above.
    std::optional<std::size_t> extend_right(std::size_t lo, std::size_t hi, const Point& a, double rad,
                                            QueryStats* stats = nullptr) const;
    std::optional<std::size_t> extend_left(std::size_t lo, std::size_t hi, const Point& b, double rad,
                                           QueryStats* stats = nullptr) const;

private:
    std::int32_t build(std::size_t lo, std::size_t hi);
    void canonical_rec(std::size_t id, std::size_t lo, std::size_t hi, std::vector<std::size_t>& out,
                       QueryStats* stats) const;

    Curve curve_;
    std::vector<Node> nodes_;
};

}  // namespace dfo

#endif
