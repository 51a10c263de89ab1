#ifndef DFO_TREE_ORACLE_HPP
#define DFO_TREE_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "dfo/curve_oracle.hpp"
#include "dfo/geometry.hpp"

namespace dfo {

// One oriented piece of a tree path: a range on a heavy path.
struct PathPiece {
    std::uint32_t path = 0;
    RangeRef range;
};

using PathPieceList = std::vector<PathPiece>;

/*
 * Heavy-path decomposition of a geometric tree rooted at vertex 0. The heavy
 * child is the child with the largest subtree (ties to the smaller index);
 * each heavy path is stored from its head (closest to the root) downwards
 * and gets its own CurveOracle. A u-v query splits the tree path into
 * O(log n) oriented pieces and combines per-piece answers with a small
 * dynamic program over (piece, query vertex).
 */
class TreeOracle {
public:
    // Throws unless `tree` is connected and acyclic.
    explicit TreeOracle(const GeometricGraph& tree, std::uint64_t seed = 0);

    std::size_t size() const { return points_.size(); }
    const std::vector<Point>& points() const { return points_; }
    std::size_t path_count() const { return paths_.size(); }
    const std::vector<std::uint32_t>& path(std::size_t id) const { return paths_[id]; }
    const CurveOracle& path_oracle(std::size_t id) const { return oracles_[id]; }
    std::uint32_t path_of(std::uint32_t v) const { return path_of_[v]; }
    std::uint32_t position(std::uint32_t v) const { return pos_[v]; }
    std::int64_t parent(std::uint32_t v) const { return parent_[v]; }

    PathPieceList decompose_path(std::uint32_t u, std::uint32_t v) const;
    // Vertex sequence of the u-v path, expanded from decompose_path.
    std::vector<std::uint32_t> path_vertices(std::uint32_t u, std::uint32_t v) const;

    double query(std::uint32_t u, std::uint32_t v, QueryView q, QueryStats* stats = nullptr) const;

private:
    void check_vertex(std::uint32_t v) const;

    std::vector<Point> points_;
    std::vector<std::int64_t> parent_;
    std::vector<std::uint32_t> depth_;
    std::vector<std::uint32_t> path_of_, pos_;
    std::vector<std::vector<std::uint32_t>> paths_;
    std::vector<CurveOracle> oracles_;
};

}  // namespace dfo

#endif
