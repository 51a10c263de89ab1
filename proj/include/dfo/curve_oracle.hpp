#ifndef DFO_CURVE_ORACLE_HPP
#define DFO_CURVE_ORACLE_HPP

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>

#include "dfo/geometry.hpp"
#include "dfo/range_search.hpp"
#include "dfo/range_tree.hpp"

namespace dfo {

using QueryView = std::span<const Point>;

inline constexpr std::size_t kMaxQuerySize = 4;

struct FeasibilityOutcome {
    bool feasible = false;
    std::optional<std::size_t> prefix_end;    // i with P⊢(d) = P[lo, i]
    std::optional<std::size_t> suffix_begin;  // j with P⊣(d) = P[j, hi]
};

/*
 * Discrete Frechet distance oracle over a preprocessed curve P for query
 * curves of one to four vertices, on P or on any vertex-to-vertex subcurve.
 *
 *   k = 1  max distance over the range.
 *   k = 2  split search: the answer balances the farthest distance of a
 *          prefix from a against the farthest distance of the rest from b.
 *   k = 3  binary searches over the running maxima from a (and from c),
 *          then one constant-prefix/suffix window that handles the case
 *          where the middle query vertex is the bottleneck.
 *   k = 4  prefix/suffix classification plus edge-pair range searching for
 *          the decision problem; optimization by sampled bracketing of the
 *          critical distances and annulus extraction inside the bracket.
 *
 * Ranges with `reversed` set are answered by reversing the query curve.
 * Everything is immutable after construction; the only mutable member is a
 * query counter from which the k = 4 sampling generator is derived.
 */
class CurveOracle {
public:
    CurveOracle() = default;
    explicit CurveOracle(Curve curve, std::uint64_t seed = 0);
    CurveOracle(const CurveOracle&) = delete;
    CurveOracle& operator=(const CurveOracle&) = delete;
    CurveOracle(CurveOracle&& other) noexcept;
    CurveOracle& operator=(CurveOracle&& other) noexcept;

    const Curve& curve() const { return tree_.curve(); }
    std::size_t size() const { return tree_.size(); }
    std::uint64_t seed() const { return seed_; }
    const CanonicalRangeTree& range_tree() const { return tree_; }
    const EdgePairIndex& edge_pairs() const { return edges_; }
    const DiskRangeIndex& vertex_index() const { return vertices_; }
    RangeRef full() const { return {0, size() - 1, false}; }

    double query_k1(const RangeRef& r, const Point& a, QueryStats* stats = nullptr) const;

    bool decide_k2(const RangeRef& r, const Point& a, const Point& b, double d, QueryStats* stats = nullptr) const;
    double query_k2(const RangeRef& r, const Point& a, const Point& b, QueryStats* stats = nullptr) const;

    FeasibilityOutcome feasibility_k3(const RangeRef& r, const Point& a, const Point& b, const Point& c, double d,
                                      QueryStats* stats = nullptr) const;
    bool decide_k3(const RangeRef& r, const Point& a, const Point& b, const Point& c, double d,
                   QueryStats* stats = nullptr) const;
    double query_k3(const RangeRef& r, const Point& a, const Point& b, const Point& c,
                    QueryStats* stats = nullptr) const;

    bool decide_k4(const RangeRef& r, const Point& a, const Point& b, const Point& c, const Point& d, double radius,
                   QueryStats* stats = nullptr) const;
    // Draws its sampling seed from (oracle seed, query counter).
    double query_k4(const RangeRef& r, const Point& a, const Point& b, const Point& c, const Point& d,
                    QueryStats* stats = nullptr) const;
    double query_k4_seeded(const RangeRef& r, const Point& a, const Point& b, const Point& c, const Point& d,
                           std::uint64_t query_seed, QueryStats* stats = nullptr) const;

    // Dispatch on |q| in 1..4; throws "query size unsupported" otherwise.
    double query(const RangeRef& r, QueryView q, QueryStats* stats = nullptr) const;
    bool decide(const RangeRef& r, QueryView q, double d, QueryStats* stats = nullptr) const;

private:
    // Forward-range workers; lo <= hi already validated.
    double k2(std::size_t lo, std::size_t hi, const Point& a, const Point& b, QueryStats* stats) const;
    FeasibilityOutcome k3_feasibility(std::size_t lo, std::size_t hi, const Point& a, const Point& b,
                                      const Point& c, double d, QueryStats* stats) const;
    double k3_middle_need(std::size_t lo, std::size_t hi, std::size_t i, std::size_t j, const Point& b,
                          QueryStats* stats) const;
    double k3(std::size_t lo, std::size_t hi, const Point& a, const Point& b, const Point& c,
              QueryStats* stats) const;
    bool k4_decide(std::size_t lo, std::size_t hi, const Point& a, const Point& b, const Point& c, const Point& d,
                   double radius, QueryStats* stats) const;
    double k4(std::size_t lo, std::size_t hi, const Point& a, const Point& b, const Point& c, const Point& d,
              std::uint64_t query_seed, QueryStats* stats) const;

    std::uint64_t next_query_seed() const;

    std::uint64_t seed_ = 0;
    CanonicalRangeTree tree_;
    EdgePairIndex edges_;
    DiskRangeIndex vertices_;
    mutable std::atomic<std::uint64_t> counter_{0};
};

}  // namespace dfo

#endif
