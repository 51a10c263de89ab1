#ifndef DFO_WORKLOAD_HPP
#define DFO_WORKLOAD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dfo/curve_oracle.hpp"
#include "dfo/graph_oracle.hpp"
#include "dfo/io.hpp"
#include "dfo/tree_oracle.hpp"

namespace dfo {

struct Answer {
    bool decision = false;
    double value = 0.0;  // optimization records
    bool yes = false;    // decision records
};

std::string format_answer(const Answer& a);

/*
 * Runs workload records against the oracle built for one instance, and
 * against the brute-force reference for verification. Graph instances with
 * t > 1 only promise the approximation sandwich, so agreement there is
 * checked as a bound rather than as equality.
 */
class WorkloadRunner {
public:
    WorkloadRunner(const Instance& inst, std::uint64_t seed);

    InstanceKind kind() const { return kind_; }
    std::size_t size() const { return points_.size(); }

    // Throws Error naming the record's line when it does not fit the instance.
    void check(const WorkloadRecord& rec) const;
    // `index` picks the sampling seed, so answers do not depend on the order
    // records are run in.
    Answer run(const WorkloadRecord& rec, std::size_t index, QueryStats* stats = nullptr) const;
    Answer reference(const WorkloadRecord& rec) const;
    bool agrees(const WorkloadRecord& rec, const Answer& fast, const Answer& ref) const;

private:
    InstanceKind kind_;
    std::uint64_t seed_;
    std::vector<Point> points_;
    std::shared_ptr<const GeometricGraph> graph_;
    std::unique_ptr<CurveOracle> curve_;
    std::unique_ptr<TreeOracle> tree_;
    std::unique_ptr<LocalGraphOracle> local_;
    double t_ = 1.0;
};

// Vertex sequence of the unique u-v path of a tree, by breadth-first search.
std::vector<std::uint32_t> bfs_tree_path(const GeometricGraph& tree, std::uint32_t u, std::uint32_t v);

}  // namespace dfo

#endif
