#include "dfo/workload.hpp"

#include <algorithm>

#include "dfo/reference.hpp"

namespace dfo {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Error record_error(const WorkloadRecord& rec, const std::string& what) {
    return Error(rec.line ? "line " + std::to_string(rec.line) + ": " + what : what);
}

const char* kind_name(InstanceKind k) {
    switch (k) {
        case InstanceKind::curve: return "curve";
        case InstanceKind::tree: return "tree";
        case InstanceKind::graph: return "graph";
    }
    return "?";
}

}  // namespace

std::string format_answer(const Answer& a) {
    if (a.decision) return a.yes ? "true" : "false";
    return format_double(a.value);
}

WorkloadRunner::WorkloadRunner(const Instance& inst, std::uint64_t seed)
    : kind_(inst.kind), seed_(seed), points_(inst.points), t_(inst.t) {
    switch (kind_) {
        case InstanceKind::curve: curve_ = std::make_unique<CurveOracle>(inst.points, seed); break;
        case InstanceKind::tree:
            graph_ = std::make_shared<const GeometricGraph>(inst.graph());
            tree_ = std::make_unique<TreeOracle>(*graph_, seed);
            break;
        case InstanceKind::graph:
            graph_ = std::make_shared<const GeometricGraph>(inst.graph());
            local_ = std::make_unique<LocalGraphOracle>(graph_, inst.t, seed);
            break;
    }
}

void WorkloadRunner::check(const WorkloadRecord& rec) const {
    if (rec.kind != kind_)
        throw record_error(rec, std::string(kind_name(rec.kind)) + " record against a " + kind_name(kind_) +
                                    " instance");
    const std::size_t n = points_.size();
    if (rec.q.empty()) throw record_error(rec, "empty query curve");
    if (rec.q.size() > kMaxQuerySize) throw record_error(rec, "query size unsupported");
    if (kind_ == InstanceKind::curve) {
        if (rec.lo > rec.hi || rec.hi >= n) throw record_error(rec, "range out of bounds");
    } else if (rec.u >= n || rec.v >= n) {
        throw record_error(rec, "vertex out of range");
    }
    if (kind_ == InstanceKind::graph && rec.q.size() != 2) throw record_error(rec, "graph queries are segments");
}

Answer WorkloadRunner::run(const WorkloadRecord& rec, std::size_t index, QueryStats* stats) const {
    check(rec);
    Answer a;
    a.decision = rec.decision();
    const double r = rec.r.value_or(0.0);
    const std::uint64_t query_seed = mix(seed_ ^ mix(index));
    try {
        switch (kind_) {
            case InstanceKind::curve: {
                const RangeRef range{rec.lo, rec.hi, rec.reversed};
                if (a.decision) {
                    a.yes = curve_->decide(range, rec.q, r, stats);
                } else if (rec.q.size() == 4) {
                    a.value = curve_->query_k4_seeded(range, rec.q[0], rec.q[1], rec.q[2], rec.q[3], query_seed, stats);
                } else {
                    a.value = curve_->query(range, rec.q, stats);
                }
                break;
            }
            case InstanceKind::tree: {
                const double v = tree_->query(rec.u, rec.v, rec.q, stats);
                if (a.decision) a.yes = v <= r;
                else a.value = v;
                break;
            }
            case InstanceKind::graph: {
                const SegmentQuery q{rec.u, rec.v, rec.q[0], rec.q[1]};
                if (a.decision) a.yes = local_->decide_segment(q, r, stats);
                else a.value = local_->query_segment_seeded(q, query_seed, stats);
                break;
            }
        }
    } catch (const Error& e) {
        throw record_error(rec, e.what());
    }
    return a;
}

Answer WorkloadRunner::reference(const WorkloadRecord& rec) const {
    check(rec);
    Answer a;
    a.decision = rec.decision();
    const double r = rec.r.value_or(0.0);
    Curve path;
    switch (kind_) {
        case InstanceKind::curve:
            path.assign(points_.begin() + static_cast<std::ptrdiff_t>(rec.lo),
                        points_.begin() + static_cast<std::ptrdiff_t>(rec.hi) + 1);
            if (rec.reversed) std::reverse(path.begin(), path.end());
            break;
        case InstanceKind::tree:
            for (std::uint32_t x : bfs_tree_path(*graph_, rec.u, rec.v)) path.push_back(points_[x]);
            break;
        case InstanceKind::graph:
            try {
                if (a.decision) a.yes = reference::ddf_graph_decision(*graph_, rec.u, rec.v, rec.q, r);
                else a.value = reference::ddf_graph(*graph_, rec.u, rec.v, rec.q);
            } catch (const Error& e) {
                throw record_error(rec, e.what());
            }
            return a;
    }
    if (a.decision) a.yes = reference::ddf_decision(path, rec.q, r);
    else a.value = reference::ddf(path, rec.q);
    return a;
}

bool WorkloadRunner::agrees(const WorkloadRecord& rec, const Answer& fast, const Answer& ref) const {
    if (fast.decision != ref.decision) return false;
    const bool approximate = kind_ == InstanceKind::graph && t_ > 1.0;
    if (!approximate) return fast.decision ? fast.yes == ref.yes : fast.value == ref.value;
    // Fast decisions answer "is r >= the returned approximation", which is
    // implied by a true reference answer.
    if (fast.decision) return !ref.yes || fast.yes;
    constexpr double tol = 1e-9;
    const double r = fast.value, d = ref.value;
    if (r > d * (1.0 + tol)) return false;
    const bool anchored = rec.q[0] == points_[rec.u] && rec.q[1] == points_[rec.v];
    return !anchored || d <= (t_ + 1.0) / 2.0 * r * (1.0 + tol);
}

std::vector<std::uint32_t> bfs_tree_path(const GeometricGraph& tree, std::uint32_t u, std::uint32_t v) {
    const std::size_t n = tree.vertices().size();
    std::vector<std::int64_t> from(n, -1);
    std::vector<std::uint32_t> queue{u};
    from[u] = u;
    for (std::size_t h = 0; h < queue.size() && from[v] < 0; ++h)
        for (std::uint32_t y : tree.neighbors(queue[h]))
            if (from[y] < 0) {
                from[y] = queue[h];
                queue.push_back(y);
            }
    if (from[v] < 0) throw Error("no path");
    std::vector<std::uint32_t> path{v};
    while (path.back() != u) path.push_back(static_cast<std::uint32_t>(from[path.back()]));
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace dfo
