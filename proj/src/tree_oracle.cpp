#include "dfo/tree_oracle.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace dfo {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

TreeOracle::TreeOracle(const GeometricGraph& tree, std::uint64_t seed) : points_(tree.vertices()) {
    const std::size_t n = points_.size();
    if (n == 0) throw Error("empty tree");
    if (tree.edges().size() != n - 1) throw Error("not a tree");

    // BFS order from the root; a tree with n - 1 edges is connected iff BFS
    // reaches every vertex.
    parent_.assign(n, -1);
    depth_.assign(n, 0);
    std::vector<std::uint32_t> order{0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    for (std::size_t h = 0; h < order.size(); ++h) {
        const std::uint32_t x = order[h];
        for (std::uint32_t y : tree.neighbors(x)) {
            if (seen[y]) continue;
            seen[y] = 1;
            parent_[y] = x;
            depth_[y] = depth_[x] + 1;
            order.push_back(y);
        }
    }
    if (order.size() != n) throw Error("not a tree");

    std::vector<std::uint32_t> sub(n, 1);
    for (std::size_t h = n; h-- > 1;) sub[static_cast<std::size_t>(parent_[order[h]])] += sub[order[h]];
    std::vector<std::int64_t> heavy(n, -1);
    for (std::uint32_t x = 0; x < n; ++x) {
        for (std::uint32_t y : tree.neighbors(x)) {
            if (parent_[y] != static_cast<std::int64_t>(x)) continue;
            if (heavy[x] < 0 || sub[y] > sub[static_cast<std::size_t>(heavy[x])] ||
                (sub[y] == sub[static_cast<std::size_t>(heavy[x])] && y < heavy[x]))
                heavy[x] = y;
        }
    }

    path_of_.assign(n, 0);
    pos_.assign(n, 0);
    for (std::uint32_t x : order) {
        if (x != 0 && heavy[static_cast<std::size_t>(parent_[x])] == static_cast<std::int64_t>(x)) continue;
        const auto id = static_cast<std::uint32_t>(paths_.size());
        std::vector<std::uint32_t> path;
        for (std::int64_t y = x; y >= 0; y = heavy[static_cast<std::size_t>(y)]) {
            path_of_[static_cast<std::size_t>(y)] = id;
            pos_[static_cast<std::size_t>(y)] = static_cast<std::uint32_t>(path.size());
            path.push_back(static_cast<std::uint32_t>(y));
        }
        paths_.push_back(std::move(path));
    }
    oracles_.reserve(paths_.size());
    for (std::size_t id = 0; id < paths_.size(); ++id) {
        Curve c;
        c.reserve(paths_[id].size());
        for (std::uint32_t x : paths_[id]) c.push_back(points_[x]);
        oracles_.emplace_back(std::move(c), mix(seed ^ mix(id)));
    }
}

void TreeOracle::check_vertex(std::uint32_t v) const {
    if (v >= points_.size()) throw Error("vertex out of range");
}

PathPieceList TreeOracle::decompose_path(std::uint32_t u, std::uint32_t v) const {
    check_vertex(u);
    check_vertex(v);
    PathPieceList up, down;
    while (path_of_[u] != path_of_[v]) {
        const std::uint32_t hu = paths_[path_of_[u]].front();
        const std::uint32_t hv = paths_[path_of_[v]].front();
        if (depth_[hu] >= depth_[hv]) {
            up.push_back({path_of_[u], {0, pos_[u], pos_[u] > 0}});
            u = static_cast<std::uint32_t>(parent_[hu]);
        } else {
            down.push_back({path_of_[v], {0, pos_[v], false}});
            v = static_cast<std::uint32_t>(parent_[hv]);
        }
    }
    if (pos_[u] >= pos_[v]) up.push_back({path_of_[u], {pos_[v], pos_[u], pos_[u] > pos_[v]}});
    else up.push_back({path_of_[u], {pos_[u], pos_[v], false}});
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
}

std::vector<std::uint32_t> TreeOracle::path_vertices(std::uint32_t u, std::uint32_t v) const {
    std::vector<std::uint32_t> out;
    for (const PathPiece& pc : decompose_path(u, v)) {
        const auto& p = paths_[pc.path];
        if (pc.range.reversed) {
            for (std::size_t i = pc.range.hi + 1; i-- > pc.range.lo;) out.push_back(p[i]);
        } else {
            for (std::size_t i = pc.range.lo; i <= pc.range.hi; ++i) out.push_back(p[i]);
        }
    }
    return out;
}

double TreeOracle::query(std::uint32_t u, std::uint32_t v, QueryView q, QueryStats* stats) const {
    if (q.empty()) throw Error("empty query");
    if (q.size() > kMaxQuerySize) throw Error("query size unsupported");
    const PathPieceList pieces = decompose_path(u, v);
    const std::size_t m = pieces.size(), k = q.size();
    constexpr double inf = std::numeric_limits<double>::infinity();

    // next[l]: distance of pieces j+1.. against q[l..k-1], starting q[l] on
    // the first vertex of piece j+1.
    std::array<double, kMaxQuerySize> next{}, cur{};
    for (std::size_t j = m; j-- > 0;) {
        const PathPiece& pc = pieces[j];
        const CurveOracle& o = oracles_[pc.path];
        for (std::size_t l = 0; l < k; ++l) {
            if (j + 1 == m) {
                cur[l] = o.query(pc.range, q.subspan(l), stats);
                continue;
            }
            double best = inf;
            for (std::size_t l2 = l; l2 < k; ++l2) {
                // Crossing into the next piece keeps q[l2] or advances to q[l2+1].
                const double tail = std::min(next[l2], l2 + 1 < k ? next[l2 + 1] : inf);
                if (tail >= best) continue;
                const double head = o.query(pc.range, q.subspan(l, l2 - l + 1), stats);
                best = std::min(best, std::max(head, tail));
            }
            cur[l] = best;
        }
        next = cur;
    }
    return next[0];
}

}  // namespace dfo
