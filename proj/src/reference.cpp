#include "dfo/reference.hpp"

#include <algorithm>
#include <limits>

namespace dfo::reference {

namespace {

void require_nonempty(CurveView a, CurveView b) {
    if (a.empty() || b.empty()) throw Error("empty curve");
}

}  // namespace

bool is_walk(const Walk& w, std::size_t m, std::size_t n) {
    if (w.empty() || w.front() != std::pair<std::size_t, std::size_t>{0, 0}) return false;
    if (w.back() != std::pair<std::size_t, std::size_t>{m - 1, n - 1}) return false;
    for (std::size_t k = 1; k < w.size(); ++k) {
        const std::size_t di = w[k].first - w[k - 1].first;
        const std::size_t dj = w[k].second - w[k - 1].second;
        if (w[k].first < w[k - 1].first || w[k].second < w[k - 1].second) return false;
        if (di > 1 || dj > 1 || di + dj == 0) return false;
    }
    return true;
}

double walk_cost(const Walk& w, CurveView a, CurveView b) {
    double c = 0.0;
    for (auto [i, j] : w) c = std::max(c, dist(a[i], b[j]));
    return c;
}

double ddf(CurveView a, CurveView b) {
    require_nonempty(a, b);
    const std::size_t n = b.size();
    std::vector<double> prev(n), cur(n);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d = dist(a[i], b[j]);
            double best;
            if (i == 0 && j == 0) best = 0.0;
            else if (i == 0) best = cur[j - 1];
            else if (j == 0) best = prev[j];
            else best = std::min({prev[j], prev[j - 1], cur[j - 1]});
            cur[j] = std::max(best, d);
        }
        std::swap(prev, cur);
    }
    return prev[n - 1];
}

bool ddf_decision(CurveView a, CurveView b, double r) {
    require_nonempty(a, b);
    const std::size_t n = b.size();
    std::vector<char> prev(n, 0), cur(n, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            bool reach;
            if (i == 0 && j == 0) reach = true;
            else if (i == 0) reach = cur[j - 1];
            else if (j == 0) reach = prev[j];
            else reach = prev[j] || prev[j - 1] || cur[j - 1];
            cur[j] = reach && dist(a[i], b[j]) <= r;
        }
        std::swap(prev, cur);
    }
    return prev[n - 1];
}

Walk optimal_walk(CurveView a, CurveView b) {
    require_nonempty(a, b);
    const std::size_t m = a.size(), n = b.size();
    std::vector<double> c(m * n);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return c[i * n + j]; };
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double best;
            if (i == 0 && j == 0) best = 0.0;
            else if (i == 0) best = at(i, j - 1);
            else if (j == 0) best = at(i - 1, j);
            else best = std::min({at(i - 1, j), at(i - 1, j - 1), at(i, j - 1)});
            at(i, j) = std::max(best, dist(a[i], b[j]));
        }
    }
    Walk w{{m - 1, n - 1}};
    std::size_t i = m - 1, j = n - 1;
    while (i > 0 || j > 0) {
        if (i == 0) --j;
        else if (j == 0) --i;
        else {
            const double diag = at(i - 1, j - 1), up = at(i - 1, j), left = at(i, j - 1);
            if (diag <= up && diag <= left) {
                --i;
                --j;
            } else if (up <= left) {
                --i;
            } else {
                --j;
            }
        }
        w.emplace_back(i, j);
    }
    std::reverse(w.begin(), w.end());
    return w;
}

double endpoint_bound(CurveView a, CurveView b) {
    require_nonempty(a, b);
    return std::max(dist(a.front(), b.front()), dist(a.back(), b.back()));
}

bool ddf_graph_decision(const GeometricGraph& g, std::uint32_t u, std::uint32_t v, CurveView q,
                        double r) {
    const std::size_t n = g.num_vertices();
    if (u >= n || v >= n) throw Error("vertex out of range");
    if (q.empty()) throw Error("empty curve");
    const std::size_t k = q.size();
    auto ok = [&](std::size_t w, std::size_t j) { return dist(g.point(w), q[j]) <= r; };
    if (!ok(u, 0)) return false;

    // States (w, j); a step moves along an edge, advances j, or both.
    std::vector<char> seen(n * k, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{u, 0}};
    seen[u * k] = 1;
    while (!stack.empty()) {
        const auto [w, j] = stack.back();
        stack.pop_back();
        if (w == v && j + 1 == k) return true;
        auto push = [&](std::uint32_t w2, std::uint32_t j2) {
            if (!seen[w2 * k + j2] && ok(w2, j2)) {
                seen[w2 * k + j2] = 1;
                stack.emplace_back(w2, j2);
            }
        };
        if (j + 1 < k) push(w, j + 1);
        for (std::uint32_t w2 : g.neighbors(w)) {
            push(w2, j);
            if (j + 1 < k) push(w2, j + 1);
        }
    }
    return false;
}

double ddf_graph(const GeometricGraph& g, std::uint32_t u, std::uint32_t v, CurveView q) {
    const std::size_t n = g.num_vertices();
    if (u >= n || v >= n) throw Error("vertex out of range");
    if (q.empty()) throw Error("empty curve");
    if (g.components()[u] != g.components()[v]) throw Error("no path");

    std::vector<double> cand;
    cand.reserve(n * q.size());
    for (const Point& p : g.vertices()) {
        for (const Point& x : q) cand.push_back(dist(p, x));
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::size_t lo = 0, hi = cand.size() - 1;  // cand[hi] always feasible
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (ddf_graph_decision(g, u, v, q, cand[mid])) hi = mid;
        else lo = mid + 1;
    }
    return cand[lo];
}

}  // namespace dfo::reference
