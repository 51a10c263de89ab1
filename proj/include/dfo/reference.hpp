#ifndef DFO_REFERENCE_HPP
#define DFO_REFERENCE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "dfo/geometry.hpp"

namespace dfo::reference {

/*
 * Brute-force ground truth. Quadratic dynamic programs over the full
 * (vertex, vertex) grid; everything faster in the library is tested
 * against these.
 */

// A monotone walk as 0-based index pairs.
using Walk = std::vector<std::pair<std::size_t, std::size_t>>;

bool is_walk(const Walk& w, std::size_t m, std::size_t n);
double walk_cost(const Walk& w, CurveView a, CurveView b);

// Exact discrete Frechet distance. Throws on an empty curve.
double ddf(CurveView a, CurveView b);
bool ddf_decision(CurveView a, CurveView b, double r);

// An optimal walk realizing ddf(a, b).
Walk optimal_walk(CurveView a, CurveView b);

// min over u-v paths (vertex sequences, revisits allowed) of ddf(q, path).
// Throws "no path" when u and v are disconnected.
double ddf_graph(const GeometricGraph& g, std::uint32_t u, std::uint32_t v, CurveView q);
bool ddf_graph_decision(const GeometricGraph& g, std::uint32_t u, std::uint32_t v, CurveView q,
                        double r);

// Max of the two endpoint distances, a lower bound for ddf.
double endpoint_bound(CurveView a, CurveView b);

}  // namespace dfo::reference

#endif
