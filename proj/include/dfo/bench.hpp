#ifndef DFO_BENCH_HPP
#define DFO_BENCH_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dfo/geometry.hpp"

namespace dfo {

struct BenchRow {
    std::string kind;
    std::size_t n = 0;
    std::size_t queries = 0;
    double decide_touches = 0.0;  // per decide_k4 / decide_segment
    double small_touches = 0.0;   // per k <= 3 query (curves only)
    double micros = 0.0;          // wall time per decision
};

// Each query is decided at its own optimum, the hardest threshold.
BenchRow bench_curve(const Curve& p, std::size_t queries, std::uint64_t seed);
BenchRow bench_graph(std::shared_ptr<const GeometricGraph> g, double t, std::size_t queries, std::uint64_t seed);

// Least-squares slope of log(field) against log(n).
double fit_exponent(const std::vector<BenchRow>& rows, double BenchRow::*field);

}  // namespace dfo

#endif
