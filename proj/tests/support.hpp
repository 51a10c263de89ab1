#ifndef DFO_TEST_SUPPORT_HPP
#define DFO_TEST_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "dfo/geometry.hpp"

namespace dfo::test {

// Points on a coarse grid, so distance ties and repeated vertices are common.
inline Curve grid_curve(std::size_t n, std::mt19937_64& rng, int side = 5) {
    std::uniform_int_distribution<int> c(0, side - 1);
    Curve out(n);
    for (Point& p : out) p = {static_cast<double>(c(rng)), static_cast<double>(c(rng))};
    return out;
}

inline Curve uniform_curve(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Curve out(n);
    for (Point& p : out) p = {u(rng), u(rng)};
    return out;
}

inline Curve slice(CurveView c, std::size_t lo, std::size_t hi, bool reversed = false) {
    Curve out(c.begin() + static_cast<std::ptrdiff_t>(lo), c.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    if (reversed) std::reverse(out.begin(), out.end());
    return out;
}

inline double scan_max(CurveView c, std::size_t lo, std::size_t hi, const Point& q) {
    double best = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) best = std::max(best, dist(c[i], q));
    return best;
}

inline double scan_min(CurveView c, std::size_t lo, std::size_t hi, const Point& q) {
    double best = dist(c[lo], q);
    for (std::size_t i = lo; i <= hi; ++i) best = std::min(best, dist(c[i], q));
    return best;
}

}  // namespace dfo::test

#endif
