#ifndef DFO_IO_HPP
#define DFO_IO_HPP

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "dfo/geometry.hpp"

namespace dfo {

// Parse failure carrying the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

enum class InstanceKind { curve, tree, graph };

struct Instance {
    InstanceKind kind = InstanceKind::curve;
    std::vector<Point> points;
    std::vector<Edge> edges;  // tree and graph only
    double t = 1.0;           // graph only

    GeometricGraph graph() const { return GeometricGraph(points, edges); }
};

Instance parse_instance(std::istream& in);
Instance read_instance(const std::string& path);
std::string serialize(const Instance& inst);

// One workload line. Curve ranges are stored 0-based with lo <= hi; files
// are 1-based, and a file range with lo > hi is traversed backwards.
struct WorkloadRecord {
    InstanceKind kind = InstanceKind::curve;
    std::size_t lo = 0, hi = 0;  // curve
    bool reversed = false;
    std::uint32_t u = 0, v = 0;  // tree, graph
    std::vector<Point> q;        // graph: exactly (a, b)
    std::optional<double> r;     // decision threshold
    std::size_t line = 0;        // source line, 0 when built in memory

    bool decision() const { return r.has_value(); }
};

std::vector<WorkloadRecord> parse_workload(std::istream& in);
std::vector<WorkloadRecord> read_workload(const std::string& path);
std::string serialize(const WorkloadRecord& rec);
std::string serialize(const std::vector<WorkloadRecord>& recs);

// %.17g: 17 significant digits, round-trips every double.
std::string format_double(double x);

}  // namespace dfo

#endif
