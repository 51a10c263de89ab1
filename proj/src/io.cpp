#include "dfo/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

namespace dfo {

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

struct Line {
    std::size_t number = 0;
    std::vector<std::string_view> tokens;
};

// Splits into non-blank, non-comment lines. The views point into `text`.
std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::size_t number = 0, pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string_view line(text.data() + pos, end - pos);
        pos = end + 1;
        ++number;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        Line l{number, {}};
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
            if (j > i) l.tokens.push_back(line.substr(i, j - i));
            i = j;
        }
        if (l.tokens.empty() || l.tokens[0].front() == '#') continue;
        out.push_back(std::move(l));
    }
    return out;
}

std::string slurp(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double to_double(const Line& l, std::string_view tok) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size() || !std::isfinite(v))
        throw ParseError(l.number, "bad number '" + std::string(tok) + "'");
    return v;
}

std::uint64_t to_uint(const Line& l, std::string_view tok) {
    std::uint64_t v = 0;
    const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError(l.number, "bad integer '" + std::string(tok) + "'");
    return v;
}

void expect_tokens(const Line& l, std::size_t n) {
    if (l.tokens.size() != n)
        throw ParseError(l.number, "expected " + std::to_string(n) + " fields, got " + std::to_string(l.tokens.size()));
}

}  // namespace

Instance parse_instance(std::istream& in) {
    const std::string text = slurp(in);
    const std::vector<Line> lines = tokenize(text);
    if (lines.empty()) throw ParseError(1, "missing header");
    const Line& head = lines[0];
    Instance inst;
    std::size_t n = 0, m = 0;
    const std::string_view kind = head.tokens[0];
    if (kind == "curve") {
        expect_tokens(head, 2);
        inst.kind = InstanceKind::curve;
        n = to_uint(head, head.tokens[1]);
        if (n == 0) throw ParseError(head.number, "empty curve");
    } else if (kind == "tree") {
        expect_tokens(head, 2);
        inst.kind = InstanceKind::tree;
        n = to_uint(head, head.tokens[1]);
        if (n == 0) throw ParseError(head.number, "empty tree");
        m = n - 1;
    } else if (kind == "graph") {
        expect_tokens(head, 4);
        inst.kind = InstanceKind::graph;
        n = to_uint(head, head.tokens[1]);
        m = to_uint(head, head.tokens[2]);
        inst.t = to_double(head, head.tokens[3]);
        if (n == 0) throw ParseError(head.number, "empty graph");
        if (inst.t < 1.0) throw ParseError(head.number, "locality parameter must be >= 1");
    } else {
        throw ParseError(head.number, "unknown instance kind '" + std::string(kind) + "'");
    }
    if (lines.size() != 1 + n + m) {
        const std::size_t at = lines.size() > 1 + n + m ? lines[1 + n + m].number : lines.back().number;
        throw ParseError(at, "expected " + std::to_string(n) + " points and " + std::to_string(m) +
                                 " edges, found " + std::to_string(lines.size() - 1) + " data lines");
    }
    inst.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Line& l = lines[1 + i];
        expect_tokens(l, 2);
        inst.points.push_back({to_double(l, l.tokens[0]), to_double(l, l.tokens[1])});
    }
    inst.edges.reserve(m);
    for (std::size_t e = 0; e < m; ++e) {
        const Line& l = lines[1 + n + e];
        expect_tokens(l, 2);
        const std::uint64_t a = to_uint(l, l.tokens[0]), b = to_uint(l, l.tokens[1]);
        if (a >= n || b >= n) throw ParseError(l.number, "vertex index out of range");
        if (a == b) throw ParseError(l.number, "self-loop");
        inst.edges.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)});
    }
    if (inst.kind != InstanceKind::curve) {
        try {
            (void)inst.graph();
        } catch (const Error& e) {
            throw ParseError(head.number, e.what());
        }
    }
    return inst;
}

Instance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return parse_instance(in);
}

std::string serialize(const Instance& inst) {
    std::string out;
    switch (inst.kind) {
        case InstanceKind::curve: out = "curve " + std::to_string(inst.points.size()) + "\n"; break;
        case InstanceKind::tree: out = "tree " + std::to_string(inst.points.size()) + "\n"; break;
        case InstanceKind::graph:
            out = "graph " + std::to_string(inst.points.size()) + " " + std::to_string(inst.edges.size()) + " " +
                  format_double(inst.t) + "\n";
            break;
    }
    for (const Point& p : inst.points) out += format_double(p.x) + " " + format_double(p.y) + "\n";
    if (inst.kind != InstanceKind::curve)
        for (const Edge& e : inst.edges) out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
    return out;
}

std::vector<WorkloadRecord> parse_workload(std::istream& in) {
    const std::string text = slurp(in);
    std::vector<WorkloadRecord> out;
    for (const Line& l : tokenize(text)) {
        WorkloadRecord rec;
        rec.line = l.number;
        const auto& t = l.tokens;
        auto points_from = [&](std::size_t first, std::size_t k) {
            for (std::size_t i = 0; i < k; ++i)
                rec.q.push_back({to_double(l, t[first + 2 * i]), to_double(l, t[first + 2 * i + 1])});
        };
        if (t[0] == "C" || t[0] == "T") {
            if (t.size() < 4) throw ParseError(l.number, "truncated record");
            const std::uint64_t a = to_uint(l, t[1]), b = to_uint(l, t[2]), k = to_uint(l, t[3]);
            if (k == 0) throw ParseError(l.number, "empty query curve");
            if (k > (t.size() - 4) / 2) throw ParseError(l.number, "truncated record");
            const std::size_t base = 4 + 2 * k;
            if (t.size() != base && t.size() != base + 1) throw ParseError(l.number, "trailing fields");
            points_from(4, k);
            if (t.size() == base + 1) rec.r = to_double(l, t[base]);
            if (t[0] == "C") {
                if (a == 0 || b == 0) throw ParseError(l.number, "curve ranges are 1-based");
                rec.kind = InstanceKind::curve;
                rec.reversed = a > b;
                rec.lo = std::min(a, b) - 1;
                rec.hi = std::max(a, b) - 1;
            } else {
                rec.kind = InstanceKind::tree;
                rec.u = static_cast<std::uint32_t>(a);
                rec.v = static_cast<std::uint32_t>(b);
            }
        } else if (t[0] == "G") {
            if (t.size() != 7 && t.size() != 8) throw ParseError(l.number, "expected 'G u v ax ay bx by [r]'");
            rec.kind = InstanceKind::graph;
            rec.u = static_cast<std::uint32_t>(to_uint(l, t[1]));
            rec.v = static_cast<std::uint32_t>(to_uint(l, t[2]));
            points_from(3, 2);
            if (t.size() == 8) rec.r = to_double(l, t[7]);
        } else {
            throw ParseError(l.number, "unknown record type '" + std::string(t[0]) + "'");
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<WorkloadRecord> read_workload(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    return parse_workload(in);
}

std::string serialize(const WorkloadRecord& rec) {
    std::string out;
    switch (rec.kind) {
        case InstanceKind::curve: {
            const std::size_t a = rec.reversed ? rec.hi : rec.lo, b = rec.reversed ? rec.lo : rec.hi;
            out = "C " + std::to_string(a + 1) + " " + std::to_string(b + 1) + " " + std::to_string(rec.q.size());
            break;
        }
        case InstanceKind::tree:
            out = "T " + std::to_string(rec.u) + " " + std::to_string(rec.v) + " " + std::to_string(rec.q.size());
            break;
        case InstanceKind::graph: out = "G " + std::to_string(rec.u) + " " + std::to_string(rec.v); break;
    }
    for (const Point& p : rec.q) out += " " + format_double(p.x) + " " + format_double(p.y);
    if (rec.r) out += " " + format_double(*rec.r);
    return out;
}

std::string serialize(const std::vector<WorkloadRecord>& recs) {
    std::string out;
    for (const auto& r : recs) out += serialize(r) + "\n";
    return out;
}

}  // namespace dfo
