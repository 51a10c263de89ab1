#include <doctest.h>

#include <sstream>

#include "dfo/instances.hpp"
#include "dfo/io.hpp"
#include "dfo/workload.hpp"

using namespace dfo;

namespace {

Instance parse(const std::string& s) {
    std::istringstream in(s);
    return parse_instance(in);
}

std::vector<WorkloadRecord> parse_wl(const std::string& s) {
    std::istringstream in(s);
    return parse_workload(in);
}

}  // namespace

TEST_CASE("instance formats") {
    const auto c = parse("# comment\ncurve 2\n0 0\n\n1.5 -2\n");
    CHECK(c.kind == InstanceKind::curve);
    CHECK(c.points == Curve{{0, 0}, {1.5, -2}});

    const auto t = parse("tree 3\n0 0\n1 0\n2 0\n0 1\n1 2\n");
    CHECK(t.kind == InstanceKind::tree);
    CHECK(t.edges.size() == 2);

    const auto g = parse("graph 3 1 2.5\n0 0\n1 0\n2 0\n0 2\n");
    CHECK(g.kind == InstanceKind::graph);
    CHECK(g.t == 2.5);
}

TEST_CASE("instance parse errors name the line") {
    auto line_of = [](const std::string& s) -> std::size_t {
        try {
            parse(s);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("curve 2\n0 0\n1 x\n") == 3);
    CHECK(line_of("curve 2\n0 0\n") == 2);
    CHECK(line_of("curve 1\n0 0\n1 1\n") == 3);
    CHECK(line_of("blob 1\n0 0\n") == 1);
    CHECK(line_of("tree 2\n0 0\n1 1\n0 5\n") == 4);
    CHECK(line_of("graph 2 1 0.5\n0 0\n1 1\n0 1\n") == 1);
    CHECK(line_of("curve 1\nnan 0\n") == 2);
    CHECK(line_of("") == 1);
    CHECK(line_of("tree 3\n0 0\n1 1\n2 2\n0 1\n0 1\n") == 1);  // duplicate edge
}

TEST_CASE("workload records") {
    const auto recs = parse_wl("C 1 3 2 0 0 1 1\nC 4 2 1 5 5 0.25\n# x\nT 0 7 1 2 2\nG 3 4 0 0 1 1 0.5\n");
    REQUIRE(recs.size() == 4);
    CHECK(recs[0].lo == 0);
    CHECK(recs[0].hi == 2);
    CHECK_FALSE(recs[0].decision());
    CHECK(recs[1].reversed);
    CHECK(recs[1].lo == 1);
    CHECK(recs[1].hi == 3);
    CHECK(recs[1].r == 0.25);
    CHECK(recs[2].kind == InstanceKind::tree);
    CHECK(recs[2].v == 7);
    CHECK(recs[3].q == Curve{{0, 0}, {1, 1}});
    CHECK(recs[3].line == 5);
    CHECK(serialize(recs) == "C 1 3 2 0 0 1 1\nC 4 2 1 5 5 0.25\nT 0 7 1 2 2\nG 3 4 0 0 1 1 0.5\n");

    CHECK_THROWS_AS(parse_wl("C 0 3 1 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_wl("C 1 3 2 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_wl("C 1 3 1 0 0 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_wl("G 1 2 0 0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_wl("X 1\n"), ParseError);
    CHECK(parse_wl("").empty());
}

TEST_CASE("round trips are byte-identical") {
    Instance c;
    c.points = random_curve(50, 3);
    const std::string cs = serialize(c);
    CHECK(serialize(parse(cs)) == cs);
    CHECK(parse(cs).points == c.points);

    Instance g;
    g.kind = InstanceKind::graph;
    const auto dt = delaunay(random_points(40, 2));
    g.points = dt.vertices();
    g.edges = dt.edges();
    g.t = 1.0;
    const std::string gs = serialize(g);
    CHECK(serialize(parse(gs)) == gs);

    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(3.0) == "3");
}

TEST_CASE("runner checks records against the instance") {
    Instance c;
    c.points = {{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    const WorkloadRunner run(c, 1);
    auto rec = parse_wl("C 1 4 2 0 0 3 0\n")[0];
    CHECK(format_answer(run.run(rec, 0)) == "1");
    CHECK(run.agrees(rec, run.run(rec, 0), run.reference(rec)));
    Answer corrupt = run.run(rec, 0);
    corrupt.value += 1e-12;
    CHECK_FALSE(run.agrees(rec, corrupt, run.reference(rec)));
    CHECK_THROWS_AS(run.run(parse_wl("C 1 5 1 0 0\n")[0], 0), Error);
    CHECK_THROWS_WITH_AS(run.run(parse_wl("C 1 4 5 0 0 0 0 0 0 0 0 0 0\n")[0], 0), "line 1: query size unsupported",
                         Error);
    CHECK_THROWS_AS(run.run(parse_wl("T 0 1 1 0 0\n")[0], 0), Error);
    auto dec = parse_wl("C 1 4 2 0 0 3 0 0.5\n")[0];
    CHECK(format_answer(run.run(dec, 0)) == "false");
}
