// dfo: generate instances and workloads, answer queries, verify against the
// brute-force reference, and measure how query work scales with n.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dfo/curve_oracle.hpp"
#include "dfo/graph_oracle.hpp"
#include "dfo/instances.hpp"
#include "dfo/io.hpp"
#include "dfo/workload.hpp"
#include "dfo/bench.hpp"

namespace {

using namespace dfo;
using nlohmann::json;

constexpr int kExitOk = 0, kExitUsage = 1, kExitParse = 2, kExitMismatch = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + out);
    f << text;
}

// ---- gen ----

struct GenOptions {
    std::optional<int> koch;
    std::optional<std::size_t> random_curve, random_tree, delaunay, spanner;
    double stretch = 2.0;
    std::string workload;
    std::size_t count = 100;
    int k = 0;
    double decisions = 0.0;
};

std::string gen_workload(const GenOptions& o, std::uint64_t seed) {
    const Instance inst = read_instance(o.workload);
    const std::size_t n = inst.points.size();
    double x0 = inst.points[0].x, x1 = x0, y0 = inst.points[0].y, y1 = y0;
    for (const Point& p : inst.points) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    const double diam = std::hypot(x1 - x0, y1 - y0);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> vertex(0, n - 1);
    std::uniform_int_distribution<int> size(1, 4);
    std::uniform_real_distribution<double> ux(x0, x1), uy(y0, y1), unit(0.0, 1.0);
    auto point = [&] { return Point{ux(rng), uy(rng)}; };

    std::vector<WorkloadRecord> recs;
    for (std::size_t i = 0; i < o.count; ++i) {
        WorkloadRecord r;
        r.kind = inst.kind;
        const int k = o.k ? o.k : size(rng);
        if (inst.kind == InstanceKind::curve) {
            std::size_t a = vertex(rng), b = vertex(rng);
            r.reversed = a > b;
            r.lo = std::min(a, b);
            r.hi = std::max(a, b);
            for (int j = 0; j < k; ++j) r.q.push_back(point());
        } else {
            r.u = static_cast<std::uint32_t>(vertex(rng));
            r.v = static_cast<std::uint32_t>(vertex(rng));
            if (inst.kind == InstanceKind::tree) {
                for (int j = 0; j < k; ++j) r.q.push_back(point());
            } else if (unit(rng) < 0.5) {
                r.q = {inst.points[r.u], inst.points[r.v]};
            } else {
                r.q = {point(), point()};
            }
        }
        if (unit(rng) < o.decisions) r.r = unit(rng) * diam;
        recs.push_back(std::move(r));
    }
    return serialize(recs);
}

int cmd_gen(const GenOptions& o, std::uint64_t seed, const std::string& out) {
    const int chosen = o.koch.has_value() + o.random_curve.has_value() + o.random_tree.has_value() +
                       o.delaunay.has_value() + o.spanner.has_value() + !o.workload.empty();
    if (chosen != 1) throw UsageError("gen: choose exactly one of --koch, --random-curve, --random-tree, "
                                      "--delaunay, --spanner, --workload");
    if (o.k < 0 || o.k > 4) throw UsageError("gen: --k must be in 0..4");
    if (!o.workload.empty()) {
        write_output(gen_workload(o, seed), out);
        return kExitOk;
    }
    Instance inst;
    try {
        if (o.koch) {
            inst.points = koch(*o.koch);
        } else if (o.random_curve) {
            inst.points = random_curve(*o.random_curve, seed);
        } else if (o.random_tree) {
            const GeometricGraph t = random_tree(*o.random_tree, seed);
            inst.kind = InstanceKind::tree;
            inst.points = t.vertices();
            inst.edges = t.edges();
        } else {
            const std::size_t n = o.delaunay ? *o.delaunay : *o.spanner;
            if (n == 0) throw UsageError("gen: n must be positive");
            const auto pts = random_points(n, seed);
            const GeometricGraph g = o.delaunay ? delaunay(pts) : greedy_spanner(pts, o.stretch);
            inst.kind = InstanceKind::graph;
            inst.points = g.vertices();
            inst.edges = g.edges();
            // A t-spanner is 2t-local.
            inst.t = o.delaunay ? 1.0 : 2.0 * o.stretch;
        }
    } catch (const Error& e) {
        throw UsageError(std::string("gen: ") + e.what());
    }
    write_output(serialize(inst), out);
    return kExitOk;
}

// ---- query / verify ----

std::vector<Answer> run_all(const WorkloadRunner& runner, const std::vector<WorkloadRecord>& recs, unsigned threads,
                            bool reference) {
    std::vector<Answer> answers(recs.size());
    std::vector<std::string> errors(recs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < recs.size();) {
            try {
                answers[i] = reference ? runner.reference(recs[i]) : runner.run(recs[i], i);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    threads = std::max(1u, threads);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (!e.empty()) throw Error(e);
    return answers;
}

int cmd_query(const std::string& inst_path, const std::string& work_path, std::uint64_t seed, unsigned threads,
              bool as_json, const std::string& out) {
    const Instance inst = read_instance(inst_path);
    const auto recs = read_workload(work_path);
    const WorkloadRunner runner(inst, seed);
    for (const auto& r : recs) runner.check(r);
    const auto answers = run_all(runner, recs, threads, false);
    std::string text;
    if (as_json) {
        json arr = json::array();
        for (const auto& a : answers) {
            if (a.decision) arr.push_back(a.yes);
            else arr.push_back(a.value);
        }
        text = arr.dump() + "\n";
    } else {
        for (const auto& a : answers) text += format_answer(a) + "\n";
    }
    write_output(text, out);
    return kExitOk;
}

int cmd_verify(const std::string& inst_path, const std::string& work_path, std::uint64_t seed, unsigned threads,
               bool as_json, std::size_t corrupt) {
    const Instance inst = read_instance(inst_path);
    const std::size_t limit = inst.kind == InstanceKind::graph ? 512 : 4096;
    if (inst.points.size() > limit)
        throw UsageError("verify: instance has " + std::to_string(inst.points.size()) +
                         " vertices; the reference oracle is limited to " + std::to_string(limit));
    const auto recs = read_workload(work_path);
    const WorkloadRunner runner(inst, seed);
    for (const auto& r : recs) runner.check(r);
    auto fast = run_all(runner, recs, threads, false);
    // Harness self-test: perturb one fast answer so the mismatch path is exercised.
    if (corrupt > 0 && corrupt <= fast.size()) {
        Answer& a = fast[corrupt - 1];
        if (a.decision) a.yes = !a.yes;
        else a.value = a.value * 2 + 1;
    }
    const auto ref = run_all(runner, recs, threads, true);
    std::size_t mismatches = 0;
    json bad = json::array();
    for (std::size_t i = 0; i < recs.size(); ++i) {
        if (runner.agrees(recs[i], fast[i], ref[i])) continue;
        ++mismatches;
        const std::string where = "line " + std::to_string(recs[i].line);
        if (as_json) {
            bad.push_back({{"line", recs[i].line}, {"fast", format_answer(fast[i])}, {"reference", format_answer(ref[i])}});
        } else {
            std::cout << "mismatch " << where << ": fast " << format_answer(fast[i]) << " reference "
                      << format_answer(ref[i]) << "\n";
        }
    }
    if (as_json) {
        std::cout << json{{"records", recs.size()}, {"mismatches", mismatches}, {"details", bad}}.dump() << "\n";
    } else {
        std::cout << "records: " << recs.size() << "\n" << "mismatches: " << mismatches << "\n";
    }
    return mismatches ? kExitMismatch : kExitOk;
}

// ---- bench ----

int cmd_bench(const std::string& inst_path, const std::string& kind, int min_exp, int max_exp, std::size_t queries,
              std::uint64_t seed, bool as_json, const std::string& out) {
    std::vector<BenchRow> rows;
    if (!inst_path.empty()) {
        const Instance inst = read_instance(inst_path);
        if (inst.kind == InstanceKind::curve) rows.push_back(bench_curve(inst.points, queries, seed));
        else if (inst.kind == InstanceKind::graph)
            rows.push_back(bench_graph(std::make_shared<const GeometricGraph>(inst.graph()), inst.t, queries, seed));
        else throw UsageError("bench: tree instances are not benchmarked");
    } else {
        if (min_exp < 1 || max_exp > 24 || min_exp > max_exp) throw UsageError("bench: bad exponent range");
        if (kind != "curve" && kind != "graph" && kind != "both") throw UsageError("bench: --kind curve|graph|both");
        for (int e = min_exp; e <= max_exp; ++e) {
            const std::size_t n = std::size_t{1} << e;
            if (kind != "graph") rows.push_back(bench_curve(random_curve(n, seed + static_cast<std::uint64_t>(e)), queries, seed));
            if (kind != "curve")
                rows.push_back(bench_graph(std::make_shared<const GeometricGraph>(
                                               delaunay(random_points(n, seed + static_cast<std::uint64_t>(e)))),
                                           1.0, queries, seed));
        }
    }
    std::vector<BenchRow> curves, graphs;
    for (const auto& r : rows) (r.kind == "curve" ? curves : graphs).push_back(r);

    std::string text;
    if (as_json) {
        json j;
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"kind", r.kind},
                                 {"n", r.n},
                                 {"queries", r.queries},
                                 {"decide_touches", r.decide_touches},
                                 {"small_touches", r.small_touches},
                                 {"micros_per_decision", r.micros}});
        if (!curves.empty()) {
            j["curve_decide_exponent"] = fit_exponent(curves, &BenchRow::decide_touches);
            j["curve_small_exponent"] = fit_exponent(curves, &BenchRow::small_touches);
        }
        if (!graphs.empty()) j["graph_decide_exponent"] = fit_exponent(graphs, &BenchRow::decide_touches);
        text = j.dump(2) + "\n";
    } else {
        char buf[160];
        text += "kind        n  queries  decide_touches  small_touches  us/decision\n";
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof buf, "%-5s %8zu %8zu %15.2f %14.2f %12.2f\n", r.kind.c_str(), r.n, r.queries,
                          r.decide_touches, r.small_touches, r.micros);
            text += buf;
        }
        if (!curves.empty()) {
            std::snprintf(buf, sizeof buf, "curve decide_k4 touch exponent: %.4f\ncurve k<=3 touch exponent: %.4f\n",
                          fit_exponent(curves, &BenchRow::decide_touches), fit_exponent(curves, &BenchRow::small_touches));
            text += buf;
        }
        if (!graphs.empty()) {
            std::snprintf(buf, sizeof buf, "graph decide_segment touch exponent: %.4f\n",
                          fit_exponent(graphs, &BenchRow::decide_touches));
            text += buf;
        }
    }
    write_output(text, out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete Frechet distance oracles for curves, trees and local graphs"};
    app.require_subcommand(1);
    std::uint64_t seed = 1;
    std::string out;
    bool as_json = false;
    unsigned threads = 1;
    app.add_option("--seed", seed, "Random seed")->capture_default_str();

    GenOptions g;
    auto* gen = app.add_subcommand("gen", "Write an instance or a workload");
    gen->add_option("--koch", g.koch, "Koch curve of level N");
    gen->add_option("--random-curve", g.random_curve, "Random curve with N vertices");
    gen->add_option("--random-tree", g.random_tree, "Random tree with N vertices");
    gen->add_option("--delaunay", g.delaunay, "Delaunay triangulation of N random points (t = 1)");
    gen->add_option("--spanner", g.spanner, "Greedy spanner of N random points (t = 2 * stretch)");
    gen->add_option("--stretch", g.stretch, "Spanner stretch")->capture_default_str();
    gen->add_option("--workload", g.workload, "Random workload for this instance file");
    gen->add_option("--count", g.count, "Workload records")->capture_default_str();
    gen->add_option("--k", g.k, "Query size 1..4 (0 mixes sizes)")->capture_default_str();
    gen->add_option("--decisions", g.decisions, "Fraction of decision records")->capture_default_str();
    gen->add_option("--out", out, "Output file (default stdout)");
    gen->add_option("--seed", seed, "Random seed");

    std::string inst_path, work_path;
    auto* query = app.add_subcommand("query", "Answer a workload");
    query->add_option("instance", inst_path)->required();
    query->add_option("workload", work_path)->required();
    query->add_option("--threads", threads)->capture_default_str();
    query->add_option("--seed", seed, "Oracle seed");
    query->add_option("--out", out);
    query->add_flag("--json", as_json);

    auto* verify = app.add_subcommand("verify", "Check a workload against the reference oracle");
    verify->add_option("instance", inst_path)->required();
    verify->add_option("workload", work_path)->required();
    verify->add_option("--threads", threads)->capture_default_str();
    verify->add_option("--seed", seed, "Oracle seed");
    verify->add_flag("--json", as_json);
    std::size_t corrupt = 0;
    verify->add_option("--corrupt", corrupt, "Corrupt the answer of record N (1-based) to self-test the check")
        ->group("");

    std::string kind = "both";
    int min_exp = 10, max_exp = 16;
    std::size_t queries = 30;
    auto* bench = app.add_subcommand("bench", "Measure structure touches per decision over doubling n");
    bench->add_option("instance", inst_path, "Benchmark one instance instead of the doubling schedule");
    bench->add_option("--kind", kind, "curve, graph or both")->capture_default_str();
    bench->add_option("--min-exp", min_exp)->capture_default_str();
    bench->add_option("--max-exp", max_exp)->capture_default_str();
    bench->add_option("--queries", queries)->capture_default_str();
    bench->add_option("--seed", seed);
    bench->add_option("--out", out);
    bench->add_flag("--json", as_json);
    bench->add_option("--threads", threads, "Accepted for symmetry; the benchmark is sequential");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    try {
        if (*gen) return cmd_gen(g, seed, out);
        if (*query) return cmd_query(inst_path, work_path, seed, threads, as_json, out);
        if (*verify) return cmd_verify(inst_path, work_path, seed, threads, as_json, corrupt);
        if (*bench) return cmd_bench(inst_path, kind, min_exp, max_exp, queries, seed, as_json, out);
    } catch (const UsageError& e) {
        std::cerr << "dfo: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "dfo: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitUsage;
}
