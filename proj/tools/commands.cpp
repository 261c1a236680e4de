#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "faultpath/bench.hpp"
#include "faultpath/dso.hpp"
#include "faultpath/errors.hpp"
#include "faultpath/frp3.hpp"
#include "faultpath/generators.hpp"
#include "faultpath/hardness.hpp"
#include "faultpath/offline.hpp"
#include "faultpath/parallel.hpp"
#include "faultpath/perturb.hpp"
#include "faultpath/spt.hpp"
#include "faultpath/ssrp.hpp"
#include "faultpath/verify.hpp"

namespace faultpath::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
    int threads = 0;
    std::uint64_t seed = 1;
    std::uint64_t scale = 1;
    std::string out;

    std::string graph, timeline, queries, snapshot, map, suite, sizes, kind;
    int faults = 0;
    Vertex s = -1, t = -1;
    bool emit_paths = false;
    int n = 12, seeds = 5, extra = -1, steps = 20, rows = 4, cols = 4, reps = 3, insertions = 8;
    std::uint64_t first_seed = 1, max_w = 20;
};

// Output sink: a file when --out is given, the caller's stream otherwise.
class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw IoError("cannot open for writing: " + path);
        os_ = file_.get();
    }
    std::ostream& stream() { return *os_; }
    void line(const json& j) { *os_ << j.dump() << '\n'; }
    void finish() {
        os_->flush();
        if (!*os_) throw IoError("write failed");
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

json dist_json(const Length& l) { return l.is_inf() ? json("inf") : json(l.value().base); }

json edge_json(const Graph& g, EdgeId e) {
    if (e == kNoEdge) return nullptr;
    const Edge& ed = g.edge(e);
    return json::array({ed.u, ed.v});
}

int threads(const Options& o) { return thread_budget(o.threads); }

Graph load_perturbed(const Options& o) { return perturb_and_verify(load_graph(o.graph, o.scale), o.seed); }

void check_vertex(const Graph& g, Vertex v, const char* what) {
    if (v < 0 || v >= g.n()) throw InvalidArgumentError(std::string(what) + " is not a vertex of the graph");
}

// Data lines of a query file: blank lines and lines starting with 'c' or '#'
// are skipped.
std::vector<std::vector<long long>> read_query_lines(const std::string& path, std::size_t arity) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open query file: " + path);
    std::vector<std::vector<long long>> rows;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first) || first[0] == 'c' || first[0] == '#') continue;
        std::vector<std::string> toks{first};
        for (std::string tok; ls >> tok;) toks.push_back(tok);
        if (toks.size() != arity) throw FormatError("query line " + std::to_string(no) + ": expected " + std::to_string(arity) + " integers");
        std::vector<long long> row;
        for (const auto& tok : toks) {
            std::size_t pos = 0;
            long long v = 0;
            try {
                v = std::stoll(tok, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != tok.size() || tok.empty()) throw FormatError("query line " + std::to_string(no) + ": bad integer '" + tok + "'");
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

EdgeId query_edge(const Graph& g, long long a, long long b, std::size_t row) {
    const auto in_range = [&](long long x) { return x >= 0 && x < g.n(); };
    std::optional<EdgeId> e;
    if (in_range(a) && in_range(b) && a != b) e = g.find_edge(static_cast<Vertex>(a), static_cast<Vertex>(b));
    if (!e) throw FormatError("query " + std::to_string(row + 1) + ": (" + std::to_string(a) + "," + std::to_string(b) + ") is not an edge");
    return *e;
}

void check_pair(const Graph& g, long long u, long long v, std::size_t row) {
    if (u < 0 || v < 0 || u >= g.n() || v >= g.n()) throw FormatError("query " + std::to_string(row + 1) + ": vertex out of range");
}

// frp ------------------------------------------------------------------------

std::vector<Vertex> masked_path(const Graph& g, Vertex s, Vertex t, const std::vector<EdgeId>& F) {
    EdgeMask mask(g.edge_slots());
    for (EdgeId e : F)
        if (e != kNoEdge) mask.set(e);
    return dijkstra(g, s, &mask).path_to(t);
}

void cmd_frp(const Options& o, std::ostream& out) {
    if (o.faults < 1 || o.faults > 3) throw InvalidArgumentError("--faults must be 1, 2 or 3");
    const Graph g = load_perturbed(o);
    check_vertex(g, o.s, "--s");
    check_vertex(g, o.t, "--t");
    if (o.s == o.t) throw InvalidArgumentError("--s and --t must differ");
    Output sink(o.out, out);
    const int th = threads(o);
    if (o.faults == 1) {
        const StPath st = st_path(g, o.s, o.t);
        const Frp1Result r = frp1_all(g, st, th);
        for (int k = 0; k < st.hops(); ++k) {
            json j;
            j["d1"] = edge_json(g, st.edges[static_cast<std::size_t>(k)]);
            j["dist"] = dist_json(r.length[static_cast<std::size_t>(k)]);
            if (o.emit_paths) j["path"] = r.path[static_cast<std::size_t>(k)];
            sink.line(j);
        }
    } else if (o.faults == 2) {
        const Frp2Solver solver(g, o.s, o.t, th);
        solver.for_each_required([&](const Frp2Record& r) {
            json j;
            j["d1"] = edge_json(g, r.d1);
            j["d2"] = edge_json(g, r.d2);
            j["dist"] = dist_json(r.length);
            if (o.emit_paths) j["path"] = solver.path(r.d1, r.d2);
            sink.line(j);
        });
    } else {
        Frp3Solver solver(g, o.s, o.t, th);
        for (const auto& r : solver.solve()) {
            json j;
            j["d1"] = edge_json(g, r.d1);
            j["d2"] = edge_json(g, r.d2);
            j["d3"] = edge_json(g, r.d3);
            j["dist"] = dist_json(r.length);
            j["case"] = case_name(r.kind);
            if (o.emit_paths) j["path"] = r.length.is_inf() ? std::vector<Vertex>{} : masked_path(g, o.s, o.t, {r.d1, r.d2, r.d3});
            sink.line(j);
        }
    }
    sink.finish();
}

// dso ------------------------------------------------------------------------

void cmd_dso_build(const Options& o, std::ostream& out) {
    const Graph g = load_perturbed(o);
    const auto dso = IncrementalDso::build(g, threads(o));
    if (o.out.empty() || o.out == "-") {
        dso.save(out);
        if (!out) throw IoError("failed writing DSO snapshot");
    } else {
        dso.save_file(o.out);
    }
}

void cmd_dso_query(const Options& o, std::ostream& out) {
    const auto dso = IncrementalDso::load_file(o.snapshot, threads(o));
    const Graph& g = dso.graph();
    const auto rows = read_query_lines(o.queries, 4);
    Output sink(o.out, out);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        check_pair(g, r[0], r[1], i);
        const EdgeId f = query_edge(g, r[2], r[3], i);
        const auto u = static_cast<Vertex>(r[0]), v = static_cast<Vertex>(r[1]);
        json j;
        j["u"] = u;
        j["v"] = v;
        j["f"] = edge_json(g, f);
        j["dist"] = dist_json(dso.query_edge_failure(u, v, f).length);
        sink.line(j);
    }
    sink.finish();
}

void cmd_dso_offline(const Options& o, std::ostream& out) {
    const Timeline tl = perturb_timeline(load_timeline(o.timeline, o.scale), o.seed);
    const auto rows = read_query_lines(o.queries, 5);
    const auto off = OfflineDso::build(tl, threads(o));
    Output sink(o.out, out);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r[0] < 0 || r[0] > tl.steps()) throw FormatError("query " + std::to_string(i + 1) + ": time out of range");
        const int t = static_cast<int>(r[0]);
        const Graph& g = off.leaf(t).graph();
        check_pair(g, r[1], r[2], i);
        const EdgeId f = query_edge(g, r[3], r[4], i);
        json j;
        j["t"] = t;
        j["u"] = r[1];
        j["v"] = r[2];
        j["f"] = edge_json(g, f);
        j["dist"] = dist_json(off.query_at(t, static_cast<Vertex>(r[1]), static_cast<Vertex>(r[2]), f).length);
        sink.line(j);
    }
    sink.finish();
}

// ssrp2 ----------------------------------------------------------------------

void cmd_ssrp2(const Options& o, std::ostream& out) {
    const Graph g = load_perturbed(o);
    check_vertex(g, o.s, "--s");
    Output sink(o.out, out);
    ssrp2(g, o.s, [&](const SsrpRecord& r) {
        json j;
        j["d1"] = edge_json(g, r.d1);
        j["d2"] = edge_json(g, r.d2);
        j["t"] = r.t;
        j["dist"] = dist_json(r.length);
        sink.line(j);
    }, threads(o));
    sink.finish();
}

// gen ------------------------------------------------------------------------

void cmd_gen(const Options& o, std::ostream& out) {
    if (o.kind == "hardness") {
        if (o.out.empty() || o.map.empty()) throw InvalidArgumentError("gen hardness needs --out and --map");
        const ReductionInstance inst = reduce(load_perturbed(o), o.seed);
        Output h(o.out, out), m(o.map, out);
        write_graph(h.stream(), inst.h);
        write_reduction_map(m.stream(), inst);
        h.finish();
        m.finish();
        return;
    }
    Output sink(o.out, out);
    if (o.kind == "random") {
        if (o.n < 1) throw InvalidArgumentError("--n must be positive");
        write_graph(sink.stream(), gen::random_connected(o.n, o.extra >= 0 ? o.extra : o.n, o.max_w, o.seed));
    } else if (o.kind == "grid") {
        if (o.rows < 1 || o.cols < 1) throw InvalidArgumentError("--rows and --cols must be positive");
        write_graph(sink.stream(), gen::grid(o.rows, o.cols, o.max_w, o.seed));
    } else if (o.kind == "timeline") {
        if (o.steps < 0) throw InvalidArgumentError("--steps must be non-negative");
        write_timeline(sink.stream(), gen::random_timeline(load_graph(o.graph, o.scale), o.steps, o.max_w, o.seed));
    }
    sink.finish();
}

// verify / bench ---------------------------------------------------------------

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    VerifyConfig cfg;
    cfg.suite = o.suite;
    cfg.n = o.n;
    cfg.seeds = o.seeds;
    cfg.first_seed = o.first_seed;
    cfg.extra = o.extra;
    cfg.threads = threads(o);
    Output sink(o.out, out);
    const VerifySummary sum = run_verify(cfg, [&](const OracleReport& r) {
        json j;
        j["suite"] = r.suite;
        j["query"] = json::parse(r.query);
        j["oracle"] = dist_json(r.oracle);
        j["subject"] = dist_json(r.subject);
        if (r.oracle.finite()) j["oracle_tiebreak"] = r.oracle.value().tiebreak;
        if (r.subject.finite()) j["subject_tiebreak"] = r.subject.value().tiebreak;
        j["match"] = r.match;
        sink.line(j);
    });
    sink.finish();
    err << "verify " << o.suite << ": " << sum.instances << " instances, " << sum.checked << " checks, " << sum.mismatches << " mismatches\n";
    return sum.ok() ? kOk : kMismatch;
}

std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> sizes;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (tok.empty() || pos != tok.size()) throw InvalidArgumentError("bad size '" + tok + "' in --sizes");
        sizes.push_back(v);
    }
    return sizes;
}

void cmd_bench(const Options& o, std::ostream& out) {
    BenchConfig cfg;
    cfg.suite = o.suite;
    cfg.sizes = parse_sizes(o.sizes);
    cfg.seed = o.seed;
    cfg.reps = o.reps;
    cfg.insertions = o.insertions;
    cfg.threads = threads(o);
    const BenchReport rep = run_bench(cfg);
    json j;
    j["suite"] = rep.suite;
    j["family"] = rep.family;
    j["machine"] = rep.machine;
    j["threads"] = cfg.threads;
    j["reps"] = cfg.reps;
    json pts = json::array();
    for (const auto& p : rep.points) {
        json q;
        q["n"] = p.n;
        if (rep.suite == "frp3") {
            q["hops"] = p.hops;
            q["triples"] = p.work;
        } else {
            q["insertions"] = p.work;
        }
        q["seconds"] = p.seconds;
        q["median"] = p.median;
        pts.push_back(q);
    }
    j["points"] = pts;
    if (rep.slope) {
        j["slope"] = *rep.slope;
        j["r2"] = *rep.r2;
        j["confidence"] = rep.points.size() < 3 ? "two sizes only; slope is a secant" : (*rep.r2 >= 0.98 ? "good log-log fit" : "noisy fit; rerun or widen the size range");
    }
    Output sink(o.out, out);
    sink.stream() << j.dump(2) << '\n';
    sink.finish();
}

int map_error(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::Io: return kIo;
    case ErrorKind::Format: return kFormat;
    case ErrorKind::InvalidArgument: return kUsage;
    default: return kLibrary;
    }
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Fault-tolerant shortest paths: replacement paths, distance sensitivity oracles, verification and benchmarks"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--threads", o.threads, "Thread budget (default: FAULTPATH_THREADS or 1)")->check(CLI::NonNegativeNumber);

    auto graph_opts = [&](CLI::App* c, bool required) {
        auto* g = c->add_option("--graph", o.graph, "Graph file");
        if (required) g->required();
        c->add_option("--seed", o.seed, "Tiebreak seed");
        c->add_option("--scale", o.scale, "Multiply weights by this factor before rounding checks")->check(CLI::PositiveNumber);
    };

    auto* frp = app.add_subcommand("frp", "Replacement paths for 1, 2 or 3 failures (NDJSON)");
    graph_opts(frp, true);
    frp->add_option("--faults", o.faults, "Number of failures")->required()->check(CLI::Range(1, 3));
    frp->add_option("--s", o.s, "Source vertex")->required();
    frp->add_option("--t", o.t, "Target vertex")->required();
    frp->add_flag("--emit-paths", o.emit_paths, "Add the vertex list of each replacement path");
    frp->add_option("--out", o.out, "Output file (default stdout)");

    auto* dso = app.add_subcommand("dso", "Distance sensitivity oracle");
    dso->require_subcommand(1);
    dso->fallthrough();
    auto* dbuild = dso->add_subcommand("build", "Build and write a binary snapshot");
    graph_opts(dbuild, true);
    dbuild->add_option("--out", o.out, "Snapshot file (default stdout)");
    auto* dquery = dso->add_subcommand("query", "Answer 'u v a b' lines: |π(u,v)| with edge ab failed");
    dquery->add_option("--snapshot", o.snapshot, "Snapshot file")->required();
    dquery->add_option("--queries", o.queries, "Query file")->required();
    dquery->add_option("--out", o.out, "Output file (default stdout)");
    auto* doff = dso->add_subcommand("offline", "Answer 't u v a b' lines over an update timeline");
    doff->add_option("--timeline", o.timeline, "Timeline file")->required();
    doff->add_option("--queries", o.queries, "Query file")->required();
    doff->add_option("--seed", o.seed, "Tiebreak seed");
    doff->add_option("--scale", o.scale, "Weight scale factor")->check(CLI::PositiveNumber);
    doff->add_option("--out", o.out, "Output file (default stdout)");

    auto* ssrp = app.add_subcommand("ssrp2", "Single-source replacement paths for 2 failures (NDJSON)");
    graph_opts(ssrp, true);
    ssrp->add_option("--s", o.s, "Source vertex")->required();
    ssrp->add_option("--out", o.out, "Output file (default stdout)");

    auto* gen = app.add_subcommand("gen", "Generate graphs, timelines and hardness instances");
    gen->add_option("kind", o.kind, "random | grid | hardness | timeline")->required()->check(CLI::IsMember({"random", "grid", "hardness", "timeline"}));
    graph_opts(gen, false);
    gen->add_option("--n", o.n, "Vertices (random)");
    gen->add_option("--extra", o.extra, "Chords beyond the spanning tree (random; default n)");
    gen->add_option("--rows", o.rows, "Grid rows");
    gen->add_option("--cols", o.cols, "Grid columns");
    gen->add_option("--steps", o.steps, "Timeline updates");
    gen->add_option("--max-w", o.max_w, "Largest base weight")->check(CLI::PositiveNumber);
    gen->add_option("--out", o.out, "Output file (default stdout)");
    gen->add_option("--map", o.map, "Reduction map file (hardness)");

    auto* verify = app.add_subcommand("verify", "Compare a solver with the brute-force oracle (OracleReport NDJSON)");
    verify->add_option("--suite", o.suite, "dso | frp2 | frp3 | ssrp | offline")->required()->check(CLI::IsMember(verify_suites()));
    verify->add_option("--n", o.n, "Vertices per instance")->check(CLI::Range(2, 1 << 20));
    verify->add_option("--seeds", o.seeds, "Number of seeded instances")->check(CLI::PositiveNumber);
    verify->add_option("--first-seed", o.first_seed, "First seed");
    verify->add_option("--extra", o.extra, "Chords beyond the spanning tree (default n)");
    verify->add_option("--out", o.out, "Report file (default stdout)");

    auto* bench = app.add_subcommand("bench", "Runtime scaling report (JSON)");
    bench->add_option("--suite", o.suite, "frp3 | dso")->required()->check(CLI::IsMember({"frp3", "dso"}));
    bench->add_option("--sizes", o.sizes, "Ascending comma-separated sizes")->required();
    bench->add_option("--reps", o.reps, "Repetitions per size; the median is fitted")->check(CLI::PositiveNumber);
    bench->add_option("--insertions", o.insertions, "Timed insertions per repetition (dso)")->check(CLI::PositiveNumber);
    bench->add_option("--seed", o.seed, "Instance seed");
    bench->add_option("--out", o.out, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (frp->parsed()) cmd_frp(o, out);
        else if (dbuild->parsed()) cmd_dso_build(o, out);
        else if (dquery->parsed()) cmd_dso_query(o, out);
        else if (doff->parsed()) cmd_dso_offline(o, out);
        else if (ssrp->parsed()) cmd_ssrp2(o, out);
        else if (gen->parsed()) {
            if ((o.kind == "hardness" || o.kind == "timeline") && o.graph.empty()) throw InvalidArgumentError("gen " + o.kind + " needs --graph");
            cmd_gen(o, out);
        } else if (verify->parsed()) return cmd_verify(o, out, err);
        else if (bench->parsed()) cmd_bench(o, out);
        return kOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return map_error(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kLibrary;
    }
}

}  // namespace faultpath::cli
