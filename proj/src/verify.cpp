#include "faultpath/verify.hpp"

#include <algorithm>

#include "faultpath/dso.hpp"
#include "faultpath/errors.hpp"
#include "faultpath/frp3.hpp"
#include "faultpath/generators.hpp"
#include "faultpath/offline.hpp"
#include "faultpath/oracle.hpp"
#include "faultpath/perturb.hpp"
#include "faultpath/ssrp.hpp"

namespace faultpath {

namespace {

std::string edge_json(const Graph& g, EdgeId e) {
    if (e == kNoEdge) return "null";
    const Edge& ed = g.edge(e);
    return "[" + std::to_string(ed.u) + "," + std::to_string(ed.v) + "]";
}

class Checker {
public:
    Checker(const std::string& suite, const ReportSink& sink, VerifySummary& sum) : suite_(suite), sink_(sink), sum_(sum) {}

    void check(const std::string& query, const Length& oracle, const Length& subject) {
        OracleReport r{suite_, query, oracle, subject, oracle == subject};
        ++sum_.checked;
        if (!r.match) ++sum_.mismatches;
        if (sink_) sink_(r);
    }

private:
    std::string suite_;
    const ReportSink& sink_;
    VerifySummary& sum_;
};

std::string head(std::uint64_t seed) { return "{\"seed\":" + std::to_string(seed); }

void suite_dso(const Graph& g, std::uint64_t seed, int threads, Checker& ck) {
    const auto dso = IncrementalDso::build(g, threads);
    const SptSet& s = dso.spts();
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = 0; v < g.n(); ++v) {
            if (u == v || !s.reachable(u, v)) continue;
            for (int k = 0; k < s.hops(u, v); ++k) {
                const EdgeId f = *g.find_edge(s.vertex_at(u, v, k), s.vertex_at(u, v, k + 1));
                ck.check(head(seed) + ",\"u\":" + std::to_string(u) + ",\"v\":" + std::to_string(v) + ",\"f\":" + edge_json(g, f) + "}",
                         oracle::dist_avoiding(g, u, v, {f}), dso.query_edge_failure(u, v, f).length);
            }
        }
}

void suite_offline(const Graph& g0, std::uint64_t seed, int steps, int threads, Checker& ck) {
    const auto tl = perturb_timeline(gen::random_timeline(g0, steps, 20, seed), seed);
    OfflineDso::for_each_leaf(tl, [&](int t, const IncrementalDso& leaf) {
        const Graph& g = leaf.graph();
        const SptSet& s = leaf.spts();
        for (Vertex u = 0; u < g.n(); ++u)
            for (Vertex v = 0; v < g.n(); ++v) {
                if (u == v || !s.reachable(u, v)) continue;
                for (int k = 0; k < s.hops(u, v); ++k) {
                    const EdgeId f = *g.find_edge(s.vertex_at(u, v, k), s.vertex_at(u, v, k + 1));
                    ck.check(head(seed) + ",\"t\":" + std::to_string(t) + ",\"u\":" + std::to_string(u) + ",\"v\":" + std::to_string(v) +
                                 ",\"f\":" + edge_json(g, f) + "}",
                             oracle::dist_avoiding(tl.graph_at(t), u, v, {f}), leaf.query_edge_failure(u, v, f).length);
                }
            }
    }, threads);
}

void suite_frp2(const Graph& g, std::uint64_t seed, int threads, Checker& ck) {
    const Vertex s = 0, t = far_target(g, s);
    const Frp2Solver solver(g, s, t, threads);
    const auto ids = g.edge_ids();
    for (std::size_t i = 0; i < ids.size(); ++i)
        for (std::size_t j = i + 1; j < ids.size(); ++j)
            ck.check(head(seed) + ",\"s\":" + std::to_string(s) + ",\"t\":" + std::to_string(t) + ",\"d1\":" + edge_json(g, ids[i]) +
                         ",\"d2\":" + edge_json(g, ids[j]) + "}",
                     oracle::dist_avoiding(g, s, t, {ids[i], ids[j]}), solver.query(ids[i], ids[j]));
}

void suite_frp3(const Graph& g, std::uint64_t seed, int threads, Checker& ck) {
    const Vertex s = 0, t = far_target(g, s);
    Frp3Solver solver(g, s, t, threads);
    for (const auto& r : solver.solve()) {
        std::vector<EdgeId> F;
        for (EdgeId e : {r.d1, r.d2, r.d3})
            if (e != kNoEdge) F.push_back(e);
        ck.check(head(seed) + ",\"s\":" + std::to_string(s) + ",\"t\":" + std::to_string(t) + ",\"d1\":" + edge_json(g, r.d1) +
                     ",\"d2\":" + edge_json(g, r.d2) + ",\"d3\":" + edge_json(g, r.d3) + ",\"case\":\"" + case_name(r.kind) + "\"}",
                 oracle::dist_avoiding(g, s, t, F), r.length);
    }
}

void suite_ssrp(const Graph& g, std::uint64_t seed, int threads, Checker& ck) {
    const Vertex s = 0;
    ssrp2(g, s, [&](const SsrpRecord& r) {
        ck.check(head(seed) + ",\"s\":0,\"t\":" + std::to_string(r.t) + ",\"d1\":" + edge_json(g, r.d1) + ",\"d2\":" + edge_json(g, r.d2) + "}",
                 oracle::dist_avoiding(g, s, r.t, {r.d1, r.d2}), r.length);
    }, threads);
}

}  // namespace

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names{"dso", "frp2", "frp3", "ssrp", "offline"};
    return names;
}

Graph verify_instance(int n, int extra, std::uint64_t seed) {
    return perturb_and_verify(gen::random_connected(n, extra, 20, seed), seed);
}

Vertex far_target(const Graph& g, Vertex s) {
    const auto tree = dijkstra(g, s);
    Vertex best = s;
    for (Vertex v = 0; v < g.n(); ++v)
        if (tree.reachable(v) && tree.depth(v) > tree.depth(best)) best = v;
    return best;
}

VerifySummary run_verify(const VerifyConfig& cfg, const ReportSink& sink) {
    const auto& names = verify_suites();
    if (std::find(names.begin(), names.end(), cfg.suite) == names.end()) throw InvalidArgumentError("unknown suite: " + cfg.suite);
    if (cfg.n < 2 || cfg.seeds < 1) throw InvalidArgumentError("need n >= 2 and at least one seed");
    const int extra = cfg.extra >= 0 ? cfg.extra : cfg.n;
    const int steps = cfg.steps >= 0 ? cfg.steps : 2 * cfg.n;
    VerifySummary sum;
    Checker ck(cfg.suite, sink, sum);
    for (int i = 0; i < cfg.seeds; ++i) {
        const std::uint64_t seed = cfg.first_seed + static_cast<std::uint64_t>(i);
        const Graph g = verify_instance(cfg.n, extra, seed);
        if (cfg.suite == "dso") suite_dso(g, seed, cfg.threads, ck);
        else if (cfg.suite == "offline") suite_offline(g, seed, steps, cfg.threads, ck);
        else if (cfg.suite == "frp2") suite_frp2(g, seed, cfg.threads, ck);
        else if (cfg.suite == "frp3") suite_frp3(g, seed, cfg.threads, ck);
        else suite_ssrp(g, seed, cfg.threads, ck);
        ++sum.instances;
    }
    return sum;
}

}  // namespace faultpath
