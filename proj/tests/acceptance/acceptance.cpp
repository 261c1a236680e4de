// Acceptance suite: one PASS/FAIL line per criterion. Ground truth comes from
// the brute-force oracles only.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "faultpath/bench.hpp"
#include "faultpath/dso.hpp"
#include "faultpath/errors.hpp"
#include "faultpath/frp3.hpp"
#include "faultpath/generators.hpp"
#include "faultpath/hardness.hpp"
#include "faultpath/offline.hpp"
#include "faultpath/oracle.hpp"
#include "faultpath/perturb.hpp"
#include "faultpath/ssrp.hpp"
#include "faultpath/verify.hpp"

using namespace faultpath;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::size_t sz(int i) { return static_cast<std::size_t>(i); }

Graph instance(int n, int extra, std::uint64_t seed) { return perturb_and_verify(gen::random_connected(n, extra, 20, seed), seed); }

// Every (u, v, f on π(u,v)) query of dso against removal; returns violations.
std::uint64_t dso_violations(const IncrementalDso& dso, std::uint64_t& checked) {
    const Graph& g = dso.graph();
    const SptSet& s = dso.spts();
    std::uint64_t bad = 0;
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = 0; v < g.n(); ++v) {
            if (u == v || !s.reachable(u, v)) continue;
            const auto path = oracle::path_avoiding(g, u, v);
            for (EdgeId f : oracle::path_edges(g, path)) {
                ++checked;
                if (!(dso.query_edge_failure(u, v, f).length == oracle::dist_avoiding(g, u, v, {f}))) ++bad;
            }
        }
    return bad;
}

Outcome criterion1() {
    const auto t0 = Clock::now();
    std::uint64_t checked = 0, bad = 0;
    const int graphs = 50;
    for (int seed = 1; seed <= graphs; ++seed) bad += dso_violations(IncrementalDso::build(instance(25, 25, static_cast<std::uint64_t>(seed))), checked);
    const double secs = since(t0);
    std::ostringstream d;
    d << graphs << " graphs n=25, " << checked << " queries, " << bad << " violations, " << secs << " s (budget 120 s)";
    return {bad == 0 && secs < 120, d.str()};
}

Outcome criterion2() {
    std::uint64_t weak = 0, nonweak = 0, bad = 0;
    for (int seed = 1; seed <= 10; ++seed) {
        const Graph g = instance(15, 15, static_cast<std::uint64_t>(seed));
        const auto dso = IncrementalDso::build(g);
        const SptSet& s = dso.spts();
        for (Vertex u = 0; u < g.n(); ++u)
            for (Vertex v = 0; v < g.n(); ++v) {
                if (u == v || !s.reachable(u, v)) continue;
                const int L = s.hops(u, v);
                for (int ia = 0; ia < PhiTable::anchor_count(L); ++ia)
                    for (int ja = 0; ja < PhiTable::anchor_count(L); ++ja) {
                        const int i = PhiTable::anchor_value(ia), j = PhiTable::anchor_value(ja);
                        if (i + j >= L) continue;
                        const int a = i, b = L - j;
                        const auto w = oracle::weak_classify(g, u, v, a, b);
                        const auto pf = dso.query_interval(u, v, a, b);
                        if (w.weak()) {
                            ++weak;
                            if (!(pf.length == w.avoid_length)) ++bad;
                            continue;
                        }
                        ++nonweak;
                        if (pf.is_null()) continue;
                        // A non-null answer must be a real u-v path of the stated length avoiding ab.
                        const auto path = dso.path(pf);
                        bool ok = !path.empty() && path.front() == u && path.back() == v;
                        CompositeWeight len{};
                        for (std::size_t k = 1; ok && k < path.size(); ++k) {
                            const auto e = g.find_edge(path[k - 1], path[k]);
                            ok = e.has_value() && std::find(w.interval_edges.begin(), w.interval_edges.end(), *e) == w.interval_edges.end();
                            if (ok) len += g.edge(*e).w;
                        }
                        if (!ok || !(Length(len) == pf.length)) ++bad;
                    }
            }
    }
    std::ostringstream d;
    d << "10 graphs n=15, " << weak << " weak and " << nonweak << " non-weak anchored intervals, " << bad << " violations";
    return {bad == 0 && weak > 0, d.str()};
}

Outcome criterion3() {
    std::uint64_t checked = 0, bad = 0;
    int ties = 0, inserted = 0;
    for (int seed = 1; seed <= 5; ++seed) {
        auto dso = IncrementalDso::build(instance(20, 10, static_cast<std::uint64_t>(seed)));
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed) * 7919);
        TiebreakGen tb(static_cast<std::uint64_t>(seed) + 100);
        for (int k = 0; k < 20;) {
            const auto x = static_cast<Vertex>(rng() % 20), y = static_cast<Vertex>(rng() % 20);
            if (x == y || dso.graph().find_edge(x, y)) continue;
            try {
                dso.insert_edge(x, y, tb.weight(1 + rng() % 20));
            } catch (const TieDetectedError&) {
                ++ties;
                continue;
            }
            ++k;
            ++inserted;
            bad += dso_violations(dso, checked);
        }
    }
    BenchConfig cfg;
    cfg.suite = "dso";
    cfg.sizes = {32, 64, 128};
    const auto rep = run_bench(cfg);
    const double slope = rep.slope.value_or(INFINITY);
    std::ostringstream d;
    d << inserted << " insertions on n=20 (" << ties << " tied candidates skipped), " << checked << " queries, " << bad
      << " violations; per-insertion slope " << slope << " over 32/64/128 (bound 2.5; medians";
    for (const auto& p : rep.points) d << ' ' << p.median;
    d << " s)";
    return {bad == 0 && slope <= 2.5, d.str()};
}

Outcome criterion4() {
    const int T = 40;
    const int bound = static_cast<int>(std::ceil(std::log2(T))) + 1;
    std::uint64_t checked = 0, bad = 0;
    int peak = 0;
    for (int seed = 1; seed <= 5; ++seed) {
        const auto s = static_cast<std::uint64_t>(seed);
        const auto tl = perturb_timeline(gen::random_timeline(instance(20, 10, s), T, 20, s), s);
        const auto stats = OfflineDso::for_each_leaf(tl, [&](int t, const IncrementalDso& leaf) {
            // Compare against a graph rebuilt from the timeline, not the leaf's own copy.
            const Graph g = tl.graph_at(t);
            for (Vertex u = 0; u < g.n(); ++u)
                for (Vertex v = 0; v < g.n(); ++v) {
                    if (u == v) continue;
                    const auto path = oracle::path_avoiding(g, u, v);
                    for (EdgeId f : oracle::path_edges(g, path)) {
                        ++checked;
                        if (!(leaf.query_edge_failure(u, v, f).length == oracle::dist_avoiding(g, u, v, {f}))) ++bad;
                    }
                }
        });
        peak = std::max(peak, stats.peak_live);
    }
    std::ostringstream d;
    d << "5 timelines T=40 n=20, " << checked << " queries, " << bad << " violations, peak live " << peak << " (bound " << bound << ")";
    return {bad == 0 && peak <= bound, d.str()};
}

Outcome criterion5() {
    std::uint64_t checked = 0, bad = 0;
    for (int seed = 1; seed <= 10; ++seed) {
        const Graph g = instance(25, 25, static_cast<std::uint64_t>(seed));
        const Vertex s = 0, t = far_target(g, s);
        const Frp2Solver solver(g, s, t);
        const auto ids = g.edge_ids();
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                ++checked;
                if (!(solver.query(ids[i], ids[j]) == oracle::dist_avoiding(g, s, t, {ids[i], ids[j]}))) ++bad;
            }
    }
    std::uint64_t cells = 0, bad_cells = 0;
    for (int seed = 1; seed <= 5; ++seed) {
        const auto s = static_cast<std::uint64_t>(seed);
        const Graph g = instance(20, 20, s);
        const auto inst = reduce(g, s);
        const Frp2Solver solver(inst.h, inst.s, inst.t);
        const auto m = extract_apsp(inst, [&](EdgeId a, EdgeId b) { return solver.query(a, b); });
        const auto direct = oracle::apsp(g);
        for (int i = 0; i < g.n(); ++i)
            for (int j = 0; j < g.n(); ++j) {
                ++cells;
                if (!(Length(m[sz(i)][sz(j)]) == direct[sz(i)][sz(j)])) ++bad_cells;
            }
    }
    std::ostringstream d;
    d << "2FRP: 10 graphs n=25, " << checked << " pairs, " << bad << " violations; hardness round trip: 5 graphs n=20, " << cells
      << " APSP cells, " << bad_cells << " violations";
    return {bad == 0 && bad_cells == 0, d.str()};
}

using Triple = std::tuple<EdgeId, EdgeId, EdgeId>;

// Required triples enumerated from removal paths alone.
std::vector<Triple> required_triples(const Graph& g, Vertex s, Vertex t) {
    std::vector<Triple> out;
    for (EdgeId d1 : oracle::path_edges(g, oracle::path_avoiding(g, s, t))) {
        const auto p1 = oracle::path_avoiding(g, s, t, {d1});
        if (p1.empty()) {
            out.emplace_back(d1, kNoEdge, kNoEdge);
            continue;
        }
        for (EdgeId d2 : oracle::path_edges(g, p1)) {
            const auto p2 = oracle::path_avoiding(g, s, t, {d1, d2});
            if (p2.empty()) {
                out.emplace_back(d1, d2, kNoEdge);
                continue;
            }
            for (EdgeId d3 : oracle::path_edges(g, p2)) out.emplace_back(d1, d2, d3);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct Frp3Tally {
    int graphs = 0;
    std::uint64_t triples = 0, bad = 0, set_mismatch = 0, three_on = 0;
};

void frp3_check(const Graph& g, Vertex s, Vertex t, Frp3Tally& tally) {
    Frp3Solver solver(g, s, t);
    const auto recs = solver.solve();
    std::vector<Triple> got;
    for (const auto& r : recs) {
        got.emplace_back(r.d1, r.d2, r.d3);
        std::vector<EdgeId> F;
        for (EdgeId e : {r.d1, r.d2, r.d3})
            if (e != kNoEdge) F.push_back(e);
        ++tally.triples;
        if (r.kind == Frp3Record::Case::ThreeOn) ++tally.three_on;
        if (!(r.length == oracle::dist_avoiding(g, s, t, F))) ++tally.bad;
    }
    std::sort(got.begin(), got.end());
    if (got != required_triples(g, s, t)) ++tally.set_mismatch;
    ++tally.graphs;
}

// Path 0..7 with base weight 3 per edge plus three chords (a, b) of weight
// 2|a-b| + 1, over every choice of three chords.
std::vector<Graph> n8_family() {
    std::vector<std::pair<int, int>> chords;
    for (int a = 0; a < 8; ++a)
        for (int b = a + 2; b < 8; ++b) chords.emplace_back(a, b);
    std::vector<Graph> out;
    std::uint64_t seed = 1;
    for (std::size_t i = 0; i < chords.size(); ++i)
        for (std::size_t j = i + 1; j < chords.size(); ++j)
            for (std::size_t k = j + 1; k < chords.size(); ++k) {
                Graph g(8);
                for (int v = 0; v + 1 < 8; ++v) g.add_edge(v, v + 1, {3, 0});
                for (std::size_t c : {i, j, k}) {
                    const auto [a, b] = chords[c];
                    g.add_edge(a, b, {static_cast<std::uint64_t>(2 * (b - a) + 1), 0});
                }
                out.push_back(perturb_and_verify(g, seed++));
            }
    return out;
}

Outcome criterion6() {
    Frp3Tally rnd, fam;
    for (int seed = 1; seed <= 60; ++seed) {
        const Graph g = instance(16, 8 + seed % 9, static_cast<std::uint64_t>(seed));
        frp3_check(g, 0, far_target(g, 0), rnd);
    }
    for (const Graph& g : n8_family()) frp3_check(g, 0, 7, fam);
    std::ostringstream d;
    d << "random n=16: " << rnd.graphs << " graphs, " << rnd.triples << " triples (" << rnd.three_on << " with all three on the path), "
      << rnd.bad << " violations, " << rnd.set_mismatch << " enumeration mismatches; n=8 family: " << fam.graphs << " graphs, "
      << fam.triples << " triples (" << fam.three_on << " three-on), " << fam.bad << " violations, " << fam.set_mismatch
      << " enumeration mismatches";
    return {rnd.bad + rnd.set_mismatch + fam.bad + fam.set_mismatch == 0, d.str()};
}

Outcome criterion7() {
    int traces = 0, bad = 0, max_stages = 0;
    auto check = [&](Frp3Solver& solver) {
        solver.solve();
        for (const auto& tr : solver.traces()) {
            ++traces;
            for (std::size_t i = 1; i < tr.potential.size(); ++i)
                if (8 * tr.potential[i] > 5 * tr.potential[i - 1]) ++bad;
            const long long s1 = tr.potential.front();
            if (s1 >= 1 && tr.stages > static_cast<int>(std::ceil(std::log(static_cast<double>(s1)) / std::log(1.6))) + 1) ++bad;
            max_stages = std::max(max_stages, tr.stages);
        }
    };
    for (int seed = 1; seed <= 4; ++seed) {
        const auto s = static_cast<std::uint64_t>(seed);
        for (auto [r, c] : {std::pair{3, 6}, std::pair{4, 5}, std::pair{4, 6}}) {
            const Graph g = perturb_and_verify(gen::grid(r, c, 9, s), s);
            Frp3Solver solver(g, 0, r * c - 1);
            check(solver);
        }
        const Graph g = instance(16, 10, s);
        Frp3Solver solver(g, 0, far_target(g, 0));
        check(solver);
    }
    std::ostringstream d;
    d << traces << " probe loops on grids and random graphs, " << bad << " violations, max stages " << max_stages;
    return {bad == 0 && traces > 0, d.str()};
}

Outcome criterion8() {
    // Union bound over all 1-fault s-t replacement paths.
    std::uint64_t pairs = 0, over = 0;
    std::size_t worst = 0;
    for (int seed = 1; seed <= 5; ++seed) {
        const Graph g = instance(20, 20, static_cast<std::uint64_t>(seed));
        for (Vertex s = 0; s < g.n(); ++s)
            for (Vertex t = s + 1; t < g.n(); ++t) {
                std::vector<EdgeId> uni;
                for (EdgeId d : oracle::path_edges(g, oracle::path_avoiding(g, s, t))) {
                    const auto es = oracle::path_edges(g, oracle::path_avoiding(g, s, t, {d}));
                    uni.insert(uni.end(), es.begin(), es.end());
                }
                std::sort(uni.begin(), uni.end());
                uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
                ++pairs;
                worst = std::max(worst, uni.size());
                if (uni.size() > sz(3 * g.n())) ++over;
            }
    }
    // Interval avoidance: R1 = [a1, b1), R3 = [b1, a2), R2 = [a2, b2) over path edge positions.
    std::uint64_t triples = 0, avoid_bad = 0;
    for (int seed = 1; seed <= 3; ++seed) {
        const Graph g = instance(20, 20, static_cast<std::uint64_t>(seed));
        for (Vertex u = 0; u < g.n(); ++u)
            for (Vertex v = 0; v < g.n(); ++v) {
                if (u == v) continue;
                const auto pe = oracle::path_edges(g, oracle::path_avoiding(g, u, v));
                const int L = static_cast<int>(pe.size());
                for (EdgeId d : pe) {
                    const auto le = oracle::path_edges(g, oracle::path_avoiding(g, u, v, {d}));
                    if (le.empty()) continue;
                    std::vector<int> used(sz(L) + 1, 0);  // prefix counts of used path edges
                    for (int k = 0; k < L; ++k)
                        used[sz(k) + 1] = used[sz(k)] + (std::find(le.begin(), le.end(), pe[sz(k)]) != le.end());
                    auto hits = [&](int a, int b) { return used[sz(b)] - used[sz(a)] > 0; };
                    for (int a1 = 0; a1 < L; ++a1)
                        for (int b1 = a1 + 1; b1 <= L; ++b1)
                            for (int a2 = b1; a2 < L; ++a2)
                                for (int b2 = a2 + 1; b2 <= L; ++b2) {
                                    ++triples;
                                    if (!hits(a1, b1) && !hits(a2, b2) && hits(b1, a2)) ++avoid_bad;
                                }
                }
            }
    }
    // Five visit shapes when all three failures are on the path.
    std::uint64_t routes = 0, untyped = 0;
    for (int seed = 1; seed <= 6; ++seed) {
        const Graph g = instance(12, 6 + seed, static_cast<std::uint64_t>(seed));
        for (Vertex s = 0; s < g.n(); ++s)
            for (Vertex t = s + 1; t < g.n(); ++t) {
                const auto es = oracle::path_edges(g, oracle::path_avoiding(g, s, t));
                const int L = static_cast<int>(es.size());
                for (int a = 0; a < L; ++a)
                    for (int b = a + 1; b < L; ++b)
                        for (int c = b + 1; c < L; ++c) {
                            const auto visits = oracle::interval_visits(g, s, t, {es[sz(a)], es[sz(b)], es[sz(c)]});
                            if (visits.empty()) continue;
                            ++routes;
                            if (oracle::three_on_path_type(visits) == 0) ++untyped;
                        }
            }
    }
    std::ostringstream d;
    d << "union bound: " << pairs << " pairs n=20, max " << worst << " edges, " << over << " over 3n; interval avoidance: " << triples
      << " (l, R1, R3, R2) checks, " << avoid_bad << " violations; five types: " << routes << " routes n=12, " << untyped << " untyped";
    return {over == 0 && avoid_bad == 0 && untyped == 0 && routes > 0, d.str()};
}

Outcome criterion9() {
    std::uint64_t checked = 0, bad = 0;
    for (int seed = 1; seed <= 5; ++seed) {
        const Graph g = instance(14, 14, static_cast<std::uint64_t>(seed));
        const Ssrp2Table table(g, 0);
        const auto ids = g.edge_ids();
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                const auto dist = oracle::sssp_avoiding(g, 0, {ids[i], ids[j]});
                for (Vertex t = 0; t < g.n(); ++t) {
                    ++checked;
                    if (!(table.query(ids[i], ids[j], t) == dist[sz(t)])) ++bad;
                }
            }
    }
    std::uint64_t sampled = 0, sampled_bad = 0;
    for (int seed = 1; seed <= 3; ++seed) {
        const auto s = static_cast<std::uint64_t>(seed);
        const Graph g = instance(25, 25, s);
        const Ssrp2Table table(g, 0);
        const auto ids = g.edge_ids();
        std::mt19937_64 rng(s);
        for (int q = 0; q < 2000; ++q) {
            const EdgeId a = ids[rng() % ids.size()], b = ids[rng() % ids.size()];
            const auto t = static_cast<Vertex>(rng() % 25);
            if (a == b) continue;
            ++sampled;
            if (!(table.query(a, b, t) == oracle::dist_avoiding(g, 0, t, {a, b}))) ++sampled_bad;
        }
    }
    std::ostringstream d;
    d << "n=14: " << checked << " (d1, d2, t) queries, " << bad << " violations; n=25 sampled: " << sampled << " queries, " << sampled_bad
      << " violations";
    return {bad == 0 && sampled_bad == 0, d.str()};
}

Outcome criterion10() {
    BenchConfig cfg;
    cfg.suite = "frp3";
    cfg.sizes = {64, 128, 256};
    const auto rep = run_bench(cfg);
    const double slope = rep.slope.value_or(INFINITY);
    std::ostringstream d;
    d << "slope " << slope << " (bound 3.6, R^2 " << rep.r2.value_or(0) << ");";
    for (const auto& p : rep.points) d << " n=" << p.n << ": " << p.median << " s, " << p.work << " triples, " << p.hops << " hops;";
    d << " family: " << rep.family << "; machine: " << rep.machine << "; reported, not hard-failed";
    return {slope <= 3.6, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-10); default all")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);

    Outcome (*const table[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                  criterion6, criterion7, criterion8, criterion9, criterion10};
    int failed = 0;
    for (int c = 1; c <= 10; ++c) {
        if (only && c != only) continue;
        Outcome o;
        try {
            o = table[c - 1]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << c << ": " << (o.pass ? "PASS" : "FAIL") << ": " << o.detail << std::endl;
        // Scaling is reported, not enforced.
        if (!o.pass && c != 10) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
