#include <sstream>

#include "doctest.h"
#include "faultpath/dso.hpp"
#include "helpers.hpp"

using namespace faultpath;
using namespace testutil;

namespace {

void check_all_failures(const IncrementalDso& dso) {
    const Graph& g = dso.graph();
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = 0; v < g.n(); ++v) {
            if (u == v) continue;
            for (EdgeId f : oracle::path_edges(g, dso.spts().path(u, v))) {
                auto ans = dso.query_edge_failure(u, v, f);
                CHECK(ans.length == oracle::dist_avoiding(g, u, v, {f}));
                if (ans.length.finite()) {
                    auto p = dso.path(ans.form);
                    CHECK(p.front() == u);
                    CHECK(p.back() == v);
                    CHECK_FALSE(edge_set(g, p).count(f));
                }
            }
        }
}

}  // namespace

TEST_CASE("path graph: middle-edge interval has no detour") {
    auto dso = IncrementalDso::build(perturbed(gen::path_graph(4, 1)));
    CHECK(dso.phi(0, 3, 1, 1).is_null());
    CHECK(dso.query_edge_failure(0, 3, *dso.graph().find_edge(1, 2)).length.is_inf());
}

TEST_CASE("C5: one on-path edge gives the complementary arc") {
    auto dso = IncrementalDso::build(perturbed(gen::cycle(5, 1)));
    REQUIRE(dso.spts().hops(0, 2) == 2);
    auto pf = dso.phi(0, 2, 1, 0);  // interval = edge (1,2)
    REQUIRE_FALSE(pf.is_null());
    CHECK(dso.path(pf) == std::vector<Vertex>{0, 4, 3, 2});
    CHECK(pf.length.value().base == 3);
    // Whole path on a cycle: the complementary arc is the only candidate.
    auto whole = dso.query_interval(0, 2, 0, 2);
    CHECK(dso.path(whole) == std::vector<Vertex>{0, 4, 3, 2});
}

TEST_CASE("C4: replacement_paths_for_pair gives the complementary arc") {
    Graph g = perturbed(gen::cycle(4, 2));
    SptSet s(g);
    for (const auto& r : replacement_paths_for_pair(g, s, 0, 1)) CHECK(r.length.value().base == 6);
}

TEST_CASE("replacement_paths_for_pair equals Dijkstra on G-f (n=30)") {
    Graph g = random_graph(30, 30, 3);
    SptSet s(g);
    for (Vertex u = 0; u < g.n(); u += 4)
        for (Vertex v = 0; v < g.n(); ++v) {
            auto rs = replacement_paths_for_pair(g, s, u, v);
            for (const auto& r : rs) {
                CHECK(r.length == oracle::dist_avoiding(g, u, v, {r.edge}));
                CHECK(r.edge == s.edge_at(u, v, r.position));
            }
        }
}

TEST_CASE("query_edge_failure: off-path edge and bridge") {
    Graph raw = gen::cycle(5, 1);
    raw.add_vertex();
    raw.add_edge(4, 5, {1, 0});
    auto dso = IncrementalDso::build(perturbed(raw));
    auto off = dso.query_edge_failure(0, 1, *dso.graph().find_edge(2, 3));
    CHECK(off.length == dso.spts().dist(0, 1));
    CHECK(dso.query_edge_failure(0, 5, *dso.graph().find_edge(4, 5)).length.is_inf());
}

TEST_CASE("query_edge_failure equals the removal oracle on random graphs") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto dso = IncrementalDso::build(random_graph(seed == 1 ? 25 : 16, 22, seed));
        CHECK(dso.stats().not_proper == 0);
        check_all_failures(dso);
    }
}

TEST_CASE("stored entries avoid their interval and re-derive their length") {
    auto dso = IncrementalDso::build(random_graph(18, 20, 9));
    const auto& s = dso.spts();
    for (Vertex u = 0; u < dso.n(); ++u)
        for (Vertex v = 0; v < dso.n(); ++v) {
            if (!dso.table().has_pair(u, v)) continue;
            const int L = dso.table().hops(u, v);
            for (int i = 0; i < L; i = i ? 2 * i : 1)
                for (int j = 0; i + j < L; j = j ? 2 * j : 1) {
                    auto pf = dso.phi(u, v, i, j);
                    if (pf.is_null()) continue;
                    CHECK_FALSE(intersects_interval(pf, {u, v, i, L - j}, s));
                    Length len = s.dist(u, pf.x) + s.dist(pf.y, v);
                    if (pf.bridge != kNoEdge) len = len + dso.graph().edge(pf.bridge).w;
                    CHECK(len == pf.length);
                }
        }
}

TEST_CASE("weak anchored and arbitrary intervals") {
    Graph g = random_graph(13, 16, 21);
    auto dso = IncrementalDso::build(g);
    const auto& s = dso.spts();
    int weak = 0;
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = 0; v < g.n(); ++v) {
            if (u == v) continue;
            const int L = s.hops(u, v);
            for (int a = 0; a < L; ++a)
                for (int b = a + 1; b <= L; ++b) {
                    auto w = oracle::weak_classify(g, u, v, a, b);
                    auto pf = dso.query_interval(u, v, a, b);
                    if (w.weak()) {
                        ++weak;
                        CHECK(pf.length == w.avoid_length);
                    } else if (!pf.is_null()) {
                        auto es = edge_set(g, dso.path(pf));
                        CHECK_FALSE(shares_edge(es, w.interval_edges));
                    }
                }
        }
    CHECK(weak > 0);
}

TEST_CASE("interval query validation") {
    auto dso = IncrementalDso::build(random_graph(8, 6, 2));
    const int L = dso.spts().hops(0, 5);
    CHECK_THROWS_AS(dso.query_interval(0, 5, 0, L + 1), IntervalNotOnPathError);
    CHECK_THROWS_AS(dso.query_interval(0, 5, 2, 1), IntervalNotOnPathError);
    CHECK(dso.query_interval(0, 5, 1, 1).length == dso.spts().dist(0, 5));
}

TEST_CASE("builds are deterministic and thread-count independent") {
    Graph g = random_graph(20, 24, 5);
    auto a = IncrementalDso::build(g, 1), b = IncrementalDso::build(g, 4);
    CHECK(a.table().entries() == b.table().entries());
}

TEST_CASE("snapshot round trip") {
    auto dso = IncrementalDso::build(random_graph(15, 15, 8));
    std::stringstream buf;
    dso.save(buf);
    auto back = IncrementalDso::load(buf);
    CHECK(back.table().entries() == dso.table().entries());
    check_all_failures(back);
    std::stringstream bad("not a snapshot");
    CHECK_THROWS_AS(IncrementalDso::load(bad), FormatError);
}
