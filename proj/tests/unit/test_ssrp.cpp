#include <set>

#include "doctest.h"
#include "faultpath/ssrp.hpp"
#include "helpers.hpp"

using namespace faultpath;
using namespace testutil;

TEST_CASE("ssrp2: every (d1, d2, t) equals double removal (n=12)") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        Graph g = random_graph(12, 12, seed);
        Ssrp2Table table(g, 0);
        CHECK(table.stats().timeline_steps == 2 * (g.n() - 1));
        auto ids = g.edge_ids();
        for (EdgeId a : ids)
            for (EdgeId b : ids) {
                if (a >= b) continue;
                auto dist = oracle::sssp_avoiding(g, 0, {a, b});
                for (Vertex t = 0; t < g.n(); ++t) CHECK(table.query(a, b, t) == dist[static_cast<std::size_t>(t)]);
            }
    }
}

TEST_CASE("ssrp2 emits each unordered pair once per target") {
    Graph g = random_graph(10, 10, 4);
    std::set<std::tuple<EdgeId, EdgeId, Vertex>> seen;
    int dup = 0, bad = 0;
    auto stats = ssrp2(g, 3, [&](const SsrpRecord& r) {
        auto key = std::make_tuple(std::min(r.d1, r.d2), std::max(r.d1, r.d2), r.t);
        if (!seen.insert(key).second) ++dup;
        if (!(r.length == oracle::dist_avoiding(g, 3, r.t, {r.d1, r.d2}))) ++bad;
    });
    CHECK(dup == 0);
    CHECK(bad == 0);
    CHECK(stats.emitted == seen.size());
    CHECK(stats.queries >= stats.emitted);
}

TEST_CASE("ssrp2 trivial cases") {
    Graph g = random_graph(9, 8, 6);
    Ssrp2Table table(g, 0);
    SptSet s(g);
    const auto& tree = s.tree(0);
    std::set<EdgeId> tree_edges;
    for (Vertex v = 1; v < g.n(); ++v) tree_edges.insert(tree.parent_edge(v));
    std::vector<EdgeId> off;
    for (EdgeId e : g.edge_ids())
        if (!tree_edges.count(e)) off.push_back(e);
    REQUIRE(off.size() >= 2);
    for (Vertex t = 0; t < g.n(); ++t) {
        CHECK(table.query(off[0], off[1], t) == s.dist(0, t));
        // A non-tree d1 off π_{G−d2}(s,t) leaves the 1-fault answer.
        for (EdgeId d2 : tree_edges) {
            auto es = edge_set(g, oracle::path_avoiding(g, 0, t, {d2}));
            if (!es.count(off[0])) CHECK(table.query(off[0], d2, t) == oracle::dist_avoiding(g, 0, t, {d2}));
        }
    }
}
