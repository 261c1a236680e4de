#include "faultpath/ssrp.hpp"

#include <algorithm>

#include "faultpath/offline.hpp"

namespace faultpath {

namespace {

struct TreeEdge {
    EdgeId id;
    Vertex child;
};

// 1-fault replacement paths π_{G−e}(s,t) for t below e, as sorted edge lists.
struct OneFault {
    std::vector<TreeEdge> edges;
    std::vector<std::vector<std::pair<Vertex, std::vector<EdgeId>>>> below;  // per tree edge
};

OneFault one_fault_paths(const Graph& g, const IncrementalDso& dso, Vertex s) {
    const auto& tree = dso.spts().tree(s);
    OneFault r;
    for (Vertex v = 0; v < g.n(); ++v)
        if (v != s && tree.reachable(v)) r.edges.push_back({tree.parent_edge(v), v});
    r.below.resize(r.edges.size());
    for (std::size_t i = 0; i < r.edges.size(); ++i)
        for (Vertex t = 0; t < g.n(); ++t) {
            if (!tree.reachable(t) || !tree.is_ancestor(r.edges[i].child, t)) continue;
            auto ans = dso.query_edge_failure(s, t, r.edges[i].id);
            std::vector<EdgeId> es;
            if (ans.length.finite()) {
                auto p = dso.path(ans.form);
                for (std::size_t k = 1; k < p.size(); ++k) es.push_back(*g.find_edge(p[k - 1], p[k]));
            }
            std::sort(es.begin(), es.end());
            r.below[i].push_back({t, std::move(es)});
        }
    return r;
}

bool contains(const std::vector<EdgeId>& sorted, EdgeId e) { return std::binary_search(sorted.begin(), sorted.end(), e); }

}  // namespace

SsrpStats ssrp2(const Graph& g, Vertex s, const SsrpSink& sink, int threads) {
    const auto dso = IncrementalDso::build(g, threads);
    const auto of = one_fault_paths(g, dso, s);
    const auto& tree = dso.spts().tree(s);
    std::vector<int> order(static_cast<std::size_t>(g.edge_slots()), -1);
    for (std::size_t i = 0; i < of.edges.size(); ++i) order[static_cast<std::size_t>(of.edges[i].id)] = static_cast<int>(i);
    auto path_of = [&](int i, Vertex t) -> const std::vector<EdgeId>* {
        for (const auto& [v, es] : of.below[static_cast<std::size_t>(i)])
            if (v == t) return &es;
        return nullptr;
    };

    Timeline tl;
    tl.g0 = g;
    for (const auto& e : of.edges) {
        const Edge& ed = g.edge(e.id);
        tl.updates.push_back({TimelineUpdate::Kind::Delete, ed.u, ed.v, {}, e.id});
        tl.updates.push_back({TimelineUpdate::Kind::Insert, ed.u, ed.v, ed.w, e.id});
    }
    SsrpStats stats;
    stats.timeline_steps = tl.steps();
    OfflineDso::for_each_leaf(tl, [&](int step, const IncrementalDso& leaf) {
        if (step % 2 == 0) return;
        const int i = (step - 1) / 2;
        const EdgeId e = of.edges[static_cast<std::size_t>(i)].id;
        std::uint64_t q = 0;
        for (const auto& [t, es] : of.below[static_cast<std::size_t>(i)])
            for (EdgeId d : es) {
                ++q;
                Length len = leaf.query_edge_failure(s, t, d).length;
                const int j = order[static_cast<std::size_t>(d)];
                if (j >= 0 && j < i && tree.is_ancestor(of.edges[static_cast<std::size_t>(j)].child, t)) {
                    const auto* other = path_of(j, t);
                    if (other && contains(*other, e)) continue;
                }
                ++stats.emitted;
                sink({e, d, t, len});
            }
        stats.queries += q;
        stats.max_step_queries = std::max(stats.max_step_queries, q);
    }, threads);
    return stats;
}

Ssrp2Table::Ssrp2Table(const Graph& g, Vertex s, int threads) : g_(g), s_(s), static_(IncrementalDso::build(g, threads)) {
    stats_ = ssrp2(g, s, [&](const SsrpRecord& r) { table_[{r.d1, r.t, r.d2}] = r.length; }, threads);
}

bool Ssrp2Table::below(EdgeId e, Vertex t) const {
    const auto& tree = static_.spts().tree(s_);
    if (!g_.present(e) || !tree.reachable(t)) return false;
    const Edge& ed = g_.edge(e);
    for (Vertex c : {ed.u, ed.v})
        if (c != s_ && tree.reachable(c) && tree.parent_edge(c) == e) return tree.is_ancestor(c, t);
    return false;
}

Length Ssrp2Table::lookup(EdgeId tree_edge, EdgeId other, Vertex t) const {
    auto it = table_.find({tree_edge, t, other});
    if (it != table_.end()) return it->second;
    it = table_.find({other, t, tree_edge});
    if (it != table_.end()) return it->second;
    // other is not on π_{G−tree_edge}(s,t).
    return static_.query_edge_failure(s_, t, tree_edge).length;
}

Length Ssrp2Table::query(EdgeId d1, EdgeId d2, Vertex t) const {
    if (d1 == d2) throw InvalidArgumentError("failures must be distinct");
    if (below(d1, t)) return lookup(d1, d2, t);
    if (below(d2, t)) return lookup(d2, d1, t);
    return static_.spts().dist(s_, t);
}

}  // namespace faultpath
