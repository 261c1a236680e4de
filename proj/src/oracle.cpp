#include "faultpath/oracle.hpp"

#include <algorithm>

namespace faultpath::oracle {

namespace {

std::vector<char> removed_set(const Graph& g, const std::vector<EdgeId>& F) {
    std::vector<char> r(static_cast<std::size_t>(g.edge_slots()), 0);
    for (EdgeId f : F)
        if (f >= 0 && f < g.edge_slots()) r[static_cast<std::size_t>(f)] = 1;
    return r;
}

void array_dijkstra(const Graph& g, Vertex s, const std::vector<EdgeId>& F, std::vector<Length>& dist, std::vector<Vertex>& pred) {
    const int n = g.n();
    auto removed = removed_set(g, F);
    dist.assign(static_cast<std::size_t>(n), Length::inf());
    pred.assign(static_cast<std::size_t>(n), kNoVertex);
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    dist[static_cast<std::size_t>(s)] = CompositeWeight{};
    for (int it = 0; it < n; ++it) {
        Vertex best = kNoVertex;
        for (Vertex v = 0; v < n; ++v)
            if (!done[static_cast<std::size_t>(v)] && dist[static_cast<std::size_t>(v)].finite() &&
                (best == kNoVertex || dist[static_cast<std::size_t>(v)] < dist[static_cast<std::size_t>(best)]))
                best = v;
        if (best == kNoVertex) break;
        done[static_cast<std::size_t>(best)] = 1;
        for (EdgeId id = 0; id < g.edge_slots(); ++id) {
            if (!g.present(id) || removed[static_cast<std::size_t>(id)]) continue;
            const Edge& e = g.edge(id);
            if (e.u != best && e.v != best) continue;
            const Vertex o = e.u == best ? e.v : e.u;
            Length nd = dist[static_cast<std::size_t>(best)] + e.w;
            if (nd < dist[static_cast<std::size_t>(o)]) {
                dist[static_cast<std::size_t>(o)] = nd;
                pred[static_cast<std::size_t>(o)] = best;
            }
        }
    }
}

}  // namespace

std::vector<Length> sssp_avoiding(const Graph& g, Vertex s, const std::vector<EdgeId>& F) {
    std::vector<Length> dist;
    std::vector<Vertex> pred;
    array_dijkstra(g, s, F, dist, pred);
    return dist;
}

Length dist_avoiding(const Graph& g, Vertex u, Vertex v, const std::vector<EdgeId>& F) {
    return sssp_avoiding(g, u, F)[static_cast<std::size_t>(v)];
}

std::vector<Vertex> path_avoiding(const Graph& g, Vertex u, Vertex v, const std::vector<EdgeId>& F) {
    std::vector<Length> dist;
    std::vector<Vertex> pred;
    array_dijkstra(g, u, F, dist, pred);
    if (dist[static_cast<std::size_t>(v)].is_inf()) return {};
    std::vector<Vertex> p;
    for (Vertex x = v; x != kNoVertex; x = pred[static_cast<std::size_t>(x)]) p.push_back(x);
    std::reverse(p.begin(), p.end());
    return p;
}

std::vector<EdgeId> path_edges(const Graph& g, const std::vector<Vertex>& path) {
    std::vector<EdgeId> out;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        EdgeId best = kNoEdge;
        for (EdgeId id = 0; id < g.edge_slots(); ++id) {
            if (!g.present(id)) continue;
            const Edge& e = g.edge(id);
            if ((e.u == path[i] && e.v == path[i + 1]) || (e.v == path[i] && e.u == path[i + 1]))
                if (best == kNoEdge || e.w < g.edge(best).w) best = id;
        }
        out.push_back(best);
    }
    return out;
}

std::vector<Length> bellman_ford(const Graph& g, Vertex s, const std::vector<EdgeId>& F) {
    auto removed = removed_set(g, F);
    std::vector<Length> dist(static_cast<std::size_t>(g.n()), Length::inf());
    dist[static_cast<std::size_t>(s)] = CompositeWeight{};
    for (int round = 0; round < g.n(); ++round) {
        bool changed = false;
        for (EdgeId id = 0; id < g.edge_slots(); ++id) {
            if (!g.present(id) || removed[static_cast<std::size_t>(id)]) continue;
            const Edge& e = g.edge(id);
            for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
                Length nd = dist[static_cast<std::size_t>(a)] + e.w;
                if (nd < dist[static_cast<std::size_t>(b)]) {
                    dist[static_cast<std::size_t>(b)] = nd;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
    return dist;
}

std::vector<std::vector<Length>> apsp(const Graph& g, const std::vector<EdgeId>& F) {
    std::vector<std::vector<Length>> m;
    for (Vertex s = 0; s < g.n(); ++s) m.push_back(sssp_avoiding(g, s, F));
    return m;
}

WeakInterval weak_classify(const Graph& g, Vertex u, Vertex v, int pa, int pb) {
    WeakInterval w;
    w.pa = pa;
    w.pb = pb;
    auto base = path_avoiding(g, u, v);
    auto edges = path_edges(g, base);
    if (pa < 0 || pb > static_cast<int>(edges.size()) || pa > pb) return w;
    w.interval_edges.assign(edges.begin() + pa, edges.begin() + pb);
    w.avoid_length = dist_avoiding(g, u, v, w.interval_edges);
    for (EdgeId f : w.interval_edges) {
        auto p = path_avoiding(g, u, v, {f});
        if (p.empty()) continue;
        auto pe = path_edges(g, p);
        bool avoids = std::none_of(pe.begin(), pe.end(), [&](EdgeId x) {
            return std::find(w.interval_edges.begin(), w.interval_edges.end(), x) != w.interval_edges.end();
        });
        if (avoids) w.weak_points.push_back(f);
    }
    return w;
}

}  // namespace faultpath::oracle

namespace faultpath::oracle {

namespace {

struct PathCut {
    std::vector<Vertex> verts;
    std::vector<EdgeId> edges;
    std::vector<int> cut;       // sorted positions of F on the path
    std::vector<int> interval;  // per path vertex
};

PathCut cut_path(const Graph& g, Vertex s, Vertex t, const std::vector<EdgeId>& F) {
    PathCut pc;
    pc.verts = path_avoiding(g, s, t);
    pc.edges = path_edges(g, pc.verts);
    for (EdgeId f : F) {
        auto it = std::find(pc.edges.begin(), pc.edges.end(), f);
        if (it == pc.edges.end()) throw InvalidArgumentError("failure is not on π(s,t)");
        pc.cut.push_back(static_cast<int>(it - pc.edges.begin()));
    }
    std::sort(pc.cut.begin(), pc.cut.end());
    int c = 0;
    for (std::size_t p = 0; p < pc.verts.size(); ++p) {
        pc.interval.push_back(c);
        while (c < static_cast<int>(pc.cut.size()) && pc.cut[static_cast<std::size_t>(c)] == static_cast<int>(p)) ++c;
    }
    return pc;
}

}  // namespace

Length snake_oracle(const Graph& g, Vertex s, Vertex t, const std::vector<EdgeId>& F, std::optional<SnakeThrough> x) {
    PathCut pc = cut_path(g, s, t, F);
    const int P = static_cast<int>(pc.verts.size());
    const int w = static_cast<int>(pc.cut.size());
    auto M = apsp(g, pc.edges);
    auto m = [&](int a, int b) { return M[static_cast<std::size_t>(pc.verts[static_cast<std::size_t>(a)])][static_cast<std::size_t>(pc.verts[static_cast<std::size_t>(b)])]; };
    std::vector<Length> pre(static_cast<std::size_t>(P), CompositeWeight{});
    for (int p = 1; p < P; ++p) pre[static_cast<std::size_t>(p)] = pre[static_cast<std::size_t>(p) - 1] + g.edge(pc.edges[static_cast<std::size_t>(p) - 1]).w;
    auto walk = [&](int a, int b) { return Length(pre[static_cast<std::size_t>(std::max(a, b))].value() - pre[static_cast<std::size_t>(std::min(a, b))].value()); };
    auto in = [&](int p, int iv) { return pc.interval[static_cast<std::size_t>(p)] == iv; };
    // Does the walk between positions a and b cover x?
    auto covers = [&](int a, int b) {
        if (!x) return true;
        const int lo = std::min(a, b), hi = std::max(a, b);
        if (x->edge) {
            auto it = std::find(pc.edges.begin(), pc.edges.end(), x->id);
            if (it == pc.edges.end()) return false;
            const int e = static_cast<int>(it - pc.edges.begin());
            return lo <= e && e + 1 <= hi;
        }
        for (int p = lo; p <= hi; ++p)
            if (pc.verts[static_cast<std::size_t>(p)] == x->id) return true;
        return false;
    };
    Length best = Length::inf();
    for (int I = 1; I < w; ++I)
        for (int J = 1; J < w; ++J) {
            if (I == J) continue;
            // Stage values indexed by position and whether x is covered yet.
            std::vector<Length> a(static_cast<std::size_t>(P), Length::inf());
            for (int y = 0; y < P; ++y)
                if (in(y, I))
                    for (int s0 = 0; s0 < P; ++s0)
                        if (in(s0, 0)) a[static_cast<std::size_t>(y)] = std::min(a[static_cast<std::size_t>(y)], pre[static_cast<std::size_t>(s0)] + m(s0, y));
            std::vector<Length> b(2 * static_cast<std::size_t>(P), Length::inf());
            for (int y2 = 0; y2 < P; ++y2)
                for (int y1 = 0; y1 < P; ++y1)
                    if (in(y1, I) && in(y2, I)) {
                        auto& slot = b[2 * static_cast<std::size_t>(y2) + (covers(y1, y2) ? 1 : 0)];
                        slot = std::min(slot, a[static_cast<std::size_t>(y1)] + walk(y1, y2));
                    }
            std::vector<Length> c(2 * static_cast<std::size_t>(P), Length::inf());
            for (int z = 0; z < P; ++z)
                for (int y2 = 0; y2 < P; ++y2)
                    if (in(z, J) && in(y2, I))
                        for (int f = 0; f < 2; ++f) {
                            auto& slot = c[2 * static_cast<std::size_t>(z) + static_cast<std::size_t>(f)];
                            slot = std::min(slot, b[2 * static_cast<std::size_t>(y2) + static_cast<std::size_t>(f)] + m(y2, z));
                        }
            for (int z2 = 0; z2 < P; ++z2)
                for (int z1 = 0; z1 < P; ++z1) {
                    if (!in(z1, J) || !in(z2, J)) continue;
                    const bool here = covers(z1, z2);
                    Length d = std::min(c[2 * static_cast<std::size_t>(z1) + 1], here ? c[2 * static_cast<std::size_t>(z1)] : Length::inf());
                    d = d + walk(z1, z2);
                    for (int t0 = 0; t0 < P; ++t0)
                        if (in(t0, w)) best = std::min(best, d + m(z2, t0) + walk(t0, P - 1));
                }
        }
    return best;
}

std::vector<int> interval_visits(const Graph& g, Vertex s, Vertex t, const std::vector<EdgeId>& F) {
    PathCut pc = cut_path(g, s, t, F);
    std::vector<int> pos(static_cast<std::size_t>(g.n()), -1);
    for (std::size_t p = 0; p < pc.verts.size(); ++p) pos[static_cast<std::size_t>(pc.verts[p])] = static_cast<int>(p);
    auto r = path_avoiding(g, s, t, F);
    std::vector<int> visits;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const int p = pos[static_cast<std::size_t>(r[i])];
        if (p < 0) continue;
        bool continues = false;
        if (i > 0) {
            const int q = pos[static_cast<std::size_t>(r[i - 1])];
            if (q >= 0 && (q == p + 1 || q == p - 1)) {
                const EdgeId along = pc.edges[static_cast<std::size_t>(std::min(p, q))];
                continues = *g.find_edge(r[i - 1], r[i]) == along;
            }
        }
        if (!continues) visits.push_back(pc.interval[static_cast<std::size_t>(p)]);
    }
    return visits;
}

int three_on_path_type(const std::vector<int>& v) {
    const std::vector<std::vector<int>> shapes = {{0, 3}, {0, 1, 3}, {0, 2, 3}, {0, 1, 2, 3}, {0, 2, 1, 3}};
    for (std::size_t k = 0; k < shapes.size(); ++k)
        if (v == shapes[k]) return static_cast<int>(k) + 1;
    return 0;
}

}  // namespace faultpath::oracle
