#include "faultpath/aux_graph.hpp"

#include <algorithm>
#include <bit>

#include "faultpath/perturb.hpp"

namespace faultpath {

StPath st_path(const Graph& g, Vertex s, Vertex t) {
    auto from_s = dijkstra(g, s);
    if (!from_s.reachable(t)) throw UnreachableError("t is not reachable from s");
    auto from_t = dijkstra(g, t);
    StPath p;
    p.s = s;
    p.t = t;
    p.verts = from_s.path_to(t);
    p.pos.assign(static_cast<std::size_t>(g.n()), -1);
    p.edge_pos.assign(static_cast<std::size_t>(g.edge_slots()), -1);
    for (std::size_t k = 0; k < p.verts.size(); ++k) {
        const Vertex v = p.verts[k];
        p.pos[static_cast<std::size_t>(v)] = static_cast<int>(k);
        p.pre.push_back(from_s.dist(v));
        p.suf.push_back(from_t.dist(v));
        if (k > 0) {
            const EdgeId e = from_s.parent_edge(v);
            p.edge_pos[static_cast<std::size_t>(e)] = static_cast<int>(k) - 1;
            p.edges.push_back(e);
        }
    }
    return p;
}

Graph without_path(const Graph& g, const StPath& st) {
    Graph out = g;
    for (EdgeId e : st.edges) out.remove_edge(e);
    return out;
}

AuxGraphH build_H(const Graph& g, const StPath& st) {
    AuxGraphH a;
    a.h = without_path(g, st);
    a.base_n = g.n();
    a.st = st;
    a.N = {g.total_base_weight() + 1, 0};
    a.first_star = g.edge_slots();
    const int L = st.hops();
    a.scale = std::bit_ceil(static_cast<std::uint64_t>(2 * L + 3));
    for (EdgeId e : a.h.edge_ids()) a.h.set_weight(e, a.scaled(a.h.edge(e).w));
    for (int k = 0; k < 2 * L; ++k) a.h.add_vertex();
    TiebreakGen lifts(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(L));
    for (int k = 0; k < 2 * L; ++k) a.lift.push_back(lifts.next());
    auto up = [&](Vertex term, int i) {
        return a.N + CompositeWeight{0, a.lift[static_cast<std::size_t>(term - a.base_n)] + static_cast<std::uint64_t>(i)};
    };
    for (int k = 0; k < L; ++k) {
        for (int i = 0; i <= k; ++i)
            a.h.add_edge_with_id(a.star(k, i), a.minus(k), st.verts[static_cast<std::size_t>(i)], a.scaled(st.pre[static_cast<std::size_t>(i)].value()) + up(a.minus(k), i));
        for (int i = k + 1; i <= L; ++i)
            a.h.add_edge_with_id(a.star(k, i), st.verts[static_cast<std::size_t>(i)], a.plus(k), a.scaled(st.suf[static_cast<std::size_t>(i)].value()) + up(a.plus(k), i));
    }
    return a;
}

Length AuxGraphH::to_g_length(const Length& h_len, Vertex a, Vertex b) const {
    if (h_len.is_inf()) return h_len;
    CompositeWeight off{};
    std::uint64_t stars = 0;
    for (Vertex v : {a, b})
        if (is_terminal(v)) {
            off += N + CompositeWeight{0, lift[static_cast<std::size_t>(v - base_n)]};
            ++stars;
        }
    if (h_len.value().base >= (stars + 1) * N.base) return Length::inf();
    CompositeWeight w = h_len.value() - off;
    w.tiebreak /= scale;
    return w;
}

CompositeWeight AuxGraphH::scaled(const CompositeWeight& w) const {
    CompositeWeight out{w.base, 0};
    if (__builtin_mul_overflow(w.tiebreak, scale, &out.tiebreak)) throw OverflowError("tiebreak overflow while scaling H");
    return out;
}

std::vector<Vertex> AuxGraphH::to_g_path(const std::vector<Vertex>& hp) const {
    if (hp.empty()) return {};
    const int L = st.hops();
    auto is_minus = [&](Vertex v) { return v >= base_n && (v - base_n) % 2 == 0; };
    auto is_plus = [&](Vertex v) { return v >= base_n && (v - base_n) % 2 == 1; };
    // Path from the terminal end to the attachment vertex at position i.
    auto expand_end = [&](Vertex term, Vertex attach) {
        const int i = st.pos[static_cast<std::size_t>(attach)];
        std::vector<Vertex> seg;
        if (is_minus(term))
            seg.assign(st.verts.begin(), st.verts.begin() + i + 1);
        else
            for (int k = L; k >= i; --k) seg.push_back(st.verts[static_cast<std::size_t>(k)]);
        return seg;
    };
    std::vector<Vertex> out;
    std::size_t lo = 0, hi = hp.size();
    if (hp.size() >= 2 && (is_minus(hp.front()) || is_plus(hp.front()))) {
        out = expand_end(hp[0], hp[1]);
        lo = 2;
    }
    std::vector<Vertex> tail;
    if (hi - lo >= 1 && hp.size() >= 2 && (is_minus(hp.back()) || is_plus(hp.back()))) {
        tail = expand_end(hp.back(), hp[hp.size() - 2]);
        std::reverse(tail.begin(), tail.end());
        hi -= 2;
    }
    for (std::size_t k = lo; k < hi; ++k) out.push_back(hp[k]);
    // Both stars share their attachment vertex.
    const std::size_t skip = (lo > hi && !tail.empty()) ? 1 : 0;
    out.insert(out.end(), tail.begin() + static_cast<std::ptrdiff_t>(skip), tail.end());
    return out;
}

}  // namespace faultpath
