#pragma once

#include <cstdint>
#include <vector>

#include "faultpath/graph.hpp"
#include "faultpath/spt.hpp"

namespace faultpath {

// π(s,t) with hop positions and prefix/suffix distances.
struct StPath {
    Vertex s = kNoVertex;
    Vertex t = kNoVertex;
    std::vector<Vertex> verts;   // verts[k], k = 0..L
    std::vector<EdgeId> edges;   // edges[k] joins verts[k] and verts[k+1]
    std::vector<Length> pre;     // |s verts[k]|
    std::vector<Length> suf;     // |verts[k] t|
    std::vector<int> pos;        // per vertex of G, position or -1
    std::vector<int> edge_pos;   // per edge slot of G, position or -1

    int hops() const { return static_cast<int>(edges.size()); }
    bool on_path(EdgeId e) const { return e >= 0 && e < static_cast<EdgeId>(edge_pos.size()) && edge_pos[static_cast<std::size_t>(e)] >= 0; }
    int position(EdgeId e) const { return on_path(e) ? edge_pos[static_cast<std::size_t>(e)] : -1; }
    // |verts[a] verts[b]| for a <= b.
    CompositeWeight segment(int a, int b) const { return pre[static_cast<std::size_t>(b)].value() - pre[static_cast<std::size_t>(a)].value(); }
};

// Throws UnreachableError when t is not reachable from s.
StPath st_path(const Graph& g, Vertex s, Vertex t);

// G minus π(s,t), plus terminals d⁻ = minus(k), d⁺ = plus(k) for each path
// edge d = edges[k]. Star (d⁻, verts[i]) for i <= k weighs pre[i] + N and
// (verts[i], d⁺) for i > k weighs suf[i] + N. Every G tiebreak inside H is
// multiplied by `scale`; a star additionally carries its terminal's lift and
// i in the tiebreak channel. Without the i term every route d⁻ - verts[i] - d'⁺
// with k' < i <= k would cost |st| + 2N. Base edges keep their G ids; star
// (k, i) has id first_star + k(L+1) + i.
struct AuxGraphH {
    Graph h;
    int base_n = 0;
    StPath st;
    CompositeWeight N;
    std::uint64_t scale = 1;  // power of two above 2(L+1)
    EdgeId first_star = 0;
    std::vector<std::uint64_t> lift;  // per terminal, indexed by vertex - base_n

    Vertex minus(int k) const { return base_n + 2 * k; }
    Vertex plus(int k) const { return base_n + 2 * k + 1; }
    bool is_terminal(Vertex v) const { return v >= base_n; }
    bool is_star(EdgeId e) const { return e >= first_star; }
    EdgeId star(int k, int i) const { return first_star + static_cast<EdgeId>(k) * (st.hops() + 1) + i; }
    // G weight as stored in H.
    CompositeWeight scaled(const CompositeWeight& w) const;
    // H length between a and b converted to G: one N and one lift come off per
    // terminal endpoint and the star offsets drop out of the scaled tiebreak.
    // A route through a further terminal costs at least one more N and means
    // no G path exists.
    Length to_g_length(const Length& h_len, Vertex a, Vertex b) const;
    // Replaces star edges of an H path with the prefix/suffix they stand for.
    std::vector<Vertex> to_g_path(const std::vector<Vertex>& hp) const;
};

// N.base = (sum of base weights in G) + 1, N.tiebreak = 0. Lifts are
// distinct per terminal so routes through different terminals never tie.
AuxGraphH build_H(const Graph& g, const StPath& st);

// G with every π(s,t) edge removed; ids preserved.
Graph without_path(const Graph& g, const StPath& st);

}  // namespace faultpath
