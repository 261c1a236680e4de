#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "faultpath/spt.hpp"

namespace faultpath {

// u ~> x, optional bridge (x,y), y ~> v, all relative to one SptSet.
// Without a bridge x == y. The Null form has infinite length.
struct ProperForm {
    Vertex u = kNoVertex;
    Vertex v = kNoVertex;
    Vertex x = kNoVertex;
    Vertex y = kNoVertex;
    EdgeId bridge = kNoEdge;
    Length length = Length::inf();

    bool is_null() const { return length.is_inf(); }
    static ProperForm null(Vertex u = kNoVertex, Vertex v = kNoVertex) {
        ProperForm p;
        p.u = u;
        p.v = v;
        return p;
    }
    // The shortest path itself.
    static ProperForm shortest(const SptSet& ref, Vertex u, Vertex v) {
        if (!ref.reachable(u, v)) return null(u, v);
        return {u, v, v, v, kNoEdge, ref.dist(u, v)};
    }
    friend bool operator==(const ProperForm&, const ProperForm&) = default;
};

inline const ProperForm& min_form(const ProperForm& a, const ProperForm& b) { return b.length < a.length ? b : a; }

// Vertex list of a proper form (may repeat vertices if it encodes a walk).
std::vector<Vertex> expand(const ProperForm& pf, const SptSet& ref);

// An interval [pa, pb] of edge-hop positions on π(u,v).
struct IntervalOnPath {
    Vertex u = kNoVertex;
    Vertex v = kNoVertex;
    int pa = 0;
    int pb = 0;
};

// Concatenation of shortest-path pieces and single edges, possibly from
// different graph versions. Random access is O(pieces + log n).
class Candidate {
public:
    explicit Candidate(const Graph& g) : g_(&g) {}

    Candidate& path(const SptSet& s, Vertex a, Vertex b);
    Candidate& edge(EdgeId e, Vertex from);
    Candidate& form(const ProperForm& pf, const SptSet& s);

    bool is_null() const { return null_; }
    int hops() const { return hops_; }
    Length total() const { return null_ ? Length::inf() : Length(len_); }
    Vertex front() const { return front_; }
    Vertex back() const { return back_; }
    Vertex vertex_at(int k) const;
    Length prefix_len(int k) const;
    EdgeId edge_after(int k) const;

private:
    struct Piece {
        const SptSet* spt = nullptr;  // nullptr for an edge piece
        Vertex a = kNoVertex, b = kNoVertex;
        EdgeId e = kNoEdge;
        int start = 0;  // hop offset of a
        int hops = 0;
        CompositeWeight before;  // length before a
    };
    void append(const Piece& p, const CompositeWeight& w);
    const Piece& piece_for(int k) const;

    const Graph* g_;
    std::array<Piece, 12> pieces_{};
    int count_ = 0;
    int hops_ = 0;
    CompositeWeight len_{};
    bool null_ = false;
    bool empty_ = true;
    Vertex front_ = kNoVertex, back_ = kNoVertex;
};

// Explicit vertex sequence in g with precomputed prefix lengths.
class ExplicitPath {
public:
    ExplicitPath(const Graph& g, std::vector<Vertex> verts);
    int hops() const { return static_cast<int>(verts_.size()) - 1; }
    Vertex vertex_at(int k) const { return verts_[static_cast<std::size_t>(k)]; }
    Length prefix_len(int k) const { return prefix_[static_cast<std::size_t>(k)]; }
    Length total() const { return prefix_.back(); }
    EdgeId edge_after(int k) const { return edges_[static_cast<std::size_t>(k)]; }
    bool is_null() const { return false; }

private:
    std::vector<Vertex> verts_;
    std::vector<EdgeId> edges_;
    std::vector<Length> prefix_;
};

// Canonical (x, bridge, y) decomposition, or nullopt if P is not a shortest
// path, a shortest path through one bridge edge, or two glued shortest paths.
template <class Access>
std::optional<ProperForm> to_proper_form(const Access& p, const SptSet& ref) {
    if (p.is_null()) return std::nullopt;
    const int L = p.hops();
    const Vertex u = p.vertex_at(0), v = p.vertex_at(L);
    auto shortest_prefix = [&](int k) { return p.prefix_len(k) == ref.dist(u, p.vertex_at(k)); };
    int lo = 0, hi = L;  // invariant: prefix(lo) shortest
    while (lo < hi) {
        int mid = lo + (hi - lo + 1) / 2;
        if (shortest_prefix(mid)) lo = mid;
        else hi = mid - 1;
    }
    const Length total = p.total();
    if (lo == L) return ProperForm{u, v, v, v, kNoEdge, total};
    const Vertex x = p.vertex_at(lo);
    const CompositeWeight before_x = p.prefix_len(lo).value();
    if (total.value() - before_x == ref.dist(x, v)) return ProperForm{u, v, x, x, kNoEdge, total};
    const Vertex y = p.vertex_at(lo + 1);
    const CompositeWeight before_y = p.prefix_len(lo + 1).value();
    if (total.value() - before_y == ref.dist(y, v)) return ProperForm{u, v, x, y, p.edge_after(lo), total};
    return std::nullopt;
}

// Whether pf shares an edge with R; pf and R must share endpoints and version.
bool intersects_interval(const ProperForm& pf, const IntervalOnPath& R, const SptSet& ref);

// T_{G,R}: the proper form of the candidate if it avoids R, else Null.
template <class Access>
ProperForm transform_T(const Access& p, const IntervalOnPath& R, const SptSet& ref) {
    if (p.is_null()) return ProperForm::null(R.u, R.v);
    auto pf = to_proper_form(p, ref);
    if (!pf || intersects_interval(*pf, R, ref)) return ProperForm::null(R.u, R.v);
    return *pf;
}

// Divergence and convergence points of the walk P against π(P.front, P.back).
// Returns (v, u) when P equals the shortest path.
std::pair<Vertex, Vertex> diverge_converge(const SptSet& ref, const Graph& g, const std::vector<Vertex>& P);

}  // namespace faultpath
