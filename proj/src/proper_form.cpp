#include "faultpath/proper_form.hpp"

namespace faultpath {

std::vector<Vertex> expand(const ProperForm& pf, const SptSet& ref) {
    if (pf.is_null()) return {};
    auto out = ref.path(pf.u, pf.x);
    auto tail = ref.path(pf.y, pf.v);
    out.insert(out.end(), tail.begin() + (pf.bridge == kNoEdge ? 1 : 0), tail.end());
    return out;
}

void Candidate::append(const Piece& p, const CompositeWeight& w) {
    if (empty_) {
        front_ = p.a;
        back_ = p.a;
        empty_ = false;
    }
    if (back_ != p.a) throw NotAPathError("candidate pieces do not connect");
    back_ = p.b;
    if (p.hops == 0) return;
    if (count_ == static_cast<int>(pieces_.size())) throw InvalidArgumentError("candidate has too many pieces");
    Piece q = p;
    q.start = hops_;
    q.before = len_;
    pieces_[static_cast<std::size_t>(count_++)] = q;
    hops_ += p.hops;
    len_ += w;
}

Candidate& Candidate::path(const SptSet& s, Vertex a, Vertex b) {
    if (null_) return *this;
    if (!s.reachable(a, b)) {
        null_ = true;
        return *this;
    }
    Piece p;
    p.spt = &s;
    p.a = a;
    p.b = b;
    p.hops = s.hops(a, b);
    append(p, s.dist(a, b).value());
    return *this;
}

Candidate& Candidate::edge(EdgeId e, Vertex from) {
    if (null_) return *this;
    const Edge& ed = g_->edge(e);
    if (ed.u != from && ed.v != from) throw NotAPathError("edge does not touch the current endpoint");
    Piece p;
    p.a = from;
    p.b = ed.other(from);
    p.e = e;
    p.hops = 1;
    append(p, ed.w);
    return *this;
}

Candidate& Candidate::form(const ProperForm& pf, const SptSet& s) {
    if (null_) return *this;
    if (pf.is_null()) {
        null_ = true;
        return *this;
    }
    path(s, pf.u, pf.x);
    if (pf.bridge != kNoEdge) edge(pf.bridge, pf.x);
    return path(s, pf.y, pf.v);
}

const Candidate::Piece& Candidate::piece_for(int k) const {
    int i = count_ - 1;
    while (i > 0 && pieces_[static_cast<std::size_t>(i)].start > k) --i;
    return pieces_[static_cast<std::size_t>(i)];
}

Vertex Candidate::vertex_at(int k) const {
    if (count_ == 0) return front_;
    const Piece& p = piece_for(k);
    int off = k - p.start;
    if (p.spt) return p.spt->vertex_at(p.a, p.b, off);
    return off == 0 ? p.a : p.b;
}

Length Candidate::prefix_len(int k) const {
    if (count_ == 0) return CompositeWeight{};
    const Piece& p = piece_for(k);
    int off = k - p.start;
    if (off == 0) return p.before;
    if (p.spt) return Length(p.before) + p.spt->dist(p.a, p.spt->vertex_at(p.a, p.b, off));
    return p.before + g_->edge(p.e).w;
}

EdgeId Candidate::edge_after(int k) const {
    const Piece& p = piece_for(k);
    int off = k - p.start;
    if (p.spt) return p.spt->edge_at(p.a, p.b, off);
    return p.e;
}

ExplicitPath::ExplicitPath(const Graph& g, std::vector<Vertex> verts) : verts_(std::move(verts)) {
    if (verts_.empty()) throw NotAPathError("empty path");
    prefix_.push_back(CompositeWeight{});
    for (std::size_t i = 0; i + 1 < verts_.size(); ++i) {
        EdgeId best = kNoEdge;
        for (const Incidence& in : g.adj(verts_[i]))
            if (in.to == verts_[i + 1] && (best == kNoEdge || g.edge(in.id).w < g.edge(best).w)) best = in.id;
        if (best == kNoEdge) throw NotAPathError("consecutive vertices are not adjacent");
        edges_.push_back(best);
        prefix_.push_back(prefix_.back() + g.edge(best).w);
    }
}

bool intersects_interval(const ProperForm& pf, const IntervalOnPath& R, const SptSet& ref) {
    if (pf.is_null() || R.pa >= R.pb) return false;
    if (pf.u != R.u || pf.v != R.v) throw InvalidArgumentError("proper form and interval endpoints differ");
    const int L = ref.hops(R.u, R.v);
    const auto& tu = ref.tree(R.u);
    const auto& tv = ref.tree(R.v);
    const Vertex a = tu.ancestor_at_depth(R.v, R.pa);
    const Vertex b = tu.ancestor_at_depth(R.v, R.pb);
    if (tu.depth(tu.lca(pf.x, b)) > R.pa) return true;
    if (tv.depth(tv.lca(pf.y, a)) > L - R.pb) return true;
    if (pf.bridge != kNoEdge) {
        for (Vertex z : {pf.x, pf.y})
            if (tu.parent_edge(z) == pf.bridge && tu.is_ancestor(z, b) && tu.depth(z) > R.pa) return true;
    }
    return false;
}

std::pair<Vertex, Vertex> diverge_converge(const SptSet& ref, const Graph& g, const std::vector<Vertex>& P) {
    if (P.empty()) throw NotAPathError("empty path");
    for (std::size_t i = 0; i + 1 < P.size(); ++i)
        if (!g.find_edge(P[i], P[i + 1])) throw NotAPathError("path is not edge-connected");
    const Vertex u = P.front(), v = P.back();
    const auto Q = ref.path(u, v);
    if (Q == P) return {v, u};
    std::size_t k = 0;
    while (k + 1 < P.size() && k + 1 < Q.size() && P[k + 1] == Q[k + 1]) ++k;
    std::size_t r = 0;
    while (r + 1 < P.size() && r + 1 < Q.size() && P[P.size() - 2 - r] == Q[Q.size() - 2 - r]) ++r;
    return {P[k], P[P.size() - 1 - r]};
}

}  // namespace faultpath
