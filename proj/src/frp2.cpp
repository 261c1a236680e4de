#include "faultpath/frp2.hpp"

#include <algorithm>
#include <set>

#include "faultpath/parallel.hpp"

namespace faultpath {

Frp1Result frp1_all(const Graph& g, const StPath& st, int threads) {
    const int L = st.hops();
    Frp1Result r;
    r.length.assign(static_cast<std::size_t>(L), Length::inf());
    r.path.assign(static_cast<std::size_t>(L), {});
    parallel_for(L, threads, [&](int k) {
        EdgeMask mask(g.edge_slots(), {st.edges[static_cast<std::size_t>(k)]});
        auto tree = dijkstra(g, st.s, &mask);
        r.length[static_cast<std::size_t>(k)] = tree.dist(st.t);
        if (tree.reachable(st.t)) r.path[static_cast<std::size_t>(k)] = tree.path_to(st.t);
    });
    std::set<EdgeId> all;
    for (const auto& p : r.path)
        for (std::size_t i = 1; i < p.size(); ++i) all.insert(*g.find_edge(p[i - 1], p[i]));
    r.union_edges.assign(all.begin(), all.end());
    return r;
}

Frp2Solver::Frp2Solver(const Graph& g, Vertex s, Vertex t, int threads)
    : g_(g), st_(st_path(g, s, t)), frp1_(frp1_all(g, st_, threads)) {
    off_ = std::make_shared<const SptSet>(without_path(g, st_), threads);
    aux_ = build_H(g, st_);
    h_dso_ = IncrementalDso::build(aux_.h, threads);
    solve_both(threads);
}

void Frp2Solver::solve_both(int threads) {
    const int L = st_.hops();
    const auto Lz = static_cast<std::size_t>(L);
    both_.assign(Lz * Lz, Length::inf());
    wit_.assign(Lz * Lz, {});
    if (L < 2) return;
    auto D = [&](int i, int j) { return off_->dist(st_.verts[static_cast<std::size_t>(i)], st_.verts[static_cast<std::size_t>(j)]); };
    const auto W1 = Lz + 1;
    // U(k1, a) = min_{w <= k1} |s w| + |w a|_{G−st}, for a > k1.
    std::vector<Length> U(Lz * W1, Length::inf());
    std::vector<int> Uw(Lz * W1, -1);
    for (int k1 = 0; k1 < L; ++k1)
        for (int a = k1 + 1; a <= L; ++a) {
            const auto at = static_cast<std::size_t>(k1) * W1 + static_cast<std::size_t>(a);
            if (k1 > 0) {
                U[at] = U[at - W1];
                Uw[at] = Uw[at - W1];
            }
            Length c = st_.pre[static_cast<std::size_t>(k1)] + D(k1, a);
            if (c < U[at]) {
                U[at] = c;
                Uw[at] = k1;
            }
        }
    // U'(k2, b) = min_{z > k2} |b z|_{G−st} + |z t|, for b <= k2.
    std::vector<Length> V(Lz * W1, Length::inf());
    std::vector<int> Vz(Lz * W1, -1);
    for (int k2 = L - 1; k2 >= 0; --k2)
        for (int b = 0; b <= k2; ++b) {
            const auto at = static_cast<std::size_t>(k2) * W1 + static_cast<std::size_t>(b);
            if (k2 < L - 1 && b <= k2 + 1) {
                V[at] = V[at + W1];
                Vz[at] = Vz[at + W1];
            }
            Length c = D(b, k2 + 1) + st_.suf[static_cast<std::size_t>(k2) + 1];
            if (c < V[at]) {
                V[at] = c;
                Vz[at] = k2 + 1;
            }
        }
    auto u_at = [&](int k1, int a) { return static_cast<std::size_t>(k1) * W1 + static_cast<std::size_t>(a); };
    parallel_for(L, threads, [&](int k1) {
        for (int k2 = k1 + 1; k2 < L; ++k2) {
            Length best = Length::inf();
            Frp2Witness wit;
            auto offer = [&](const Length& c, const Frp2Witness& w) {
                if (c < best) {
                    best = c;
                    wit = w;
                }
            };
            for (int z = k2 + 1; z <= L; ++z)
                offer(U[u_at(k1, z)] + st_.suf[static_cast<std::size_t>(z)], {Uw[u_at(k1, z)], -1, -1, z});
            // Forward order: converge at a, walk a→b along the path, leave at b.
            Length run = Length::inf();
            int run_a = -1;
            for (int b = k1 + 1; b <= k2; ++b) {
                if (run_a >= 0) run = run + st_.segment(b - 1, b);
                if (U[u_at(k1, b)] < run) {
                    run = U[u_at(k1, b)];
                    run_a = b;
                }
                const auto vb = u_at(k2, b);
                if (run_a >= 0) offer(run + V[vb], {Uw[u_at(k1, run_a)], run_a, b, Vz[vb]});
            }
            // Backward order: converge at a, walk back to b <= a, leave at b.
            run = Length::inf();
            run_a = -1;
            for (int b = k2; b > k1; --b) {
                if (run_a >= 0) run = run + st_.segment(b, b + 1);
                if (U[u_at(k1, b)] < run) {
                    run = U[u_at(k1, b)];
                    run_a = b;
                }
                const auto vb = u_at(k2, b);
                if (run_a >= 0) offer(run + V[vb], {Uw[u_at(k1, run_a)], run_a, b, Vz[vb]});
            }
            both_[index(k1, k2)] = best;
            wit_[index(k1, k2)] = wit;
        }
    });
}

Length Frp2Solver::one_on_path(int k1, EdgeId d2) const {
    return aux_.to_g_length(h_dso_.query_edge_failure(aux_.minus(k1), aux_.plus(k1), d2).length, aux_.minus(k1), aux_.plus(k1));
}

Length Frp2Solver::query(EdgeId d1, EdgeId d2) const {
    if (d1 == d2) throw InvalidArgumentError("failures must be distinct");
    if (!g_.present(d1) || !g_.present(d2)) throw InvalidArgumentError("failure is not an edge of the graph");
    int k1 = st_.position(d1), k2 = st_.position(d2);
    if (k1 < 0 && k2 < 0) return st_.pre.back();
    if (k1 >= 0 && k2 >= 0) return both_on_path(std::min(k1, k2), std::max(k1, k2));
    if (k1 < 0) {
        std::swap(d1, d2);
        std::swap(k1, k2);
    }
    const auto& p = frp1_.path[static_cast<std::size_t>(k1)];
    const Edge& e = g_.edge(d2);
    bool on = false;
    for (std::size_t i = 1; i < p.size() && !on; ++i)
        on = (p[i - 1] == e.u && p[i] == e.v) || (p[i - 1] == e.v && p[i] == e.u);
    if (!on) return frp1_.length[static_cast<std::size_t>(k1)];
    return one_on_path(k1, d2);
}

std::vector<Vertex> Frp2Solver::path(EdgeId d1, EdgeId d2) const {
    if (query(d1, d2).is_inf()) return {};
    int k1 = st_.position(d1), k2 = st_.position(d2);
    if (k1 < 0 && k2 < 0) return st_.verts;
    if (k1 >= 0 && k2 >= 0) {
        if (k1 > k2) std::swap(k1, k2);
        const auto& w = witness(k1, k2);
        std::vector<Vertex> out(st_.verts.begin(), st_.verts.begin() + w.w + 1);
        auto append = [&](const std::vector<Vertex>& seg) { out.insert(out.end(), seg.begin() + 1, seg.end()); };
        const auto& V = st_.verts;
        auto vz = [&](int i) { return V[static_cast<std::size_t>(i)]; };
        if (w.a < 0) {
            append(off_->path(vz(w.w), vz(w.z)));
        } else {
            append(off_->path(vz(w.w), vz(w.a)));
            if (w.a <= w.b)
                for (int i = w.a + 1; i <= w.b; ++i) out.push_back(vz(i));
            else
                for (int i = w.a - 1; i >= w.b; --i) out.push_back(vz(i));
            append(off_->path(vz(w.b), vz(w.z)));
        }
        for (int i = w.z + 1; i <= st_.hops(); ++i) out.push_back(vz(i));
        return out;
    }
    if (k1 < 0) {
        std::swap(d1, d2);
        std::swap(k1, k2);
    }
    auto ans = h_dso_.query_edge_failure(aux_.minus(k1), aux_.plus(k1), d2);
    return aux_.to_g_path(h_dso_.path(ans.form));
}

void Frp2Solver::for_each_required(const std::function<void(const Frp2Record&)>& sink) const {
    for (int k1 = 0; k1 < st_.hops(); ++k1) {
        const EdgeId d1 = st_.edges[static_cast<std::size_t>(k1)];
        const auto& p = frp1_.path[static_cast<std::size_t>(k1)];
        for (std::size_t i = 1; i < p.size(); ++i) {
            const EdgeId d2 = *g_.find_edge(p[i - 1], p[i]);
            sink({d1, d2, query(d1, d2)});
        }
    }
}

}  // namespace faultpath
