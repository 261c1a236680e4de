#include "faultpath/hardness.hpp"

#include <ostream>

#include "faultpath/perturb.hpp"
#include "faultpath/spt.hpp"

namespace faultpath {

std::pair<EdgeId, EdgeId> ReductionInstance::failures(int i, int j) const {
    return {*h.find_edge(s_at(i - 1), s_at(i)), *h.find_edge(t_at(j - 1), t_at(j))};
}

ReductionInstance reduce(const Graph& g, std::uint64_t seed) {
    if (g.n() < 2) throw InvalidArgumentError("reduction needs at least two vertices");
    ReductionInstance r;
    r.n = g.n();
    r.N = {g.total_base_weight() + 1, 0};
    const int n = g.n();
    r.h = Graph(3 * n + 4);
    for (EdgeId id : g.edge_ids()) {
        const Edge& e = g.edge(id);
        r.h.add_edge(e.u, e.v, e.w);
    }
    TiebreakGen tb(seed);
    for (int k = 0; k <= n; ++k) r.h.add_edge(r.s_at(k), r.s_at(k + 1), tb.weight(0));
    for (int k = 0; k <= n; ++k) r.h.add_edge(r.t_at(k), r.t_at(k + 1), tb.weight(0));
    for (int i = 1; i <= n; ++i) {
        r.h.add_edge(r.s_at(i), r.v_at(i), tb.weight(static_cast<std::uint64_t>(i) * r.N.base));
        r.h.add_edge(r.v_at(i), r.t_at(i), tb.weight(static_cast<std::uint64_t>(i) * r.N.base));
    }
    r.s = r.s_at(n + 1);
    r.t = r.t_at(n + 1);
    std::vector<Vertex> want;
    for (int k = n + 1; k >= 1; --k) want.push_back(r.s_at(k));
    want.push_back(r.v_at(1));
    for (int k = 1; k <= n + 1; ++k) want.push_back(r.t_at(k));
    if (dijkstra(r.h, r.s).path_to(r.t) != want) throw InconsistentAnswerError("reduction s-t path is not the canonical route");
    return r;
}

std::vector<std::vector<CompositeWeight>> extract_apsp(const ReductionInstance& inst, const Frp2Answer& answer) {
    const int n = inst.n;
    const Graph& h = inst.h;
    auto w = [&](Vertex a, Vertex b) { return h.edge(*h.find_edge(a, b)).w; };
    // Composite of s..s_i plus (s_i, v_i), and the mirror on the T side.
    std::vector<CompositeWeight> s_side(static_cast<std::size_t>(n) + 1), t_side(static_cast<std::size_t>(n) + 1);
    CompositeWeight sp{}, tp{};
    for (int i = n; i >= 1; --i) {
        sp += w(inst.s_at(i + 1), inst.s_at(i));
        tp += w(inst.t_at(i + 1), inst.t_at(i));
        s_side[static_cast<std::size_t>(i)] = sp + w(inst.s_at(i), inst.v_at(i));
        t_side[static_cast<std::size_t>(i)] = tp + w(inst.v_at(i), inst.t_at(i));
    }
    std::vector<std::vector<CompositeWeight>> out(static_cast<std::size_t>(n), std::vector<CompositeWeight>(static_cast<std::size_t>(n)));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            auto [d1, d2] = inst.failures(i, j);
            Length a = answer(d1, d2);
            if (a.is_inf()) throw InconsistentAnswerError("infinite answer for a designated failure set");
            const CompositeWeight fixed = s_side[static_cast<std::size_t>(i)] + t_side[static_cast<std::size_t>(j)];
            const CompositeWeight& v = a.value();
            if (v.base < fixed.base || v.tiebreak < fixed.tiebreak)
                throw InconsistentAnswerError("answer below (i+j)N for i=" + std::to_string(i) + " j=" + std::to_string(j));
            out[static_cast<std::size_t>(i) - 1][static_cast<std::size_t>(j) - 1] = v - fixed;
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != out[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                throw InconsistentAnswerError("asymmetric extracted distance at " + std::to_string(i) + "," + std::to_string(j));
    return out;
}

void write_reduction_map(std::ostream& out, const ReductionInstance& inst) {
    out << "c reduction map: role index vertex\n";
    out << "n " << inst.n << "\nN " << inst.N.base << "\nsource " << inst.s << "\ntarget " << inst.t << '\n';
    for (int i = 1; i <= inst.n; ++i) out << "v " << i << ' ' << inst.v_at(i) << '\n';
    for (int k = 0; k <= inst.n + 1; ++k) out << "s " << k << ' ' << inst.s_at(k) << '\n';
    for (int k = 0; k <= inst.n + 1; ++k) out << "t " << k << ' ' << inst.t_at(k) << '\n';
}

}  // namespace faultpath
