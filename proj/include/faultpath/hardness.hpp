#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "faultpath/graph.hpp"

namespace faultpath {

// APSP → 2FRP reduction instance. Vertex layout: v_i = i − 1 (the input
// graph), s_k = n + k and t_k = 2n + 2 + k for k = 0..n+1; s = s_{n+1},
// t = t_{n+1}.
struct ReductionInstance {
    Graph h;
    int n = 0;
    Vertex s = kNoVertex;
    Vertex t = kNoVertex;
    CompositeWeight N;

    Vertex v_at(int i) const { return i - 1; }
    Vertex s_at(int k) const { return n + k; }
    Vertex t_at(int k) const { return 2 * n + 2 + k; }
    // Failure pair D = {(s_{i−1}, s_i), (t_{j−1}, t_j)}.
    std::pair<EdgeId, EdgeId> failures(int i, int j) const;
};

// Zero-base path edges and matching edges iN get tiebreaks from seed; input
// edges keep their weights. Verifies π_H(s,t) = s..s_1 v_1 t_1..t.
ReductionInstance reduce(const Graph& g, std::uint64_t seed = 1);

using Frp2Answer = std::function<Length(EdgeId, EdgeId)>;

// dist[i][j] = answer(D_{i+1,j+1}) minus the composite weight of the S, T
// and matching parts, so the base equals answer − (i+j)N and the whole
// composite equals |π_G(v_i, v_j)|. Throws InconsistentAnswer on infinite,
// negative or asymmetric values.
std::vector<std::vector<CompositeWeight>> extract_apsp(const ReductionInstance& inst, const Frp2Answer& answer);

// Text map: one line per index, `v i <vertex>`, `s k <vertex>`, `t k <vertex>`.
void write_reduction_map(std::ostream& out, const ReductionInstance& inst);

}  // namespace faultpath
