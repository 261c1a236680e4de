#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "faultpath/generators.hpp"
#include "faultpath/oracle.hpp"
#include "faultpath/perturb.hpp"
#include "faultpath/proper_form.hpp"

namespace testutil {

using namespace faultpath;

inline Graph random_graph(int n, int extra, std::uint64_t seed, std::uint64_t max_w = 20) {
    return perturb_and_verify(gen::random_connected(n, extra, max_w, seed), seed);
}

inline Graph perturbed(const Graph& raw, std::uint64_t seed = 1) { return perturb_and_verify(raw, seed); }

inline std::set<EdgeId> edge_set(const Graph& g, const std::vector<Vertex>& path) {
    auto e = oracle::path_edges(g, path);
    return {e.begin(), e.end()};
}

inline bool shares_edge(const std::set<EdgeId>& a, const std::vector<EdgeId>& b) {
    return std::any_of(b.begin(), b.end(), [&](EdgeId x) { return a.count(x) > 0; });
}

}  // namespace testutil
