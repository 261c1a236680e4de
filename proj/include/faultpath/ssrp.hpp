#pragma once

#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "faultpath/dso.hpp"

namespace faultpath {

struct SsrpRecord {
    EdgeId d1;
    EdgeId d2;
    Vertex t;
    Length length;
};

struct SsrpStats {
    int timeline_steps = 0;
    std::uint64_t queries = 0;
    std::uint64_t max_step_queries = 0;
    std::uint64_t emitted = 0;
};

using SsrpSink = std::function<void(const SsrpRecord&)>;

// 2-fault single-source replacement paths from s. Emits (d1, d2, t) for every
// tree edge d1 of the SPT from s, every t below d1 and every d2 on
// π_{G−d1}(s,t). A pair already emitted in the other order is skipped.
SsrpStats ssrp2(const Graph& g, Vertex s, const SsrpSink& sink, int threads = 1);

// Dense answer table over all (d1, d2, t).
class Ssrp2Table {
public:
    Ssrp2Table(const Graph& g, Vertex s, int threads = 1);
    Length query(EdgeId d1, EdgeId d2, Vertex t) const;
    const SsrpStats& stats() const { return stats_; }

private:
    bool below(EdgeId e, Vertex t) const;
    Length lookup(EdgeId tree_edge, EdgeId other, Vertex t) const;

    Graph g_;
    Vertex s_;
    IncrementalDso static_;
    std::map<std::tuple<EdgeId, Vertex, EdgeId>, Length> table_;
    SsrpStats stats_;
};

}  // namespace faultpath
