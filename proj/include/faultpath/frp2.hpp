#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "faultpath/aux_graph.hpp"
#include "faultpath/dso.hpp"

namespace faultpath {

struct Frp1Result {
    std::vector<Length> length;               // per path position k
    std::vector<std::vector<Vertex>> path;    // empty when unreachable
    std::vector<EdgeId> union_edges;          // sorted union over all paths
};

// π_{G−d}(s,t) for every d on π(s,t), one Dijkstra each.
Frp1Result frp1_all(const Graph& g, const StPath& st, int threads = 1);

// Witness of a both-on-path answer in path positions. Without a middle
// touch (a = b = -1) the walk is s..w, G−st path w→z, z..t; otherwise
// s..w, w→a off path, a..b along the path, b→z off path, z..t.
struct Frp2Witness {
    int w = -1, a = -1, b = -1, z = -1;
};

struct Frp2Record {
    EdgeId d1;
    EdgeId d2;
    Length length;
};

// 1FRP and 2FRP between s and t.
class Frp2Solver {
public:
    Frp2Solver(const Graph& g, Vertex s, Vertex t, int threads = 1);

    const Graph& graph() const { return g_; }
    const StPath& st() const { return st_; }
    const AuxGraphH& aux() const { return aux_; }
    const Frp1Result& frp1() const { return frp1_; }
    const IncrementalDso& h_dso() const { return h_dso_; }
    // All-pairs shortest paths in G − π(s,t).
    const SptSet& off_path() const { return *off_; }

    // d1 = edges[k1] on the path, d2 off the path.
    Length one_on_path(int k1, EdgeId d2) const;
    // Path positions k1 < k2.
    Length both_on_path(int k1, int k2) const { return both_[index(k1, k2)]; }
    const Frp2Witness& witness(int k1, int k2) const { return wit_[index(k1, k2)]; }

    // |π_{G−{d1,d2}}(s,t)| for any two distinct edges.
    Length query(EdgeId d1, EdgeId d2) const;
    std::vector<Vertex> path(EdgeId d1, EdgeId d2) const;

    // Required pairs: d1 on π(s,t), d2 on π_{G−d1}(s,t), in path order.
    void for_each_required(const std::function<void(const Frp2Record&)>& sink) const;

private:
    std::size_t index(int k1, int k2) const { return static_cast<std::size_t>(k1) * static_cast<std::size_t>(st_.hops()) + static_cast<std::size_t>(k2); }
    void solve_both(int threads);

    Graph g_;
    StPath st_;
    Frp1Result frp1_;
    std::shared_ptr<const SptSet> off_;
    AuxGraphH aux_;
    IncrementalDso h_dso_;
    std::vector<Length> both_;
    std::vector<Frp2Witness> wit_;
};

}  // namespace faultpath
