#pragma once

#include <vector>

#include "faultpath/graph.hpp"

namespace faultpath {

// Single-source shortest path tree with O(1) LCA (Euler tour + sparse table)
// and O(log n) level ancestor (binary lifting).
class ShortestPathTree {
public:
    ShortestPathTree() = default;

    Vertex source() const { return source_; }
    int n() const { return static_cast<int>(dist_.size()); }
    bool reachable(Vertex v) const { return dist_[static_cast<std::size_t>(v)].finite(); }
    const Length& dist(Vertex v) const { return dist_[static_cast<std::size_t>(v)]; }
    Vertex parent(Vertex v) const { return parent_[static_cast<std::size_t>(v)]; }
    EdgeId parent_edge(Vertex v) const { return parent_edge_[static_cast<std::size_t>(v)]; }
    int depth(Vertex v) const { return depth_[static_cast<std::size_t>(v)]; }
    // Vertices in settle order (nondecreasing distance).
    const std::vector<Vertex>& order() const { return order_; }

    bool is_ancestor(Vertex a, Vertex b) const {
        return reachable(a) && reachable(b) && tin_[static_cast<std::size_t>(a)] <= tin_[static_cast<std::size_t>(b)] &&
               tout_[static_cast<std::size_t>(b)] <= tout_[static_cast<std::size_t>(a)];
    }
    // Both vertices must be reachable.
    Vertex lca(Vertex a, Vertex b) const;
    Vertex ancestor_at_depth(Vertex v, int d) const;
    // Source-to-v vertex list; empty if unreachable.
    std::vector<Vertex> path_to(Vertex v) const;

    friend ShortestPathTree dijkstra(const Graph& g, Vertex source, const EdgeMask* mask);

private:
    void build_indices();

    Vertex source_ = kNoVertex;
    std::vector<Length> dist_;
    std::vector<Vertex> parent_;
    std::vector<EdgeId> parent_edge_;
    std::vector<int> depth_;
    std::vector<Vertex> order_;
    std::vector<int> tin_, tout_;
    std::vector<int> first_;                    // first Euler index
    std::vector<std::vector<Vertex>> sparse_;   // min-depth vertex over Euler ranges
    std::vector<std::vector<Vertex>> up_;       // up_[k][v] = 2^k-th ancestor
};

ShortestPathTree dijkstra(const Graph& g, Vertex source, const EdgeMask* mask = nullptr);

// True when some reachable vertex has two tight incoming edges, i.e. the
// shortest path from the tree's source is not unique.
bool has_tie(const Graph& g, const ShortestPathTree& t, const EdgeMask* mask = nullptr);

// Shortest path trees from every vertex of one graph version.
class SptSet {
public:
    SptSet() = default;
    SptSet(const Graph& g, int threads = 1);

    int n() const { return static_cast<int>(trees_.size()); }
    const ShortestPathTree& tree(Vertex u) const { return trees_[static_cast<std::size_t>(u)]; }
    const Length& dist(Vertex u, Vertex v) const { return tree(u).dist(v); }
    bool reachable(Vertex u, Vertex v) const { return tree(u).reachable(v); }
    int hops(Vertex u, Vertex v) const { return tree(u).depth(v); }
    // k-th vertex on π(u,v), 0 <= k <= hops(u,v).
    Vertex vertex_at(Vertex u, Vertex v, int k) const { return tree(u).ancestor_at_depth(v, k); }
    // Edge between positions k and k+1 on π(u,v).
    EdgeId edge_at(Vertex u, Vertex v, int k) const { return tree(u).parent_edge(vertex_at(u, v, k + 1)); }
    std::vector<Vertex> path(Vertex u, Vertex v) const { return tree(u).path_to(v); }
    // Position of edge f on π(u,v), or -1.
    int edge_position(const Graph& g, Vertex u, Vertex v, EdgeId f) const;

private:
    std::vector<ShortestPathTree> trees_;
};

}  // namespace faultpath
