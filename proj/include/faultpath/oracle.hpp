#pragma once

#include <optional>
#include <vector>

#include "faultpath/graph.hpp"

// Deliberately naive reference implementations. They share only Graph and the
// weight types with the code under test.
namespace faultpath::oracle {

// O(n^2) array Dijkstra from s with the edges in F removed.
std::vector<Length> sssp_avoiding(const Graph& g, Vertex s, const std::vector<EdgeId>& F = {});
Length dist_avoiding(const Graph& g, Vertex u, Vertex v, const std::vector<EdgeId>& F = {});
// Explicit shortest path (vertex list) or empty when unreachable.
std::vector<Vertex> path_avoiding(const Graph& g, Vertex u, Vertex v, const std::vector<EdgeId>& F = {});
std::vector<EdgeId> path_edges(const Graph& g, const std::vector<Vertex>& path);
// Bellman-Ford, used to cross-check the array Dijkstra.
std::vector<Length> bellman_ford(const Graph& g, Vertex s, const std::vector<EdgeId>& F = {});
std::vector<std::vector<Length>> apsp(const Graph& g, const std::vector<EdgeId>& F = {});

struct WeakInterval {
    int pa = 0;
    int pb = 0;
    std::vector<EdgeId> interval_edges;
    std::vector<EdgeId> weak_points;
    Length avoid_length = Length::inf();  // |π_{G−ab}(u,v)|
    bool weak() const { return !weak_points.empty(); }
};

// Weak points of the interval [pa, pb] on π(u,v).
WeakInterval weak_classify(const Graph& g, Vertex u, Vertex v, int pa, int pb);

// A snake must pass through this path vertex, or through this path edge.
struct SnakeThrough {
    bool edge = false;
    int id = -1;
};

// F (edges of π(s,t)) cuts the path into intervals D_0..D_w. Shortest walk
// s ~ D_0, off path to a middle interval I, along I, off path to a different
// middle interval J, along J, off path to D_w, then to t. Off-path hops use
// G minus every π(s,t) edge.
Length snake_oracle(const Graph& g, Vertex s, Vertex t, const std::vector<EdgeId>& F,
                    std::optional<SnakeThrough> x = std::nullopt);

// Interval indices (0-based, cut by F on π(s,t)) of the successive visits of
// π_{G−F}(s,t) to π(s,t). A visit is a maximal run joined by π(s,t) edges.
// Empty when t is unreachable.
std::vector<int> interval_visits(const Graph& g, Vertex s, Vertex t, const std::vector<EdgeId>& F);

// Type 1..5 of a visit sequence for three failures, or 0 if it fits none.
int three_on_path_type(const std::vector<int>& visits);

}  // namespace faultpath::oracle
