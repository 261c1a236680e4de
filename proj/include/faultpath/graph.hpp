#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "faultpath/weight.hpp"

namespace faultpath {

using Vertex = int;
using EdgeId = int;
inline constexpr Vertex kNoVertex = -1;
inline constexpr EdgeId kNoEdge = -1;

struct Edge {
    Vertex u = kNoVertex;
    Vertex v = kNoVertex;
    CompositeWeight w;
    EdgeId id = kNoEdge;

    Vertex other(Vertex x) const { return x == u ? v : u; }
};

struct Incidence {
    Vertex to;
    EdgeId id;
};

// Removal set over edge ids.
class EdgeMask {
public:
    EdgeMask() = default;
    explicit EdgeMask(int slots) : bits_((slots + 63) / 64, 0) {}
    EdgeMask(int slots, std::initializer_list<EdgeId> ids) : EdgeMask(slots) {
        for (EdgeId e : ids) set(e);
    }

    void set(EdgeId e) {
        grow(e);
        bits_[e >> 6] |= std::uint64_t{1} << (e & 63);
    }
    void reset(EdgeId e) {
        if (static_cast<std::size_t>(e >> 6) < bits_.size()) bits_[e >> 6] &= ~(std::uint64_t{1} << (e & 63));
    }
    bool test(EdgeId e) const {
        auto w = static_cast<std::size_t>(e >> 6);
        return w < bits_.size() && ((bits_[w] >> (e & 63)) & 1u);
    }
    bool empty() const {
        for (auto b : bits_)
            if (b) return false;
        return true;
    }

private:
    void grow(EdgeId e) {
        auto need = static_cast<std::size_t>(e >> 6) + 1;
        if (bits_.size() < need) bits_.resize(need, 0);
    }
    std::vector<std::uint64_t> bits_;
};

// Undirected multigraph with stable edge ids. Removing an edge frees its slot
// but never renumbers the others, so ids stay valid across derived graphs.
class Graph {
public:
    explicit Graph(int n = 0, bool allow_parallel = false);

    int n() const { return static_cast<int>(adj_.size()); }
    int edge_slots() const { return static_cast<int>(edges_.size()); }
    int num_edges() const { return live_edges_; }
    bool allows_parallel() const { return allow_parallel_; }

    Vertex add_vertex();
    EdgeId add_edge(Vertex u, Vertex v, CompositeWeight w);
    void add_edge_with_id(EdgeId id, Vertex u, Vertex v, CompositeWeight w);
    void remove_edge(EdgeId id);
    void set_weight(EdgeId id, CompositeWeight w);

    bool present(EdgeId id) const {
        return id >= 0 && id < edge_slots() && present_[static_cast<std::size_t>(id)];
    }
    const Edge& edge(EdgeId id) const { return edges_[static_cast<std::size_t>(id)]; }
    const std::vector<Incidence>& adj(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }

    std::optional<EdgeId> find_edge(Vertex u, Vertex v) const;
    std::vector<EdgeId> edge_ids() const;
    std::uint64_t total_base_weight() const;

private:
    void check_vertex(Vertex v) const;

    std::vector<Edge> edges_;
    std::vector<char> present_;
    std::vector<std::vector<Incidence>> adj_;
    int live_edges_ = 0;
    bool allow_parallel_ = false;
};

// Text format: `p <n> <m>`, m lines `e <u> <v> <w>`, `c` comment lines.
// With scale > 1 decimal weights are accepted if w*scale is an integer.
Graph read_graph(std::istream& in, std::uint64_t scale = 1);
Graph load_graph(const std::string& path, std::uint64_t scale = 1);
void write_graph(std::ostream& out, const Graph& g);

// Parses the leading `p`/`e` block and hands every remaining non-comment line
// to the caller (used by the timeline format).
Graph read_graph_block(std::istream& in, std::uint64_t scale, std::vector<std::string>& rest);

std::uint64_t parse_weight(const std::string& token, std::uint64_t scale);

}  // namespace faultpath
