#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "faultpath/dso.hpp"

namespace faultpath {

struct TimelineUpdate {
    enum class Kind { Insert, Delete };
    Kind kind = Kind::Insert;
    Vertex u = kNoVertex;
    Vertex v = kNoVertex;
    CompositeWeight w;   // inserts only
    EdgeId id = kNoEdge;  // inserted id, or the id being deleted
};

// G_0 plus T updates. Edge ids are global across the timeline: G_0 keeps its
// ids, parsed insertions get fresh ids, and programmatic timelines may reuse
// the id of an edge deleted earlier.
struct Timeline {
    Graph g0;
    std::vector<TimelineUpdate> updates;

    int steps() const { return static_cast<int>(updates.size()); }
    // Edge set after the first t updates.
    Graph graph_at(int t) const;
};

// Parses a graph block followed by `+ u v w` and `- u v` lines; assigns ids
// and validates deletes (InvalidDelete). Tiebreaks are zero.
Timeline read_timeline(std::istream& in, std::uint64_t scale = 1);
Timeline load_timeline(const std::string& path, std::uint64_t scale = 1);

void write_timeline(std::ostream& out, const Timeline& tl);

// Perturbs G_0 and draws tiebreaks for every insertion from the same seed.
Timeline perturb_timeline(const Timeline& raw, std::uint64_t seed);

struct OfflineStats {
    int peak_live = 0;   // DSOs alive at once on the DFS chain
    int depth = 0;       // range-tree depth, root = 0
    int nodes = 0;
    std::uint64_t insertions = 0;
};

// Offline fully-dynamic DSO over a binary range tree on [0, T]. Each node
// holds the intersection graph of its interval; a child DSO is the parent's
// clone plus the edges the child has and the parent lacks.
class OfflineDso {
public:
    using LeafFn = std::function<void(int t, const IncrementalDso& leaf)>;

    // Retain mode: keeps every leaf DSO for random-access queries.
    static OfflineDso build(const Timeline& tl, int threads = 1);
    // Batched mode: calls fn once per timestep in increasing order and keeps
    // only the live chain.
    static OfflineStats for_each_leaf(const Timeline& tl, const LeafFn& fn, int threads = 1);

    int steps() const { return static_cast<int>(leaves_.size()) - 1; }
    const IncrementalDso& leaf(int t) const;
    FailureAnswer query_at(int t, Vertex u, Vertex v, EdgeId f) const { return leaf(t).query_edge_failure(u, v, f); }
    const OfflineStats& stats() const { return stats_; }

private:
    std::vector<IncrementalDso> leaves_;
    OfflineStats stats_;
};

namespace gen {
// T random updates over g0: deletes of present edges and inserts of absent
// pairs with base weights in [1, max_w], roughly half each.
Timeline random_timeline(const Graph& g0, int T, std::uint64_t max_w, std::uint64_t seed);
}  // namespace gen

}  // namespace faultpath
