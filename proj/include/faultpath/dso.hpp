#pragma once

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "faultpath/proper_form.hpp"

namespace faultpath {

// ϖ table: for each ordered pair (u,v) with L = ‖uv‖ >= 1, one entry per
// anchor pair (i, j) with i, j in {0, 1, 2, 4, ...} and i + j < L.
class PhiTable {
public:
    PhiTable() = default;
    explicit PhiTable(const SptSet& spts);

    static int anchor_count(int L) { return L <= 0 ? 0 : 1 + static_cast<int>(std::bit_width(static_cast<unsigned>(L - 1))); }
    static int anchor_index(int i) { return i == 0 ? 0 : std::countr_zero(static_cast<unsigned>(i)) + 1; }
    static int anchor_value(int idx) { return idx == 0 ? 0 : 1 << (idx - 1); }

    bool has_pair(Vertex u, Vertex v) const { return offset_[slot(u, v)] >= 0; }
    int hops(Vertex u, Vertex v) const { return hops_[slot(u, v)]; }
    const ProperForm& at(Vertex u, Vertex v, int i, int j) const { return entries_[index(u, v, i, j)]; }
    ProperForm& at(Vertex u, Vertex v, int i, int j) { return entries_[index(u, v, i, j)]; }
    std::size_t size() const { return entries_.size(); }
    const std::vector<ProperForm>& entries() const { return entries_; }
    std::vector<ProperForm>& entries() { return entries_; }

private:
    std::size_t slot(Vertex u, Vertex v) const { return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v); }
    std::size_t index(Vertex u, Vertex v, int i, int j) const;

    int n_ = 0;
    std::vector<std::int64_t> offset_;
    std::vector<int> hops_;
    std::vector<ProperForm> entries_;
};

struct PairReplacement {
    int position;          // hop offset of the failed edge on π(u,v)
    EdgeId edge;
    Length length;
    std::vector<Vertex> path;  // empty when unreachable
};

// |π_{G−f}(u,v)| and the path for every edge f on π(u,v), one Dijkstra each.
std::vector<PairReplacement> replacement_paths_for_pair(const Graph& g, const SptSet& spts, Vertex u, Vertex v);

struct FailureAnswer {
    Length length;
    ProperForm form;
};

struct DsoStats {
    std::uint64_t not_proper = 0;      // replacement paths that had no proper form
    std::uint64_t changed_pairs = 0;   // last insertion
    std::uint64_t unchanged_pairs = 0;
};

// 1-fault distance sensitivity oracle with worst-case edge insertion.
class IncrementalDso {
public:
    IncrementalDso() = default;
    static IncrementalDso build(const Graph& g, int threads = 1);

    const Graph& graph() const { return g_; }
    const SptSet& spts() const { return *spts_; }
    const PhiTable& table() const { return table_; }
    std::uint64_t version() const { return version_; }
    const DsoStats& stats() const { return stats_; }
    int n() const { return g_.n(); }

    // Stored entry ϖ(u,v ⋄ (u⊕i)(v⊖j)).
    ProperForm phi(Vertex u, Vertex v, int i, int j) const;
    // ϖ(u,v ⋄ ab) for positions pa <= pb on π(u,v).
    ProperForm query_interval(Vertex u, Vertex v, int pa, int pb) const;
    FailureAnswer query_edge_failure(Vertex u, Vertex v, EdgeId f) const;
    std::vector<Vertex> path(const ProperForm& pf) const { return expand(pf, *spts_); }

    // Inserts (x,y) with composite weight w. Throws DuplicateEdge if present,
    // TieDetected if the new graph has tied shortest paths.
    EdgeId insert_edge(Vertex x, Vertex y, CompositeWeight w, std::optional<EdgeId> id = std::nullopt, int threads = 1);

    void save(std::ostream& out) const;
    static IncrementalDso load(std::istream& in, int threads = 1);
    void save_file(const std::string& path) const;
    static IncrementalDso load_file(const std::string& path, int threads = 1);

private:
    Graph g_;
    std::shared_ptr<const SptSet> spts_;
    PhiTable table_;
    std::uint64_t version_ = 0;
    DsoStats stats_;
};

// Read-only view over one DSO version; used for old-version reads during an
// insertion.
struct DsoView {
    const Graph* g;
    const SptSet* spts;
    const PhiTable* table;

    ProperForm query_interval(Vertex u, Vertex v, int pa, int pb) const;
};

}  // namespace faultpath
