#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "faultpath/frp2.hpp"

namespace faultpath {

// Dyadic partition of π(s,t) padded to 2^k edges. The padding is virtual:
// padded edge index = path position + pad, and ranges that fall entirely in
// the padding hold no real edge.
struct BinaryPartition {
    int L = 0;
    int k = 0;
    int pad = 0;

    BinaryPartition() = default;
    explicit BinaryPartition(int hops);

    int padded(int pos) const { return pos + pad; }
    // j such that edge `pos` lies in Q_{level,j}.
    int range_of(int level, int pos) const { return padded(pos) >> (k - level); }
    // Real vertex position of m_{level,j}; negative inside the padding.
    int marker(int level, int j) const { return (j << (k - level)) - pad; }
    // Does H_{level,side} contain path edge `pos`? side 0 = even ranges.
    bool in_half(int level, int side, int pos) const { return (range_of(level, pos) & 1) == side; }

    struct Split {
        int level = 0;
        int j = 0;  // odd; ka in Q_{level,j-1}, kb in Q_{level,j}
        int m = 0;  // real vertex position of m_{level,j}
    };
    // Minimal level separating path edges ka < kb.
    Split separate(int ka, int kb) const;
};

// H plus the path edges of H_{level,side}.
Graph half_graph(const AuxGraphH& aux, const BinaryPartition& bp, int level, int side);

// Interval of path vertex positions [lo, hi]; empty when lo > hi.
struct Interval {
    int lo = 0;
    int hi = -1;
    bool empty() const { return lo > hi; }
    int size() const { return empty() ? 0 : hi - lo + 1; }
};

enum class Side { Left, Right };

struct AValue {
    Length len = Length::inf();
    int x = -1;  // leaves R1 here
    int y = -1;  // joins R2 here
};

struct BValue {
    Length len = Length::inf();
    int x = -1;   // leaves the prefix before d1
    int y1 = -1;  // joins R1
    int y2 = -1;  // leaves R1
    int z = -1;   // joins R2
};

// Path positions 0..L with prefix lengths and the G−st distance matrix.
struct PathMetric {
    int L = 0;
    std::vector<CompositeWeight> pre;
    std::vector<Length> dist;  // (L+1)^2, row-major

    Length d(int a, int b) const { return dist[static_cast<std::size_t>(a) * static_cast<std::size_t>(L + 1) + static_cast<std::size_t>(b)]; }
    CompositeWeight walk(int a, int b) const { return pre[static_cast<std::size_t>(std::max(a, b))] - pre[static_cast<std::size_t>(std::min(a, b))]; }
    // The same path read from t to s.
    PathMetric reversed() const;
};

// Range tree over vertex positions; node 1 is the root, leaf of p is P + p.
class RangeTree {
public:
    RangeTree() = default;
    explicit RangeTree(int L);
    int nodes() const { return 2 * P_; }
    int leaf(int p) const { return P_ + p; }
    bool is_leaf(int node) const { return node >= P_; }
    Interval range(int node) const { return ranges_[static_cast<std::size_t>(node)]; }
    // Canonical nodes covering iv, left to right.
    std::vector<int> decompose(Interval iv) const;

private:
    int P_ = 1;
    int L_ = 0;
    std::vector<Interval> ranges_;
};

// A^{σ,τ}(R1,R2): start at the σ end of R1, walk to x in R1, G−st path to y
// in R2, walk to the τ end of R2. Tables cover every disjoint pair of tree
// nodes; other intervals fold O(log n) nodes per side.
class OracleA {
public:
    OracleA() = default;
    explicit OracleA(const PathMetric& pm);

    const PathMetric& metric() const { return pm_; }
    const RangeTree& tree() const { return tree_; }
    const AValue& node(Side s1, Side s2, int a, int b) const { return table_[index(s1, s2, a, b)]; }
    // Throws DisjointnessViolated on overlapping intervals; +inf when either is empty.
    AValue query(Side s1, Side s2, Interval r1, Interval r2) const;

private:
    std::size_t index(Side s1, Side s2, int a, int b) const;
    PathMetric pm_;
    RangeTree tree_;
    std::vector<AValue> table_;
};

// B^σ(d1,R1,R2): s to x <= a (d1 = (a, a+1)), G−st path into R1, walk inside
// R1, G−st path into R2, walk to the σ end of R2. One table row per d1 over
// tree nodes right of d1.
class OracleB {
public:
    OracleB(const OracleA& a);

    // Builds the row of d1 = path edge k1; idempotent.
    void prepare(int k1);
    bool prepared(int k1) const { return rows_[static_cast<std::size_t>(k1)] != nullptr; }
    BValue query(int k1, Side s, Interval r1, Interval r2) const;
    const OracleA& a() const { return *a_; }

private:
    struct Row {
        std::vector<BValue> table;  // [side][node R1][node R2]
        std::vector<AValue> pre_l;  // A^{l,l}([0,k1], node)
        std::vector<AValue> pre_r;  // A^{l,r}([0,k1], node)
    };
    std::size_t index(Side s, int r1, int r2) const;
    const OracleA* a_;
    std::vector<std::unique_ptr<Row>> rows_;
};

// Result of a snake search: both visited stretches as vertex intervals.
struct SnakeValue {
    Length len = Length::inf();
    Interval first;
    Interval second;
};

// Potential trace of one probe loop.
struct SnakeTrace {
    int k1 = -1;
    int k3 = -1;
    std::vector<long long> potential;  // S^(1), S^(2), ...
    int stages = 0;                    // refinement stages after stage 1
};

struct Frp3Record {
    EdgeId d1 = kNoEdge;
    EdgeId d2 = kNoEdge;  // kNoEdge when G−d1 separates s and t
    EdgeId d3 = kNoEdge;  // kNoEdge when G−{d1,d2} separates s and t
    Length length = Length::inf();
    enum class Case { OneOn, TwoOn, ThreeOn, OffPath } kind = Case::OffPath;
};

std::string case_name(Frp3Record::Case c);

struct Frp3Stats {
    std::size_t triples = 0;
    std::size_t one_on = 0;
    std::size_t two_on = 0;
    std::size_t three_on = 0;
    int offline_runs = 0;
    int peak_live = 0;
};

// Four candidate values of the two-on-path case (G lengths).
struct TwoOnBreakdown {
    Length value[4];
    BinaryPartition::Split split;
    Length min() const;
};

class Frp3Solver {
public:
    Frp3Solver(const Graph& g, Vertex s, Vertex t, int threads = 1);

    const Frp2Solver& frp2() const { return frp2_; }
    const StPath& st() const { return frp2_.st(); }
    const BinaryPartition& partition() const { return bp_; }
    const OracleA& oracle_a() const { return *fa_; }
    const OracleB& oracle_b() const { return *fb_; }

    // All required triples in enumeration order: d1 along π(s,t), d2 along
    // π_{G−d1}(s,t), d3 along π_{G−{d1,d2}}(s,t).
    std::vector<Frp3Record> solve();
    const Frp3Stats& stats() const { return stats_; }
    const std::vector<SnakeTrace>& traces() const { return traces_; }

    // Direct evaluations for single queries; they build what they need.
    Length case_one_on_path(int k1, EdgeId d2, EdgeId d3) const;
    TwoOnBreakdown case_two_on_path(int ka, int kb, EdgeId f) const;
    // Path positions k1 < k2 < k3. Prepares oracle rows on demand.
    Length case_three_on_path(int k1, int k2, int k3);
    // Answers for every k2 in (k1, k3), indexed by k2 - k1 - 1.
    std::vector<Length> three_on_path_row(int k1, int k3, SnakeTrace* trace = nullptr);

    // Type 1..3 candidates for cuts k1 < k2 < k3.
    Length types_one_to_three(int k1, int k2, int k3) const;
    // Shortest snake for sorted cuts through vertex x or edge x.
    SnakeValue snake_through(const std::vector<int>& cuts, int x, bool x_is_edge) const;
    // Shortest snake for sorted cuts, over every middle vertex.
    SnakeValue shortest_snake(const std::vector<int>& cuts) const;
    void prepare_rows(int k1, int k3);

private:
    Graph g_;
    int threads_;
    Frp2Solver frp2_;
    BinaryPartition bp_;
    std::unique_ptr<OracleA> fa_, ra_;
    std::unique_ptr<OracleB> fb_, rb_;
    Frp3Stats stats_;
    std::vector<SnakeTrace> traces_;
};

}  // namespace faultpath
