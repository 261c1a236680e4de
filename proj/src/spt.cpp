#include "faultpath/spt.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>

#include "faultpath/parallel.hpp"

namespace faultpath {

ShortestPathTree dijkstra(const Graph& g, Vertex source, const EdgeMask* mask) {
    const int n = g.n();
    if (source < 0 || source >= n) throw InvalidArgumentError("source out of range");
    ShortestPathTree t;
    t.source_ = source;
    t.dist_.assign(static_cast<std::size_t>(n), Length::inf());
    t.parent_.assign(static_cast<std::size_t>(n), kNoVertex);
    t.parent_edge_.assign(static_cast<std::size_t>(n), kNoEdge);
    t.depth_.assign(static_cast<std::size_t>(n), -1);
    t.order_.reserve(static_cast<std::size_t>(n));

    using Item = std::pair<CompositeWeight, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    t.dist_[static_cast<std::size_t>(source)] = CompositeWeight{};
    t.depth_[static_cast<std::size_t>(source)] = 0;
    pq.push({CompositeWeight{}, source});
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (done[static_cast<std::size_t>(v)]) continue;
        done[static_cast<std::size_t>(v)] = 1;
        t.order_.push_back(v);
        for (const Incidence& in : g.adj(v)) {
            if (mask && mask->test(in.id)) continue;
            if (done[static_cast<std::size_t>(in.to)]) continue;
            Length nd = Length(d) + g.edge(in.id).w;
            auto& cur = t.dist_[static_cast<std::size_t>(in.to)];
            if (nd < cur) {
                cur = nd;
                t.parent_[static_cast<std::size_t>(in.to)] = v;
                t.parent_edge_[static_cast<std::size_t>(in.to)] = in.id;
                pq.push({nd.raw(), in.to});
            }
        }
    }
    for (Vertex v : t.order_)
        if (v != source) t.depth_[static_cast<std::size_t>(v)] = t.depth_[static_cast<std::size_t>(t.parent(v))] + 1;
    t.build_indices();
    return t;
}

void ShortestPathTree::build_indices() {
    const int n = this->n();
    // Children in CSR form: kids[start[v] .. start[v+1]).
    std::vector<int> start(static_cast<std::size_t>(n) + 1, 0);
    for (Vertex v : order_)
        if (v != source_) ++start[static_cast<std::size_t>(parent(v)) + 1];
    for (int v = 0; v < n; ++v) start[static_cast<std::size_t>(v) + 1] += start[static_cast<std::size_t>(v)];
    std::vector<Vertex> kids(order_.size());
    {
        std::vector<int> fill(start.begin(), start.end() - 1);
        for (Vertex v : order_)
            if (v != source_) kids[static_cast<std::size_t>(fill[static_cast<std::size_t>(parent(v))]++)] = v;
    }

    tin_.assign(static_cast<std::size_t>(n), 0);
    tout_.assign(static_cast<std::size_t>(n), -1);
    first_.assign(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> euler;
    euler.reserve(2 * order_.size());
    int timer = 0;
    // Iterative DFS: (vertex, next child index).
    std::vector<std::pair<Vertex, std::size_t>> stack{{source_, 0}};
    tin_[static_cast<std::size_t>(source_)] = timer++;
    first_[static_cast<std::size_t>(source_)] = 0;
    euler.push_back(source_);
    while (!stack.empty()) {
        auto& [v, idx] = stack.back();
        const auto first = static_cast<std::size_t>(start[static_cast<std::size_t>(v)]);
        const auto count = static_cast<std::size_t>(start[static_cast<std::size_t>(v) + 1]) - first;
        if (idx < count) {
            Vertex c = kids[first + idx++];
            tin_[static_cast<std::size_t>(c)] = timer++;
            first_[static_cast<std::size_t>(c)] = static_cast<int>(euler.size());
            euler.push_back(c);
            stack.push_back({c, 0});
        } else {
            tout_[static_cast<std::size_t>(v)] = timer++;
            stack.pop_back();
            if (!stack.empty()) euler.push_back(stack.back().first);
        }
    }

    const std::size_t len = euler.size();
    const int levels = std::bit_width(len);
    sparse_.assign(static_cast<std::size_t>(levels), {});
    sparse_[0] = euler;
    for (int k = 1; k < levels; ++k) {
        const auto& prev = sparse_[static_cast<std::size_t>(k - 1)];
        auto& cur = sparse_[static_cast<std::size_t>(k)];
        std::size_t half = std::size_t{1} << (k - 1);
        cur.resize(len - (std::size_t{1} << k) + 1);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            Vertex a = prev[i], b = prev[i + half];
            cur[i] = depth(a) <= depth(b) ? a : b;
        }
    }

    int max_depth = 0;
    for (Vertex v : order_) max_depth = std::max(max_depth, depth(v));
    const int lift = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(max_depth))));
    up_.assign(static_cast<std::size_t>(lift), std::vector<Vertex>(static_cast<std::size_t>(n), kNoVertex));
    for (Vertex v : order_) up_[0][static_cast<std::size_t>(v)] = v == source_ ? source_ : parent(v);
    for (int k = 1; k < lift; ++k)
        for (Vertex v : order_)
            up_[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)] =
                up_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(up_[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(v)])];
}

Vertex ShortestPathTree::lca(Vertex a, Vertex b) const {
    int l = first_[static_cast<std::size_t>(a)], r = first_[static_cast<std::size_t>(b)];
    if (l > r) std::swap(l, r);
    int k = static_cast<int>(std::bit_width(static_cast<unsigned>(r - l + 1))) - 1;
    const auto& row = sparse_[static_cast<std::size_t>(k)];
    Vertex x = row[static_cast<std::size_t>(l)], y = row[static_cast<std::size_t>(r - (1 << k) + 1)];
    return depth(x) <= depth(y) ? x : y;
}

Vertex ShortestPathTree::ancestor_at_depth(Vertex v, int d) const {
    int diff = depth(v) - d;
    if (d < 0 || diff < 0) throw InvalidArgumentError("level ancestor out of range");
    for (int k = 0; diff; ++k, diff >>= 1)
        if (diff & 1) v = up_[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
    return v;
}

std::vector<Vertex> ShortestPathTree::path_to(Vertex v) const {
    if (!reachable(v)) return {};
    std::vector<Vertex> p(static_cast<std::size_t>(depth(v) + 1));
    for (int k = depth(v); k >= 0; --k) {
        p[static_cast<std::size_t>(k)] = v;
        v = parent(v);
    }
    return p;
}

bool has_tie(const Graph& g, const ShortestPathTree& t, const EdgeMask* mask) {
    for (Vertex v : t.order()) {
        if (v == t.source()) continue;
        int tight = 0;
        for (const Incidence& in : g.adj(v)) {
            if (mask && mask->test(in.id)) continue;
            if (!t.reachable(in.to)) continue;
            if (t.dist(in.to) + g.edge(in.id).w == t.dist(v)) ++tight;
        }
        if (tight != 1) return true;
    }
    return false;
}

SptSet::SptSet(const Graph& g, int threads) : trees_(static_cast<std::size_t>(g.n())) {
    parallel_for(g.n(), threads, [&](int u) { trees_[static_cast<std::size_t>(u)] = dijkstra(g, u); });
}

int SptSet::edge_position(const Graph& g, Vertex u, Vertex v, EdgeId f) const {
    if (!g.present(f) || !reachable(u, v)) return -1;
    const auto& t = tree(u);
    const Edge& e = g.edge(f);
    for (Vertex z : {e.u, e.v}) {
        if (t.reachable(z) && t.parent_edge(z) == f && t.is_ancestor(z, v)) return t.depth(z) - 1;
    }
    return -1;
}

}  // namespace faultpath
