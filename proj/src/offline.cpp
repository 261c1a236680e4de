#include "faultpath/offline.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "faultpath/errors.hpp"
#include "faultpath/perturb.hpp"

namespace faultpath {

namespace {

struct Lifetime {
    Edge e;
    int birth;  // first step containing the edge
    int death;  // first step without it, T+1 if never deleted
};

std::vector<Lifetime> lifetimes(const Timeline& tl) {
    const int T = tl.steps();
    std::vector<Lifetime> out;
    for (EdgeId id : tl.g0.edge_ids()) out.push_back({tl.g0.edge(id), 0, T + 1});
    // An id may be deleted and later re-inserted; each stint is a lifetime.
    auto find = [&](EdgeId id) -> Lifetime& {
        for (auto it = out.rbegin(); it != out.rend(); ++it)
            if (it->e.id == id && it->death == T + 1) return *it;
        throw InvalidDeleteError("delete of absent edge id " + std::to_string(id));
    };
    for (int k = 0; k < T; ++k) {
        const auto& up = tl.updates[static_cast<std::size_t>(k)];
        if (up.kind == TimelineUpdate::Kind::Insert)
            out.push_back({Edge{up.u, up.v, up.w, up.id}, k + 1, T + 1});
        else
            find(up.id).death = k + 1;
    }
    std::sort(out.begin(), out.end(), [](const Lifetime& a, const Lifetime& b) {
        return a.e.id != b.e.id ? a.e.id < b.e.id : a.birth < b.birth;
    });
    return out;
}

bool alive_on(const Lifetime& l, int i, int j) { return l.birth <= i && l.death > j; }

struct Walker {
    const std::vector<Lifetime>& life;
    const OfflineDso::LeafFn& fn;
    int threads;
    OfflineStats stats;
    int live = 0;

    void visit(int i, int j, int level, IncrementalDso dso) {
        stats.peak_live = std::max(stats.peak_live, live);
        stats.depth = std::max(stats.depth, level);
        ++stats.nodes;
        if (i == j) {
            fn(i, dso);
            --live;
            return;
        }
        // The smaller half goes left and is visited first, so the parent is
        // kept alive only while descending into halves of at most half size.
        const int mid = i + (j - i + 1) / 2 - 1;
        {
            IncrementalDso left = dso;
            ++live;
            grow(left, i, j, i, mid);
            visit(i, mid, level + 1, std::move(left));
        }
        grow(dso, i, j, mid + 1, j);
        visit(mid + 1, j, level + 1, std::move(dso));
    }

    void grow(IncrementalDso& dso, int pi, int pj, int ci, int cj) {
        for (const auto& l : life) {
            if (!alive_on(l, ci, cj) || alive_on(l, pi, pj)) continue;
            dso.insert_edge(l.e.u, l.e.v, l.e.w, l.e.id, threads);
            ++stats.insertions;
        }
    }
};

OfflineStats walk(const Timeline& tl, const OfflineDso::LeafFn& fn, int threads) {
    const auto life = lifetimes(tl);
    const int T = tl.steps();
    Graph root(tl.g0.n());
    for (const auto& l : life)
        if (alive_on(l, 0, T)) root.add_edge_with_id(l.e.id, l.e.u, l.e.v, l.e.w);
    Walker w{life, fn, threads, {}, 1};
    w.visit(0, T, 0, IncrementalDso::build(root, threads));
    return w.stats;
}

}  // namespace

Graph Timeline::graph_at(int t) const {
    if (t < 0 || t > steps()) throw TimeOutOfRangeError("timestep " + std::to_string(t) + " outside [0, " + std::to_string(steps()) + "]");
    Graph g(g0.n());
    for (const auto& l : lifetimes(*this))
        if (alive_on(l, t, t)) g.add_edge_with_id(l.e.id, l.e.u, l.e.v, l.e.w);
    return g;
}

Timeline read_timeline(std::istream& in, std::uint64_t scale) {
    std::vector<std::string> rest;
    Timeline tl;
    tl.g0 = read_graph_block(in, scale, rest);
    Graph cur = tl.g0;
    EdgeId next = tl.g0.edge_slots();
    for (const auto& line : rest) {
        std::istringstream ls(line);
        std::string tag, a, b, w, extra;
        ls >> tag;
        TimelineUpdate up;
        if (tag == "+") {
            if (!(ls >> a >> b >> w) || (ls >> extra)) throw FormatError("bad insert line: " + line);
            up.kind = TimelineUpdate::Kind::Insert;
            up.w = {parse_weight(w, scale), 0};
        } else if (tag == "-") {
            if (!(ls >> a >> b) || (ls >> extra)) throw FormatError("bad delete line: " + line);
            up.kind = TimelineUpdate::Kind::Delete;
        } else {
            throw FormatError("unexpected timeline line: " + line);
        }
        try {
            up.u = std::stoi(a);
            up.v = std::stoi(b);
        } catch (const std::exception&) {
            throw FormatError("bad vertex in: " + line);
        }
        if (up.u < 0 || up.v < 0 || up.u >= cur.n() || up.v >= cur.n() || up.u == up.v)
            throw FormatError("bad endpoints in: " + line);
        if (up.kind == TimelineUpdate::Kind::Insert) {
            if (cur.find_edge(up.u, up.v)) throw DuplicateEdgeError("insert of present edge: " + line);
            up.id = next++;
            cur.add_edge_with_id(up.id, up.u, up.v, up.w);
        } else {
            auto id = cur.find_edge(up.u, up.v);
            if (!id) throw InvalidDeleteError("delete of absent edge: " + line);
            up.id = *id;
            cur.remove_edge(*id);
        }
        tl.updates.push_back(up);
    }
    return tl;
}

Timeline load_timeline(const std::string& path, std::uint64_t scale) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open timeline file: " + path);
    return read_timeline(in, scale);
}

void write_timeline(std::ostream& out, const Timeline& tl) {
    write_graph(out, tl.g0);
    for (const auto& up : tl.updates) {
        if (up.kind == TimelineUpdate::Kind::Insert)
            out << "+ " << up.u << ' ' << up.v << ' ' << up.w.base << '\n';
        else
            out << "- " << up.u << ' ' << up.v << '\n';
    }
}

Timeline perturb_timeline(const Timeline& raw, std::uint64_t seed) {
    Timeline tl = raw;
    tl.g0 = perturb_and_verify(raw.g0, seed);
    TiebreakGen gen(seed ^ 0x9e3779b97f4a7c15ULL);
    for (auto& up : tl.updates)
        if (up.kind == TimelineUpdate::Kind::Insert) up.w = gen.weight(up.w.base);
    return tl;
}

OfflineDso OfflineDso::build(const Timeline& tl, int threads) {
    OfflineDso out;
    out.leaves_.resize(static_cast<std::size_t>(tl.steps()) + 1);
    out.stats_ = walk(tl, [&](int t, const IncrementalDso& d) { out.leaves_[static_cast<std::size_t>(t)] = d; }, threads);
    return out;
}

OfflineStats OfflineDso::for_each_leaf(const Timeline& tl, const LeafFn& fn, int threads) { return walk(tl, fn, threads); }

const IncrementalDso& OfflineDso::leaf(int t) const {
    if (t < 0 || t > steps()) throw TimeOutOfRangeError("timestep " + std::to_string(t) + " outside [0, " + std::to_string(steps()) + "]");
    return leaves_[static_cast<std::size_t>(t)];
}

Timeline gen::random_timeline(const Graph& g0, int T, std::uint64_t max_w, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Timeline tl;
    tl.g0 = g0;
    Graph cur = g0;
    EdgeId next = g0.edge_slots();
    const int n = g0.n();
    const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
    while (tl.steps() < T) {
        TimelineUpdate up;
        const bool del = cur.num_edges() == max_edges || (cur.num_edges() > 0 && rng() % 2 == 0);
        if (del) {
            auto ids = cur.edge_ids();
            const Edge& e = cur.edge(ids[rng() % ids.size()]);
            up = {TimelineUpdate::Kind::Delete, e.u, e.v, {}, e.id};
            cur.remove_edge(e.id);
        } else {
            Vertex a = 0, b = 0;
            do {
                a = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
                b = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
            } while (a == b || cur.find_edge(a, b));
            up = {TimelineUpdate::Kind::Insert, a, b, {1 + rng() % max_w, 0}, next++};
            cur.add_edge_with_id(up.id, a, b, up.w);
        }
        tl.updates.push_back(up);
    }
    return tl;
}

}  // namespace faultpath
