#include "faultpath/dso.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "faultpath/parallel.hpp"

namespace faultpath {

PhiTable::PhiTable(const SptSet& spts) : n_(spts.n()) {
    const auto nn = static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
    offset_.assign(nn, -1);
    hops_.assign(nn, 0);
    std::int64_t total = 0;
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = 0; v < n_; ++v) {
            if (u == v || !spts.reachable(u, v)) continue;
            int L = spts.hops(u, v);
            int K = anchor_count(L);
            offset_[slot(u, v)] = total;
            hops_[slot(u, v)] = L;
            total += static_cast<std::int64_t>(K) * K;
        }
    entries_.resize(static_cast<std::size_t>(total));
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = 0; v < n_; ++v) {
            if (offset_[slot(u, v)] < 0) continue;
            const int K = anchor_count(hops_[slot(u, v)]);
            for (int k = 0; k < K * K; ++k) entries_[static_cast<std::size_t>(offset_[slot(u, v)] + k)] = ProperForm::null(u, v);
        }
}

std::size_t PhiTable::index(Vertex u, Vertex v, int i, int j) const {
    auto s = slot(u, v);
    int L = hops_[s];
    if (offset_[s] < 0 || i + j >= L || i < 0 || j < 0) throw InvalidArgumentError("no ϖ entry for this anchor pair");
    int K = anchor_count(L);
    return static_cast<std::size_t>(offset_[s] + anchor_index(i) * K + anchor_index(j));
}

std::vector<PairReplacement> replacement_paths_for_pair(const Graph& g, const SptSet& spts, Vertex u, Vertex v) {
    std::vector<PairReplacement> out;
    if (u == v || !spts.reachable(u, v)) return out;
    const int L = spts.hops(u, v);
    for (int k = 0; k < L; ++k) {
        EdgeId f = spts.edge_at(u, v, k);
        EdgeMask mask(g.edge_slots(), {f});
        auto t = dijkstra(g, u, &mask);
        out.push_back({k, f, t.dist(v), t.path_to(v)});
    }
    return out;
}

namespace {

// All replacement paths from u, one Dijkstra per tree edge of SPT(u); fills
// the ϖ entries of every pair (u, ·).
void build_source(const Graph& g, const SptSet& spts, PhiTable& table, Vertex u, std::uint64_t& not_proper) {
    const auto& T = spts.tree(u);
    const int n = g.n();
    std::vector<std::vector<Length>> rlen(static_cast<std::size_t>(n));
    std::vector<std::vector<ProperForm>> rform(static_cast<std::size_t>(n));
    for (Vertex v : T.order()) {
        rlen[static_cast<std::size_t>(v)].assign(static_cast<std::size_t>(T.depth(v)), Length::inf());
        rform[static_cast<std::size_t>(v)].assign(static_cast<std::size_t>(T.depth(v)), ProperForm::null(u, v));
    }
    std::vector<Vertex> X(static_cast<std::size_t>(n)), NX(static_cast<std::size_t>(n));
    for (Vertex z : T.order()) {
        if (z == u) continue;
        const EdgeId f = T.parent_edge(z);
        const int k = T.depth(z) - 1;
        EdgeMask mask(g.edge_slots(), {f});
        const auto Tf = dijkstra(g, u, &mask);
        // X: deepest vertex whose tree prefix is shortest in g; NX: the next one.
        for (Vertex w : Tf.order()) {
            const auto sw = static_cast<std::size_t>(w);
            if (Tf.dist(w) == spts.dist(u, w)) {
                X[sw] = w;
                NX[sw] = kNoVertex;
            } else {
                const auto sp = static_cast<std::size_t>(Tf.parent(w));
                X[sw] = X[sp];
                NX[sw] = NX[sp] == kNoVertex ? w : NX[sp];
            }
        }
        for (Vertex v : T.order()) {
            if (!T.is_ancestor(z, v)) continue;
            const auto sv = static_cast<std::size_t>(v);
            rlen[sv][static_cast<std::size_t>(k)] = Tf.dist(v);
            if (!Tf.reachable(v)) continue;
            const Length len = Tf.dist(v);
            const Vertex x = X[sv];
            ProperForm pf = ProperForm::null(u, v);
            if (x == v) {
                pf = {u, v, v, v, kNoEdge, len};
            } else if (Length(len.value() - Tf.dist(x).value()) == spts.dist(x, v)) {
                pf = {u, v, x, x, kNoEdge, len};
            } else {
                const Vertex y = NX[sv];
                if (Length(len.value() - Tf.dist(y).value()) == spts.dist(y, v))
                    pf = {u, v, x, y, Tf.parent_edge(y), len};
                else
                    ++not_proper;
            }
            rform[sv][static_cast<std::size_t>(k)] = pf;
        }
    }

    for (Vertex v : T.order()) {
        if (v == u) continue;
        const auto sv = static_cast<std::size_t>(v);
        const int L = T.depth(v);
        const int K = PhiTable::anchor_count(L);
        const auto& lens = rlen[sv];
        for (int ii = 0; ii < K; ++ii) {
            const int i = PhiTable::anchor_value(ii);
            for (int jj = 0; jj < K; ++jj) {
                const int j = PhiTable::anchor_value(jj);
                if (i + j >= L) continue;
                int best = i;
                for (int k = i + 1; k < L - j; ++k)
                    if (lens[static_cast<std::size_t>(best)] < lens[static_cast<std::size_t>(k)]) best = k;
                ProperForm pf = ProperForm::null(u, v);
                const ProperForm& cand = rform[sv][static_cast<std::size_t>(best)];
                if (!cand.is_null() && !intersects_interval(cand, {u, v, i, L - j}, spts)) pf = cand;
                table.at(u, v, i, j) = pf;
            }
        }
    }
}

}  // namespace

IncrementalDso IncrementalDso::build(const Graph& g, int threads) {
    IncrementalDso d;
    d.g_ = g;
    d.spts_ = std::make_shared<const SptSet>(d.g_, threads);
    d.table_ = PhiTable(*d.spts_);
    std::vector<std::uint64_t> not_proper(static_cast<std::size_t>(g.n()), 0);
    parallel_for(g.n(), threads, [&](int u) {
        build_source(d.g_, *d.spts_, d.table_, u, not_proper[static_cast<std::size_t>(u)]);
    });
    for (auto c : not_proper) d.stats_.not_proper += c;
    return d;
}

ProperForm DsoView::query_interval(Vertex u, Vertex v, int pa, int pb) const {
    const SptSet& s = *spts;
    if (u == v) {
        if (pa != 0 || pb != 0) throw IntervalNotOnPathError("interval outside a trivial path");
        return {u, u, u, u, kNoEdge, CompositeWeight{}};
    }
    if (!s.reachable(u, v)) throw IntervalNotOnPathError("no path between the endpoints");
    const int L = s.hops(u, v);
    if (pa < 0 || pb > L || pa > pb) throw IntervalNotOnPathError("interval positions outside π(u,v)");
    if (pa == pb) return ProperForm::shortest(s, u, v);

    const int i = pa == 0 ? 0 : static_cast<int>(std::bit_floor(static_cast<unsigned>(pa)));
    const int j = L == pb ? 0 : static_cast<int>(std::bit_floor(static_cast<unsigned>(L - pb)));
    const Vertex a1 = s.vertex_at(u, v, pa - i);
    const Vertex b1 = s.vertex_at(u, v, pb + j);
    const IntervalOnPath R{u, v, pa, pb};
    const PhiTable& t = *table;

    ProperForm best = ProperForm::null(u, v);
    auto consider = [&](const Candidate& c) {
        if (c.total() < best.length) best = min_form(best, transform_T(c, R, s));
    };
    consider(Candidate(*g).path(s, u, a1).form(t.at(a1, b1, i, j), s).path(s, b1, v));
    consider(Candidate(*g).form(t.at(u, v, i, j), s));
    consider(Candidate(*g).path(s, u, a1).form(t.at(a1, v, i, j), s));
    consider(Candidate(*g).form(t.at(u, b1, i, j), s).path(s, b1, v));
    return best;
}

ProperForm IncrementalDso::phi(Vertex u, Vertex v, int i, int j) const { return table_.at(u, v, i, j); }

ProperForm IncrementalDso::query_interval(Vertex u, Vertex v, int pa, int pb) const {
    if (u < 0 || v < 0 || u >= n() || v >= n()) throw InvalidArgumentError("vertex out of range");
    return DsoView{&g_, spts_.get(), &table_}.query_interval(u, v, pa, pb);
}

FailureAnswer IncrementalDso::query_edge_failure(Vertex u, Vertex v, EdgeId f) const {
    if (u < 0 || v < 0 || u >= n() || v >= n()) throw InvalidArgumentError("vertex out of range");
    const SptSet& s = *spts_;
    if (!s.reachable(u, v)) return {Length::inf(), ProperForm::null(u, v)};
    const int pos = s.edge_position(g_, u, v, f);
    if (pos < 0) {
        auto pf = ProperForm::shortest(s, u, v);
        return {pf.length, pf};
    }
    auto pf = query_interval(u, v, pos, pos + 1);
    return {pf.length, pf};
}

namespace {

struct InsertCtx {
    const Graph& ng;
    const SptSet& os;
    const SptSet& ns;
    DsoView oldv;
    EdgeId eid;

    ProperForm oldQ(Vertex s, Vertex t, int qa, int qb) const {
        if (s != t && !os.reachable(s, t)) return ProperForm::null(s, t);
        return oldv.query_interval(s, t, qa, qb);
    }
};

ProperForm dispatch_changed(const InsertCtx& c, Vertex u, Vertex v, int i, int j) {
    const int L2 = c.ns.hops(u, v);
    const int a = i, b = L2 - j;
    const IntervalOnPath R{u, v, a, b};
    const int px = c.ns.edge_position(c.ng, u, v, c.eid);
    if (px < 0) throw CaseUnmatchedError("changed pair whose new path misses the inserted edge");
    const int py = px + 1;
    const Vertex xp = c.ns.vertex_at(u, v, px), yp = c.ns.vertex_at(u, v, py);
    const bool old_ok = c.os.reachable(u, v);
    int p = 0, q = L2, Lo = 0;
    if (old_ok) {
        Lo = c.os.hops(u, v);
        const auto& tu = c.os.tree(u);
        const auto& tv = c.os.tree(v);
        p = tu.depth(tu.lca(xp, v));
        q = L2 - tv.depth(tv.lca(yp, u));
    }
    auto oldk = [&](int k) { return k <= p ? k : Lo - (L2 - k); };
    auto oldQuv = [&](int qa, int qb) { return old_ok ? c.oldQ(u, v, oldk(qa), oldk(qb)) : ProperForm::null(u, v); };

    ProperForm best = ProperForm::null(u, v);
    bool matched = false;
    auto take = [&](const Candidate& cand) {
        if (cand.total() < best.length) best = min_form(best, transform_T(cand, R, c.ns));
    };
    auto old_uv = [&] { return Candidate(c.ng).path(c.os, u, v); };
    auto via_e_left_query = [&] {  // ϖ(u,x ⋄ R) ∘ e ∘ yv
        return Candidate(c.ng).form(c.oldQ(u, xp, a, b), c.os).edge(c.eid, xp).path(c.os, yp, v);
    };
    auto via_e_right_query = [&] {  // ux ∘ e ∘ ϖ(y,v ⋄ R)
        return Candidate(c.ng).path(c.os, u, xp).edge(c.eid, xp).form(c.oldQ(yp, v, a - py, b - py), c.os);
    };

    if (p <= a && a <= px && py <= b && b <= q) {  // CASE 1
        matched = true;
        take(old_uv());
    }
    if (b <= p) {  // CASE 2
        matched = true;
        take(Candidate(c.ng).form(oldQuv(a, b), c.os));
        take(via_e_left_query());
    }
    if (a >= q) {  // CASE 2 mirrored
        matched = true;
        take(Candidate(c.ng).form(oldQuv(a, b), c.os));
        take(via_e_right_query());
    }
    if (py <= a && b <= q) {  // CASE 3
        matched = true;
        take(old_uv());
        take(via_e_right_query());
    }
    if (p <= a && b <= px) {  // CASE 3 mirrored
        matched = true;
        take(old_uv());
        take(via_e_left_query());
    }
    if (p <= a && a <= px && q <= b) {  // CASE 4
        matched = true;
        take(Candidate(c.ng).form(oldQuv(q, b), c.os));
    }
    if (a <= p && py <= b && b <= q) {  // CASE 4 mirrored
        matched = true;
        take(Candidate(c.ng).form(oldQuv(a, p), c.os));
    }
    if (py <= a && a <= q && q <= b) {  // CASE 5
        matched = true;
        take(Candidate(c.ng).form(oldQuv(q, b), c.os));
        take(via_e_right_query());
    }
    if (a <= p && p <= b && b <= px) {  // CASE 5 mirrored
        matched = true;
        take(Candidate(c.ng).form(oldQuv(a, p), c.os));
        take(via_e_left_query());
    }
    if (a <= p && q <= b) {  // CASE 6
        matched = true;
        take(Candidate(c.ng).form(oldQuv(a, b), c.os));
    }
    if (!matched) throw CaseUnmatchedError("no positional case for a changed pair");
    return best;
}

ProperForm dispatch_unchanged(const InsertCtx& c, Vertex u, Vertex v, int i, int j) {
    const int L = c.ns.hops(u, v);
    const int a = i, b = L - j;
    const IntervalOnPath R{u, v, a, b};
    const ProperForm& old = c.oldv.table->at(u, v, i, j);
    // Unchanged halves keep their unique paths, so the old form is already
    // canonical in the new version and still avoids R.
    const bool same = old.is_null() || (c.os.dist(u, old.x) == c.ns.dist(u, old.x) && c.os.dist(old.y, v) == c.ns.dist(old.y, v));
    ProperForm best = same ? old : transform_T(Candidate(c.ng).form(old, c.os), R, c.ns);
    auto take = [&](const Candidate& cand) {
        if (cand.total() < best.length) best = min_form(best, transform_T(cand, R, c.ns));
    };
    const Edge& e = c.ng.edge(c.eid);
    for (auto [x, y] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
        if (!c.os.reachable(u, x) || !c.os.reachable(y, v)) continue;
        // Every piece below is an old path or an old avoiding path.
        if (!(c.os.dist(u, x) + e.w + c.os.dist(y, v) < best.length)) continue;
        const auto& tu = c.os.tree(u);
        const auto& tv = c.os.tree(v);
        const int p = tu.depth(tu.lca(x, v));
        const int q = L - tv.depth(tv.lca(y, u));
        const int hy = c.os.hops(y, v);
        auto toY = [&](int k) { return hy - (L - k); };
        // The interval meets π(u,x) on [a, min(b,p)] and π(y,v) on [max(a,q), b].
        // Each side is either untouched, partly covered or fully covered; this
        // merges CASES 1, 2, 3, 5 and 6 and also covers overlapping p > q.
        Candidate cand(c.ng);
        if (p <= a)
            cand.path(c.os, u, x);
        else
            cand.form(c.oldQ(u, x, a, std::min(b, p)), c.os);
        cand.edge(c.eid, x);
        if (b <= q)
            cand.path(c.os, y, v);
        else
            cand.form(c.oldQ(y, v, toY(std::max(a, q)), toY(b)), c.os);
        take(cand);
    }
    return best;
}

}  // namespace

EdgeId IncrementalDso::insert_edge(Vertex x, Vertex y, CompositeWeight w, std::optional<EdgeId> id, int threads) {
    if (x < 0 || y < 0 || x >= n() || y >= n() || x == y) throw InvalidArgumentError("bad endpoints for insertion");
    if (g_.find_edge(x, y)) throw DuplicateEdgeError("edge already present: " + std::to_string(x) + "-" + std::to_string(y));
    Graph ng = g_;
    EdgeId eid;
    if (id) {
        ng.add_edge_with_id(*id, x, y, w);
        eid = *id;
    } else {
        eid = ng.add_edge(x, y, w);
    }
    auto ns = std::make_shared<const SptSet>(ng, threads);
    std::vector<char> tie(static_cast<std::size_t>(n()), 0);
    parallel_for(n(), threads, [&](int u) { tie[static_cast<std::size_t>(u)] = has_tie(ng, ns->tree(u)); });
    if (std::any_of(tie.begin(), tie.end(), [](char t) { return t != 0; }))
        throw TieDetectedError("inserted edge creates tied shortest paths");

    PhiTable nt(*ns);
    const InsertCtx ctx{ng, *spts_, *ns, DsoView{&g_, spts_.get(), &table_}, eid};
    std::vector<std::uint64_t> changed(static_cast<std::size_t>(n()), 0), unchanged(static_cast<std::size_t>(n()), 0);
    parallel_for(n(), threads, [&](int u) {
        for (Vertex v = 0; v < n(); ++v) {
            if (!nt.has_pair(u, v)) continue;
            const bool ch = !(spts_->dist(u, v) == ns->dist(u, v));
            ++(ch ? changed : unchanged)[static_cast<std::size_t>(u)];
            const int L = nt.hops(u, v);
            const int K = PhiTable::anchor_count(L);
            for (int ii = 0; ii < K; ++ii)
                for (int jj = 0; jj < K; ++jj) {
                    const int i = PhiTable::anchor_value(ii), j = PhiTable::anchor_value(jj);
                    if (i + j >= L) continue;
                    nt.at(u, v, i, j) = ch ? dispatch_changed(ctx, u, v, i, j) : dispatch_unchanged(ctx, u, v, i, j);
                }
        }
    });
    stats_.changed_pairs = stats_.unchanged_pairs = 0;
    for (int u = 0; u < n(); ++u) {
        stats_.changed_pairs += changed[static_cast<std::size_t>(u)];
        stats_.unchanged_pairs += unchanged[static_cast<std::size_t>(u)];
    }
    g_ = std::move(ng);
    spts_ = std::move(ns);
    table_ = std::move(nt);
    ++version_;
    return eid;
}

namespace {

constexpr char kMagic[8] = {'F', 'P', 'D', 'S', 'O', 0, 0, 0};
constexpr std::uint32_t kFormatVersion = 1;

template <class T>
void put(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
T get(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw FormatError("truncated DSO snapshot");
    return v;
}

}  // namespace

void IncrementalDso::save(std::ostream& out) const {
    out.write(kMagic, sizeof kMagic);
    put<std::uint32_t>(out, kFormatVersion);
    put<std::uint64_t>(out, version_);
    put<std::int32_t>(out, g_.n());
    put<std::int32_t>(out, g_.edge_slots());
    for (EdgeId id = 0; id < g_.edge_slots(); ++id) {
        const bool present = g_.present(id);
        put<std::uint8_t>(out, present ? 1 : 0);
        if (!present) continue;
        const Edge& e = g_.edge(id);
        put<std::int32_t>(out, e.u);
        put<std::int32_t>(out, e.v);
        put<std::uint64_t>(out, e.w.base);
        put<std::uint64_t>(out, e.w.tiebreak);
    }
    put<std::uint64_t>(out, table_.size());
    for (const ProperForm& pf : table_.entries()) {
        put<std::uint8_t>(out, pf.is_null() ? 0 : 1);
        if (pf.is_null()) continue;
        put<std::int32_t>(out, pf.x);
        put<std::int32_t>(out, pf.y);
        put<std::int32_t>(out, pf.bridge);
        put<std::uint64_t>(out, pf.length.raw().base);
        put<std::uint64_t>(out, pf.length.raw().tiebreak);
    }
    if (!out) throw IoError("failed writing DSO snapshot");
}

IncrementalDso IncrementalDso::load(std::istream& in, int threads) {
    char magic[sizeof kMagic];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) throw FormatError("not a DSO snapshot");
    if (get<std::uint32_t>(in) != kFormatVersion) throw FormatError("unsupported DSO snapshot version");
    IncrementalDso d;
    d.version_ = get<std::uint64_t>(in);
    const int n = get<std::int32_t>(in);
    const int slots = get<std::int32_t>(in);
    if (n < 0 || slots < 0) throw FormatError("corrupt DSO snapshot header");
    d.g_ = Graph(n);
    for (EdgeId id = 0; id < slots; ++id) {
        if (!get<std::uint8_t>(in)) continue;
        auto u = get<std::int32_t>(in);
        auto v = get<std::int32_t>(in);
        auto base = get<std::uint64_t>(in);
        auto tb = get<std::uint64_t>(in);
        if (u < 0 || v < 0 || u >= n || v >= n || u == v) throw FormatError("corrupt edge in DSO snapshot");
        d.g_.add_edge_with_id(id, u, v, {base, tb});
    }
    d.spts_ = std::make_shared<const SptSet>(d.g_, threads);
    d.table_ = PhiTable(*d.spts_);
    if (get<std::uint64_t>(in) != d.table_.size()) throw FormatError("DSO snapshot table size mismatch");
    // Entries are stored in (u, v) pair order.
    std::size_t idx = 0;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) {
            if (!d.table_.has_pair(u, v)) continue;
            const int K = PhiTable::anchor_count(d.table_.hops(u, v));
            for (int k = 0; k < K * K; ++k, ++idx) {
                ProperForm& pf = d.table_.entries()[idx];
                pf = ProperForm::null(u, v);
                if (!get<std::uint8_t>(in)) continue;
                pf.x = get<std::int32_t>(in);
                pf.y = get<std::int32_t>(in);
                pf.bridge = get<std::int32_t>(in);
                auto base = get<std::uint64_t>(in);
                auto tb = get<std::uint64_t>(in);
                pf.length = CompositeWeight{base, tb};
            }
        }
    return d;
}

void IncrementalDso::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    save(out);
}

IncrementalDso IncrementalDso::load_file(const std::string& path, int threads) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open DSO snapshot: " + path);
    return load(in, threads);
}

}  // namespace faultpath
