#include "faultpath/frp3.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "faultpath/offline.hpp"
#include "faultpath/parallel.hpp"

namespace faultpath {

namespace {

std::size_t sz(int v) { return static_cast<std::size_t>(v); }

bool overlap(Interval a, Interval b) { return !(a.hi < b.lo || b.hi < a.lo); }

Interval intersect(Interval a, Interval b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

template <class V>
void offer(V& best, const V& cand) {
    if (cand.len < best.len) best = cand;
}

}  // namespace

// ---------------------------------------------------------------- partition

BinaryPartition::BinaryPartition(int hops) : L(hops) {
    const unsigned need = static_cast<unsigned>(std::max(hops, 1));
    k = static_cast<int>(std::bit_width(std::bit_ceil(need))) - 1;
    pad = (1 << k) - hops;
}

BinaryPartition::Split BinaryPartition::separate(int ka, int kb) const {
    if (ka >= kb || ka < 0 || kb >= L) throw InvalidArgumentError("separate needs path edges ka < kb");
    const unsigned x = static_cast<unsigned>(padded(ka) ^ padded(kb));
    const int bw = static_cast<int>(std::bit_width(x));
    Split s;
    s.level = k - bw + 1;
    s.j = padded(kb) >> (bw - 1);
    s.m = marker(s.level, s.j);
    return s;
}

Graph half_graph(const AuxGraphH& aux, const BinaryPartition& bp, int level, int side) {
    Graph h = aux.h;
    const auto& st = aux.st;
    const int L = st.hops();
    for (int p = 0; p < L; ++p)
        if (bp.in_half(level, side, p))
            h.add_edge_with_id(st.edges[sz(p)], st.verts[sz(p)], st.verts[sz(p) + 1], aux.scaled(st.segment(p, p + 1)));
    return h;
}

// ---------------------------------------------------------------- metric

PathMetric PathMetric::reversed() const {
    PathMetric r;
    r.L = L;
    r.pre.resize(pre.size());
    for (int p = 0; p <= L; ++p) r.pre[sz(p)] = pre[sz(L)] - pre[sz(L - p)];
    r.dist.resize(dist.size());
    for (int a = 0; a <= L; ++a)
        for (int b = 0; b <= L; ++b) r.dist[sz(a) * sz(L + 1) + sz(b)] = d(L - a, L - b);
    return r;
}

RangeTree::RangeTree(int L) : L_(L) {
    P_ = static_cast<int>(std::bit_ceil(static_cast<unsigned>(L + 1)));
    ranges_.assign(sz(2 * P_), Interval{});
    for (int p = 0; p < P_; ++p) ranges_[sz(P_ + p)] = p <= L ? Interval{p, p} : Interval{p, p - 1};
    for (int v = P_ - 1; v >= 1; --v) {
        const Interval a = ranges_[sz(2 * v)], b = ranges_[sz(2 * v + 1)];
        ranges_[sz(v)] = a.empty() ? a : Interval{a.lo, b.empty() ? a.hi : b.hi};
    }
}

std::vector<int> RangeTree::decompose(Interval iv) const {
    std::vector<int> out;
    if (iv.empty()) return out;
    std::vector<int> stack{1};
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        const Interval r = ranges_[sz(v)];
        if (r.empty() || r.hi < iv.lo || r.lo > iv.hi) continue;
        if (iv.lo <= r.lo && r.hi <= iv.hi) {
            out.push_back(v);
            continue;
        }
        stack.push_back(2 * v + 1);
        stack.push_back(2 * v);
    }
    return out;
}

// ---------------------------------------------------------------- oracle A

std::size_t OracleA::index(Side s1, Side s2, int a, int b) const {
    const auto n = sz(tree_.nodes());
    const auto sides = sz(s1 == Side::Right ? 2 : 0) + sz(s2 == Side::Right ? 1 : 0);
    return (sides * n + sz(a)) * n + sz(b);
}

OracleA::OracleA(const PathMetric& pm) : pm_(pm), tree_(pm.L) {
    const int n = tree_.nodes();
    table_.assign(4 * sz(n) * sz(n), AValue{});
    const Side sides[2] = {Side::Left, Side::Right};
    for (int a = n - 1; a >= 1; --a)
        for (int b = n - 1; b >= 1; --b) {
            const Interval ra = tree_.range(a), rb = tree_.range(b);
            if (ra.empty() || rb.empty() || overlap(ra, rb)) continue;
            if (tree_.is_leaf(a) && tree_.is_leaf(b)) {
                const AValue base{pm_.d(ra.lo, rb.lo), ra.lo, rb.lo};
                for (Side s1 : sides)
                    for (Side s2 : sides) table_[index(s1, s2, a, b)] = base;
                continue;
            }
            for (Side s1 : sides)
                for (Side s2 : sides) {
                    AValue best;
                    auto shifted = [&](const AValue& v, const CompositeWeight& off) {
                        AValue c = v;
                        c.len = v.len + off;
                        offer(best, c);
                    };
                    if (!tree_.is_leaf(a)) {
                        const int c1 = 2 * a, c2 = 2 * a + 1;
                        const Interval r1 = tree_.range(c1), r2 = tree_.range(c2);
                        if (s1 == Side::Left) {
                            shifted(node(s1, s2, c1, b), {});
                            if (!r2.empty()) shifted(node(s1, s2, c2, b), pm_.walk(ra.lo, r2.lo));
                        } else {
                            shifted(node(s1, s2, c1, b), pm_.walk(r1.hi, ra.hi));
                            if (!r2.empty()) shifted(node(s1, s2, c2, b), {});
                        }
                    } else {
                        const int c1 = 2 * b, c2 = 2 * b + 1;
                        const Interval r1 = tree_.range(c1), r2 = tree_.range(c2);
                        if (s2 == Side::Left) {
                            shifted(node(s1, s2, a, c1), {});
                            if (!r2.empty()) shifted(node(s1, s2, a, c2), pm_.walk(rb.lo, r2.lo));
                        } else {
                            shifted(node(s1, s2, a, c1), pm_.walk(r1.hi, rb.hi));
                            if (!r2.empty()) shifted(node(s1, s2, a, c2), {});
                        }
                    }
                    table_[index(s1, s2, a, b)] = best;
                }
        }
}

AValue OracleA::query(Side s1, Side s2, Interval r1, Interval r2) const {
    if (r1.empty() || r2.empty()) return {};
    if (overlap(r1, r2)) throw DisjointnessViolatedError("oracle A intervals overlap");
    AValue best;
    const auto d1 = tree_.decompose(r1), d2 = tree_.decompose(r2);
    for (int a : d1) {
        const Interval ra = tree_.range(a);
        const CompositeWeight off1 = s1 == Side::Left ? pm_.walk(r1.lo, ra.lo) : pm_.walk(ra.hi, r1.hi);
        for (int b : d2) {
            const Interval rb = tree_.range(b);
            const CompositeWeight off2 = s2 == Side::Left ? pm_.walk(r2.lo, rb.lo) : pm_.walk(rb.hi, r2.hi);
            AValue c = node(s1, s2, a, b);
            c.len = c.len + off1 + off2;
            offer(best, c);
        }
    }
    return best;
}

// ---------------------------------------------------------------- oracle B

OracleB::OracleB(const OracleA& a) : a_(&a), rows_(sz(std::max(a.metric().L, 0))) {}

std::size_t OracleB::index(Side s, int r1, int r2) const {
    const auto n = sz(a_->tree().nodes());
    return ((s == Side::Right ? n : 0) + sz(r1)) * n + sz(r2);
}

void OracleB::prepare(int k1) {
    if (k1 < 0 || k1 >= static_cast<int>(rows_.size())) throw InvalidArgumentError("d1 is not a path edge");
    if (rows_[sz(k1)]) return;
    const auto& A = *a_;
    const auto& tree = A.tree();
    const auto& pm = A.metric();
    const int n = tree.nodes();
    const Interval prefix{0, k1};
    auto row = std::make_unique<Row>();
    row->table.assign(2 * sz(n) * sz(n), BValue{});
    row->pre_l.assign(sz(n), AValue{});
    row->pre_r.assign(sz(n), AValue{});
    auto after = [&](int v) {
        const Interval r = tree.range(v);
        return !r.empty() && r.lo > k1;
    };
    for (int v = 1; v < n; ++v)
        if (after(v)) {
            row->pre_l[sz(v)] = A.query(Side::Left, Side::Left, prefix, tree.range(v));
            row->pre_r[sz(v)] = A.query(Side::Left, Side::Right, prefix, tree.range(v));
        }
    const Side sides[2] = {Side::Left, Side::Right};
    for (int r1 = n - 1; r1 >= 1; --r1) {
        if (!after(r1)) continue;
        for (int r2 = n - 1; r2 >= 1; --r2) {
            if (!after(r2) || overlap(tree.range(r1), tree.range(r2))) continue;
            for (Side s : sides) {
                BValue best;
                // Converge at p via prefix entry e, diverge at q via A entry a.
                auto through = [&](const AValue& e, const CompositeWeight& walk, const AValue& a) {
                    offer(best, BValue{e.len + walk + a.len, e.x, e.y, a.x, a.y});
                };
                if (tree.is_leaf(r1)) {
                    through(row->pre_l[sz(r1)], {}, A.node(Side::Left, s, r1, r2));
                } else {
                    const int c1 = 2 * r1, c2 = 2 * r1 + 1;
                    offer(best, row->table[index(s, c1, r2)]);
                    if (after(c2)) {
                        const Interval i1 = tree.range(c1), i2 = tree.range(c2);
                        offer(best, row->table[index(s, c2, r2)]);
                        through(row->pre_r[sz(c1)], pm.walk(i1.hi, i2.lo), A.node(Side::Left, s, c2, r2));
                        through(row->pre_l[sz(c2)], pm.walk(i1.hi, i2.lo), A.node(Side::Right, s, c1, r2));
                    }
                }
                row->table[index(s, r1, r2)] = best;
            }
        }
    }
    rows_[sz(k1)] = std::move(row);
}

BValue OracleB::query(int k1, Side s, Interval r1, Interval r2) const {
    if (r1.empty() || r2.empty()) return {};
    if (overlap(r1, r2)) throw DisjointnessViolatedError("oracle B intervals overlap");
    if (r1.lo <= k1 || r2.lo <= k1) throw InvalidArgumentError("oracle B intervals must follow d1");
    if (!prepared(k1)) throw InvalidArgumentError("oracle B row not prepared");
    const Row& row = *rows_[sz(k1)];
    const auto& A = *a_;
    const auto& tree = A.tree();
    const auto& pm = A.metric();
    const auto n1 = tree.decompose(r1), n2 = tree.decompose(r2);
    auto off2 = [&](int b) {
        const Interval rb = tree.range(b);
        return s == Side::Left ? pm.walk(r2.lo, rb.lo) : pm.walk(rb.hi, r2.hi);
    };
    // Best A^{side,s}(node, r2) over the r2 decomposition.
    auto a_fold = [&](Side side, int a) {
        AValue best;
        for (int b : n2) {
            AValue c = A.node(side, s, a, b);
            c.len = c.len + off2(b);
            offer(best, c);
        }
        return best;
    };
    BValue best;
    for (int a : n1)
        for (int b : n2) {
            BValue c = row.table[index(s, a, b)];
            c.len = c.len + off2(b);
            offer(best, c);
        }
    for (std::size_t i = 0; i < n1.size(); ++i)
        for (std::size_t j = 0; j < n1.size(); ++j) {
            if (i == j) continue;
            const Interval ri = tree.range(n1[i]), rj = tree.range(n1[j]);
            if (i < j) {
                const AValue& e = row.pre_r[sz(n1[i])];
                const AValue a = a_fold(Side::Left, n1[j]);
                offer(best, BValue{e.len + pm.walk(ri.hi, rj.lo) + a.len, e.x, e.y, a.x, a.y});
            } else {
                const AValue& e = row.pre_l[sz(n1[i])];
                const AValue a = a_fold(Side::Right, n1[j]);
                offer(best, BValue{e.len + pm.walk(rj.hi, ri.lo) + a.len, e.x, e.y, a.x, a.y});
            }
        }
    return best;
}

// ---------------------------------------------------------------- records

std::string case_name(Frp3Record::Case c) {
    switch (c) {
        case Frp3Record::Case::OneOn: return "1on";
        case Frp3Record::Case::TwoOn: return "2on";
        case Frp3Record::Case::ThreeOn: return "3on";
        case Frp3Record::Case::OffPath: return "off-path";
    }
    return "off-path";
}

Length TwoOnBreakdown::min() const { return std::min({value[0], value[1], value[2], value[3]}); }

// ---------------------------------------------------------------- solver

Frp3Solver::Frp3Solver(const Graph& g, Vertex s, Vertex t, int threads)
    : g_(g), threads_(threads), frp2_(g, s, t, threads), bp_(frp2_.st().hops()) {
    const auto& st = frp2_.st();
    PathMetric pm;
    pm.L = st.hops();
    for (const auto& p : st.pre) pm.pre.push_back(p.value());
    pm.dist.resize(sz(pm.L + 1) * sz(pm.L + 1));
    for (int a = 0; a <= pm.L; ++a)
        for (int b = 0; b <= pm.L; ++b) pm.dist[sz(a) * sz(pm.L + 1) + sz(b)] = frp2_.off_path().dist(st.verts[sz(a)], st.verts[sz(b)]);
    fa_ = std::make_unique<OracleA>(pm);
    ra_ = std::make_unique<OracleA>(pm.reversed());
    fb_ = std::make_unique<OracleB>(*fa_);
    rb_ = std::make_unique<OracleB>(*ra_);
}

Length Frp3Solver::case_one_on_path(int k1, EdgeId d2, EdgeId d3) const {
    const auto& aux = frp2_.aux();
    Graph h = aux.h;
    h.remove_edge(d2);
    auto dso = IncrementalDso::build(h, threads_);
    return aux.to_g_length(dso.query_edge_failure(aux.minus(k1), aux.plus(k1), d3).length, aux.minus(k1), aux.plus(k1));
}

TwoOnBreakdown Frp3Solver::case_two_on_path(int ka, int kb, EdgeId f) const {
    const auto& aux = frp2_.aux();
    const auto& st = frp2_.st();
    TwoOnBreakdown out;
    out.split = bp_.separate(ka, kb);
    const Vertex m = st.verts[sz(out.split.m)];
    const Vertex from = aux.minus(ka), to = aux.plus(kb);
    out.value[0] = aux.to_g_length(frp2_.h_dso().query_edge_failure(from, to, f).length, from, to);
    Graph h0 = half_graph(aux, bp_, out.split.level, 0);
    h0.remove_edge(st.edges[sz(ka)]);
    Graph h1 = half_graph(aux, bp_, out.split.level, 1);
    h1.remove_edge(st.edges[sz(kb)]);
    auto o0 = IncrementalDso::build(h0, threads_);
    auto o1 = IncrementalDso::build(h1, threads_);
    out.value[1] = aux.to_g_length(o0.query_edge_failure(from, to, f).length, from, to);
    out.value[2] = aux.to_g_length(o1.query_edge_failure(from, to, f).length, from, to);
    const Length left = std::min(aux.to_g_length(o0.query_edge_failure(from, m, f).length, from, m), aux.to_g_length(o1.query_edge_failure(from, m, f).length, from, m));
    const Length right = std::min(aux.to_g_length(o0.query_edge_failure(m, to, f).length, m, to), aux.to_g_length(o1.query_edge_failure(m, to, f).length, m, to));
    out.value[3] = left + right;
    return out;
}

void Frp3Solver::prepare_rows(int k1, int k3) {
    fb_->prepare(k1);
    rb_->prepare(st().hops() - 1 - k3);
}

Length Frp3Solver::types_one_to_three(int k1, int k2, int k3) const {
    const int L = st().hops();
    const Interval d1{0, k1}, d2{k1 + 1, k2}, d3{k2 + 1, k3}, d4{k3 + 1, L};
    Length best = fa_->query(Side::Left, Side::Right, d1, d4).len;
    best = std::min(best, fb_->query(k1, Side::Right, d2, d4).len);
    best = std::min(best, fb_->query(k1, Side::Right, d3, d4).len);
    return best;
}

SnakeValue Frp3Solver::snake_through(const std::vector<int>& cuts, int x, bool x_is_edge) const {
    const int L = st().hops();
    const int w = static_cast<int>(cuts.size());
    if (w < 2) return {};
    const int k1 = cuts.front(), k3 = cuts.back();
    auto interval = [&](int i) {
        if (i == 0) return Interval{0, cuts[0]};
        if (i == w) return Interval{cuts[sz(w - 1)] + 1, L};
        return Interval{cuts[sz(i - 1)] + 1, cuts[sz(i)]};
    };
    // Interval holding vertex x; edge x must not be a cut.
    int T = static_cast<int>(std::lower_bound(cuts.begin(), cuts.end(), x) - cuts.begin());
    if (x_is_edge && T < w && cuts[sz(T)] == x) return {};
    if (T == 0 || T >= w) return {};
    const auto& pm = fa_->metric();
    const int xl = x, xr = x_is_edge ? x + 1 : x;
    const CompositeWeight wx = pm.walk(xl, xr);
    const Interval iv = interval(T), XL{iv.lo, xl}, XR{xr, iv.hi};
    const Interval D0 = interval(0), Dw = interval(w);
    auto rev = [&](Interval r) { return Interval{L - r.hi, L - r.lo}; };
    const int k3r = L - 1 - k3;
    auto seg = [](int a, int b) { return Interval{std::min(a, b), std::max(a, b)}; };
    SnakeValue best;
    auto take = [&](const Length& len, Interval first, Interval second) {
        if (len < best.len) best = {len, first, second};
    };
    for (int o = 1; o < w; ++o) {
        if (o == T) continue;
        const Interval O = interval(o);
        // x in the second stretch.
        {
            const BValue b = fb_->query(k1, Side::Left, O, XR);
            const AValue a = fa_->query(Side::Right, Side::Right, XL, Dw);
            take(b.len + wx + a.len, seg(b.y1, b.y2), seg(a.x, b.z));
        }
        {
            const BValue b = fb_->query(k1, Side::Right, O, XL);
            const AValue a = fa_->query(Side::Left, Side::Right, XR, Dw);
            take(b.len + wx + a.len, seg(b.y1, b.y2), seg(b.z, a.x));
        }
        // x in the first stretch; the tail is B on the reversed path.
        {
            const AValue a = fa_->query(Side::Left, Side::Left, D0, XR);
            const BValue b = rb_->query(k3r, Side::Left, rev(O), rev(XL));
            take(a.len + wx + b.len, seg(L - b.z, a.y), seg(L - b.y1, L - b.y2));
        }
        {
            const AValue a = fa_->query(Side::Left, Side::Right, D0, XL);
            const BValue b = rb_->query(k3r, Side::Right, rev(O), rev(XR));
            take(a.len + wx + b.len, seg(a.y, L - b.z), seg(L - b.y1, L - b.y2));
        }
    }
    return best;
}

SnakeValue Frp3Solver::shortest_snake(const std::vector<int>& cuts) const {
    SnakeValue best;
    for (int x = cuts.front() + 1; x <= cuts.back(); ++x) {
        SnakeValue c = snake_through(cuts, x, false);
        if (c.len < best.len) best = c;
    }
    return best;
}

std::vector<Length> Frp3Solver::three_on_path_row(int k1, int k3, SnakeTrace* trace) {
    prepare_rows(k1, k3);
    const int count = k3 - k1 - 1;
    if (count <= 0) return {};
    // Edge intervals of the stretches of a snake.
    auto edges_of = [](const SnakeValue& s) {
        std::vector<Interval> out;
        if (s.len.is_inf()) return out;
        for (Interval v : {s.first, s.second})
            if (v.hi > v.lo) out.push_back({v.lo, v.hi - 1});
        return out;
    };
    auto middle = [](Interval e) { return e.lo + (e.size() - 1) / 2; };
    auto order = [](std::vector<Interval>& es) {
        std::stable_sort(es.begin(), es.end(), [](Interval a, Interval b) { return a.size() > b.size(); });
    };
    auto potential = [](const std::vector<Interval>& es) {
        long long s = 0;
        for (Interval e : es) s += static_cast<long long>(e.size()) * e.size();
        return s;
    };
    std::vector<int> cuts{k1, k3};
    std::vector<int> probes;
    std::vector<SnakeValue> pis;
    std::vector<std::vector<Interval>> pi_edges;
    SnakeTrace local{k1, k3, {}, 0};
    probes.push_back(middle({k1 + 1, k3 - 1}));
    cuts.insert(std::upper_bound(cuts.begin(), cuts.end(), probes.back()), probes.back());
    pis.push_back(shortest_snake(cuts));
    pi_edges.push_back(edges_of(pis.back()));
    std::vector<Interval> E = pi_edges.back();
    order(E);
    local.potential.push_back(potential(E));
    while (local.potential.back() > 0) {
        probes.push_back(middle(E.front()));
        cuts.insert(std::upper_bound(cuts.begin(), cuts.end(), probes.back()), probes.back());
        pis.push_back(shortest_snake(cuts));
        pi_edges.push_back(edges_of(pis.back()));
        std::vector<Interval> next;
        for (Interval f : pi_edges.back())
            for (Interval e : E) {
                Interval c = intersect(f, e);
                if (!c.empty()) next.push_back(c);
            }
        E = std::move(next);
        order(E);
        local.potential.push_back(potential(E));
        ++local.stages;
    }
    std::vector<Length> out(sz(count), Length::inf());
    for (int k2 = k1 + 1; k2 < k3; ++k2) {
        std::size_t k = 0;
        auto hits = [&](std::size_t i) {
            return std::any_of(pi_edges[i].begin(), pi_edges[i].end(), [&](Interval e) { return e.lo <= k2 && k2 <= e.hi; });
        };
        while (k < pis.size() && hits(k)) ++k;
        if (k == pis.size()) throw CaseUnmatchedError("no probe snake avoids d2");
        Length best = pis[k].len;
        const std::vector<int> three{k1, k2, k3};
        for (std::size_t i = 0; i <= k; ++i)
            if (probes[i] != k2) best = std::min(best, snake_through(three, probes[i], true).len);
        out[sz(k2 - k1 - 1)] = std::min(best, types_one_to_three(k1, k2, k3));
    }
    if (trace) *trace = std::move(local);
    return out;
}

Length Frp3Solver::case_three_on_path(int k1, int k2, int k3) {
    if (!(k1 < k2 && k2 < k3)) throw InvalidArgumentError("need k1 < k2 < k3");
    return three_on_path_row(k1, k3)[sz(k2 - k1 - 1)];
}

std::vector<Frp3Record> Frp3Solver::solve() {
    const auto& st = frp2_.st();
    const auto& aux = frp2_.aux();
    const auto& frp1 = frp2_.frp1();
    const int L = st.hops();
    stats_ = {};
    traces_.clear();
    std::vector<Frp3Record> recs;
    for (int k1 = 0; k1 < L; ++k1) {
        const EdgeId d1 = st.edges[sz(k1)];
        const auto& p1 = frp1.path[sz(k1)];
        if (p1.empty()) {
            recs.push_back({d1, kNoEdge, kNoEdge, Length::inf(), Frp3Record::Case::OffPath});
            continue;
        }
        for (std::size_t i = 1; i < p1.size(); ++i) {
            const EdgeId d2 = *g_.find_edge(p1[i - 1], p1[i]);
            const auto p2 = frp2_.path(d1, d2);
            if (p2.empty()) {
                recs.push_back({d1, d2, kNoEdge, Length::inf(), Frp3Record::Case::OffPath});
                continue;
            }
            for (std::size_t j = 1; j < p2.size(); ++j) {
                const EdgeId d3 = *g_.find_edge(p2[j - 1], p2[j]);
                const int on = 1 + (st.on_path(d2) ? 1 : 0) + (st.on_path(d3) ? 1 : 0);
                const auto kind = on == 1 ? Frp3Record::Case::OneOn : on == 2 ? Frp3Record::Case::TwoOn : Frp3Record::Case::ThreeOn;
                recs.push_back({d1, d2, d3, Length::inf(), kind});
            }
        }
    }
    stats_.triples = recs.size();

    auto run_offline = [&](const Graph& g0, const std::vector<EdgeId>& dels, const std::function<void(std::size_t, const IncrementalDso&)>& at) {
        Timeline tl;
        tl.g0 = g0;
        for (EdgeId e : dels) {
            const Edge& ed = g0.edge(e);
            tl.updates.push_back({TimelineUpdate::Kind::Delete, ed.u, ed.v, {}, e});
            tl.updates.push_back({TimelineUpdate::Kind::Insert, ed.u, ed.v, ed.w, e});
        }
        auto s = OfflineDso::for_each_leaf(
            tl, [&](int t, const IncrementalDso& leaf) {
                if (t % 2 == 1) at(sz(t / 2), leaf);
            },
            threads_);
        ++stats_.offline_runs;
        stats_.peak_live = std::max(stats_.peak_live, s.peak_live);
    };

    // One failure on the path: H − d2 per off-path d2.
    {
        std::map<EdgeId, std::vector<std::size_t>> by_d2;
        for (std::size_t r = 0; r < recs.size(); ++r)
            if (recs[r].kind == Frp3Record::Case::OneOn) by_d2[recs[r].d2].push_back(r);
        stats_.one_on = 0;
        std::vector<EdgeId> dels;
        std::vector<const std::vector<std::size_t>*> groups;
        for (const auto& [e, rs] : by_d2) {
            dels.push_back(e);
            groups.push_back(&rs);
            stats_.one_on += rs.size();
        }
        if (!dels.empty())
            run_offline(aux.h, dels, [&](std::size_t i, const IncrementalDso& leaf) {
                const auto& rs = *groups[i];
                parallel_for(static_cast<int>(rs.size()), threads_, [&](int q) {
                    auto& rec = recs[rs[sz(q)]];
                    const int k1 = st.position(rec.d1);
                    rec.length = aux.to_g_length(leaf.query_edge_failure(aux.minus(k1), aux.plus(k1), rec.d3).length, aux.minus(k1), aux.plus(k1));
                });
            });
    }

    // Two failures on the path: H, then H_{i,0} − da and H_{i,1} − db.
    {
        struct Item {
            std::size_t rec;
            int ka, kb;
            EdgeId f;
            BinaryPartition::Split split;
            Length v[3] = {Length::inf(), Length::inf(), Length::inf()};
            Length left[2] = {Length::inf(), Length::inf()};
            Length right[2] = {Length::inf(), Length::inf()};
        };
        std::vector<Item> items;
        for (std::size_t r = 0; r < recs.size(); ++r) {
            const auto& rec = recs[r];
            if (rec.kind != Frp3Record::Case::TwoOn) continue;
            std::vector<int> on;
            EdgeId f = kNoEdge;
            for (EdgeId e : {rec.d1, rec.d2, rec.d3}) {
                if (st.on_path(e))
                    on.push_back(st.position(e));
                else
                    f = e;
            }
            const int ka = std::min(on[0], on[1]), kb = std::max(on[0], on[1]);
            items.push_back({r, ka, kb, f, bp_.separate(ka, kb)});
        }
        stats_.two_on = items.size();
        parallel_for(static_cast<int>(items.size()), threads_, [&](int q) {
            auto& it = items[sz(q)];
            it.v[0] = aux.to_g_length(frp2_.h_dso().query_edge_failure(aux.minus(it.ka), aux.plus(it.kb), it.f).length, aux.minus(it.ka), aux.plus(it.kb));
        });
        for (int level = 1; level <= bp_.k; ++level)
            for (int side = 0; side < 2; ++side) {
                std::map<int, std::vector<std::size_t>> by_pos;
                for (std::size_t q = 0; q < items.size(); ++q)
                    if (items[q].split.level == level) by_pos[side == 0 ? items[q].ka : items[q].kb].push_back(q);
                if (by_pos.empty()) continue;
                std::vector<EdgeId> dels;
                std::vector<const std::vector<std::size_t>*> groups;
                for (const auto& [p, qs] : by_pos) {
                    dels.push_back(st.edges[sz(p)]);
                    groups.push_back(&qs);
                }
                run_offline(half_graph(aux, bp_, level, side), dels, [&](std::size_t i, const IncrementalDso& leaf) {
                    const auto& qs = *groups[i];
                    parallel_for(static_cast<int>(qs.size()), threads_, [&](int j) {
                        auto& it = items[qs[sz(j)]];
                        const Vertex from = aux.minus(it.ka), to = aux.plus(it.kb), m = st.verts[sz(it.split.m)];
                        it.v[1 + side] = aux.to_g_length(leaf.query_edge_failure(from, to, it.f).length, from, to);
                        it.left[side] = aux.to_g_length(leaf.query_edge_failure(from, m, it.f).length, from, m);
                        it.right[side] = aux.to_g_length(leaf.query_edge_failure(m, to, it.f).length, m, to);
                    });
                });
            }
        for (const auto& it : items) {
            const Length through = std::min(it.left[0], it.left[1]) + std::min(it.right[0], it.right[1]);
            recs[it.rec].length = std::min({it.v[0], it.v[1], it.v[2], through});
        }
    }

    // Three failures on the path: one probe loop per (k1, k3).
    {
        std::map<std::pair<int, int>, std::vector<std::pair<std::size_t, int>>> by_outer;
        for (std::size_t r = 0; r < recs.size(); ++r) {
            const auto& rec = recs[r];
            if (rec.kind != Frp3Record::Case::ThreeOn) continue;
            int k[3] = {st.position(rec.d1), st.position(rec.d2), st.position(rec.d3)};
            std::sort(k, k + 3);
            by_outer[{k[0], k[2]}].push_back({r, k[1]});
            ++stats_.three_on;
        }
        std::vector<std::pair<int, int>> outer;
        for (const auto& [key, v] : by_outer) {
            outer.push_back(key);
            prepare_rows(key.first, key.second);
        }
        traces_.assign(outer.size(), SnakeTrace{});
        std::vector<std::vector<Length>> rows(outer.size());
        parallel_for(static_cast<int>(outer.size()), threads_, [&](int i) {
            rows[sz(i)] = three_on_path_row(outer[sz(i)].first, outer[sz(i)].second, &traces_[sz(i)]);
        });
        for (std::size_t i = 0; i < outer.size(); ++i)
            for (const auto& [r, k2] : by_outer[outer[i]]) recs[r].length = rows[i][sz(k2 - outer[i].first - 1)];
    }
    return recs;
}

}  // namespace faultpath
