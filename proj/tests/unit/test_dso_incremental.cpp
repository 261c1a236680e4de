#include <random>

#include "doctest.h"
#include "faultpath/dso.hpp"
#include "helpers.hpp"

using namespace faultpath;
using namespace testutil;

namespace {

int query_mismatches(const IncrementalDso& dso) {
    const Graph& g = dso.graph();
    int bad = 0;
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = 0; v < g.n(); ++v) {
            if (u == v) continue;
            for (EdgeId f : oracle::path_edges(g, dso.spts().path(u, v)))
                if (!(dso.query_edge_failure(u, v, f).length == oracle::dist_avoiding(g, u, v, {f}))) ++bad;
        }
    return bad;
}

int weak_mismatches(const IncrementalDso& dso) {
    const Graph& g = dso.graph();
    int bad = 0;
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = 0; v < g.n(); ++v) {
            if (!dso.table().has_pair(u, v)) continue;
            const int L = dso.table().hops(u, v);
            for (int i = 0; i < L; i = i ? 2 * i : 1)
                for (int j = 0; i + j < L; j = j ? 2 * j : 1) {
                    auto w = oracle::weak_classify(g, u, v, i, L - j);
                    auto pf = dso.phi(u, v, i, j);
                    if (w.weak() && !(pf.length == w.avoid_length)) ++bad;
                    if (!pf.is_null() && intersects_interval(pf, {u, v, i, L - j}, dso.spts())) ++bad;
                }
        }
    return bad;
}

// Inserts a random absent edge; retries on tie detection with a new tiebreak.
EdgeId insert_random(IncrementalDso& dso, std::mt19937_64& rng, std::uint64_t max_w) {
    TiebreakGen tb(rng());
    for (;;) {
        auto x = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(dso.n()));
        auto y = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(dso.n()));
        if (x == y || dso.graph().find_edge(x, y)) continue;
        try {
            return dso.insert_edge(x, y, tb.weight(1 + rng() % max_w));
        } catch (const TieDetectedError&) {
        }
    }
}

}  // namespace

TEST_CASE("heavy insertion leaves every query unchanged") {
    // Cycle plus chords is 2-edge-connected, so every failure keeps a light detour.
    Graph raw = gen::cycle(12, 5);
    raw.add_edge(0, 6, {9, 0});
    raw.add_edge(3, 9, {7, 0});
    Graph g = perturbed(raw, 4);
    auto dso = IncrementalDso::build(g);
    auto before = dso;
    Vertex x = 0, y = 1;
    while (g.find_edge(x, y)) ++y;
    dso.insert_edge(x, y, {1000000, 77});
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = 0; v < g.n(); ++v) {
            if (u == v) continue;
            CHECK(dso.spts().dist(u, v) == before.spts().dist(u, v));
            for (EdgeId f : oracle::path_edges(g, before.spts().path(u, v)))
                CHECK(dso.query_edge_failure(u, v, f).length == before.query_edge_failure(u, v, f).length);
        }
    CHECK(dso.stats().changed_pairs == 0);
}

TEST_CASE("zero-base shortcut becomes the shortest path") {
    auto dso = IncrementalDso::build(perturbed(gen::path_graph(6, 3)));
    EdgeId e = dso.insert_edge(0, 5, {0, 1});
    CHECK(dso.spts().path(0, 5) == std::vector<Vertex>{0, 5});
    CHECK(dso.spts().dist(0, 5).value().base == 0);
    CHECK(dso.query_edge_failure(0, 5, e).length.value().base == 15);
    CHECK(query_mismatches(dso) == 0);
}

TEST_CASE("insert_edge errors") {
    auto dso = IncrementalDso::build(perturbed(gen::cycle(5, 1)));
    CHECK_THROWS_AS(dso.insert_edge(0, 1, {1, 5}), DuplicateEdgeError);
    // Equal composite lengths via two routes: 0-2 with exactly |0-1-2|.
    const auto d = dso.spts().dist(0, 2).value();
    auto version = dso.version();
    CHECK_THROWS_AS(dso.insert_edge(0, 2, d), TieDetectedError);
    CHECK(dso.version() == version);
    CHECK(query_mismatches(dso) == 0);
}

TEST_CASE("case dispatch on constructed instances") {
    // Long unit path 0..8 with two side detours; insert shortcuts that
    // reshape different parts of π(0,8).
    Graph raw = gen::path_graph(9, 2);
    for (int k = 0; k < 3; ++k) raw.add_vertex();
    raw.add_edge(1, 9, {3, 0});
    raw.add_edge(9, 4, {4, 0});
    raw.add_edge(3, 10, {3, 0});
    raw.add_edge(10, 7, {6, 0});
    raw.add_edge(5, 11, {2, 0});
    raw.add_edge(11, 8, {5, 0});
    auto dso = IncrementalDso::build(perturbed(raw, 3));
    TiebreakGen tb(99);
    for (auto [x, y, w] : std::vector<std::tuple<Vertex, Vertex, std::uint64_t>>{
             {2, 6, 3}, {0, 9, 1}, {10, 11, 1}, {4, 8, 5}, {0, 3, 7}, {9, 11, 2}}) {
        dso.insert_edge(x, y, tb.weight(w));
        CHECK(query_mismatches(dso) == 0);
        CHECK(weak_mismatches(dso) == 0);
    }
}

TEST_CASE("random insertion sequences match the oracle after every step") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        auto dso = IncrementalDso::build(random_graph(14, 4, seed));
        std::mt19937_64 rng(seed * 1000);
        for (int step = 0; step < 12; ++step) {
            std::vector<Length> before;
            for (Vertex u = 0; u < dso.n(); ++u)
                for (Vertex v = 0; v < dso.n(); ++v) before.push_back(dso.spts().dist(u, v));
            insert_random(dso, rng, 25);
            std::size_t k = 0;
            for (Vertex u = 0; u < dso.n(); ++u)
                for (Vertex v = 0; v < dso.n(); ++v) CHECK(dso.spts().dist(u, v) <= before[k++]);
            CHECK(query_mismatches(dso) == 0);
            CHECK(weak_mismatches(dso) == 0);
        }
    }
}

TEST_CASE("insertion into a disconnected graph") {
    Graph raw(6);
    raw.add_edge(0, 1, {1, 0});
    raw.add_edge(1, 2, {1, 0});
    raw.add_edge(3, 4, {1, 0});
    raw.add_edge(4, 5, {1, 0});
    raw.add_edge(3, 5, {5, 0});
    auto dso = IncrementalDso::build(perturbed(raw));
    TiebreakGen tb(5);
    dso.insert_edge(2, 3, tb.weight(2));
    CHECK(query_mismatches(dso) == 0);
    dso.insert_edge(0, 4, tb.weight(9));
    CHECK(query_mismatches(dso) == 0);
    CHECK(weak_mismatches(dso) == 0);
}

TEST_CASE("incremental entries agree with a fresh build at query level") {
    auto dso = IncrementalDso::build(random_graph(12, 6, 17));
    std::mt19937_64 rng(17);
    for (int step = 0; step < 6; ++step) insert_random(dso, rng, 15);
    auto fresh = IncrementalDso::build(dso.graph());
    for (Vertex u = 0; u < dso.n(); ++u)
        for (Vertex v = 0; v < dso.n(); ++v) {
            if (u == v) continue;
            for (EdgeId f : oracle::path_edges(dso.graph(), dso.spts().path(u, v)))
                CHECK(dso.query_edge_failure(u, v, f).length == fresh.query_edge_failure(u, v, f).length);
        }
}
