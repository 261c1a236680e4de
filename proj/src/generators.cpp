#include "faultpath/generators.hpp"

#include <random>

namespace faultpath::gen {

Graph random_connected(int n, int extra, std::uint64_t max_w, std::uint64_t seed) {
    if (n < 1 || max_w < 1) throw InvalidArgumentError("random_connected needs n >= 1 and max_w >= 1");
    std::mt19937_64 rng(seed);
    auto weight = [&] { return CompositeWeight{1 + rng() % max_w, 0}; };
    Graph g(n);
    for (Vertex v = 1; v < n; ++v) g.add_edge(static_cast<Vertex>(rng() % static_cast<std::uint64_t>(v)), v, weight());
    const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
    int added = 0;
    for (int attempts = 0; added < extra && g.num_edges() < max_edges && attempts < 100 * (extra + 1); ++attempts) {
        auto a = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
        auto b = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
        if (a == b || g.find_edge(a, b)) continue;
        g.add_edge(a, b, weight());
        ++added;
    }
    return g;
}

Graph path_graph(int n, std::uint64_t w) {
    Graph g(n);
    for (Vertex v = 1; v < n; ++v) g.add_edge(v - 1, v, {w, 0});
    return g;
}

Graph cycle(int n, std::uint64_t w) {
    Graph g = path_graph(n, w);
    if (n >= 3) g.add_edge(n - 1, 0, {w, 0});
    return g;
}

Graph grid(int rows, int cols, std::uint64_t max_w, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto weight = [&] { return CompositeWeight{1 + rng() % max_w, 0}; };
    Graph g(rows * cols);
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) g.add_edge(id(r, c), id(r, c + 1), weight());
            if (r + 1 < rows) g.add_edge(id(r, c), id(r + 1, c), weight());
        }
    return g;
}

}  // namespace faultpath::gen
