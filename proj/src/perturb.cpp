#include "faultpath/perturb.hpp"

#include <algorithm>
#include <atomic>

#include "faultpath/parallel.hpp"
#include "faultpath/spt.hpp"

namespace faultpath {

bool verify_unique(const Graph& g, const EdgeMask* mask, int threads) {
    std::vector<char> tie(static_cast<std::size_t>(g.n()), 0);
    parallel_for(g.n(), threads, [&](int u) {
        auto t = dijkstra(g, u, mask);
        tie[static_cast<std::size_t>(u)] = has_tie(g, t, mask);
    });
    return std::none_of(tie.begin(), tie.end(), [](char c) { return c != 0; });
}

Graph perturb_and_verify(const Graph& raw, std::uint64_t seed, const PerturbOptions& opt) {
    // Sums along any path stay below n * 2^40 in the tiebreak channel.
    if (raw.n() >= (1 << 22)) throw OverflowError("graph too large for the tiebreak channel");
    for (int attempt = 0; attempt < opt.attempts; ++attempt) {
        TiebreakGen gen(seed + static_cast<std::uint64_t>(attempt));
        Graph g = raw;
        auto ids = g.edge_ids();
        for (EdgeId id : ids) g.set_weight(id, gen.weight(raw.edge(id).w.base));
        if (!verify_unique(g, nullptr, opt.threads)) continue;

        std::vector<EdgeId> sample = ids;
        std::mt19937_64 pick(seed ^ 0x9e3779b97f4a7c15ULL);
        std::shuffle(sample.begin(), sample.end(), pick);
        if (static_cast<int>(sample.size()) > opt.sampled_removals) sample.resize(static_cast<std::size_t>(opt.sampled_removals));
        bool ok = true;
        for (EdgeId f : sample) {
            EdgeMask mask(g.edge_slots(), {f});
            if (!verify_unique(g, &mask, opt.threads)) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw TieUnbreakableError("shortest paths still tied after " + std::to_string(opt.attempts) + " attempts");
}

}  // namespace faultpath
