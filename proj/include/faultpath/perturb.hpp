#pragma once

#include <cstdint>
#include <random>

#include "faultpath/graph.hpp"

namespace faultpath {

inline constexpr std::uint64_t kTiebreakRange = std::uint64_t{1} << 40;

// Deterministic stream of tiebreaks in [1, 2^40).
class TiebreakGen {
public:
    explicit TiebreakGen(std::uint64_t seed) : rng_(seed) {}
    std::uint64_t next() { return 1 + rng_() % (kTiebreakRange - 1); }
    CompositeWeight weight(std::uint64_t base) { return {base, next()}; }

private:
    std::mt19937_64 rng_;
};

struct PerturbOptions {
    int attempts = 8;
    int sampled_removals = 32;
    int threads = 1;
};

// True if every vertex pair has a unique shortest path in g minus mask.
bool verify_unique(const Graph& g, const EdgeMask* mask = nullptr, int threads = 1);

// Installs fresh tiebreaks on every edge, then checks uniqueness on g and on
// g minus each of a sampled set of single edges. Retries with seed+1.
Graph perturb_and_verify(const Graph& raw, std::uint64_t seed, const PerturbOptions& opt = {});

}  // namespace faultpath
