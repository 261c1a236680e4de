#pragma once

#include <cstdint>

#include "faultpath/graph.hpp"

namespace faultpath::gen {

// Random spanning tree plus `extra` random non-parallel chords; base weights
// uniform in [1, max_w]. Tiebreaks are zero (run perturb_and_verify).
Graph random_connected(int n, int extra, std::uint64_t max_w, std::uint64_t seed);
Graph path_graph(int n, std::uint64_t w);
Graph cycle(int n, std::uint64_t w);
// rows x cols grid with random weights; many near-optimal detours.
Graph grid(int rows, int cols, std::uint64_t max_w, std::uint64_t seed);

}  // namespace faultpath::gen
