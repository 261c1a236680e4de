#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "faultpath/graph.hpp"

namespace faultpath {

// One subject answer checked against the brute-force oracle. `query` is a
// JSON object text naming the instance and the failed edges.
struct OracleReport {
    std::string suite;
    std::string query;
    Length oracle;
    Length subject;
    bool match = false;
};

struct VerifyConfig {
    std::string suite;  // dso | frp2 | frp3 | ssrp | offline
    int n = 12;
    int seeds = 5;
    std::uint64_t first_seed = 1;
    int extra = -1;     // chords per instance; -1 means n
    int steps = -1;     // offline timeline length; -1 means 2n
    int threads = 1;
};

struct VerifySummary {
    int instances = 0;
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    bool ok() const { return mismatches == 0; }
};

using ReportSink = std::function<void(const OracleReport&)>;

const std::vector<std::string>& verify_suites();

// Seeded instance of the verification family: random connected graph with
// verified unique shortest paths.
Graph verify_instance(int n, int extra, std::uint64_t seed);

// Vertex with the most hops on its shortest path from s; smallest id on ties.
Vertex far_target(const Graph& g, Vertex s);

// Runs every check of the suite and reports each comparison to sink.
VerifySummary run_verify(const VerifyConfig& cfg, const ReportSink& sink);

}  // namespace faultpath
