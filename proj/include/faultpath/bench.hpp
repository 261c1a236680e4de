#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace faultpath {

struct BenchConfig {
    std::string suite;  // frp3 | dso
    std::vector<int> sizes;
    std::uint64_t seed = 1;
    int reps = 3;
    int insertions = 8;  // dso suite: timed insertions per repetition
    int threads = 1;
};

struct BenchPoint {
    int n = 0;
    int hops = 0;              // frp3: edges on π(s,t)
    std::uint64_t work = 0;    // frp3: triples emitted; dso: insertions timed
    std::vector<double> seconds;  // one per repetition; dso: mean per insertion
    double median = 0;
};

struct BenchReport {
    std::string suite;
    std::string family;
    std::vector<BenchPoint> points;
    std::optional<double> slope;  // least squares of log time on log n
    std::optional<double> r2;
    std::string machine;
};

// Least-squares slope and R² of log y against log x; nullopt below two points.
std::optional<std::pair<double, double>> loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

std::string machine_description();

BenchReport run_bench(const BenchConfig& cfg);

}  // namespace faultpath
