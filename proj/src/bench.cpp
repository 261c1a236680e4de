#include "faultpath/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <thread>

#include "faultpath/dso.hpp"
#include "faultpath/errors.hpp"
#include "faultpath/frp3.hpp"
#include "faultpath/generators.hpp"
#include "faultpath/perturb.hpp"
#include "faultpath/verify.hpp"

namespace faultpath {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2;
}

// Sparse random graphs: a spanning tree plus n/2 chords.
Graph frp3_instance(int n, std::uint64_t seed) { return perturb_and_verify(gen::random_connected(n, n / 2, 20, seed), seed); }

BenchPoint bench_frp3(int n, const BenchConfig& cfg) {
    const Graph g = frp3_instance(n, cfg.seed);
    const Vertex s = 0, t = far_target(g, s);
    BenchPoint p;
    p.n = n;
    for (int r = 0; r < cfg.reps; ++r) {
        const auto t0 = Clock::now();
        Frp3Solver solver(g, s, t, cfg.threads);
        const auto recs = solver.solve();
        p.seconds.push_back(since(t0));
        p.hops = solver.st().hops();
        p.work = recs.size();
    }
    return p;
}

BenchPoint bench_dso(int n, const BenchConfig& cfg) {
    const Graph g = verify_instance(n, n, cfg.seed);
    BenchPoint p;
    p.n = n;
    for (int r = 0; r < cfg.reps; ++r) {
        auto dso = IncrementalDso::build(g, cfg.threads);
        std::mt19937_64 rng(cfg.seed);
        TiebreakGen tb(cfg.seed + 1);
        double total = 0;
        int done = 0;
        while (done < cfg.insertions) {
            const auto x = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
            const auto y = static_cast<Vertex>(rng() % static_cast<std::uint64_t>(n));
            if (x == y || dso.graph().find_edge(x, y)) continue;
            const auto w = tb.weight(1 + rng() % 20);
            const auto t0 = Clock::now();
            dso.insert_edge(x, y, w, std::nullopt, cfg.threads);
            total += since(t0);
            ++done;
        }
        p.seconds.push_back(total / cfg.insertions);
        p.work = static_cast<std::uint64_t>(cfg.insertions);
    }
    return p;
}

}  // namespace

std::optional<std::pair<double, double>> loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t k = std::min(x.size(), y.size());
    if (k < 2) return std::nullopt;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double dx = std::log(x[i]) - mx, dy = std::log(y[i]) - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0) return std::nullopt;
    const double slope = sxy / sxx;
    const double r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return std::pair{slope, r2};
}

std::string machine_description() {
    std::string cpu = "unknown cpu";
    std::ifstream in("/proc/cpuinfo");
    for (std::string line; std::getline(in, line);)
        if (line.rfind("model name", 0) == 0) {
            cpu = line.substr(line.find(':') + 2);
            break;
        }
    std::string d = cpu + "; " + std::to_string(std::max(1u, std::thread::hardware_concurrency())) + " hardware threads";
#if defined(__clang__)
    d += "; clang " __clang_version__;
#elif defined(__GNUC__)
    d += "; gcc " __VERSION__;
#endif
    return d;
}

BenchReport run_bench(const BenchConfig& cfg) {
    if (cfg.suite != "frp3" && cfg.suite != "dso") throw InvalidArgumentError("unknown bench suite: " + cfg.suite);
    if (cfg.sizes.empty() || !std::is_sorted(cfg.sizes.begin(), cfg.sizes.end()) ||
        std::adjacent_find(cfg.sizes.begin(), cfg.sizes.end()) != cfg.sizes.end())
        throw InvalidArgumentError("sizes must be strictly ascending");
    if (cfg.sizes.front() < 4 || cfg.reps < 1 || cfg.insertions < 1) throw InvalidArgumentError("bench sizes must be >= 4 with reps >= 1");
    BenchReport rep;
    rep.suite = cfg.suite;
    rep.family = cfg.suite == "frp3" ? "random spanning tree + n/2 chords, weights 1..20, s = 0, t = farthest in hops"
                                     : "random spanning tree + n chords, weights 1..20, random non-edge insertions";
    rep.machine = machine_description();
    std::vector<double> xs, ys;
    for (int n : cfg.sizes) {
        BenchPoint p = cfg.suite == "frp3" ? bench_frp3(n, cfg) : bench_dso(n, cfg);
        p.median = median(p.seconds);
        xs.push_back(n);
        ys.push_back(p.median);
        rep.points.push_back(std::move(p));
    }
    if (auto fit = loglog_fit(xs, ys)) {
        rep.slope = fit->first;
        rep.r2 = fit->second;
    }
    return rep;
}

}  // namespace faultpath
