#ifndef CLMP_BENCH_HPP
#define CLMP_BENCH_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clmp/randgen.hpp"

namespace clmp {

/// One sweep cell: the directed part is either Bernoulli(pd) or a fixed
/// edge count md; exactly one of the two must be set.
struct BenchCell {
    int n = 1;
    std::optional<double> pd;
    std::optional<int> md;
    double pb = 0.0;
};

struct BenchConfig {
    std::vector<BenchCell> cells;
    int samples = 1;
    std::uint64_t seed = 0;
    double timeout_ms = 60000.0;
    int workers = 1;
};

struct BenchRecord {
    int cell_index = 0, sample_index = 0;
    int n = 0;
    int md = 0, mu = 0, s = 0;  // realized directed/bidirected counts, largest c-component
    std::optional<double> pd;
    double pb = 0.0;
    std::uint64_t run_seed = 0;
    long long ci_count = 0;
    double total_ms = 0.0, max_delay_ms = 0.0;
    bool timed_out = false;
    std::vector<double> delays_ms;  // per-emission gaps, terminal gap included
};

using BenchSink = std::function<void(const BenchRecord&)>;

/// Runs every (cell, sample) pair: generates the seeded graph, streams
/// list_ci with delay instrumentation, and emits one record per run in
/// deterministic (cell, sample) order. Timeouts mark the record without
/// stopping the sweep. Per-run seed: split_seed(config.seed, cell, sample).
void bench_sweep(const BenchConfig& config, const BenchSink& sink);

/// Single instrumented run on an explicit graph; used by bench_sweep and
/// directly by tests.
BenchRecord bench_run(const CausalGraph& g, double timeout_ms);

/// Leading comment line naming the generator plus the CSV column header.
std::string bench_csv_header();
std::string bench_record_csv(const BenchRecord& r);

/// Grid JSON: {"n":[...], "pd":[...] or "md":[...], "pb":[...],
/// "samples":N, "timeout_ms":T, "seed":S, "workers":W}. Cells are the cross
/// product of n, the directed-part list, and pb, in that nesting order.
BenchConfig parse_bench_grid_json(const std::string& text);

}  // namespace clmp

#endif
