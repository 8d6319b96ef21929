#include "clmp/bench.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "clmp/enumerate.hpp"

namespace clmp {

BenchRecord bench_run(const CausalGraph& g, double timeout_ms) {
    using clock = std::chrono::steady_clock;
    BenchRecord rec;
    rec.n = g.node_count();
    rec.md = g.directed_edge_count();
    rec.mu = g.bidirected_edge_count();
    rec.s = largest_c_component_size(g);

    VariableOrder order = default_order(g);
    auto start = clock::now();
    auto last = start;
    auto elapsed_ms = [&](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };

    EnumerateOptions opts;
    opts.interrupted = [&] { return elapsed_ms(start, clock::now()) > timeout_ms; };
    bool completed = list_ci(g, order, [&](const CiStatement&) {
        auto now = clock::now();
        rec.delays_ms.push_back(elapsed_ms(last, now));
        last = now;
        ++rec.ci_count;
    }, opts);

    auto end = clock::now();
    rec.delays_ms.push_back(elapsed_ms(last, end));  // terminal gap
    rec.total_ms = elapsed_ms(start, end);
    rec.timed_out = !completed;
    rec.max_delay_ms = 0;
    for (double d : rec.delays_ms) rec.max_delay_ms = std::max(rec.max_delay_ms, d);
    return rec;
}

void bench_sweep(const BenchConfig& config, const BenchSink& sink) {
    const int jobs = static_cast<int>(config.cells.size()) * config.samples;
    if (jobs == 0) return;
    std::vector<BenchRecord> records(jobs);
    std::vector<char> done(jobs, 0);
    std::mutex mtx;
    std::condition_variable cv;
    std::atomic<int> next{0};

    auto work = [&] {
        for (;;) {
            int j = next.fetch_add(1);
            if (j >= jobs) return;
            int cell = j / config.samples;
            int sample = j % config.samples;
            const BenchCell& c = config.cells[cell];
            std::uint64_t run_seed = split_seed(config.seed, cell, sample);
            CausalGraph g = c.md ? random_graph_fixed_md(c.n, *c.md, c.pb, run_seed)
                                 : random_graph({c.n, c.pd.value_or(0.0), c.pb, run_seed});
            BenchRecord rec = bench_run(g, config.timeout_ms);
            rec.cell_index = cell;
            rec.sample_index = sample;
            rec.pd = c.pd;
            rec.pb = c.pb;
            rec.run_seed = run_seed;
            {
                std::lock_guard<std::mutex> lock(mtx);
                records[j] = std::move(rec);
                done[j] = 1;
            }
            cv.notify_all();
        }
    };

    int workers = std::max(1, config.workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);

    // Emit in deterministic (cell, sample) order as results land.
    for (int j = 0; j < jobs; ++j) {
        std::unique_lock<std::mutex> lock(mtx);
        cv.wait(lock, [&] { return done[j] != 0; });
        BenchRecord rec = std::move(records[j]);
        lock.unlock();
        sink(rec);
    }
    for (auto& t : pool) t.join();
}

std::string bench_csv_header() {
    return "# prng=mt19937_64 seeded by splitmix64; run_seed=split_seed(seed,cell,sample); "
           "one uniform draw per forward slot per edge kind\n"
           "n,md,mu,s,pd,pb,seed,ci_count,total_ms,max_delay_ms,timed_out\n";
}

std::string bench_record_csv(const BenchRecord& r) {
    std::ostringstream out;
    out << r.n << ',' << r.md << ',' << r.mu << ',' << r.s << ',';
    if (r.pd) out << *r.pd;
    out << ',' << r.pb << ',' << r.run_seed << ',' << r.ci_count << ',' << r.total_ms << ','
        << r.max_delay_ms << ',' << (r.timed_out ? 1 : 0) << '\n';
    return out.str();
}

BenchConfig parse_bench_grid_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid grid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("grid must be a JSON object");
    if (!doc.contains("n") || !doc.contains("pb"))
        throw ParseError("grid needs \"n\" and \"pb\" arrays");
    if (doc.contains("pd") == doc.contains("md"))
        throw ParseError("grid needs exactly one of \"pd\" or \"md\"");

    auto as_list = [&](const char* key) {
        std::vector<double> out;
        if (doc[key].is_array())
            for (const auto& v : doc[key]) out.push_back(v.get<double>());
        else out.push_back(doc[key].get<double>());
        return out;
    };

    BenchConfig config;
    for (double n : as_list("n")) {
        if (doc.contains("pd")) {
            for (double pd : as_list("pd"))
                for (double pb : as_list("pb")) {
                    BenchCell c;
                    c.n = static_cast<int>(n);
                    c.pd = pd;
                    c.pb = pb;
                    config.cells.push_back(c);
                }
        } else {
            for (double md : as_list("md"))
                for (double pb : as_list("pb")) {
                    BenchCell c;
                    c.n = static_cast<int>(n);
                    c.md = static_cast<int>(md);
                    c.pb = pb;
                    config.cells.push_back(c);
                }
        }
    }
    config.samples = doc.value("samples", 1);
    config.seed = doc.value("seed", std::uint64_t{0});
    config.timeout_ms = doc.value("timeout_ms", 60000.0);
    config.workers = doc.value("workers", 1);
    if (config.samples < 1) throw ParseError("samples must be positive");
    return config;
}

}  // namespace clmp
