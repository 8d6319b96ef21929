#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "clmp/baselines.hpp"
#include "clmp/bench.hpp"
#include "clmp/ci_format.hpp"
#include "clmp/citest.hpp"
#include "clmp/dataset.hpp"
#include "clmp/enumerate.hpp"
#include "clmp/graph_io.hpp"
#include "clmp/randgen.hpp"
#include "clmp/separation.hpp"

namespace {

constexpr const char* kVersion = "clmp 1.0.0 (graph format v1, CI line format v1)";

// Exit codes: 0 success/consistent, 1 violation found, 2 usage error,
// 3 input error, 4 cap or timeout refusal, 130 interrupted.
enum : int { kOk = 0, kViolation = 1, kUsage = 2, kInput = 3, kRefused = 4, kInterrupted = 130 };

std::atomic<bool> g_interrupted{false};

void handle_sigint(int) { g_interrupted.store(true); }

std::function<bool()> interrupt_flag() {
    return [] { return g_interrupted.load(); };
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(text);
    while (std::getline(ss, cur, ','))
        if (!cur.empty()) out.push_back(cur);
    return out;
}

clmp::NodeSet lookup_set(const clmp::CausalGraph& g, const std::string& csv) {
    std::vector<int> out;
    for (const auto& name : split_commas(csv)) {
        auto idx = g.index_of(name);
        if (!idx) throw clmp::DomainError("unknown node " + name);
        out.push_back(*idx);
    }
    return clmp::NodeSet(std::move(out));
}

clmp::VariableOrder resolve_order(const clmp::ParsedGraph& pg, const std::string& order_csv) {
    if (order_csv.empty()) return pg.order_or_default();
    std::vector<int> seq;
    for (const auto& name : split_commas(order_csv)) {
        auto idx = pg.graph.index_of(name);
        if (!idx) throw clmp::DomainError("unknown node " + name + " in --order");
        seq.push_back(*idx);
    }
    clmp::VariableOrder order(pg.graph, std::move(seq));
    if (!clmp::validate_order(pg.graph, order))
        throw clmp::DomainError("--order is not topological for the graph");
    return order;
}

int env_cap(const char* var, int fallback) {
    const char* v = std::getenv(var);
    if (!v || !*v) return fallback;
    return std::atoi(v);
}

// Loads a graph file and projects away any latent nodes; an embedded order
// survives the projection by name.
clmp::ParsedGraph load_projected(const std::string& path) {
    auto pg = clmp::load_graph_file(path);
    if (!pg.graph.has_latents()) return pg;
    clmp::CausalGraph projected = clmp::latent_project(pg.graph);
    std::optional<std::vector<int>> order;
    if (pg.order) {
        std::vector<int> seq;
        for (int v : *pg.order) seq.push_back(*projected.index_of(pg.graph.name(v)));
        order = std::move(seq);
    }
    return clmp::ParsedGraph{std::move(projected), std::move(order)};
}

int run_listci(const std::string& graph_path, const std::string& order_csv,
               const std::string& format, bool count_only) {
    auto pg = load_projected(graph_path);
    const clmp::CausalGraph& g = pg.graph;
    clmp::VariableOrder order = resolve_order(pg, order_csv);

    long long count = 0;
    clmp::EnumerateOptions opts;
    opts.interrupted = interrupt_flag();
    bool completed = clmp::list_ci(g, order, [&](const clmp::CiStatement& s) {
        ++count;
        if (count_only) return;
        if (format == "json") std::cout << clmp::ci_line_json(g, s) << '\n' << std::flush;
        else std::cout << clmp::ci_line_text(g, s) << '\n' << std::flush;
    }, opts);
    if (!completed) return kInterrupted;
    if (count_only) std::cout << count << '\n';
    return kOk;
}

int run_listgmp(const std::string& graph_path, const std::string& format, bool count_only,
                int cap) {
    auto pg = load_projected(graph_path);
    const clmp::CausalGraph& g = pg.graph;
    long long count = 0;
    clmp::GmpOptions opts;
    opts.cap = cap;
    opts.interrupted = interrupt_flag();
    bool completed = clmp::list_gmp(g, [&](const clmp::GmpStatement& s) {
        ++count;
        if (count_only) return;
        if (format == "json") std::cout << clmp::gmp_line_json(g, s) << '\n';
        else std::cout << clmp::gmp_line_text(g, s) << '\n';
    }, opts);
    if (!completed) return kInterrupted;
    if (count_only) std::cout << count << '\n';
    return kOk;
}

int run_listcibf(const std::string& graph_path, const std::string& order_csv,
                 const std::string& format, bool count_only, bool include_vacuous, int cap) {
    auto pg = load_projected(graph_path);
    const clmp::CausalGraph& g = pg.graph;
    clmp::VariableOrder order = resolve_order(pg, order_csv);
    long long count = 0;
    clmp::ListCiBfOptions opts;
    opts.cap = cap;
    opts.interrupted = interrupt_flag();
    bool completed = clmp::list_ci_bf(g, order, [&](const clmp::CiStatement& s) {
        if (s.w.empty() && !include_vacuous) return;
        ++count;
        if (count_only) return;
        if (format == "json") std::cout << clmp::ci_line_json(g, s) << '\n';
        else std::cout << clmp::ci_line_text(g, s) << '\n';
    }, opts);
    if (!completed) return kInterrupted;
    if (count_only) std::cout << count << '\n';
    return kOk;
}

int run_dsep(const std::string& graph_path, const std::string& xs, const std::string& ys,
             const std::string& zs) {
    auto pg = clmp::load_graph_file(graph_path);
    const clmp::CausalGraph& g = pg.graph;
    clmp::SeparationQuery q{lookup_set(g, xs), lookup_set(g, ys), lookup_set(g, zs)};
    if (clmp::d_separated(g, q)) {
        std::cout << "separated\n";
        return kOk;
    }
    std::cout << "connected\n";
    return kViolation;
}

int run_project(const std::string& graph_path, const std::string& out_path, double u,
                bool u_given, std::uint64_t seed) {
    auto pg = clmp::load_graph_file(graph_path);
    clmp::CausalGraph projected = u_given ? clmp::project_latents_fraction(pg.graph, u, seed)
                                          : clmp::latent_project(pg.graph);
    std::optional<std::vector<int>> order;
    std::string text = clmp::serialize_graph_text(projected, order);
    if (out_path.empty()) std::cout << text;
    else {
        clmp::save_graph_file(out_path, projected, order);
        std::cerr << "wrote " << out_path << "\n";
    }
    return kOk;
}

int run_randgen(int n, double pd, double pb, std::uint64_t seed, const std::string& out_path) {
    clmp::CausalGraph g = clmp::random_graph({n, pd, pb, seed});
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    if (out_path.empty()) std::cout << clmp::serialize_graph_text(g, order);
    else {
        clmp::save_graph_file(out_path, g, order);
        std::cerr << "wrote " << out_path << "\n";
    }
    return kOk;
}

int run_bench(const std::string& grid_path, const std::string& out_path) {
    std::ifstream in(grid_path);
    if (!in) throw clmp::ParseError("cannot open " + grid_path);
    std::stringstream buf;
    buf << in.rdbuf();
    clmp::BenchConfig config = clmp::parse_bench_grid_json(buf.str());

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw clmp::ParseError("cannot write " + out_path);
        out = &file;
    }
    *out << clmp::bench_csv_header();
    clmp::bench_sweep(config, [&](const clmp::BenchRecord& r) {
        *out << clmp::bench_record_csv(r) << std::flush;
    });
    if (!out_path.empty()) std::cerr << "wrote " << out_path << "\n";
    return kOk;
}

int run_citest(const std::string& graph_path, const std::string& data_path,
               const std::string& order_csv, double alpha, const std::string& format) {
    auto pg = load_projected(graph_path);
    const clmp::CausalGraph& g = pg.graph;
    clmp::VariableOrder order = resolve_order(pg, order_csv);
    clmp::Dataset data = clmp::load_csv(data_path);
    if (data.dropped_row_count() > 0)
        std::cerr << "dropped " << data.dropped_row_count() << " rows with missing cells\n";

    clmp::ModelReport report = clmp::test_model(g, order, data, alpha);
    if (format == "json") {
        for (const auto& r : report.results) {
            std::ostringstream line;
            line << "{\"ci\":" << clmp::ci_line_json(g, r.statement);
            if (r.tested()) {
                line << ",\"method\":\""
                     << (r.method == clmp::TestMethod::fisher_z ? "fisher_z" : "chi_square")
                     << "\",\"statistic\":" << r.outcome.statistic
                     << ",\"p\":" << r.outcome.p_value
                     << ",\"verdict\":\"" << (r.violated ? "violated" : "consistent") << "\"";
                if (r.outcome.low_count_warning) line << ",\"low_count_warning\":true";
            } else {
                std::string msg = r.error;
                for (auto& c : msg)
                    if (c == '"') c = '\'';
                line << ",\"error\":\"" << msg << "\"";
            }
            line << "}";
            std::cout << line.str() << '\n' << std::flush;
        }
    } else {
        for (const auto& r : report.results) {
            std::cout << std::left << std::setw(64) << clmp::ci_line_text(g, r.statement) << "  ";
            if (r.tested()) {
                std::cout << "p=" << std::fixed << std::setprecision(3) << r.outcome.p_value
                          << std::defaultfloat << "  "
                          << (r.violated ? "violated" : "consistent")
                          << (r.method == clmp::TestMethod::chi_square ? "  [chi-square]"
                                                                       : "  [fisher-z]");
                if (r.outcome.low_count_warning) std::cout << "  (low expected counts)";
            } else {
                std::cout << "error: " << r.error;
            }
            std::cout << '\n' << std::flush;
        }
    }
    if (report.results.empty()) std::cout << "0 CIs to test\n";
    else
        std::cerr << report.consistent << " of " << report.tested << " tested CIs consistent at alpha="
                  << alpha << (report.errored ? " (" + std::to_string(report.errored) + " untestable)"
                                              : "")
                  << "\n";
    return report.any_violation() ? kViolation : kOk;
}

int run_verify(const std::string& graph_path, const std::string& order_csv) {
    auto pg = load_projected(graph_path);
    const clmp::CausalGraph& g = pg.graph;
    clmp::VariableOrder order = resolve_order(pg, order_csv);
    const int n = g.node_count();
    bool all_ok = true;
    auto report = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        all_ok = all_ok && ok;
    };

    std::vector<clmp::CiStatement> cis;
    clmp::list_ci(g, order, [&](const clmp::CiStatement& s) { cis.push_back(s); });

    clmp::DSepOracle oracle(g);
    bool sound = true;
    for (const auto& s : cis)
        if (!oracle.separated(clmp::NodeSet{s.x}, s.w, s.z)) sound = false;
    report("every emitted CI is d-separated", sound);

    std::set<clmp::CiStatement> unique(cis.begin(), cis.end());
    report("no duplicate emissions", unique.size() == cis.size());

    int s_max = clmp::largest_c_component_size(g);
    bool bounded = s_max >= 63 ||
                   cis.size() <= static_cast<std::size_t>(n) * (std::uint64_t{1} << s_max);
    report("emission count within n*2^s", bounded);

    if (n <= 20) {
        std::set<clmp::CiStatement> bf;
        clmp::list_ci_bf(g, order, [&](const clmp::CiStatement& s) {
            if (!s.w.empty()) bf.insert(s);
        });
        report("matches ordered-local-Markov brute force", bf == unique);
    } else {
        std::cout << "SKIP brute-force cross-check (graph above 20 nodes)\n";
    }

    if (n <= 16) {
        std::set<clmp::CiStatement> expect;
        for (int x : order.sequence())
            for (const auto& ac : clmp::brute_force_acs(g, order, x)) {
                clmp::CiStatement s = clmp::ci_from_ac(g, order, x, ac);
                if (!s.w.empty()) expect.insert(s);
            }
        report("matches exhaustive ancestral c-component walk", expect == unique);
    } else {
        std::cout << "SKIP ancestral c-component walk (graph above 16 nodes)\n";
    }

    return all_ok ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
    std::signal(SIGINT, handle_sigint);

    CLI::App app{"Conditional-independence listing and model testing for causal graphs"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string graph_path, data_path, order_csv, format = "text", out_path, grid_path;
    std::string xs, ys, zs;
    bool count_only = false, include_vacuous = false;
    double alpha = 0.05, u_percent = 0.0, pd = 0.0, pb = 0.0;
    int n = 1;
    std::uint64_t seed = 0;
    int gmp_cap = env_cap("CLMP_GMP_CAP", 14);
    int cibf_cap = env_cap("CLMP_CIBF_CAP", 20);

    auto* listci = app.add_subcommand("listci", "List the CI basis of a graph");
    listci->add_option("--graph", graph_path)->required();
    listci->add_option("--order", order_csv, "Comma-separated node names");
    listci->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    listci->add_flag("--count-only", count_only);

    auto* listgmp = app.add_subcommand("listgmp", "List every CI of the global Markov property");
    listgmp->add_option("--graph", graph_path)->required();
    listgmp->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    listgmp->add_flag("--count-only", count_only);
    listgmp->add_option("--cap", gmp_cap, "Node-count cap before refusing");

    auto* listcibf = app.add_subcommand("listcibf", "Brute-force ordered local Markov listing");
    listcibf->add_option("--graph", graph_path)->required();
    listcibf->add_option("--order", order_csv);
    listcibf->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
    listcibf->add_flag("--count-only", count_only);
    listcibf->add_flag("--include-vacuous", include_vacuous);
    listcibf->add_option("--cap", cibf_cap);

    auto* dsep = app.add_subcommand("dsep", "Test d-separation");
    dsep->add_option("--graph", graph_path)->required();
    dsep->add_option("--x", xs)->required();
    dsep->add_option("--y", ys)->required();
    dsep->add_option("--z", zs);

    auto* project = app.add_subcommand("project", "Project latent nodes away");
    project->add_option("--graph", graph_path)->required();
    project->add_option("-o,--out", out_path);
    auto* u_opt = project->add_option("--u", u_percent, "Percent of nodes to mark latent");
    auto* pseed_opt = project->add_option("--seed", seed);
    u_opt->needs(pseed_opt);

    auto* randgen = app.add_subcommand("randgen", "Generate a seeded random graph");
    randgen->add_option("--n", n)->required();
    randgen->add_option("--pd", pd)->required();
    randgen->add_option("--pb", pb)->required();
    randgen->add_option("--seed", seed)->required();
    randgen->add_option("-o,--out", out_path);

    auto* bench = app.add_subcommand("bench", "Sweep random graphs and record timings");
    bench->add_option("--grid", grid_path)->required();
    bench->add_option("-o,--out", out_path);

    auto* citest = app.add_subcommand("citest", "Test a graph's CI basis against data");
    citest->add_option("--graph", graph_path)->required();
    citest->add_option("--data", data_path)->required();
    citest->add_option("--order", order_csv);
    citest->add_option("--alpha", alpha);
    citest->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    auto* verify = app.add_subcommand("verify", "Cross-check the listing on one graph");
    verify->add_option("--graph", graph_path)->required();
    verify->add_option("--order", order_csv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << app.help() << "\n";
        return kUsage;
    }

    try {
        if (app.got_subcommand(listci)) return run_listci(graph_path, order_csv, format, count_only);
        if (app.got_subcommand(listgmp)) return run_listgmp(graph_path, format, count_only, gmp_cap);
        if (app.got_subcommand(listcibf))
            return run_listcibf(graph_path, order_csv, format, count_only, include_vacuous,
                                cibf_cap);
        if (app.got_subcommand(dsep)) return run_dsep(graph_path, xs, ys, zs);
        if (app.got_subcommand(project))
            return run_project(graph_path, out_path, u_percent, u_opt->count() > 0, seed);
        if (app.got_subcommand(randgen)) return run_randgen(n, pd, pb, seed, out_path);
        if (app.got_subcommand(bench)) return run_bench(grid_path, out_path);
        if (app.got_subcommand(citest))
            return run_citest(graph_path, data_path, order_csv, alpha, format);
        if (app.got_subcommand(verify)) return run_verify(graph_path, order_csv);
    } catch (const clmp::CapExceeded& e) {
        std::cerr << e.what() << "\n";
        return kRefused;
    } catch (const clmp::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kInput;
    } catch (const clmp::DomainError& e) {
        std::cerr << e.what() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
    return kUsage;
}
