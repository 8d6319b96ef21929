#ifndef CLMP_TESTS_SUPPORT_HPP
#define CLMP_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "clmp/graph.hpp"
#include "clmp/graph_io.hpp"
#include "clmp/node_set.hpp"

namespace clmp_tests {

inline std::string fixture_path(const std::string& name) {
    return std::string(CLMP_FIXTURE_DIR) + "/" + name;
}

inline clmp::ParsedGraph load_fixture(const std::string& name) {
    return clmp::load_graph_file(fixture_path(name));
}

inline clmp::NodeSet named(const clmp::CausalGraph& g, std::initializer_list<const char*> names) {
    std::vector<int> idx;
    for (const char* n : names) idx.push_back(*g.index_of(n));
    return clmp::NodeSet(std::move(idx));
}

// Path-enumeration d-separation check, independent of the Bayes-Ball
// implementation: walks every simple path and applies the blocking
// criterion node by node. Exponential; small graphs only.
class NaiveDsep {
public:
    explicit NaiveDsep(const clmp::CausalGraph& g) : g_(g) {
        const int n = g.node_count();
        edges_.assign(n, {});
        for (auto [a, b] : g.directed_edges()) {
            edges_[a].push_back({b, false, true});
            edges_[b].push_back({a, true, false});
        }
        for (auto [a, b] : g.bidirected_edges()) {
            edges_[a].push_back({b, true, true});
            edges_[b].push_back({a, true, true});
        }
    }

    bool separated(const clmp::NodeSet& x, const clmp::NodeSet& y, const clmp::NodeSet& z) const {
        const int n = g_.node_count();
        std::vector<char> in_z(n, 0), in_y(n, 0), anc_z(n, 0), visited(n, 0);
        for (int v : z) in_z[v] = 1;
        for (int v : y) in_y[v] = 1;
        for (int v : clmp::ancestors(g_, z)) anc_z[v] = 1;
        for (int s : x) {
            std::fill(visited.begin(), visited.end(), 0);
            visited[s] = 1;
            if (dfs(s, std::nullopt, in_z, in_y, anc_z, visited)) return false;
        }
        return true;
    }

private:
    struct Edge {
        int to;
        bool head_here, head_there;
    };

    bool dfs(int u, std::optional<bool> arrived_head_in, const std::vector<char>& in_z,
             const std::vector<char>& in_y, const std::vector<char>& anc_z,
             std::vector<char>& visited) const {
        for (const Edge& e : edges_[u]) {
            if (visited[e.to]) continue;
            if (arrived_head_in.has_value()) {
                bool collider = *arrived_head_in && e.head_here;
                bool blocked = collider ? !anc_z[u] : in_z[u] != 0;
                if (blocked) continue;
            }
            if (in_y[e.to]) return true;
            visited[e.to] = 1;
            if (dfs(e.to, e.head_there, in_z, in_y, anc_z, visited)) return true;
            visited[e.to] = 0;
        }
        return false;
    }

    const clmp::CausalGraph& g_;
    std::vector<std::vector<Edge>> edges_;
};

// Deterministic standard normals (Box-Muller over raw mt19937_64 bits, so
// results do not depend on the standard library's distributions).
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 1e-300);
        u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Samples rows from a linear-Gaussian structural model faithful to the
// graph: each node is a weighted sum of its parents plus noise, and each
// bidirected edge contributes one shared latent term to both endpoints.
// Returns one column per node, indexed like the graph.
inline std::vector<std::vector<double>> sample_linear_sem(const clmp::CausalGraph& g,
                                                          std::size_t rows, std::uint64_t seed) {
    NormalSampler normals(seed * 2654435761u + 17);
    std::mt19937_64 wrng(seed);
    auto weight = [&] {
        double w = 0.7 + 0.6 * (static_cast<double>(wrng() >> 11) * 0x1.0p-53);
        return (wrng() & 1) ? w : -w;
    };
    std::vector<double> dir_w;
    for (std::size_t i = 0; i < g.directed_edges().size(); ++i) dir_w.push_back(weight());
    std::vector<double> bidir_w_a, bidir_w_b;
    for (std::size_t i = 0; i < g.bidirected_edges().size(); ++i) {
        bidir_w_a.push_back(weight());
        bidir_w_b.push_back(weight());
    }

    clmp::VariableOrder order = clmp::default_order(g);
    std::vector<std::vector<double>> cols(g.node_count(), std::vector<double>(rows, 0.0));
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<double> latent(g.bidirected_edges().size());
        for (auto& l : latent) l = normals();
        for (int k = 0; k < order.size(); ++k) {
            int v = order.at(k);
            double val = normals();
            for (std::size_t e = 0; e < g.directed_edges().size(); ++e)
                if (g.directed_edges()[e].second == v)
                    val += dir_w[e] * cols[g.directed_edges()[e].first][r];
            for (std::size_t e = 0; e < g.bidirected_edges().size(); ++e) {
                if (g.bidirected_edges()[e].first == v) val += bidir_w_a[e] * latent[e];
                if (g.bidirected_edges()[e].second == v) val += bidir_w_b[e] * latent[e];
            }
            cols[v][r] = val;
        }
    }
    return cols;
}

inline std::string to_csv(const clmp::CausalGraph& g,
                          const std::vector<std::vector<double>>& cols) {
    std::string out;
    for (int v = 0; v < g.node_count(); ++v) {
        if (v) out += ",";
        out += g.name(v);
    }
    out += "\n";
    if (g.node_count() == 0) return out;
    for (std::size_t r = 0; r < cols[0].size(); ++r) {
        for (int v = 0; v < g.node_count(); ++v) {
            if (v) out += ",";
            out += std::to_string(cols[v][r]);
        }
        out += "\n";
    }
    return out;
}

// Bidirected clique over n nodes, no directed edges.
inline clmp::CausalGraph bidirected_clique(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("A" + std::to_string(i));
    std::vector<std::pair<int, int>> bidir;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) bidir.emplace_back(i, j);
    return clmp::CausalGraph(std::move(names), {}, std::move(bidir));
}

inline clmp::CausalGraph bidirected_path(int n) {
    std::vector<std::string> names;
    int width = static_cast<int>(std::to_string(n).size());
    for (int i = 1; i <= n; ++i) {
        std::string d = std::to_string(i);
        names.push_back("V" + std::string(width - d.size(), '0') + d);
    }
    std::vector<std::pair<int, int>> bidir;
    for (int i = 0; i + 1 < n; ++i) bidir.emplace_back(i, i + 1);
    return clmp::CausalGraph(std::move(names), {}, std::move(bidir));
}

inline clmp::CausalGraph empty_graph(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("N" + std::to_string(i));
    return clmp::CausalGraph(std::move(names), {}, {});
}

}  // namespace clmp_tests

#endif
