#include "clmp/randgen.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace clmp {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Uniform double in [0, 1) from the top 53 bits; keeps draws identical
// across standard libraries, unlike the distribution classes.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<std::string> numbered_names(int n) {
    int width = static_cast<int>(std::to_string(n).size());
    std::vector<std::string> names;
    names.reserve(n);
    for (int i = 1; i <= n; ++i) {
        std::string digits = std::to_string(i);
        names.push_back("V" + std::string(width - digits.size(), '0') + digits);
    }
    return names;
}

}  // namespace

std::uint64_t split_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    std::uint64_t state = base;
    std::uint64_t h = splitmix64(state);
    state ^= a;
    h ^= splitmix64(state);
    state ^= b;
    h ^= splitmix64(state);
    return h;
}

CausalGraph random_graph(const RandomGraphSpec& spec) {
    if (spec.n < 1) throw DomainError("need at least one node");
    if (spec.pd < 0 || spec.pd > 1 || spec.pb < 0 || spec.pb > 1)
        throw DomainError("edge probabilities must lie in [0, 1]");
    std::mt19937_64 rng(split_seed(spec.seed));
    std::vector<std::pair<int, int>> dir, bidir;
    for (int i = 0; i < spec.n; ++i) {
        for (int j = i + 1; j < spec.n; ++j) {
            if (uniform01(rng) < spec.pd) dir.emplace_back(i, j);
            if (uniform01(rng) < spec.pb) bidir.emplace_back(i, j);
        }
    }
    return CausalGraph(numbered_names(spec.n), std::move(dir), std::move(bidir));
}

CausalGraph random_graph_fixed_md(int n, int md, double pb, std::uint64_t seed) {
    if (n < 1) throw DomainError("need at least one node");
    const int slots = n * (n - 1) / 2;
    if (md < 0 || md > slots)
        throw DomainError("directed edge count must lie in [0, " + std::to_string(slots) + "]");
    if (pb < 0 || pb > 1) throw DomainError("edge probabilities must lie in [0, 1]");
    std::mt19937_64 rng(split_seed(seed));
    std::vector<std::pair<int, int>> all;
    all.reserve(slots);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) all.emplace_back(i, j);
    // Partial Fisher-Yates: the first md entries become the edge set.
    for (int k = 0; k < md; ++k) {
        int pick = k + static_cast<int>(uniform01(rng) * (slots - k));
        std::swap(all[k], all[pick]);
    }
    std::vector<std::pair<int, int>> dir(all.begin(), all.begin() + md);
    std::vector<std::pair<int, int>> bidir;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (uniform01(rng) < pb) bidir.emplace_back(i, j);
    return CausalGraph(numbered_names(n), std::move(dir), std::move(bidir));
}

CausalGraph project_latents_fraction(const CausalGraph& g, double u_percent, std::uint64_t seed) {
    if (u_percent < 0 || u_percent > 95)
        throw DomainError("latent percentage must lie in [0, 95]");
    std::vector<int> observed;
    for (int v = 0; v < g.node_count(); ++v)
        if (!g.is_latent(v)) observed.push_back(v);
    int k = static_cast<int>(std::floor(u_percent * g.node_count() / 100.0));
    if (k >= static_cast<int>(observed.size()) && k > 0)
        throw DomainError("all nodes would become latent");
    std::mt19937_64 rng(split_seed(seed));
    for (int i = 0; i < k; ++i) {
        int pick = i + static_cast<int>(uniform01(rng) *
                                        (static_cast<int>(observed.size()) - i));
        std::swap(observed[i], observed[pick]);
    }
    std::vector<bool> latent(g.node_count(), false);
    for (int v = 0; v < g.node_count(); ++v) latent[v] = g.is_latent(v);
    for (int i = 0; i < k; ++i) latent[observed[i]] = true;
    CausalGraph marked(g.names(), g.directed_edges(), g.bidirected_edges(), latent);
    return latent_project(marked);
}

}  // namespace clmp
