#ifndef CLMP_RANDGEN_HPP
#define CLMP_RANDGEN_HPP

#include <cstdint>
#include <optional>

#include "clmp/graph.hpp"

namespace clmp {

/// Parameters of a random causal graph: over nodes fixed in order 1..n,
/// each forward slot (i, j), i < j, independently receives a directed edge
/// i->j with probability pd and a bidirected edge i<->j with probability
/// pb. Acyclic by construction.
struct RandomGraphSpec {
    int n = 1;
    double pd = 0.0;
    double pb = 0.0;
    std::uint64_t seed = 0;
};

/// splitmix64 step; used to derive child seeds from (base, a, b) streams.
std::uint64_t split_seed(std::uint64_t base, std::uint64_t a = 0, std::uint64_t b = 0);

/// Deterministic per seed (mt19937_64 seeded via splitmix64; one uniform
/// draw per slot per edge kind, directed first, slots in (i, j) row order).
/// Nodes are named V01..Vnn so the lexicographic default order matches the
/// generation order.
CausalGraph random_graph(const RandomGraphSpec& spec);

/// Variant with a fixed count of directed edges: md distinct forward slots
/// chosen uniformly, then Bernoulli(pb) bidirected edges as above.
CausalGraph random_graph_fixed_md(int n, int md, double pb, std::uint64_t seed);

/// Marks floor(u_percent * n / 100) uniformly chosen observed nodes as
/// latent (seeded) and projects. u_percent must lie in [0, 95].
CausalGraph project_latents_fraction(const CausalGraph& g, double u_percent, std::uint64_t seed);

}  // namespace clmp

#endif
