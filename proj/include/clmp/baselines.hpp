#ifndef CLMP_BASELINES_HPP
#define CLMP_BASELINES_HPP

#include <cstdint>
#include <functional>
#include <set>
#include <string>

#include "clmp/enumerate.hpp"
#include "clmp/graph.hpp"

namespace clmp {

/// A conditional independence between two node sets given a third.
struct GmpStatement {
    NodeSet x, y, z;

    friend bool operator==(const GmpStatement& a, const GmpStatement& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
    friend bool operator<(const GmpStatement& a, const GmpStatement& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    }
};

using GmpSink = std::function<void(const GmpStatement&)>;

struct GmpOptions {
    int cap = 14;
    bool force = false;
    std::function<bool()> interrupted;
};

/// Number of candidate triples (disjoint X,Y,Z with X,Y nonempty, {X,Y}
/// unordered) over n nodes: (4^n + 2^n)/2 - 3^n. Requires n <= 31.
std::uint64_t gmp_candidate_count(int n);

/// Enumerates every candidate triple and emits those where z d-separates x
/// from y. The pair {x, y} is canonicalized so that x's sorted name sequence
/// compares lexicographically below y's. Refuses graphs above the cap
/// (CapExceeded, message reports the candidate count) unless force is set.
/// Returns false iff interrupted.
bool list_gmp(const CausalGraph& g, const GmpSink& sink, const GmpOptions& options = {});

/// Markov blanket of x with respect to the ancestral set s: the parents,
/// within the subgraph on s, of x's c-component there, minus x. Throws if s
/// is not ancestral in g or x is not in s.
NodeSet markov_blanket(const CausalGraph& g, int x, const NodeSet& s);

/// True iff s is the unique maximal ancestral set inducing its Markov
/// blanket. g is interpreted as the graph on x's prefix V^{<=X}; the
/// maximality test compares s against nodes(g) minus the descendants of the
/// blocked spouses.
bool is_maximal_ancestral(const CausalGraph& g, int x, const NodeSet& s);

struct ListCiBfOptions {
    int cap = 20;
    std::function<bool()> interrupted;
};

/// Ordered-local-Markov brute force: for each x, walks every ancestral set
/// s with x in s inside the prefix (generated by backtracking over
/// ancestrally-closed subsets) and emits the CI of each maximal one,
/// including vacuous statements. Returns false iff interrupted.
bool list_ci_bf(const CausalGraph& g, const VariableOrder& order, const CiSink& sink,
                const ListCiBfOptions& options = {});

/// All distinct ancestral c-components relative to x, by exhaustive walk of
/// the ancestral sets. Test oracle; capped at 16 nodes.
std::set<NodeSet> brute_force_acs(const CausalGraph& g, const VariableOrder& order, int x);

}  // namespace clmp

#endif
