#ifndef CLMP_ENUMERATE_HPP
#define CLMP_ENUMERATE_HPP

#include <functional>
#include <optional>

#include "clmp/graph.hpp"
#include "clmp/node_set.hpp"

namespace clmp {

/// One conditional-independence statement: x independent of the witness set
/// w given the conditioning set z. The three parts are pairwise disjoint;
/// w empty means the statement is vacuous.
struct CiStatement {
    int x;
    NodeSet w, z;

    friend bool operator==(const CiStatement& a, const CiStatement& b) {
        return a.x == b.x && a.w == b.w && a.z == b.z;
    }
    friend bool operator<(const CiStatement& a, const CiStatement& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.w != b.w) return a.w < b.w;
        return a.z < b.z;
    }
};

using CiSink = std::function<void(const CiStatement&)>;

/// Which node-set representation the enumeration kernels use. The packed
/// single-word path applies to graphs with at most 64 nodes and must behave
/// identically to the general path (differential-tested).
enum class SetRepr { automatic, packed64, general };

struct EnumerateOptions {
    /// Polled between search-tree nodes; return true to stop early.
    std::function<bool()> interrupted;
    SetRepr representation = SetRepr::automatic;
};

/// The conditional independence induced by an ancestral c-component c
/// relative to x: with s+ the maximal ancestral set for c's Markov blanket,
/// w = s+ \ Pa(c) and z = Pa(c) \ {x}. Throws DomainError if c is not an
/// ancestral c-component relative to x under the order.
CiStatement ci_from_ac(const CausalGraph& g, const VariableOrder& order, int x, const NodeSet& c);

/// True iff the witness set of ci_from_ac is nonempty. O(n+m).
bool is_admissible(const CausalGraph& g, const VariableOrder& order, int x, const NodeSet& c);

/// An admissible ancestral c-component sandwiched between the ancestral
/// c-components i and r, or nullopt when none exists. O(n(n+m)).
std::optional<NodeSet> find_aac(const CausalGraph& g, const VariableOrder& order, int x,
                                const NodeSet& i, const NodeSet& r);

/// Emits every non-vacuous CI of x whose ancestral c-component lies between
/// i and r, each exactly once, in deterministic depth-first order. Returns
/// false iff stopped by options.interrupted.
bool list_ci_x(const CausalGraph& g, const VariableOrder& order, int x, const NodeSet& i,
               const NodeSet& r, const CiSink& sink, const EnumerateOptions& options = {});

/// Streams all non-vacuous CIs of the c-component local Markov property for
/// g under the given order, with O(n^2(n+m)) delay between consecutive
/// emissions. Returns false iff interrupted.
///
/// Emission order contract (stable across releases so downstream diffs
/// stay clean): statements are grouped by x in ascending order rank;
/// within one x the search tree is walked depth-first, the pivot is the
/// minimum-rank candidate spouse, and the branch excluding the pivot is
/// taken before the branch including it.
bool list_ci(const CausalGraph& g, const VariableOrder& order, const CiSink& sink,
             const EnumerateOptions& options = {});

}  // namespace clmp

#endif
