#ifndef CLMP_SEPARATION_HPP
#define CLMP_SEPARATION_HPP

#include <optional>
#include <vector>

#include "clmp/graph.hpp"
#include "clmp/node_set.hpp"

namespace clmp {

/// A d-separation query: is x independent of y given z? The three sets must
/// be pairwise disjoint and x, y nonempty.
struct SeparationQuery {
    NodeSet x, y, z;
};

/// Replace each bidirected edge A<->B with a fresh common cause U->A, U->B.
/// Original nodes keep their indices; fresh nodes are appended and named
/// "U(A,B)" (uniquified if taken).
CausalGraph augment(const CausalGraph& g);

/// Precomputed augmented adjacency for repeated d-separation queries on one
/// graph. Queries are read-only and safe to run concurrently when each
/// caller owns a Workspace.
class DSepOracle {
public:
    struct Workspace {
        std::vector<char> in_z, anc_z, vis_up, vis_down, in_y;
        std::vector<int> stack;
    };

    explicit DSepOracle(const CausalGraph& g);

    /// Bayes-Ball reachability; O(n+m) per query.
    bool separated(const NodeSet& x, const NodeSet& y, const NodeSet& z, Workspace& ws) const;
    bool separated(const NodeSet& x, const NodeSet& y, const NodeSet& z) const;

    int original_node_count() const { return n_orig_; }

private:
    int n_orig_, n_aug_;
    std::vector<std::vector<int>> parents_, children_;
};

/// True iff z d-separates x from y in g. Throws DomainError on overlapping
/// or empty x/y.
bool d_separated(const CausalGraph& g, const SeparationQuery& q);

/// Constrained separator construction: with r' = r \ (x∪y), tests
/// z = An(x∪y∪i) ∩ r' and returns it when it separates, nullopt otherwise.
/// Returns nullopt only if no set sandwiched between i\(x∪y) and r\(x∪y)
/// separates x from y. Requires i ⊆ r. O(n+m).
std::optional<NodeSet> find_separator(const CausalGraph& g, const NodeSet& x, const NodeSet& y,
                                      const NodeSet& i, const NodeSet& r);

}  // namespace clmp

#endif
