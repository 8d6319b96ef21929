#ifndef CLMP_GRAPH_HPP
#define CLMP_GRAPH_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clmp/error.hpp"
#include "clmp/node_set.hpp"

namespace clmp {

/// A causal graph with directed and bidirected edges. The directed part is
/// a DAG (checked on construction). Nodes are dense indices; names map to
/// indices once at construction and never change. Latent flags are only
/// meaningful before latent projection.
///
/// Immutable after construction; all queries are const and reentrant.
class CausalGraph {
public:
    CausalGraph(std::vector<std::string> names,
                std::vector<std::pair<int, int>> directed,
                std::vector<std::pair<int, int>> bidirected,
                std::vector<bool> latent = {});

    int node_count() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int v) const { return names_.at(v); }

    /// Index of a named node, or nullopt.
    std::optional<int> index_of(const std::string& name) const;

    bool is_latent(int v) const { return latent_[v]; }
    bool has_latents() const;
    NodeSet observed_nodes() const;
    NodeSet all_nodes() const;

    int directed_edge_count() const { return static_cast<int>(directed_.size()); }
    int bidirected_edge_count() const { return static_cast<int>(bidirected_.size()); }

    /// Canonical edge lists: directed as (tail, head), bidirected as
    /// (min, max); both sorted.
    const std::vector<std::pair<int, int>>& directed_edges() const { return directed_; }
    const std::vector<std::pair<int, int>>& bidirected_edges() const { return bidirected_; }

    const std::vector<int>& parents_of(int v) const { return parents_[v]; }
    const std::vector<int>& children_of(int v) const { return children_[v]; }
    const std::vector<int>& spouses_of(int v) const { return spouses_[v]; }

    bool has_directed_edge(int a, int b) const;
    bool has_bidirected_edge(int a, int b) const;

    friend bool operator==(const CausalGraph& a, const CausalGraph& b) {
        return a.names_ == b.names_ && a.latent_ == b.latent_ && a.directed_ == b.directed_ &&
               a.bidirected_ == b.bidirected_;
    }

private:
    void check_node(int v) const;

    std::vector<std::string> names_;
    std::vector<bool> latent_;
    std::vector<std::pair<int, int>> directed_;
    std::vector<std::pair<int, int>> bidirected_;
    std::vector<std::vector<int>> parents_, children_, spouses_;

    friend NodeSet parents(const CausalGraph&, const NodeSet&);
    friend NodeSet ancestors(const CausalGraph&, const NodeSet&);
    friend NodeSet descendants(const CausalGraph&, const NodeSet&);
    friend NodeSet c_component(const CausalGraph&, int);
};

/// A total order over the observed nodes of a graph, consistent with the
/// directed edges (every edge tail precedes its head).
class VariableOrder {
public:
    VariableOrder() = default;

    /// Build from an explicit sequence of node indices. Throws DomainError
    /// if the sequence is not a permutation of g's observed nodes.
    VariableOrder(const CausalGraph& g, std::vector<int> sequence);

    const std::vector<int>& sequence() const { return sequence_; }
    int rank_of(int v) const;
    int at(int rank) const { return sequence_.at(rank); }
    int size() const { return static_cast<int>(sequence_.size()); }

private:
    std::vector<int> sequence_;
    std::vector<int> rank_;  // node index -> rank, -1 for non-members
};

// Kinship queries. Pa/An/De include the argument set itself; Nd excludes it.
NodeSet parents(const CausalGraph& g, const NodeSet& x);
NodeSet ancestors(const CausalGraph& g, const NodeSet& x);
NodeSet descendants(const CausalGraph& g, const NodeSet& x);
NodeSet nondescendants(const CausalGraph& g, const NodeSet& x);
NodeSet spouses(const CausalGraph& g, const NodeSet& x);

/// Maximal set reachable from x via bidirected edges only. O(n+m).
NodeSet c_component(const CausalGraph& g, int x);

/// Size of the largest c-component.
int largest_c_component_size(const CausalGraph& g);

/// Subgraph on s: keeps exactly the nodes of s (re-indexed densely in
/// ascending original order, names preserved) and edges within s.
CausalGraph induced_subgraph(const CausalGraph& g, const NodeSet& s);

/// True iff s contains its own ancestors.
bool is_ancestral(const CausalGraph& g, const NodeSet& s);

/// True iff order is topological for g over exactly the observed nodes.
bool validate_order(const CausalGraph& g, const VariableOrder& order);

/// Deterministic topological sort of the observed nodes, ties broken by
/// node-name lexicographic order. Throws DomainError if a latent node has an
/// observed ancestor path making the observed part non-sortable (cannot
/// happen for semi-Markovian graphs).
VariableOrder default_order(const CausalGraph& g);

/// Project a graph with latent-flagged nodes onto its observed nodes.
/// Directed edge A->B iff there is a directed path from A to B through
/// latent intermediates only; bidirected A<->B iff there is a path with
/// arrowheads into both ends whose intermediates are all latent
/// non-colliders. Existing bidirected edges between observed nodes are kept.
CausalGraph latent_project(const CausalGraph& g);

}  // namespace clmp

#endif
