#include "clmp/graph.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <set>

namespace clmp {

CausalGraph::CausalGraph(std::vector<std::string> names,
                         std::vector<std::pair<int, int>> directed,
                         std::vector<std::pair<int, int>> bidirected,
                         std::vector<bool> latent)
    : names_(std::move(names)),
      latent_(std::move(latent)),
      directed_(std::move(directed)),
      bidirected_(std::move(bidirected)) {
    const int n = static_cast<int>(names_.size());
    if (latent_.empty()) latent_.assign(n, false);
    if (static_cast<int>(latent_.size()) != n)
        throw DomainError("latent flag count does not match node count");

    std::set<std::string> seen;
    for (const auto& nm : names_) {
        if (nm.empty()) throw DomainError("empty node name");
        if (!seen.insert(nm).second) throw DomainError("duplicate node name: " + nm);
    }

    parents_.assign(n, {});
    children_.assign(n, {});
    spouses_.assign(n, {});

    std::set<std::pair<int, int>> dset;
    for (auto& [a, b] : directed_) {
        check_node(a);
        check_node(b);
        if (a == b) throw DomainError("self-loop at node " + names_[a]);
        if (!dset.insert({a, b}).second)
            throw DomainError("duplicate directed edge " + names_[a] + " -> " + names_[b]);
    }
    std::set<std::pair<int, int>> bset;
    for (auto& [a, b] : bidirected_) {
        check_node(a);
        check_node(b);
        if (a == b) throw DomainError("self-loop at node " + names_[a]);
        if (a > b) std::swap(a, b);
        if (!bset.insert({a, b}).second)
            throw DomainError("duplicate bidirected edge " + names_[a] + " <-> " + names_[b]);
    }
    directed_.assign(dset.begin(), dset.end());
    bidirected_.assign(bset.begin(), bset.end());

    for (auto [a, b] : directed_) {
        children_[a].push_back(b);
        parents_[b].push_back(a);
    }
    for (auto [a, b] : bidirected_) {
        spouses_[a].push_back(b);
        spouses_[b].push_back(a);
    }
    for (int v = 0; v < n; ++v) {
        std::sort(parents_[v].begin(), parents_[v].end());
        std::sort(children_[v].begin(), children_[v].end());
        std::sort(spouses_[v].begin(), spouses_[v].end());
    }

    // Kahn's algorithm over the directed part; any leftover node sits on a
    // cycle.
    std::vector<int> indeg(n, 0);
    for (auto [a, b] : directed_) {
        (void)a;
        ++indeg[b];
    }
    std::vector<int> stack;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    int removed = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++removed;
        for (int c : children_[v])
            if (--indeg[c] == 0) stack.push_back(c);
    }
    if (removed != n) throw DomainError("directed cycle");
}

void CausalGraph::check_node(int v) const {
    if (v < 0 || v >= node_count()) throw DomainError("unknown node index " + std::to_string(v));
}

std::optional<int> CausalGraph::index_of(const std::string& name) const {
    for (int v = 0; v < node_count(); ++v)
        if (names_[v] == name) return v;
    return std::nullopt;
}

bool CausalGraph::has_latents() const {
    return std::any_of(latent_.begin(), latent_.end(), [](bool b) { return b; });
}

NodeSet CausalGraph::observed_nodes() const {
    std::vector<int> out;
    for (int v = 0; v < node_count(); ++v)
        if (!latent_[v]) out.push_back(v);
    return NodeSet::from_sorted_unique(std::move(out));
}

NodeSet CausalGraph::all_nodes() const {
    std::vector<int> out(node_count());
    for (int v = 0; v < node_count(); ++v) out[v] = v;
    return NodeSet::from_sorted_unique(std::move(out));
}

bool CausalGraph::has_directed_edge(int a, int b) const {
    check_node(a);
    check_node(b);
    const auto& cs = children_[a];
    return std::binary_search(cs.begin(), cs.end(), b);
}

bool CausalGraph::has_bidirected_edge(int a, int b) const {
    check_node(a);
    check_node(b);
    const auto& sp = spouses_[a];
    return std::binary_search(sp.begin(), sp.end(), b);
}

VariableOrder::VariableOrder(const CausalGraph& g, std::vector<int> sequence)
    : sequence_(std::move(sequence)), rank_(g.node_count(), -1) {
    NodeSet observed = g.observed_nodes();
    if (sequence_.size() != observed.size())
        throw DomainError("order does not cover the observed nodes exactly");
    for (int i = 0; i < static_cast<int>(sequence_.size()); ++i) {
        int v = sequence_[i];
        if (v < 0 || v >= g.node_count()) throw DomainError("order names unknown node");
        if (g.is_latent(v))
            throw DomainError("latent node " + g.name(v) + " appears in ordering");
        if (rank_[v] != -1) throw DomainError("node " + g.name(v) + " repeated in ordering");
        rank_[v] = i;
    }
}

int VariableOrder::rank_of(int v) const {
    if (v < 0 || v >= static_cast<int>(rank_.size()) || rank_[v] < 0)
        throw DomainError("node not covered by ordering");
    return rank_[v];
}

namespace {

void check_members(const CausalGraph& g, const NodeSet& x) {
    for (int v : x)
        if (v < 0 || v >= g.node_count())
            throw DomainError("unknown node index " + std::to_string(v));
}

// Closure of x along the given adjacency (forward = children for De,
// parents for An). Includes x.
NodeSet closure(const CausalGraph& g, const NodeSet& x,
                const std::vector<int>& (CausalGraph::*adj)(int) const) {
    check_members(g, x);
    std::vector<char> seen(g.node_count(), 0);
    std::vector<int> stack;
    for (int v : x) {
        seen[v] = 1;
        stack.push_back(v);
    }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : (g.*adj)(v)) {
            if (!seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    std::vector<int> out;
    for (int v = 0; v < g.node_count(); ++v)
        if (seen[v]) out.push_back(v);
    return NodeSet::from_sorted_unique(std::move(out));
}

}  // namespace

NodeSet parents(const CausalGraph& g, const NodeSet& x) {
    check_members(g, x);
    std::vector<int> out(x.begin(), x.end());
    for (int v : x)
        for (int p : g.parents_[v]) out.push_back(p);
    return NodeSet(std::move(out));
}

NodeSet ancestors(const CausalGraph& g, const NodeSet& x) {
    return closure(g, x, &CausalGraph::parents_of);
}

NodeSet descendants(const CausalGraph& g, const NodeSet& x) {
    return closure(g, x, &CausalGraph::children_of);
}

NodeSet nondescendants(const CausalGraph& g, const NodeSet& x) {
    return set_minus(g.all_nodes(), descendants(g, x));
}

NodeSet spouses(const CausalGraph& g, const NodeSet& x) {
    check_members(g, x);
    std::vector<int> out;
    for (int v : x)
        for (int s : g.spouses_of(v)) out.push_back(s);
    return NodeSet(std::move(out));
}

NodeSet c_component(const CausalGraph& g, int x) {
    return closure(g, NodeSet{x}, &CausalGraph::spouses_of);
}

int largest_c_component_size(const CausalGraph& g) {
    std::vector<char> seen(g.node_count(), 0);
    int best = 0;
    for (int v = 0; v < g.node_count(); ++v) {
        if (seen[v]) continue;
        NodeSet comp = c_component(g, v);
        for (int w : comp) seen[w] = 1;
        best = std::max(best, static_cast<int>(comp.size()));
    }
    return best;
}

CausalGraph induced_subgraph(const CausalGraph& g, const NodeSet& s) {
    check_members(g, s);
    std::vector<int> remap(g.node_count(), -1);
    std::vector<std::string> names;
    std::vector<bool> latent;
    for (int v : s) {
        remap[v] = static_cast<int>(names.size());
        names.push_back(g.name(v));
        latent.push_back(g.is_latent(v));
    }
    std::vector<std::pair<int, int>> dir, bidir;
    for (auto [a, b] : g.directed_edges())
        if (remap[a] >= 0 && remap[b] >= 0) dir.emplace_back(remap[a], remap[b]);
    for (auto [a, b] : g.bidirected_edges())
        if (remap[a] >= 0 && remap[b] >= 0) bidir.emplace_back(remap[a], remap[b]);
    return CausalGraph(std::move(names), std::move(dir), std::move(bidir), std::move(latent));
}

bool is_ancestral(const CausalGraph& g, const NodeSet& s) {
    return ancestors(g, s) == s;
}

bool validate_order(const CausalGraph& g, const VariableOrder& order) {
    if (order.size() != static_cast<int>(g.observed_nodes().size())) return false;
    for (auto [a, b] : g.directed_edges()) {
        if (g.is_latent(a) || g.is_latent(b)) continue;
        if (order.rank_of(a) >= order.rank_of(b)) return false;
    }
    return true;
}

VariableOrder default_order(const CausalGraph& g) {
    // Kahn over the observed subgraph; min-heap on names for determinism.
    const int n = g.node_count();
    std::vector<int> indeg(n, 0);
    for (auto [a, b] : g.directed_edges())
        if (!g.is_latent(a) && !g.is_latent(b)) ++indeg[b];
    auto cmp = [&](int a, int b) { return g.name(a) > g.name(b); };
    std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
    int observed = 0;
    for (int v = 0; v < n; ++v) {
        if (g.is_latent(v)) continue;
        ++observed;
        if (indeg[v] == 0) ready.push(v);
    }
    std::vector<int> seq;
    seq.reserve(observed);
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        seq.push_back(v);
        for (int c : g.children_of(v))
            if (!g.is_latent(c) && --indeg[c] == 0) ready.push(c);
    }
    if (static_cast<int>(seq.size()) != observed)
        throw DomainError("observed subgraph is not acyclic");
    return VariableOrder(g, std::move(seq));
}

CausalGraph latent_project(const CausalGraph& g) {
    const int n = g.node_count();
    std::vector<int> remap(n, -1);
    std::vector<std::string> names;
    for (int v = 0; v < n; ++v) {
        if (g.is_latent(v)) continue;
        remap[v] = static_cast<int>(names.size());
        names.push_back(g.name(v));
    }
    if (names.empty() && n > 0) throw DomainError("all nodes latent");

    std::set<std::pair<int, int>> dir, bidir;

    // Directed part: from each observed node, walk children through latent
    // intermediates only.
    for (int a = 0; a < n; ++a) {
        if (g.is_latent(a)) continue;
        std::vector<char> seen(n, 0);
        std::vector<int> stack{a};
        seen[a] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int c : g.children_of(v)) {
                if (seen[c]) continue;
                seen[c] = 1;
                if (g.is_latent(c)) stack.push_back(c);
                else if (c != a) dir.insert({remap[a], remap[c]});
            }
        }
    }

    // Bidirected part: from each observed node, walk paths that start with an
    // arrowhead into it and keep latent intermediates non-colliders. State
    // per latent node: arrived with edge tail there (may continue any way)
    // or head there (may only continue along outgoing directed edges).
    enum : int { TAIL = 0, HEAD = 1 };
    for (int a = 0; a < n; ++a) {
        if (g.is_latent(a)) continue;
        std::vector<std::array<char, 2>> seen(n, {0, 0});
        std::vector<std::pair<int, int>> stack;
        auto arrive = [&](int v, int state) {
            if (g.is_latent(v)) {
                if (!seen[v][state]) {
                    seen[v][state] = 1;
                    stack.emplace_back(v, state);
                }
            } else if (state == HEAD && v != a) {
                int x = remap[a], y = remap[v];
                if (x > y) std::swap(x, y);
                bidir.insert({x, y});
            }
        };
        for (int p : g.parents_of(a)) arrive(p, TAIL);
        for (int s : g.spouses_of(a)) arrive(s, HEAD);
        while (!stack.empty()) {
            auto [v, state] = stack.back();
            stack.pop_back();
            for (int c : g.children_of(v)) arrive(c, HEAD);
            if (state == TAIL) {
                for (int p : g.parents_of(v)) arrive(p, TAIL);
                for (int s : g.spouses_of(v)) arrive(s, HEAD);
            }
        }
    }

    return CausalGraph(std::move(names),
                       std::vector<std::pair<int, int>>(dir.begin(), dir.end()),
                       std::vector<std::pair<int, int>>(bidir.begin(), bidir.end()));
}

}  // namespace clmp
