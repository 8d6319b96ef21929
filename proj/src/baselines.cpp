#include "clmp/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "clmp/separation.hpp"

namespace clmp {

namespace {

std::uint64_t pow_u64(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

std::uint64_t gmp_candidate_count(int n) {
    if (n < 0 || n > 31) throw DomainError("candidate count overflows past 31 nodes");
    return (pow_u64(4, n) + pow_u64(2, n)) / 2 - pow_u64(3, n);
}

bool list_gmp(const CausalGraph& g, const GmpSink& sink, const GmpOptions& options) {
    if (g.has_latents()) throw DomainError("graph has latent nodes; project it first");
    const int n = g.node_count();
    if (n > options.cap && !options.force) {
        std::string count = n <= 31 ? std::to_string(gmp_candidate_count(n))
                                    : "about 4^" + std::to_string(n) + "/2";
        throw CapExceeded("refusing " + std::to_string(n) + " nodes (cap " +
                          std::to_string(options.cap) + "); " + count +
                          " candidate triples would be tested");
    }
    if (n == 0) return true;

    // Rank of each node in the name-sorted sequence; used to canonicalize
    // the unordered pair {x, y}.
    std::vector<int> name_rank(n);
    {
        std::vector<int> idx(n);
        for (int v = 0; v < n; ++v) idx[v] = v;
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return g.name(a) < g.name(b); });
        for (int r = 0; r < n; ++r) name_rank[idx[r]] = r;
    }

    DSepOracle oracle(g);
    DSepOracle::Workspace ws;

    // Assignment counter: digit per node, 0=out, 1=x, 2=y, 3=z.
    std::vector<int> digit(n, 0);
    std::vector<int> xs, ys, zs, xr, yr;
    std::uint64_t poll = 0;
    for (;;) {
        if (options.interrupted && (++poll & 0xFFF) == 0 && options.interrupted()) return false;
        xs.clear();
        ys.clear();
        zs.clear();
        for (int v = 0; v < n; ++v) {
            switch (digit[v]) {
                case 1: xs.push_back(v); break;
                case 2: ys.push_back(v); break;
                case 3: zs.push_back(v); break;
                default: break;
            }
        }
        if (!xs.empty() && !ys.empty()) {
            xr.clear();
            yr.clear();
            for (int v : xs) xr.push_back(name_rank[v]);
            for (int v : ys) yr.push_back(name_rank[v]);
            std::sort(xr.begin(), xr.end());
            std::sort(yr.begin(), yr.end());
            if (std::lexicographical_compare(xr.begin(), xr.end(), yr.begin(), yr.end())) {
                NodeSet x = NodeSet::from_sorted_unique(xs);
                NodeSet y = NodeSet::from_sorted_unique(ys);
                NodeSet z = NodeSet::from_sorted_unique(zs);
                if (oracle.separated(x, y, z, ws)) sink(GmpStatement{x, y, z});
            }
        }
        int v = 0;
        while (v < n && digit[v] == 3) digit[v++] = 0;
        if (v == n) break;
        ++digit[v];
    }
    return true;
}

NodeSet markov_blanket(const CausalGraph& g, int x, const NodeSet& s) {
    if (!s.contains(x)) throw DomainError("x not contained in s");
    if (!is_ancestral(g, s)) throw DomainError("s is not ancestral");
    // C-component of x within the subgraph on s, and its parents there.
    std::vector<char> in_s(g.node_count(), 0);
    for (int v : s) in_s[v] = 1;
    std::vector<int> stack{x};
    std::vector<char> comp(g.node_count(), 0);
    comp[x] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.spouses_of(v))
            if (in_s[w] && !comp[w]) {
                comp[w] = 1;
                stack.push_back(w);
            }
    }
    std::vector<int> mb;
    for (int v = 0; v < g.node_count(); ++v) {
        if (!comp[v]) continue;
        if (v != x) mb.push_back(v);
        for (int p : g.parents_of(v))
            if (in_s[p] && !comp[p] && p != x) mb.push_back(p);
    }
    return NodeSet(std::move(mb));
}

bool is_maximal_ancestral(const CausalGraph& g, int x, const NodeSet& s) {
    NodeSet mb = markov_blanket(g, x, s);  // validates s
    // h: spouses (in the full prefix graph) of x's c-component within s,
    // minus the blanket and x.
    std::vector<char> in_s(g.node_count(), 0);
    for (int v : s) in_s[v] = 1;
    std::vector<int> stack{x};
    std::vector<char> comp(g.node_count(), 0);
    comp[x] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.spouses_of(v))
            if (in_s[w] && !comp[w]) {
                comp[w] = 1;
                stack.push_back(w);
            }
    }
    std::vector<int> h;
    for (int v = 0; v < g.node_count(); ++v) {
        if (!comp[v]) continue;
        for (int w : g.spouses_of(v))
            if (!mb.contains(w) && w != x) h.push_back(w);
    }
    NodeSet blocked = descendants(g, NodeSet(std::move(h)));
    return s == set_minus(g.all_nodes(), blocked);
}

namespace {

// Enumerates ancestral sets S with x in S inside the prefix of x, as bit
// masks over prefix ranks. Nodes are decided in ascending rank; a node may
// join only when all its parents already did, which is exactly
// ancestrality. An(x) is forced in, so no branch dead-ends.
struct AncestralWalker {
    const CausalGraph& g;
    const VariableOrder& order;
    int limit;                        // rank(x) + 1
    std::vector<std::vector<int>> parent_ranks;
    std::vector<char> required;       // An({x}) by rank
    std::vector<char> in_set;
    std::function<void(const std::vector<char>&)> leaf;

    AncestralWalker(const CausalGraph& g_, const VariableOrder& order_, int x)
        : g(g_), order(order_), limit(order_.rank_of(x) + 1) {
        parent_ranks.assign(limit, {});
        for (int r = 0; r < limit; ++r)
            for (int p : g.parents_of(order.at(r))) parent_ranks[r].push_back(order.rank_of(p));
        required.assign(limit, 0);
        for (int v : ancestors(g, NodeSet{x})) required[order.rank_of(v)] = 1;
        in_set.assign(limit, 0);
    }

    void run() { rec(0); }

    void rec(int r) {
        if (r == limit) {
            leaf(in_set);
            return;
        }
        if (required[r]) {
            in_set[r] = 1;
            rec(r + 1);
            in_set[r] = 0;
            return;
        }
        rec(r + 1);
        bool can_join = true;
        for (int p : parent_ranks[r])
            if (!in_set[p]) {
                can_join = false;
                break;
            }
        if (can_join) {
            in_set[r] = 1;
            rec(r + 1);
            in_set[r] = 0;
        }
    }
};

NodeSet ranks_to_nodes(const VariableOrder& order, const std::vector<char>& mask) {
    std::vector<int> out;
    for (int r = 0; r < static_cast<int>(mask.size()); ++r)
        if (mask[r]) out.push_back(order.at(r));
    return NodeSet(std::move(out));
}

}  // namespace

bool list_ci_bf(const CausalGraph& g, const VariableOrder& order, const CiSink& sink,
                const ListCiBfOptions& options) {
    if (g.has_latents()) throw DomainError("graph has latent nodes; project it first");
    if (!validate_order(g, order)) throw DomainError("ordering is not topological for the graph");
    if (g.node_count() > options.cap)
        throw CapExceeded("refusing " + std::to_string(g.node_count()) + " nodes (cap " +
                          std::to_string(options.cap) + "); up to 2^" +
                          std::to_string(g.node_count() - 1) +
                          " ancestral sets per variable would be walked");
    bool stopped = false;
    for (int k = 0; k < order.size() && !stopped; ++k) {
        int x = order.at(k);
        NodeSet prefix_nodes;
        {
            std::vector<int> vs;
            for (int r = 0; r <= k; ++r) vs.push_back(order.at(r));
            prefix_nodes = NodeSet(std::move(vs));
        }
        CausalGraph gx = induced_subgraph(g, prefix_nodes);
        // induced_subgraph re-indexes; map through names.
        VariableOrder sub_order = [&] {
            std::vector<int> seq;
            for (int r = 0; r <= k; ++r) seq.push_back(*gx.index_of(g.name(order.at(r))));
            return VariableOrder(gx, std::move(seq));
        }();
        int x_sub = *gx.index_of(g.name(x));
        AncestralWalker walker(gx, sub_order, x_sub);
        walker.leaf = [&](const std::vector<char>& mask) {
            if (stopped) return;
            if (options.interrupted && options.interrupted()) {
                stopped = true;
                return;
            }
            NodeSet s = ranks_to_nodes(sub_order, mask);
            if (!is_maximal_ancestral(gx, x_sub, s)) return;
            NodeSet mb = markov_blanket(gx, x_sub, s);
            NodeSet w = set_minus(s, mb);
            w.remove(x_sub);
            // Map back to the outer graph's indices.
            auto remap = [&](const NodeSet& in) {
                std::vector<int> out;
                for (int v : in) out.push_back(*g.index_of(gx.name(v)));
                return NodeSet(std::move(out));
            };
            sink(CiStatement{x, remap(w), remap(mb)});
        };
        walker.run();
    }
    return !stopped;
}

std::set<NodeSet> brute_force_acs(const CausalGraph& g, const VariableOrder& order, int x) {
    if (g.node_count() > 16) throw CapExceeded("brute_force_acs capped at 16 nodes");
    if (!validate_order(g, order)) throw DomainError("ordering is not topological for the graph");
    std::set<NodeSet> acs;
    AncestralWalker walker(g, order, x);
    std::vector<char> in_set;
    walker.leaf = [&](const std::vector<char>& mask) {
        // C-component of x within the masked prefix.
        std::vector<int> stack{x};
        std::vector<int> comp{x};
        std::vector<char> seen(g.node_count(), 0);
        seen[x] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.spouses_of(v)) {
                int r = order.rank_of(w);
                if (r < walker.limit && mask[r] && !seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                    stack.push_back(w);
                }
            }
        }
        acs.insert(NodeSet(std::move(comp)));
    };
    walker.run();
    return acs;
}

}  // namespace clmp
