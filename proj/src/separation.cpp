#include "clmp/separation.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace clmp {

CausalGraph augment(const CausalGraph& g) {
    std::vector<std::string> names = g.names();
    std::vector<bool> latent(g.node_count(), false);
    for (int v = 0; v < g.node_count(); ++v) latent[v] = g.is_latent(v);
    std::set<std::string> taken(names.begin(), names.end());
    std::vector<std::pair<int, int>> directed = g.directed_edges();
    for (auto [a, b] : g.bidirected_edges()) {
        std::string base = "U(" + g.name(a) + "," + g.name(b) + ")";
        std::string nm = base;
        for (int k = 2; taken.count(nm); ++k) nm = base + "#" + std::to_string(k);
        taken.insert(nm);
        int u = static_cast<int>(names.size());
        names.push_back(nm);
        latent.push_back(true);
        directed.emplace_back(u, a);
        directed.emplace_back(u, b);
    }
    return CausalGraph(std::move(names), std::move(directed), {}, std::move(latent));
}

DSepOracle::DSepOracle(const CausalGraph& g) : n_orig_(g.node_count()) {
    n_aug_ = n_orig_ + g.bidirected_edge_count();
    parents_.assign(n_aug_, {});
    children_.assign(n_aug_, {});
    for (auto [a, b] : g.directed_edges()) {
        children_[a].push_back(b);
        parents_[b].push_back(a);
    }
    int u = n_orig_;
    for (auto [a, b] : g.bidirected_edges()) {
        children_[u] = {a, b};
        parents_[a].push_back(u);
        parents_[b].push_back(u);
        ++u;
    }
}

bool DSepOracle::separated(const NodeSet& x, const NodeSet& y, const NodeSet& z,
                           Workspace& ws) const {
    if (x.empty() || y.empty()) throw DomainError("d-separation query with empty x or y");
    if (!disjoint(x, y) || !disjoint(x, z) || !disjoint(y, z))
        throw DomainError("d-separation query sets must be pairwise disjoint");
    auto check = [&](const NodeSet& s) {
        for (int v : s)
            if (v < 0 || v >= n_orig_) throw DomainError("unknown node in query");
    };
    check(x);
    check(y);
    check(z);

    auto reinit = [&](std::vector<char>& v) { v.assign(n_aug_, 0); };
    reinit(ws.in_z);
    reinit(ws.anc_z);
    reinit(ws.vis_up);
    reinit(ws.vis_down);
    reinit(ws.in_y);
    for (int v : z) ws.in_z[v] = 1;
    for (int v : y) ws.in_y[v] = 1;

    // Ancestors of z (z included) activate colliders.
    ws.stack.clear();
    for (int v : z) {
        ws.anc_z[v] = 1;
        ws.stack.push_back(v);
    }
    while (!ws.stack.empty()) {
        int v = ws.stack.back();
        ws.stack.pop_back();
        for (int p : parents_[v]) {
            if (!ws.anc_z[p]) {
                ws.anc_z[p] = 1;
                ws.stack.push_back(p);
            }
        }
    }

    // Ball passing. State encodes the direction the trail reached the node:
    // up = from a child (or a query source), down = from a parent.
    ws.stack.clear();
    enum : int { UP = 1, DOWN = 2 };
    auto visit = [&](int v, int dir) -> bool {
        if (ws.in_y[v]) return true;
        auto& vis = dir == UP ? ws.vis_up : ws.vis_down;
        if (vis[v]) return false;
        vis[v] = 1;
        ws.stack.push_back(dir == UP ? v : ~v);
        return false;
    };
    for (int v : x)
        if (visit(v, UP)) return false;
    while (!ws.stack.empty()) {
        int code = ws.stack.back();
        ws.stack.pop_back();
        int v = code >= 0 ? code : ~code;
        int dir = code >= 0 ? UP : DOWN;
        if (dir == UP) {
            if (!ws.in_z[v]) {
                for (int p : parents_[v])
                    if (visit(p, UP)) return false;
                for (int c : children_[v])
                    if (visit(c, DOWN)) return false;
            }
        } else {
            if (!ws.in_z[v]) {
                for (int c : children_[v])
                    if (visit(c, DOWN)) return false;
            }
            if (ws.anc_z[v]) {
                for (int p : parents_[v])
                    if (visit(p, UP)) return false;
            }
        }
    }
    return true;
}

bool DSepOracle::separated(const NodeSet& x, const NodeSet& y, const NodeSet& z) const {
    Workspace ws;
    return separated(x, y, z, ws);
}

bool d_separated(const CausalGraph& g, const SeparationQuery& q) {
    DSepOracle oracle(g);
    return oracle.separated(q.x, q.y, q.z);
}

std::optional<NodeSet> find_separator(const CausalGraph& g, const NodeSet& x, const NodeSet& y,
                                      const NodeSet& i, const NodeSet& r) {
    if (!is_subset(i, r)) throw DomainError("find_separator requires i to be a subset of r");
    NodeSet xy = set_union(x, y);
    NodeSet r_prime = set_minus(r, xy);
    NodeSet z = set_intersect(ancestors(g, set_union(xy, i)), r_prime);
    if (d_separated(g, {x, y, z})) return z;
    return std::nullopt;
}

}  // namespace clmp
