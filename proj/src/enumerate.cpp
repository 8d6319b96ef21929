#include "clmp/enumerate.hpp"

#include <algorithm>
#include <cassert>
#include <utility>
#include <vector>

#include "clmp/detail/bits.hpp"

namespace clmp {

namespace detail {

// The enumeration works in rank space: node i is the variable of rank i
// under the order, so the ambient set V^{<=X} is simply {0, .., rank(X)}.
// Bidirected edges are also kept as explicit common causes (index n + j)
// for Bayes-Ball; such a cause participates in a prefix query only when
// both of its endpoints do.
struct RankGraph {
    int n = 0;
    std::vector<std::vector<int>> parents, children, spouses;
    std::vector<std::vector<int>> aug_parents, aug_children;  // over n + #bidirected
    std::vector<int> u_rank;                                  // per fresh cause: max endpoint rank
    std::vector<int> rank_to_orig;

    RankGraph(const CausalGraph& g, const VariableOrder& order) {
        n = order.size();
        rank_to_orig = order.sequence();
        parents.assign(n, {});
        children.assign(n, {});
        spouses.assign(n, {});
        aug_parents.assign(n, {});
        aug_children.assign(n, {});
        for (auto [a, b] : g.directed_edges()) {
            int ra = order.rank_of(a), rb = order.rank_of(b);
            parents[rb].push_back(ra);
            children[ra].push_back(rb);
            aug_parents[rb].push_back(ra);
            aug_children[ra].push_back(rb);
        }
        for (auto [a, b] : g.bidirected_edges()) {
            int ra = order.rank_of(a), rb = order.rank_of(b);
            spouses[ra].push_back(rb);
            spouses[rb].push_back(ra);
            int u = n + static_cast<int>(u_rank.size());
            u_rank.push_back(std::max(ra, rb));
            aug_parents.push_back({});
            aug_children.push_back({ra, rb});
            aug_parents[ra].push_back(u);
            aug_parents[rb].push_back(u);
        }
        for (auto& v : parents) std::sort(v.begin(), v.end());
        for (auto& v : children) std::sort(v.begin(), v.end());
        for (auto& v : spouses) std::sort(v.begin(), v.end());
    }

    int aug_size() const { return n + static_cast<int>(u_rank.size()); }
};

// All operations below are restricted to the rank prefix [0, limit).
template <class Bits>
struct XContext {
    const RankGraph& rg;
    int limit;  // rank(X) + 1
    Bits prefix;

    XContext(const RankGraph& rg_, int limit_) : rg(rg_), limit(limit_), prefix(rg_.n) {
        for (int v = 0; v < limit; ++v) prefix.set(v);
    }

    int x() const { return limit - 1; }

    // Pa(s): s plus direct parents. Parents always have lower rank.
    Bits pa(const Bits& s) const {
        Bits out = s;
        s.for_each([&](int v) {
            for (int p : rg.parents[v]) out.set(p);
        });
        return out;
    }

    Bits spo(const Bits& s) const {
        Bits out(rg.n);
        s.for_each([&](int v) {
            for (int w : rg.spouses[v])
                if (w < limit) out.set(w);
        });
        return out;
    }

    // Reflexive-transitive closure along parents. Seeds must lie in the
    // prefix; ancestors then stay inside it.
    Bits an(const Bits& seeds) const {
        Bits out = seeds;
        std::vector<int> stack;
        seeds.for_each([&](int v) { stack.push_back(v); });
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int p : rg.parents[v])
                if (!out.test(p)) {
                    out.set(p);
                    stack.push_back(p);
                }
        }
        return out;
    }

    Bits de(const Bits& seeds) const {
        Bits out = seeds;
        std::vector<int> stack;
        seeds.for_each([&](int v) { stack.push_back(v); });
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int c : rg.children[v])
                if (c < limit && !out.test(c)) {
                    out.set(c);
                    stack.push_back(c);
                }
        }
        return out;
    }

    // C-component of start within the allowed node set.
    Bits ccomp_in(const Bits& allowed, int start) const {
        Bits out(rg.n);
        out.set(start);
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : rg.spouses[v])
                if (w < limit && allowed.test(w) && !out.test(w)) {
                    out.set(w);
                    stack.push_back(w);
                }
        }
        return out;
    }

    bool is_ac(const Bits& c) const {
        if (!c.test(x())) return false;
        return ccomp_in(an(c), x()) == c;
    }

    // S+ = V^{<=X} \ De(Spo(c) \ Pa(c)).
    Bits s_plus(const Bits& c) const {
        Bits seeds = spo(c);
        seeds.and_not(pa(c));
        Bits out = prefix;
        out.and_not(de(seeds));
        return out;
    }

    // (W, Z) of the CI induced by the ancestral c-component c.
    std::pair<Bits, Bits> wz_from_ac(const Bits& c) const {
        Bits pac = pa(c);
        Bits w = s_plus(c);
        w.and_not(pac);
        Bits z = pac;
        z.reset(x());
        return {w, z};
    }

    bool admissible(const Bits& c) const {
        Bits pac = pa(c);
        Bits w = s_plus(c);
        w.and_not(pac);
        return w.any();
    }

    bool participates(int v) const {
        return v < rg.n ? v < limit : rg.u_rank[v - rg.n] < limit;
    }

    // Bayes-Ball over the augmented adjacency, restricted to the prefix.
    bool separated(int src, int dst, const Bits& z) const {
        const int m = rg.aug_size();
        std::vector<char> anc_z(m, 0), vis_up(m, 0), vis_down(m, 0);
        std::vector<int> stack;
        z.for_each([&](int v) {
            anc_z[v] = 1;
            stack.push_back(v);
        });
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int p : rg.aug_parents[v])
                if (participates(p) && !anc_z[p]) {
                    anc_z[p] = 1;
                    stack.push_back(p);
                }
        }
        auto in_z = [&](int v) { return v < rg.n && z.test(v); };
        bool hit = false;
        auto visit = [&](int v, bool up) {
            if (v == dst) {
                hit = true;
                return;
            }
            auto& vis = up ? vis_up : vis_down;
            if (vis[v]) return;
            vis[v] = 1;
            stack.push_back(up ? v : ~v);
        };
        visit(src, true);
        while (!stack.empty() && !hit) {
            int code = stack.back();
            stack.pop_back();
            int v = code >= 0 ? code : ~code;
            bool up = code >= 0;
            if (up && !in_z(v)) {
                for (int p : rg.aug_parents[v])
                    if (participates(p)) visit(p, true);
                for (int c : rg.aug_children[v])
                    if (participates(c)) visit(c, false);
            } else if (!up) {
                if (!in_z(v)) {
                    for (int c : rg.aug_children[v])
                        if (participates(c)) visit(c, false);
                }
                if (anc_z[v]) {
                    for (int p : rg.aug_parents[v])
                        if (participates(p)) visit(p, true);
                }
            }
        }
        return !hit;
    }

    // The separator construction constrained to Pa(i) .. Pa(r), for the
    // singleton pair (x, d).
    std::optional<Bits> find_separator(int d, const Bits& pa_i, const Bits& pa_r) const {
        Bits rp = pa_r;
        rp.reset(x());
        rp.reset(d);
        Bits seeds = pa_i;
        seeds.set(x());
        seeds.set(d);
        Bits zc = an(seeds);
        zc &= rp;
        if (separated(x(), d, zc)) return zc;
        return std::nullopt;
    }

    std::optional<Bits> find_aac(const Bits& i, const Bits& r) const {
        if (admissible(i)) return i;
        Bits pa_i = pa(i);
        Bits seeds = spo(i);
        seeds.and_not(pa_i);
        Bits cand = de(seeds);
        Bits pa_r = pa(r);
        for (int d = 0; d < limit; ++d) {
            if (!cand.test(d)) continue;
            if (auto z = find_separator(d, pa_i, pa_r)) {
                Bits u = i;
                u |= *z;
                return ccomp_in(an(u), x());
            }
        }
        return std::nullopt;
    }
};

template <class Bits>
CiStatement make_statement(const RankGraph& rg, int x_rank, const Bits& w, const Bits& z) {
    std::vector<int> wv, zv;
    w.for_each([&](int v) { wv.push_back(rg.rank_to_orig[v]); });
    z.for_each([&](int v) { zv.push_back(rg.rank_to_orig[v]); });
    return CiStatement{rg.rank_to_orig[x_rank], NodeSet(std::move(wv)), NodeSet(std::move(zv))};
}

// Binary partition search over the ancestral c-components between i0 and
// r0. A node splits on a pivot spouse S: the first child excludes S from
// every AC, the second includes it; children are explored in that order.
// Depth is bounded by |r0 \ i0|, so the stack replaces recursion safely.
template <class Bits>
bool list_ci_x_impl(const RankGraph& rg, int limit, Bits i0, Bits r0, const CiSink& sink,
                    const EnumerateOptions& options) {
    XContext<Bits> ctx(rg, limit);
    std::vector<std::pair<Bits, Bits>> stack;
    stack.emplace_back(std::move(i0), std::move(r0));
    while (!stack.empty()) {
        if (options.interrupted && options.interrupted()) return false;
        auto [i, r] = std::move(stack.back());
        stack.pop_back();
        if (!ctx.find_aac(i, r)) continue;
        if (i == r) {
            auto [w, z] = ctx.wz_from_ac(i);
            sink(make_statement(rg, ctx.x(), w, z));
            continue;
        }
        Bits t = ctx.spo(i);
        t.and_not(i);
        t &= r;
        int s = t.first();
        assert(s >= 0);
        Bits with_s = i;
        with_s.set(s);
        Bits i_prime = ctx.ccomp_in(ctx.an(with_s), ctx.x());
        Bits s_only(rg.n);
        s_only.set(s);
        Bits shrunk = r;
        shrunk.and_not(ctx.de(s_only));
        Bits r_prime = ctx.ccomp_in(shrunk, ctx.x());
        stack.emplace_back(std::move(i_prime), std::move(r));
        stack.emplace_back(std::move(i), std::move(r_prime));
    }
    return true;
}

template <class Bits>
bool list_ci_impl(const RankGraph& rg, const CiSink& sink, const EnumerateOptions& options) {
    for (int k = 0; k < rg.n; ++k) {
        if (options.interrupted && options.interrupted()) return false;
        const int limit = k + 1;
        XContext<Bits> ctx(rg, limit);
        Bits xb(rg.n);
        xb.set(k);
        Bits i = ctx.ccomp_in(ctx.an(xb), k);
        Bits r = ctx.ccomp_in(ctx.prefix, k);
        if (!list_ci_x_impl<Bits>(rg, limit, i, r, sink, options)) return false;
    }
    return true;
}

bool use_packed(int n, SetRepr repr) {
    if (repr == SetRepr::packed64) {
        if (n > 64) throw DomainError("packed representation limited to 64 nodes");
        return true;
    }
    return repr == SetRepr::automatic && n <= 64;
}

}  // namespace detail

namespace {

using detail::Bits64;
using detail::BitsN;
using detail::RankGraph;

void require_semi_markovian(const CausalGraph& g) {
    if (g.has_latents())
        throw DomainError("graph has latent nodes; project it before enumeration");
}

void require_order(const CausalGraph& g, const VariableOrder& order) {
    if (!validate_order(g, order)) throw DomainError("ordering is not topological for the graph");
}

template <class Bits>
Bits to_rank_bits(const VariableOrder& order, const NodeSet& s, int n) {
    Bits b(n);
    for (int v : s) b.set(order.rank_of(v));
    return b;
}

// Shared precondition check for the per-x entry points: c must be an
// ancestral c-component relative to x.
template <class Bits>
void require_ac(const detail::XContext<Bits>& ctx, const VariableOrder& order, int x,
                const NodeSet& c, const Bits& cb) {
    if (!c.contains(x)) throw DomainError("set does not contain x");
    for (int v : c)
        if (order.rank_of(v) >= ctx.limit)
            throw DomainError("set escapes the prefix of x under the order");
    if (!ctx.is_ac(cb))
        throw DomainError("set is not an ancestral c-component relative to x");
}

}  // namespace

CiStatement ci_from_ac(const CausalGraph& g, const VariableOrder& order, int x, const NodeSet& c) {
    require_semi_markovian(g);
    require_order(g, order);
    RankGraph rg(g, order);
    using Bits = detail::BitsN;
    detail::XContext<Bits> ctx(rg, order.rank_of(x) + 1);
    Bits cb = to_rank_bits<Bits>(order, c, rg.n);
    require_ac(ctx, order, x, c, cb);
    auto [w, z] = ctx.wz_from_ac(cb);
    return detail::make_statement(rg, ctx.x(), w, z);
}

bool is_admissible(const CausalGraph& g, const VariableOrder& order, int x, const NodeSet& c) {
    return !ci_from_ac(g, order, x, c).w.empty();
}

std::optional<NodeSet> find_aac(const CausalGraph& g, const VariableOrder& order, int x,
                                const NodeSet& i, const NodeSet& r) {
    require_semi_markovian(g);
    require_order(g, order);
    if (!is_subset(i, r)) throw DomainError("find_aac requires i to be a subset of r");
    RankGraph rg(g, order);
    using Bits = detail::BitsN;
    detail::XContext<Bits> ctx(rg, order.rank_of(x) + 1);
    Bits ib = to_rank_bits<Bits>(order, i, rg.n);
    Bits rb = to_rank_bits<Bits>(order, r, rg.n);
    require_ac(ctx, order, x, i, ib);
    require_ac(ctx, order, x, r, rb);
    auto found = ctx.find_aac(ib, rb);
    if (!found) return std::nullopt;
    std::vector<int> out;
    found->for_each([&](int v) { out.push_back(rg.rank_to_orig[v]); });
    return NodeSet(std::move(out));
}

bool list_ci_x(const CausalGraph& g, const VariableOrder& order, int x, const NodeSet& i,
               const NodeSet& r, const CiSink& sink, const EnumerateOptions& options) {
    require_semi_markovian(g);
    require_order(g, order);
    if (!is_subset(i, r)) throw DomainError("list_ci_x requires i to be a subset of r");
    RankGraph rg(g, order);
    const int limit = order.rank_of(x) + 1;
    if (detail::use_packed(rg.n, options.representation)) {
        detail::XContext<Bits64> ctx(rg, limit);
        Bits64 ib = to_rank_bits<Bits64>(order, i, rg.n);
        Bits64 rb = to_rank_bits<Bits64>(order, r, rg.n);
        require_ac(ctx, order, x, i, ib);
        require_ac(ctx, order, x, r, rb);
        return detail::list_ci_x_impl<Bits64>(rg, limit, ib, rb, sink, options);
    }
    detail::XContext<BitsN> ctx(rg, limit);
    BitsN ib = to_rank_bits<BitsN>(order, i, rg.n);
    BitsN rb = to_rank_bits<BitsN>(order, r, rg.n);
    require_ac(ctx, order, x, i, ib);
    require_ac(ctx, order, x, r, rb);
    return detail::list_ci_x_impl<BitsN>(rg, limit, ib, rb, sink, options);
}

bool list_ci(const CausalGraph& g, const VariableOrder& order, const CiSink& sink,
             const EnumerateOptions& options) {
    require_semi_markovian(g);
    require_order(g, order);
    RankGraph rg(g, order);
    if (detail::use_packed(rg.n, options.representation))
        return detail::list_ci_impl<Bits64>(rg, sink, options);
    return detail::list_ci_impl<BitsN>(rg, sink, options);
}

}  // namespace clmp
