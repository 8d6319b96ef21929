#include <doctest.h>

#include <set>

#include "clmp/baselines.hpp"
#include "clmp/ci_format.hpp"
#include "clmp/enumerate.hpp"
#include "clmp/randgen.hpp"
#include "clmp/separation.hpp"
#include "support.hpp"

using namespace clmp;
using clmp_tests::load_fixture;
using clmp_tests::named;

namespace {

std::vector<CiStatement> collect(const CausalGraph& g, const VariableOrder& order,
                                 const EnumerateOptions& opts = {}) {
    std::vector<CiStatement> out;
    list_ci(g, order, [&](const CiStatement& s) { out.push_back(s); }, opts);
    return out;
}

std::vector<std::string> as_lines(const CausalGraph& g, const std::vector<CiStatement>& cis) {
    std::vector<std::string> lines;
    for (const auto& s : cis) lines.push_back(ci_line_text(g, s));
    return lines;
}

}  // namespace

TEST_CASE("ci_from_ac on the bidirected-chain fixture") {
    auto pg = load_fixture("fig_mb.graph");
    const CausalGraph& g = pg.graph;
    VariableOrder order = pg.order_or_default();
    int x = *g.index_of("X");

    CiStatement a = ci_from_ac(g, order, x, named(g, {"X", "B"}));
    CHECK(a.w == named(g, {"C", "D", "E", "F"}));
    CHECK(a.z == named(g, {"B"}));

    CiStatement b = ci_from_ac(g, order, x, named(g, {"X", "H"}));
    CHECK(b.w == named(g, {"A", "D", "I"}));
    CHECK(b.z == named(g, {"H"}));

    CiStatement c = ci_from_ac(g, order, x, named(g, {"X", "H", "E"}));
    CHECK(c.w == named(g, {"A", "F", "I"}));
    CHECK(c.z == named(g, {"H", "E"}));

    // Not a c-component of X in any ancestral set: B missing disconnects A.
    CHECK_THROWS_AS(ci_from_ac(g, order, x, named(g, {"X", "A", "D", "E"})), DomainError);
}

TEST_CASE("ci_from_ac vacuous on the clique") {
    CausalGraph clique = clmp_tests::bidirected_clique(3);
    VariableOrder order = default_order(clique);
    CiStatement s = ci_from_ac(clique, order, 2, NodeSet{0, 1, 2});
    CHECK(s.w.empty());
    CHECK(s.z == NodeSet{0, 1});
}

TEST_CASE("is_admissible examples") {
    auto pg = load_fixture("g2.graph");
    const CausalGraph& g = pg.graph;
    VariableOrder order = pg.order_or_default();
    CHECK(is_admissible(g, order, *g.index_of("H"), named(g, {"C", "D", "H"})));

    CausalGraph clique = clmp_tests::bidirected_clique(3);
    VariableOrder corder = default_order(clique);
    CHECK_FALSE(is_admissible(clique, corder, 2, NodeSet{0, 2}));

    CausalGraph lone({"A"}, {}, {});
    CHECK_FALSE(is_admissible(lone, default_order(lone), 0, NodeSet{0}));
}

TEST_CASE("find_aac examples") {
    auto pg = load_fixture("g2.graph");
    const CausalGraph& g = pg.graph;
    VariableOrder order = pg.order_or_default();
    int h = *g.index_of("H");
    NodeSet cdh = named(g, {"C", "D", "H"});
    auto found = find_aac(g, order, h, cdh, cdh);
    REQUIRE(found.has_value());
    CHECK(*found == cdh);

    CausalGraph clique = clmp_tests::bidirected_clique(3);
    VariableOrder corder = default_order(clique);
    CHECK_FALSE(find_aac(clique, corder, 2, NodeSet{2}, NodeSet{0, 1, 2}).has_value());

    CausalGraph chain({"A", "B", "C"}, {{0, 1}, {1, 2}}, {});
    VariableOrder chorder = default_order(chain);
    auto last = find_aac(chain, chorder, 2, NodeSet{2}, NodeSet{2});
    REQUIRE(last.has_value());
    CHECK(*last == NodeSet{2});

    CHECK_THROWS_AS(find_aac(g, order, h, named(g, {"H"}), cdh), DomainError);  // {H} not an AC
}

TEST_CASE("list_ci_x on single-variable ranges") {
    auto pg = load_fixture("g2.graph");
    const CausalGraph& g = pg.graph;
    VariableOrder order = pg.order_or_default();
    int h = *g.index_of("H");
    NodeSet cdh = named(g, {"C", "D", "H"});
    std::vector<CiStatement> out;
    list_ci_x(g, order, h, cdh, cdh, [&](const CiStatement& s) { out.push_back(s); });
    REQUIRE(out.size() == 1);
    CHECK(ci_line_text(g, out[0]) == "H _||_ A,E,F | B,C,D");

    CausalGraph clique = clmp_tests::bidirected_clique(3);
    VariableOrder corder = default_order(clique);
    std::vector<CiStatement> empty;
    list_ci_x(clique, corder, 2, NodeSet{2}, NodeSet{0, 1, 2},
              [&](const CiStatement& s) { empty.push_back(s); });
    CHECK(empty.empty());
}

TEST_CASE("list_ci emits the exact basis of the 7-node fixture") {
    auto pg = load_fixture("g2.graph");
    const CausalGraph& g = pg.graph;
    auto cis = collect(g, pg.order_or_default());
    CHECK(as_lines(g, cis) == std::vector<std::string>{
                                  "C _||_ A | B",
                                  "D _||_ A,B | C",
                                  "E _||_ A,C,D | B",
                                  "F _||_ A,B,D,E | C",
                                  "H _||_ A,E,F | B,C,D",
                              });
}

TEST_CASE("list_ci emits the protein-network table") {
    auto pg = load_fixture("sachs.graph");
    const CausalGraph& g = pg.graph;
    auto cis = collect(g, pg.order_or_default());
    std::vector<std::string> expected{
        "PIP3 _||_ PKA",
        "Plcg _||_ PKA | PIP3",
        "Akt _||_ Plcg | PIP3,PKA",
        "PIP2 _||_ Akt,PKA | PIP3,Plcg",
        "PKC _||_ Akt,PIP3,PKA | PIP2,Plcg",
        "Raf _||_ Akt,PIP2,PIP3,Plcg | PKA,PKC",
        "P38 _||_ Akt,PIP2,PIP3,Plcg,Raf | PKA,PKC",
        "Jnk _||_ Akt,P38,PIP2,PIP3,Plcg,Raf | PKA,PKC",
        "Mek _||_ Akt,Jnk,P38,PIP2,PIP3,PKA,PKC,Plcg | Raf",
        "Erk _||_ Akt,Jnk,P38,PIP2,PIP3,PKC,Plcg,Raf | Mek,PKA",
    };
    std::vector<std::string> got = as_lines(g, cis);
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    CHECK(got == expected);
}

TEST_CASE("list_ci on the bidirected-chain fixture includes the worked CIs") {
    auto pg = load_fixture("fig_mb.graph");
    const CausalGraph& g = pg.graph;
    auto cis = collect(g, pg.order_or_default());
    auto lines = as_lines(g, cis);
    std::set<std::string> got(lines.begin(), lines.end());
    CHECK(got.count("X _||_ C,D,E,F | B"));
    CHECK(got.count("X _||_ A,D,I | H"));
    CHECK(got.count("X _||_ A,F,I | E,H"));
}

TEST_CASE("cliques produce no output") {
    for (int n = 2; n <= 6; ++n) {
        CausalGraph clique = clmp_tests::bidirected_clique(n);
        CHECK(collect(clique, default_order(clique)).empty());
    }
}

TEST_CASE("singleton prefixes emit nothing") {
    CausalGraph lone({"A"}, {}, {});
    CHECK(collect(lone, default_order(lone)).empty());

    // x alone in a larger graph still pairs with earlier nodes.
    CausalGraph iso({"A", "B"}, {}, {});
    auto cis = collect(iso, default_order(iso));
    REQUIRE(cis.size() == 1);
    CHECK(ci_line_text(iso, cis[0]) == "B _||_ A");
}

TEST_CASE("order validation happens before emission") {
    auto pg = load_fixture("g2.graph");
    const CausalGraph& g = pg.graph;
    VariableOrder bad(g, {6, 5, 4, 3, 2, 1, 0});
    CHECK_THROWS_AS(collect(g, bad), DomainError);

    auto latent = load_fixture("g1_latent.graph");
    CHECK_THROWS_AS(list_ci(latent.graph, default_order(latent.graph), [](const CiStatement&) {}),
                    DomainError);
}

TEST_CASE("random graphs: soundness, uniqueness, bound, completeness, maximality") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        int n = 3 + static_cast<int>(seed % 6);  // 3..8
        double pd = 0.1 + 0.2 * (seed % 3);
        double pb = 0.1 + 0.2 * ((seed / 3) % 3);
        CausalGraph g = random_graph({n, pd, pb, seed});
        VariableOrder order = default_order(g);
        auto cis = collect(g, order);

        DSepOracle oracle(g);
        DSepOracle::Workspace ws;
        std::set<CiStatement> seen;
        for (const auto& s : cis) {
            CHECK(oracle.separated(NodeSet{s.x}, s.w, s.z, ws));
            CHECK_FALSE(s.w.empty());
            CHECK(seen.insert(s).second);  // no duplicates
        }

        int s_max = largest_c_component_size(g);
        CHECK(cis.size() <= static_cast<std::size_t>(n) * (1ull << s_max));

        // Completeness against the exhaustive ancestral-set walk, and the
        // injectivity of the AC -> CI map.
        std::set<CiStatement> expected;
        std::size_t admissible_acs = 0;
        for (int x = 0; x < n; ++x) {
            for (const auto& ac : brute_force_acs(g, order, x)) {
                CiStatement s = ci_from_ac(g, order, x, ac);
                if (s.w.empty()) continue;
                ++admissible_acs;
                expected.insert(s);
            }
        }
        CHECK(expected == seen);
        CHECK(admissible_acs == cis.size());  // distinct ACs give distinct CIs

        // Witness maximality: any node left out of w u z is either barred
        // by the descendant rule or breaks separation when added to w.
        for (const auto& s : cis) {
            int rank = order.rank_of(s.x);
            std::vector<int> prefix;
            for (int k = 0; k <= rank; ++k) prefix.push_back(order.at(k));
            NodeSet prefix_set(std::move(prefix));
            NodeSet rest = set_minus(prefix_set, set_union(set_union(s.w, s.z), NodeSet{s.x}));
            if (rest.empty()) continue;
            CausalGraph gx = induced_subgraph(g, prefix_set);
            auto remap = [&](int v) { return *gx.index_of(g.name(v)); };
            // Recover the AC: c-component of x within An({x} u z).
            NodeSet core;
            core.add(remap(s.x));
            for (int v : s.z) core.add(remap(v));
            NodeSet anc = ancestors(gx, core);
            CausalGraph ganc = induced_subgraph(gx, anc);
            NodeSet comp_anc = c_component(ganc, *ganc.index_of(g.name(s.x)));
            NodeSet comp;
            for (int v : comp_anc) comp.add(*gx.index_of(ganc.name(v)));
            NodeSet barred = descendants(gx, set_minus(spouses(gx, comp), parents(gx, comp)));
            for (int v : rest) {
                int vx = remap(v);
                bool in_barred = barred.contains(vx);
                NodeSet w2 = s.w;
                w2.add(v);
                bool breaks = !oracle.separated(NodeSet{s.x}, w2, s.z, ws);
                CHECK((in_barred || breaks));
            }
        }
    }
}

TEST_CASE("larger graphs still match the brute force") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        int n = 12 + static_cast<int>(seed % 5);  // 12..16
        double pd = 0.10 + 0.05 * (seed % 4);
        double pb = 0.15 + 0.10 * ((seed / 4) % 3);
        CausalGraph g = random_graph({n, pd, pb, seed + 424242});
        VariableOrder order = default_order(g);
        auto cis = collect(g, order);
        std::set<CiStatement> listed(cis.begin(), cis.end());
        REQUIRE(listed.size() == cis.size());
        std::set<CiStatement> bf;
        list_ci_bf(g, order, [&](const CiStatement& s) {
            if (!s.w.empty()) bf.insert(s);
        });
        REQUIRE(bf == listed);
    }
}

TEST_CASE("packed and general set representations agree") {
    EnumerateOptions packed, general;
    packed.representation = SetRepr::packed64;
    general.representation = SetRepr::general;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        int n = 5 + static_cast<int>(seed % 4) * 15;  // 5..50
        CausalGraph g = random_graph({n, 0.15, 0.1, seed + 7});
        VariableOrder order = default_order(g);
        CHECK(collect(g, order, packed) == collect(g, order, general));
    }
    auto pg = load_fixture("g2.graph");
    CHECK(collect(pg.graph, pg.order_or_default(), packed) ==
          collect(pg.graph, pg.order_or_default(), general));
    auto chain = load_fixture("fig_mb.graph");
    CHECK(collect(chain.graph, chain.order_or_default(), packed) ==
          collect(chain.graph, chain.order_or_default(), general));
    CausalGraph path = clmp_tests::bidirected_path(64);
    CHECK(collect(path, default_order(path), packed) ==
          collect(path, default_order(path), general));
}

TEST_CASE("interruption stops the stream early") {
    CausalGraph path = clmp_tests::bidirected_path(20);
    VariableOrder order = default_order(path);
    std::size_t emitted = 0;
    EnumerateOptions opts;
    opts.interrupted = [&] { return emitted >= 3; };
    bool completed = list_ci(path, order, [&](const CiStatement&) { ++emitted; }, opts);
    CHECK_FALSE(completed);
    std::size_t total = collect(path, order).size();
    CHECK(emitted < total);
    CHECK(emitted >= 3);
}

TEST_CASE("emission order is deterministic and grouped by x") {
    auto pg = load_fixture("fig_mb.graph");
    const CausalGraph& g = pg.graph;
    VariableOrder order = pg.order_or_default();
    auto first = collect(g, order);
    auto second = collect(g, order);
    CHECK(first == second);
    int last_rank = -1;
    for (const auto& s : first) {
        int r = order.rank_of(s.x);
        CHECK(r >= last_rank);
        last_rank = r;
    }
}
