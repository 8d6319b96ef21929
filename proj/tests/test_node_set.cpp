#include <doctest.h>

#include <random>

#include "clmp/detail/bits.hpp"
#include "clmp/node_set.hpp"

using namespace clmp;

TEST_CASE("node set canonical form and algebra") {
    NodeSet a{3, 1, 2, 3};
    CHECK(a.size() == 3);
    CHECK(a.values() == std::vector<int>{1, 2, 3});
    CHECK(a.contains(2));
    CHECK_FALSE(a.contains(5));

    NodeSet b{2, 4};
    CHECK(set_union(a, b) == NodeSet{1, 2, 3, 4});
    CHECK(set_minus(a, b) == NodeSet{1, 3});
    CHECK(set_intersect(a, b) == NodeSet{2});
    CHECK(is_subset(NodeSet{1, 3}, a));
    CHECK_FALSE(is_subset(b, a));
    CHECK(disjoint(NodeSet{1}, NodeSet{2}));
    CHECK_FALSE(disjoint(a, b));

    a.add(0);
    CHECK(a.values() == std::vector<int>{0, 1, 2, 3});
    a.remove(2);
    CHECK(a.values() == std::vector<int>{0, 1, 3});
}

TEST_CASE("packed and general bit sets behave identically") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 64);
        detail::Bits64 p1(n), p2(n);
        detail::BitsN g1(n), g2(n);
        for (int i = 0; i < n; ++i) {
            if (rng() & 1) {
                p1.set(i);
                g1.set(i);
            }
            if (rng() & 1) {
                p2.set(i);
                g2.set(i);
            }
        }
        auto same = [&](const detail::Bits64& p, const detail::BitsN& g) {
            if (p.count() != g.count() || p.any() != g.any() || p.first() != g.first())
                return false;
            for (int i = 0; i < n; ++i)
                if (p.test(i) != g.test(i)) return false;
            return detail::bits_to_node_set(p) == detail::bits_to_node_set(g);
        };
        REQUIRE(same(p1, g1));

        auto pu = p1;
        pu |= p2;
        auto gu = g1;
        gu |= g2;
        REQUIRE(same(pu, gu));

        auto pi = p1;
        pi &= p2;
        auto gi = g1;
        gi &= g2;
        REQUIRE(same(pi, gi));

        auto pd = p1;
        pd.and_not(p2);
        auto gd = g1;
        gd.and_not(g2);
        REQUIRE(same(pd, gd));

        int k = static_cast<int>(rng() % n);
        pd.set(k);
        gd.set(k);
        REQUIRE(same(pd, gd));
        pd.reset(k);
        gd.reset(k);
        REQUIRE(same(pd, gd));
    }
}
