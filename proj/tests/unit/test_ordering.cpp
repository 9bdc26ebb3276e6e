#include "doctest.h"

#include <set>
#include <vector>

#include "latnet/graph.hpp"
#include "latnet/ordering.hpp"
#include "latnet/rng.hpp"

using namespace latnet;

TEST_CASE("omega1 positions at n=4") {
    const Ordering o = Ordering::omega1(4);
    CHECK(o.position(1, 2) == 1);
    CHECK(o.position(2, 3) == 4);
    CHECK(o.position(3, 4) == 6);
    CHECK(o.position(2, 1) == 1); // unordered
}

TEST_CASE("omega2 positions at n=4") {
    const Ordering o = Ordering::omega2(4);
    CHECK(o.position(1, 2) == 1);
    CHECK(o.position(2, 3) == 2);
    CHECK(o.position(3, 4) == 3);
    CHECK(o.position(1, 3) == 4);
    CHECK(o.position(2, 4) == 5);
    CHECK(o.position(1, 4) == 6);
}

TEST_CASE("preferential attachment positions at n=4") {
    const Ordering o = Ordering::preferential_attachment(4);
    CHECK(o.position(1, 2) == 1);
    CHECK(o.position(1, 3) == 2);
    CHECK(o.position(2, 3) == 3);
    CHECK(o.position(1, 4) == 4);
}

TEST_CASE("invalid constructions") {
    CHECK_THROWS_AS(Ordering::omega1(1), std::invalid_argument);
    CHECK_THROWS_AS(make_ordering(OrderingKind::Random, 5), std::invalid_argument);
    CHECK_THROWS_AS(Ordering::omega1(4).position(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(Ordering::omega1(4).position(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(Ordering::omega1(4).pair_at(7), std::invalid_argument);
    CHECK_THROWS_AS(Ordering::explicit_map(3, {1, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Ordering::explicit_map(3, {1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Ordering::explicit_map(3, {0, 1, 2}), std::invalid_argument);
}

namespace {

void check_bijection(const Ordering& o) {
    const std::int64_t N = o.num_pairs();
    std::set<std::int64_t> seen;
    for (int i = 1; i < o.n(); ++i) {
        for (int j = i + 1; j <= o.n(); ++j) {
            const std::int64_t s = o.position(i, j);
            REQUIRE(s >= 1);
            REQUIRE(s <= N);
            REQUIRE(seen.insert(s).second);
            const auto [a, b] = o.pair_at(s);
            REQUIRE(a == i);
            REQUIRE(b == j);
        }
    }
    REQUIRE(static_cast<std::int64_t>(seen.size()) == N);
}

} // namespace

TEST_CASE("every kind is a bijection, exhaustively for n <= 20") {
    for (int n = 2; n <= 20; ++n) {
        check_bijection(Ordering::omega1(n));
        check_bijection(Ordering::omega2(n));
        check_bijection(Ordering::preferential_attachment(n));
        check_bijection(Ordering::random(n, 1000 + n));
    }
}

TEST_CASE("bijection spot checks up to n=200") {
    for (int n : {50, 127, 200}) {
        check_bijection(Ordering::omega1(n));
        check_bijection(Ordering::omega2(n));
        check_bijection(Ordering::preferential_attachment(n));
        check_bijection(Ordering::random(n, n));
    }
}

TEST_CASE("omega2 scan order: increasing gap, then increasing i") {
    const Ordering o = Ordering::omega2(9);
    int prev_gap = 0, prev_i = 0;
    for (std::int64_t s = 1; s <= o.num_pairs(); ++s) {
        const auto [i, j] = o.pair_at(s);
        const int gap = j - i;
        if (gap == prev_gap)
            CHECK(i > prev_i);
        else
            CHECK(gap == prev_gap + 1);
        prev_gap = gap;
        prev_i = i;
    }
}

TEST_CASE("omega1 scan order: all pairs of node 1 first, then node 2, ...") {
    const Ordering o = Ordering::omega1(9);
    int prev_i = 1, prev_j = 1;
    for (std::int64_t s = 1; s <= o.num_pairs(); ++s) {
        const auto [i, j] = o.pair_at(s);
        if (i == prev_i)
            CHECK(j == prev_j + 1);
        else
            CHECK(i == prev_i + 1);
        prev_i = i;
        prev_j = j;
    }
}

TEST_CASE("random orderings are reproducible and seed-dependent") {
    const Ordering a = Ordering::random(12, 7);
    const Ordering b = Ordering::random(12, 7);
    const Ordering c = Ordering::random(12, 8);
    bool same_ab = true, same_ac = true;
    for (std::int64_t s = 1; s <= a.num_pairs(); ++s) {
        same_ab = same_ab && a.pair_at(s) == b.pair_at(s);
        same_ac = same_ac && a.pair_at(s) == c.pair_at(s);
    }
    CHECK(same_ab);
    CHECK_FALSE(same_ac);
}

TEST_CASE("chain/graph trivial conversions") {
    SUBCASE("single edge {1,2} on n=3 under omega1") {
        Graph g(3);
        g.set_edge(1, 2, true);
        const EdgeChain chain = chain_from_graph(g, Ordering::omega1(3));
        CHECK(chain.bits == std::vector<std::uint8_t>{1, 0, 0});
    }
    SUBCASE("empty graph n=4") {
        const EdgeChain chain = chain_from_graph(Graph(4), Ordering::omega2(4));
        CHECK(chain.bits == std::vector<std::uint8_t>(6, 0));
    }
    SUBCASE("complete graph n=3, any ordering") {
        Graph g(3);
        for (int i = 1; i <= 3; ++i)
            for (int j = i + 1; j <= 3; ++j) g.set_edge(i, j, true);
        for (const auto& o :
             {Ordering::omega1(3), Ordering::omega2(3), Ordering::random(3, 5)}) {
            const EdgeChain chain = chain_from_graph(g, o);
            CHECK(chain.bits == std::vector<std::uint8_t>(3, 1));
        }
    }
}

TEST_CASE("chain/graph round trip is the identity") {
    Rng rng(99);
    for (int n : {2, 3, 8, 16, 33}) {
        Graph g(n);
        for (int i = 1; i < n; ++i)
            for (int j = i + 1; j <= n; ++j) g.set_edge(i, j, rng.bernoulli(0.3));
        for (const auto& o : {Ordering::omega1(n), Ordering::omega2(n),
                              Ordering::preferential_attachment(n), Ordering::random(n, 4 * n)}) {
            const Graph back = graph_from_chain(chain_from_graph(g, o), o, n);
            CHECK(back == g);
        }
    }
}

TEST_CASE("chain/graph size mismatches are rejected") {
    Graph g(5);
    CHECK_THROWS_AS(chain_from_graph(g, Ordering::omega1(4)), std::invalid_argument);
    EdgeChain chain;
    chain.bits.assign(5, 0);
    CHECK_THROWS_AS(graph_from_chain(chain, Ordering::omega1(4), 4), std::invalid_argument);
}
