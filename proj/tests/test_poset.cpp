#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "steinberg/poset.hpp"
#include "test_util.hpp"

using namespace steinberg;

TEST_CASE("poset construction") {
    // transitive closure is computed
    FinitePoset p(3, {{0, 1}, {1, 2}});
    CHECK(p.less(0, 2));
    CHECK_FALSE(p.less(2, 0));
    CHECK(p.relation_count() == 3);

    CHECK_THROWS_AS(FinitePoset(2, {{0, 1}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(FinitePoset(1, {{0, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(FinitePoset(2, {{0, 5}}), std::invalid_argument);
}

TEST_CASE("opposite") {
    FinitePoset antichain(3, {});
    CHECK(antichain.opposite() == antichain);

    FinitePoset chain(2, {{0, 1}});
    FinitePoset op = chain.opposite();
    CHECK(op.less(1, 0));
    CHECK_FALSE(op.less(0, 1));

    SECTION("involution on random posets") {
        std::mt19937 rng(11);
        for (int t = 0; t < 25; ++t) {
            FinitePoset p = testutil::random_poset(rng, 2 + rng() % 8, 0.4);
            CHECK(p.opposite().opposite() == p);
        }
    }
}

TEST_CASE("links") {
    // chain 0 < 1 < 2
    FinitePoset chain(3, {{0, 1}, {1, 2}});
    CHECK(chain.upper_link(2).poset.size() == 0);
    auto up = chain.upper_link(1);
    auto lo = chain.lower_link(1);
    CHECK(up.elements == std::vector<size_t>{2});
    CHECK(lo.elements == std::vector<size_t>{0});
    // the link is induced, so 0 < 2 survives: a 2-chain, realized as the
    // join of the two single-point links (one edge)
    auto both = chain.link(1);
    CHECK(both.poset.size() == 2);
    CHECK(both.poset.relation_count() == 1);

    CHECK_THROWS_AS(chain.upper_link(9), std::invalid_argument);
}

TEST_CASE("height") {
    FinitePoset chain(3, {{0, 1}, {1, 2}});
    CHECK(chain.height(0) == 0);
    CHECK(chain.height(2) == 2);

    SECTION("height is strictly monotone along the order") {
        std::mt19937 rng(13);
        for (int t = 0; t < 25; ++t) {
            FinitePoset p = testutil::random_poset(rng, 3 + rng() % 8, 0.35);
            auto h = p.heights();
            for (size_t a = 0; a < p.size(); ++a)
                for (size_t b = 0; b < p.size(); ++b)
                    if (p.less(a, b)) CHECK(h[a] < h[b]);
        }
    }
}

TEST_CASE("poset maps and fibers") {
    FinitePoset chain(3, {{0, 1}, {1, 2}});
    FinitePoset target(2, {{0, 1}});

    SECTION("monotonicity is validated") {
        CHECK_THROWS_AS(PosetMap(chain, target, {1, 0, 0}), std::invalid_argument);
        PosetMap ok(chain, target, {0, 0, 1});
        CHECK(ok(2) == 1);
    }

    SECTION("fiber of the identity is the principal down-set") {
        std::vector<size_t> id{0, 1, 2};
        PosetMap f(chain, chain, id);
        auto fib = fiber(f, 1);
        CHECK(fib.elements == std::vector<size_t>{0, 1});
    }

    SECTION("fiber of a constant map is the whole source") {
        PosetMap f(chain, target, {0, 0, 0});
        CHECK(fiber(f, 0).elements.size() == 3);
        CHECK(fiber(f, 1).elements.size() == 3);
    }
}

TEST_CASE("induced subposets") {
    FinitePoset p(4, {{0, 1}, {1, 2}, {0, 3}});
    auto ind = p.induced({0, 2, 3});
    CHECK(ind.poset.size() == 3);
    CHECK(ind.poset.less(0, 1));   // 0 < 2 survives
    CHECK(ind.poset.less(0, 2));   // 0 < 3 survives
    CHECK_FALSE(ind.poset.comparable(1, 2));
}

TEST_CASE("poset file format") {
    std::mt19937 rng(17);
    for (int t = 0; t < 20; ++t) {
        FinitePoset p = testutil::random_poset(rng, 1 + rng() % 10, 0.4);
        std::stringstream ss;
        save_poset(ss, p);
        CHECK(load_poset(ss) == p);
    }

    FinitePoset chain(3, {{0, 1}, {1, 2}});
    CHECK(poset_to_string(chain) == "elements 3\n0 < 1\n1 < 2\n");
}
