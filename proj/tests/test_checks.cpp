#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "steinberg/checks.hpp"
#include "steinberg/poset_checks.hpp"

using namespace steinberg;

namespace {

RunConfig cfg(uint32_t q, uint32_t n) {
    RunConfig c;
    c.q = q;
    c.n = n;
    return c;
}

int64_t top_betti(const CheckReport& r) {
    const json& degs = r.details.at("complex").at("homology").at("degrees");
    return degs.back().at("betti").get<int64_t>();
}

}  // namespace

TEST_CASE("sphericity of the subspace poset across small fields") {
    SECTION("q=2, n=2") {
        auto reps = run_solomon_tits(cfg(2, 2));
        REQUIRE(reps.size() == 1);
        CHECK(reps[0].pass);
        CHECK(top_betti(reps[0]) == 2);
        CHECK(reps[0].details.at("cohen_macaulay") == json(true));
    }
    SECTION("q=3, n=2") {
        auto reps = run_solomon_tits(cfg(3, 2));
        CHECK(reps[0].pass);
        CHECK(top_betti(reps[0]) == 3);
    }
    SECTION("q=2, n=3") {
        auto reps = run_solomon_tits(cfg(2, 3));
        CHECK(reps[0].pass);
        CHECK(top_betti(reps[0]) == 8);
        CHECK(reps[0].details.at("cohen_macaulay") == json(true));
    }
    SECTION("q=3, n=3") {
        auto reps = run_solomon_tits(cfg(3, 3));
        CHECK(reps[0].pass);
        CHECK(top_betti(reps[0]) == 27);
    }
}

TEST_CASE("sphericity of the split poset and its one-sided restrictions") {
    SECTION("q=2, n=2 anchors") {
        auto reps = run_charney(cfg(2, 2));
        REQUIRE(reps.size() == 3);
        CHECK(reps[0].params.at("variant") == "full");
        CHECK(reps[0].pass);
        CHECK(top_betti(reps[0]) == 5);
        CHECK(reps[1].pass);  // P inside a rank-1 summand (n-1 = 1)
        CHECK(reps[2].pass);  // Q containing a rank-1 summand
    }
    SECTION("q=2, n=3: everything concentrates in degree 1") {
        auto reps = run_charney(cfg(2, 3));
        for (const auto& r : reps) CHECK(r.pass);
        CHECK(top_betti(reps[0]) == 113);  // |chi~| = |-1 + 56 - 168|
        // the corank-1 restriction is (n-2)-spherical, like the full poset
        CHECK(reps[1].details.at("spherical_in_degree") == json(1));
        CHECK(top_betti(reps[1]) == 9);
    }
}

TEST_CASE("sphericity of V-restrictions per rank") {
    SECTION("q=2, n=2: two points") {
        auto reps = run_theorem31(cfg(2, 2));
        REQUIRE(reps.size() == 1);
        CHECK(reps[0].pass);
        CHECK(top_betti(reps[0]) == 1);
        CHECK(reps[0].details.at("spherical_in_degree") == json(0));
    }
    SECTION("q=2, n=3 with every V") {
        RunConfig c = cfg(2, 3);
        c.all_subspaces = true;
        auto reps = run_theorem31(c);
        CHECK(reps.size() == 14);
        for (const auto& r : reps) {
            CHECK(r.pass);
            CHECK(r.details.at("orbit_consistent") == json(true));
        }
    }
    SECTION("explicit V") {
        RunConfig c = cfg(2, 3);
        c.v_explicit = Subspace::span({{1, 1, 0}}, 3, PrimeField(2));
        auto reps = run_theorem31(c);
        REQUIRE(reps.size() == 1);
        CHECK(reps[0].pass);
        CHECK(reps[0].params.at("v") == "110");
    }
}

TEST_CASE("sphericity of K-restrictions per corank") {
    auto reps = run_corollary32(cfg(2, 3));
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].params.at("k") == json(1));
    CHECK(reps[0].details.at("spherical_in_degree") == json(1));
    CHECK(reps[0].pass);
    CHECK(reps[1].params.at("k") == json(2));
    CHECK(reps[1].details.at("spherical_in_degree") == json(0));
    CHECK(reps[1].pass);
}

TEST_CASE("surjectivity command") {
    SECTION("q=2, n=2") {
        auto reps = run_surjectivity(cfg(2, 2));
        REQUIRE(reps.size() == 2);
        CHECK(reps[0].check == "surjectivity");
        CHECK(reps[0].pass);
        CHECK(reps[0].details.at("target_rank") == json(2));
        CHECK(reps[1].check == "church-putman");
        CHECK(reps[1].pass);
        CHECK(reps[1].details.at("target_cohen_macaulay") == json(true));
    }
    SECTION("q=3, n=2") {
        auto reps = run_surjectivity(cfg(3, 2));
        CHECK(reps[0].pass);
        CHECK(reps[1].pass);
    }
}

TEST_CASE("morse filtration command") {
    SECTION("n=2 is vacuous") {
        auto reps = run_morse(cfg(2, 2));
        REQUIRE(reps.size() == 1);
        CHECK(reps[0].pass);
        CHECK(reps[0].details.contains("note"));
    }
    SECTION("q=3, n=3, k=2") {
        auto reps = run_morse(cfg(3, 3));
        REQUIRE(reps.size() == 1);
        CHECK(reps[0].pass);
        CHECK(reps[0].details.at("levels") == json(1));
        CHECK(reps[0].details.at("x0_spherical") == json(true));
        CHECK(reps[0].details.at("iso_witnesses_ok") == json(true));
    }
    SECTION("sweeping all (L, H) choices") {
        RunConfig c = cfg(3, 3);
        c.sweep_lh = true;
        auto reps = run_morse(c);
        CHECK(reps.size() == 36);  // 4 lines in V, 9 complements each
        for (const auto& r : reps) CHECK(r.pass);
    }
    SECTION("q=2, n=4, k=2: the claims hold for every (L, H) choice") {
        RunConfig c = cfg(2, 4);
        c.rank_v = 2;
        c.sweep_lh = true;
        auto reps = run_morse(c);
        CHECK(reps.size() == 24);  // 3 lines in V, 8 complements each
        for (const auto& r : reps) CHECK(r.pass);
    }
}

TEST_CASE("full Cohen-Macaulay verification of the n=4 subspace poset") {
    RunConfig c = cfg(2, 4);
    c.cm = true;
    auto reps = run_solomon_tits(c);
    CHECK(reps[0].pass);
    CHECK(reps[0].details.at("cohen_macaulay") == json(true));
}

TEST_CASE("rank filters restrict the instance grid") {
    RunConfig c = cfg(2, 3);
    c.rank_v = 2;
    auto reps = run_theorem31(c);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].params.at("k") == json(2));
    CHECK(reps[0].pass);

    RunConfig ck = cfg(2, 3);
    ck.rank_k = 2;
    auto kreps = run_corollary32(ck);
    REQUIRE(kreps.size() == 1);
    CHECK(kreps[0].params.at("k") == json(2));
    CHECK(kreps[0].pass);
}

TEST_CASE("cache round trips reproduce reports") {
    std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "steinberg-cache-test";
    std::filesystem::remove_all(dir);
    RunConfig c = cfg(2, 3);
    c.cache_dir = dir.string();

    auto cold = run_theorem31(c);
    auto warm = run_theorem31(c);
    REQUIRE(cold.size() == warm.size());
    int hits = 0;
    for (size_t i = 0; i < cold.size(); ++i) {
        hits += warm[i].cache_hits;
        json a = cold[i].to_json();
        json b = warm[i].to_json();
        a.erase("wall_ms");
        b.erase("wall_ms");
        a.erase("cache_hits");
        b.erase("cache_hits");
        json& ca = a["details"]["complex"];
        json& cb = b["details"]["complex"];
        ca.erase("cache_hit");
        cb.erase("cache_hit");
        CHECK(a == b);
    }
    CHECK(hits == static_cast<int>(warm.size()));
    std::filesystem::remove_all(dir);
}

TEST_CASE("config validation and dispatch") {
    CHECK_THROWS_AS(run_check("nonsense", cfg(2, 2)), std::invalid_argument);
    RunConfig bad = cfg(2, 1);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    RunConfig bad2 = cfg(4, 2);
    CHECK_THROWS_AS(run_check("charney", bad2), std::invalid_argument);
    RunConfig bad3 = cfg(2, 3);
    bad3.v_explicit = Subspace::full(3, PrimeField(2));
    CHECK_THROWS_AS(bad3.validate(), std::invalid_argument);

    RunDocument doc = run_document("solomon-tits", cfg(2, 2));
    CHECK(doc.pass());
    json j = doc.to_json();
    CHECK(j.at("config").at("command") == "solomon-tits");
    CHECK(j.at("pass") == json(true));
}

TEST_CASE("morse decomposition report on the worked example") {
    // X = {y1, y2, v} with v above both; Y = {y1, y2}; target dimension 0.
    FinitePoset x(3, {{0, 2}, {1, 2}});
    auto oracle = [](const SimplicialComplex& c, int d) { return is_spherical(c, d); };
    MorseReport mr = check_morse_decomposition(x, {0, 1}, oracle, 0);
    CHECK(mr.antichain_ok);         // a single new vertex
    CHECK(mr.y_spherical_ok);       // two points are 0-spherical
    CHECK_FALSE(mr.links_ok);       // the link is 2 points, not (-1)-spherical
    CHECK_FALSE(mr.conclusion_ok);  // a path is contractible, dimension 1 > 0
    CHECK_FALSE(mr.all_ok());

    SECTION("Y = X passes vacuously") {
        MorseReport all = check_morse_decomposition(x, {0, 1, 2}, oracle, 0);
        CHECK(all.antichain_ok);
        CHECK(all.links_ok);
        // conclusion equals the sphericity of Y = X itself
        CHECK(all.y_spherical_ok == all.conclusion_ok);
    }
}

TEST_CASE("cohen-macaulay checker") {
    auto oracle = [](const SimplicialComplex& c, int d) { return is_spherical(c, d); };

    SECTION("proper part of the rank-3 boolean lattice is CM of dimension 1") {
        // subsets of {0,1,2}: three singletons (0..2), three doubletons (3..5)
        std::vector<std::pair<size_t, size_t>> rel;
        size_t singles[3] = {0, 1, 2}, doubles[3] = {3, 4, 5};
        // doubleton i is {0,1,2} minus {i}
        for (int s = 0; s < 3; ++s)
            for (int d = 0; d < 3; ++d)
                if (s != d) rel.emplace_back(singles[s], doubles[d]);
        FinitePoset hexagon(6, rel);
        CohenMacaulayResult r = is_cohen_macaulay(hexagon, 1, oracle);
        CHECK(r.cohen_macaulay);
    }

    SECTION("antichain is CM of dimension 0") {
        CHECK(is_cohen_macaulay(FinitePoset(2, {}), 0, oracle).cohen_macaulay);
    }

    SECTION("non-pure poset fails with a witness") {
        // one 2-chain and an isolated point
        FinitePoset p(3, {{0, 1}});
        CohenMacaulayResult r = is_cohen_macaulay(p, 1, oracle);
        CHECK_FALSE(r.cohen_macaulay);
        CHECK_FALSE(r.reason.empty());
    }
}
