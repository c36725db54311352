#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "steinberg/homology.hpp"
#include "test_util.hpp"

using namespace steinberg;

namespace {

/// Wedge of r spheres of dimension a (0, 1 or 2), glued at vertex 0;
/// r = 0 gives a single point.
SimplicialComplex wedge_of_spheres(int a, int r) {
    std::vector<Simplex> simplices{{0}};
    int32_t next = 1;
    for (int i = 0; i < r; ++i) {
        if (a == 0) {
            simplices.push_back({next++});
        } else if (a == 1) {
            int32_t u = next++, v = next++;
            simplices.push_back({0, u});
            simplices.push_back({0, v});
            simplices.push_back({u, v});
        } else {
            int32_t u = next++, v = next++, w = next++;
            simplices.push_back({0, u, v});
            simplices.push_back({0, u, w});
            simplices.push_back({0, v, w});
            simplices.push_back({u, v, w});
        }
    }
    return SimplicialComplex::from_simplices(next, simplices);
}

}  // namespace

TEST_CASE("boundary matrices") {
    SECTION("single edge") {
        SimplicialComplex c = SimplicialComplex::from_simplices(2, {{0, 1}});
        IntegerChainComplex cc = boundaries(c);
        REQUIRE(cc.top == 1);
        // augmentation row is all ones
        CHECK(cc.boundary(0).nnz() == 2);
        for (const auto& e : cc.boundary(0).entries) CHECK(e.v == 1);
        // the edge has boundary (-1, 1)
        std::vector<Int> col(2, 0);
        for (const auto& e : cc.boundary(1).entries) col[e.r] = e.v;
        CHECK(((col[0] == -1 && col[1] == 1) || (col[0] == 1 && col[1] == -1)));
    }

    SECTION("hollow triangle columns hold one +1 and one -1") {
        SimplicialComplex c = SimplicialComplex::from_simplices(3, {{0, 1}, {0, 2}, {1, 2}});
        IntegerChainComplex cc = boundaries(c);
        for (int64_t j = 0; j < 3; ++j) {
            Int plus = 0, minus = 0;
            for (const auto& e : cc.boundary(1).entries)
                if (e.c == j) (e.v > 0 ? plus : minus) += e.v;
            CHECK(plus == 1);
            CHECK(minus == -1);
        }
    }

}

TEST_CASE("homology of model spaces") {
    SECTION("hollow triangle is a 1-sphere") {
        SimplicialComplex c = SimplicialComplex::from_simplices(3, {{0, 1}, {0, 2}, {1, 2}});
        HomologySummary h = homology(c);
        CHECK(h.betti(0) == 0);
        CHECK(h.betti(1) == 1);
        CHECK(h.concentrated_free(1));
        CHECK(is_spherical(c, 1));
        CHECK_FALSE(is_spherical(c, 0));
    }

    SECTION("solid triangle is contractible") {
        SimplicialComplex c = SimplicialComplex::from_simplices(3, {{0, 1, 2}});
        HomologySummary h = homology(c);
        for (int d = -1; d <= 2; ++d) CHECK(h.betti(d) == 0);
        CHECK(is_spherical(c, 2));   // empty wedge at the dimension
        CHECK_FALSE(is_spherical(c, 1));  // dimension bound
    }

    SECTION("boundary of the tetrahedron is a 2-sphere") {
        SimplicialComplex c = SimplicialComplex::from_simplices(
            4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
        HomologySummary h = homology(c);
        CHECK(h.betti(2) == 1);
        CHECK(is_spherical(c, 2));
    }

    SECTION("projective plane carries 2-torsion") {
        SimplicialComplex c = SimplicialComplex::from_simplices(
            6, {{0, 1, 4}, {0, 1, 5}, {0, 2, 3}, {0, 2, 5}, {0, 3, 4},
                {1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {2, 4, 5}, {3, 4, 5}});
        REQUIRE(c.count(1) == 15);
        REQUIRE(c.count(2) == 10);
        HomologySummary h = homology(c);
        CHECK(h.betti(0) == 0);
        CHECK(h.betti(1) == 0);
        CHECK(h.betti(2) == 0);
        REQUIRE(h.at(1).torsion.size() == 1);
        CHECK(h.at(1).torsion[0] == 2);
        for (int d = -1; d <= 2; ++d) CHECK_FALSE(is_spherical(c, d));
    }

    SECTION("empty complex") {
        SimplicialComplex c;
        HomologySummary h = homology(c);
        CHECK(h.betti(-1) == 1);
        CHECK(is_spherical(c, -1));
        CHECK_FALSE(is_spherical(c, 0));
    }

    SECTION("a point is an empty wedge in any degree") {
        SimplicialComplex pt = wedge_of_spheres(0, 0);
        CHECK(is_spherical(pt, 0));
        CHECK(is_spherical(pt, 3));
        CHECK_FALSE(is_spherical(pt, -1));
    }

    SECTION("two points") {
        SimplicialComplex c = wedge_of_spheres(0, 1);
        CHECK(is_spherical(c, 0));
        CHECK_FALSE(is_spherical(c, 1));
        CHECK_FALSE(is_spherical(c, -1));
    }
}

TEST_CASE("join rank formula on random wedge pairs") {
    std::mt19937 rng(41);
    for (int t = 0; t < 20; ++t) {
        int a = rng() % 2, b = rng() % 2;
        int r = rng() % 4, s = rng() % 4;
        SimplicialComplex k = wedge_of_spheres(a, r);
        SimplicialComplex l = wedge_of_spheres(b, s);
        SimplicialComplex j = join_complex(k, l);
        HomologySummary h = homology(j);
        INFO("a=" << a << " b=" << b << " r=" << r << " s=" << s);
        CHECK(h.betti(a + b + 1) == static_cast<int64_t>(r) * s);
        CHECK(h.concentrated_free(a + b + 1));
    }
}

TEST_CASE("modular cross-check and Euler identity run on every call") {
    std::mt19937 rng(43);
    for (int t = 0; t < 10; ++t) {
        FinitePoset p = testutil::random_poset(rng, 3 + rng() % 7, 0.4);
        HomologySummary h =
            homology(order_complex(p), HomologyOptions{true, 1234 + static_cast<uint64_t>(t)});
        REQUIRE(h.modular_ranks.size() == h.boundary_ranks.size());
        for (size_t i = 0; i < h.boundary_ranks.size(); ++i)
            CHECK(h.modular_ranks[i] == h.boundary_ranks[i]);
    }
}

TEST_CASE("homology summary serialization") {
    SimplicialComplex c = SimplicialComplex::from_simplices(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(format_homology(homology(c)) == "-1 0\n0 0\n1 1\n");
}
