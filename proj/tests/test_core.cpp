#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace relift;
using namespace testsupport;

TEST_CASE("core of bipartite graphs with an edge is a single edge") {
    for (Structure s : {path(4), cycle(6), cycle(4)}) {
        auto res = core_of(s);
        CHECK(res.core.vertex_count() == 2);
        CHECK(res.core.tuples_named(0).size() == 2);
        CHECK(check_map(s, s, VertexMap{MapMode::hom, res.retraction.assignment}));
    }
}

TEST_CASE("rigid structures are their own cores") {
    for (Structure s : {clique(3), cycle(5), clique(4)}) {
        auto res = core_of(s);
        CHECK(res.core == s);
    }
    Structure single(Signature::graph(), {"v"});
    CHECK(core_of(single).core.vertex_count() == 1);
}

TEST_CASE("core of a clique with a pendant vertex is the clique") {
    Structure s = clique(3);
    s.add_vertex("p");
    s.add_tuple(0, {"p", "0"});
    auto res = core_of(s);
    CHECK(static_cast<bool>(iso_check(res.core, clique(3))));
}

TEST_CASE("retraction fixes the core pointwise") {
    Structure s = path(5);
    auto res = core_of(s);
    for (const auto& v : res.core.vertices()) CHECK(res.retraction.assignment.at(v) == v);
}

TEST_CASE("core is hom-equivalent to the original") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 25; ++it) {
        Structure s = rand_structure(Signature::digraph(), 1 + static_cast<int>(rng() % 4), 0.4,
                                     rng);
        auto res = core_of(s);
        CHECK(oracle_has_map(res.core, s, MapMode::hom));
        CHECK(oracle_has_map(s, res.core, MapMode::hom));
        // Idempotent: the core of the core is itself.
        CHECK(core_of(res.core).core == res.core);
    }
}

TEST_CASE("family minimization drops members another member maps into") {
    // C5 -> K3, so forbidding C5 already forbids K3.
    auto min = minimize_family({clique(3), cycle(5)});
    REQUIRE(min.size() == 1);
    CHECK(static_cast<bool>(iso_check(min[0], cycle(5))));

    // Incomparable members both stay (triangle vs single arc world).
    auto both = minimize_family({cycle(4), clique(3)});
    // C4 -> K3 (4-cycle is 3-colorable), so C4 redundant... but wait:
    // forbidding C4 forbids K3 only if C4 -> K3.  It does.  K3 stays.
    REQUIRE(both.size() == 1);
    CHECK(both[0].vertex_count() == 2); // core of C4 is K2
}

TEST_CASE("family minimization replaces members by their cores") {
    auto min = minimize_family({path(4)});
    REQUIRE(min.size() == 1);
    CHECK(min[0].vertex_count() == 2);
}

TEST_CASE("minimization removes exact duplicates") {
    auto min = minimize_family({clique(3), clique(3), clique(3)});
    CHECK(min.size() == 1);
}
