#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace relift;
using namespace testsupport;

namespace {

std::vector<std::set<std::string>> as_sets(const std::vector<std::vector<std::string>>& cuts) {
    std::vector<std::set<std::string>> out;
    for (const auto& c : cuts) out.emplace_back(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("hand-checked minimal cuts") {
    // A path cuts at every interior vertex.
    CHECK(as_sets(minimal_cuts(path(4))) ==
          std::vector<std::set<std::string>>{{"1"}, {"2"}});
    // A cycle cuts at every non-adjacent pair.
    CHECK(as_sets(minimal_cuts(cycle(5))).size() == 5);
    CHECK(as_sets(minimal_cuts(cycle(4))) ==
          std::vector<std::set<std::string>>{{"0", "2"}, {"1", "3"}});
    // Cliques have no cuts at all.
    CHECK(minimal_cuts(clique(3)).empty());
    CHECK(minimal_cuts(clique(4)).empty());
    // Cuts are defined for connected structures only.
    CHECK_THROWS_AS(minimal_cuts(disjoint_union(clique(2), clique(2))), validation_error);
}

TEST_CASE("minimal cuts agree with the subset-scan oracle") {
    std::mt19937_64 rng(77);
    int compared = 0;
    while (compared < 60) {
        Structure s = rand_structure(Signature::graph(), 2 + static_cast<int>(rng() % 5), 0.45,
                                     rng);
        if (!is_connected(s)) continue;
        ++compared;
        CAPTURE(serialize(s));
        CHECK(as_sets(minimal_cuts(s)) == oracle_minimal_cuts(s));
    }
    // Also exercise a ternary signature: cuts live on the Gaifman graph.
    Signature tern({{"R", 3, false}});
    compared = 0;
    while (compared < 25) {
        Structure s = rand_structure(tern, 2 + static_cast<int>(rng() % 4), 0.5, rng);
        if (!is_connected(s)) continue;
        ++compared;
        CAPTURE(serialize(s));
        CHECK(as_sets(minimal_cuts(s)) == oracle_minimal_cuts(s));
    }
}

TEST_CASE("cut computation respects the size guard") {
    CutOptions small;
    small.max_vertices = 4;
    CHECK_THROWS_AS(minimal_cuts(cycle(5), small), budget_exhausted);
}

TEST_CASE("pieces of the 5-cycle") {
    auto ps = pieces(cycle(5));
    // 5 cuts x 2 components each.
    REQUIRE(ps.size() == 10);
    for (const auto& p : ps) {
        CHECK(p.piece.roots.size() == 2);
        // Roots are the cut, in natural order.
        CHECK(std::vector<std::string>(p.piece.roots.begin(), p.piece.roots.end()) ==
              p.origin.cut);
        CHECK(is_connected(p.piece.base));
        // Piece sizes for C5 cuts: 3 or 4 vertices.
        CHECK((p.piece.base.vertex_count() == 3 || p.piece.base.vertex_count() == 4));
    }
}

TEST_CASE("pieces cover the structure and overlap only in the cut") {
    std::mt19937_64 rng(123);
    int compared = 0;
    while (compared < 20) {
        Structure s = rand_structure(Signature::graph(), 3 + static_cast<int>(rng() % 4), 0.4,
                                     rng);
        if (!is_connected(s)) continue;
        ++compared;
        for (const auto& p : pieces(s)) {
            std::set<std::string> cut(p.origin.cut.begin(), p.origin.cut.end());
            // Every piece vertex is a cut vertex or in one component.
            int comp = oracle_component_count(s, cut);
            CHECK(comp >= 2);
            // The piece is induced: its tuples are exactly s's tuples inside.
            Structure ind = induced(s, p.piece.base.vertices());
            CHECK(ind == p.piece.base);
        }
    }
}

TEST_CASE("piece catalog deduplicates up to rooted isomorphism") {
    // Both cuts of C4 yield the same rooted 2-path piece.
    auto cat = catalog_family({cycle(4)});
    CHECK(cat.size() == 1);
    CHECK(cat.entry(0).piece.roots.size() == 2);

    auto cat5 = catalog_family({cycle(5)});
    CHECK(cat5.size() == 2); // 2-path and 3-path pieces

    CHECK(catalog_family({clique(3)}).size() == 0);

    // Catalog across a family accumulates distinct shapes once.
    auto both = catalog_family({cycle(4), cycle(5)});
    CHECK(both.size() == 2); // C4's piece is C5's short piece
}

TEST_CASE("catalog rejects entries from different signatures") {
    CHECK_THROWS_AS(catalog_family({cycle(4), digraph(2, {{0, 1}})}), validation_error);
}

TEST_CASE("catalog from explicit entries preserves order and validates") {
    RootedStructure p1(path(3), {"0", "2"});
    RootedStructure p2(path(4), {"0", "3"});
    auto cat = PieceCatalog::from_entries({p1, p2});
    REQUIRE(cat.size() == 2);
    CHECK(cat.entry(0).piece == p1);
    CHECK(cat.entry(1).piece == p2);
    CHECK_THROWS_AS(PieceCatalog::from_entries({p1, p1}), validation_error);
    RootedStructure disconnected(disjoint_union(clique(2), clique(2)), {"0#1"});
    CHECK_THROWS_AS(PieceCatalog::from_entries({disconnected}), validation_error);
}

TEST_CASE("family cut predicates, hand-checked table") {
    auto k3 = family_predicates({clique(3)});
    CHECK(k3.max_min_cut_size == 0);
    CHECK(k3.all_cuts_singleton);
    CHECK(k3.cuts_induce_irreducible);

    auto p4 = family_predicates({path(4)});
    CHECK(p4.max_min_cut_size == 1);
    CHECK(p4.all_cuts_singleton);
    CHECK(p4.cuts_induce_irreducible);

    auto c5 = family_predicates({cycle(5)});
    CHECK(c5.max_min_cut_size == 2);
    CHECK_FALSE(c5.all_cuts_singleton);
    CHECK_FALSE(c5.cuts_induce_irreducible);

    auto c4 = family_predicates({cycle(4)});
    CHECK(c4.max_min_cut_size == 2);
    CHECK_FALSE(c4.all_cuts_singleton);
    CHECK_FALSE(c4.cuts_induce_irreducible);
}
