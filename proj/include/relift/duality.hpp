#pragma once

#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relift/core.hpp"
#include "relift/enumerate.hpp"
#include "relift/error.hpp"
#include "relift/hom.hpp"
#include "relift/structure.hpp"

namespace relift {

namespace duality_detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    // Returns false when the edge closes a cycle.
    bool unite(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent[static_cast<std::size_t>(ra)] = rb;
        return true;
    }
};

} // namespace duality_detail

// A relational tree: connected, no tuple repeats a vertex, and the incidence
// graph (vertices on one side, tuples on the other, one node per tuple up to
// reversal for symmetric symbols) is acyclic.
inline bool is_relational_tree(const Structure& s) {
    const int n = s.vertex_count();
    if (n == 0) return false;

    std::vector<std::vector<int>> kept; // each kept tuple, as vertex indices
    const auto& syms = s.signature().symbols();
    for (std::size_t sym = 0; sym < syms.size(); ++sym) {
        for (const auto& t : s.tuples(static_cast<int>(sym))) {
            if (syms[sym].symmetric) {
                std::vector<int> rev(t.rbegin(), t.rend());
                if (rev < t) continue; // one representative per reversal orbit
            }
            std::set<int> distinct(t.begin(), t.end());
            if (distinct.size() != t.size()) return false;
            kept.push_back(t);
        }
    }

    duality_detail::UnionFind uf(n + static_cast<int>(kept.size()));
    for (std::size_t i = 0; i < kept.size(); ++i)
        for (int v : kept[i])
            if (!uf.unite(v, n + static_cast<int>(i))) return false;

    const int root = uf.find(0);
    for (int x = 1; x < n + static_cast<int>(kept.size()); ++x)
        if (uf.find(x) != root) return false;
    return true;
}

// Whether a family can have a finite dual at all: reduce to cores, drop
// redundant members, and ask that every survivor is a relational tree.
struct DualFeasibility {
    bool admits = false;
    std::vector<Structure> minimized;
    std::vector<bool> tree_flags;
};

inline DualFeasibility admits_finite_dual(const std::vector<Structure>& family,
                                          const SearchOptions& opts = {}) {
    DualFeasibility out;
    out.minimized = minimize_family(family, opts);
    out.admits = true;
    for (const auto& m : out.minimized) {
        out.tree_flags.push_back(is_relational_tree(m));
        if (!out.tree_flags.back()) out.admits = false;
    }
    return out;
}

// The claim "X admits no hom from any forbidden member iff X maps into dual".
struct DualPairClaim {
    std::vector<Structure> forbidden;
    Structure dual;
};

enum class DualMismatch {
    class_member_without_hom, // X avoids the family but does not map into dual
    hom_without_class_member, // X maps into dual yet some member maps into X
};

inline std::string to_string(DualMismatch m) {
    return m == DualMismatch::class_member_without_hom ? "class_member_without_hom"
                                                       : "hom_without_class_member";
}

struct DualCheckReport {
    bool verified = true;
    long long checked = 0;
    std::optional<Structure> counterexample;
    std::optional<DualMismatch> kind;
};

// Enumeration options for hom-world checks: tuples may repeat vertices.
inline EnumerationOptions hom_world_enumeration() {
    EnumerationOptions e;
    e.allow_repeats = true;
    return e;
}

namespace duality_detail {

inline void check_claim_signatures(const DualPairClaim& claim) {
    if (claim.forbidden.empty()) throw validation_error("dual-pair claim needs a forbidden family");
    for (const auto& f : claim.forbidden)
        if (!(f.signature() == claim.dual.signature()))
            throw validation_error("dual-pair claim mixes signatures");
}

inline bool test_one(const DualPairClaim& claim, const Structure& x, const SearchOptions& opts,
                     DualCheckReport& rep) {
    const bool member = forb_membership(x, claim.forbidden, MapMode::hom, opts).member;
    const bool maps = search_map(x, claim.dual, MapMode::hom, {}, opts).has_value();
    ++rep.checked;
    if (member == maps) return true;
    rep.verified = false;
    rep.counterexample = x;
    rep.kind = member ? DualMismatch::class_member_without_hom
                      : DualMismatch::hom_without_class_member;
    return false;
}

} // namespace duality_detail

// Exhaustive verification over every structure with at most `scope` vertices
// (up to isomorphism).  Stops at the first mismatch.
inline DualCheckReport verify_dual_pair(const DualPairClaim& claim, int scope,
                                        const EnumerationOptions& eopts = hom_world_enumeration(),
                                        const SearchOptions& opts = {}) {
    duality_detail::check_claim_signatures(claim);
    DualCheckReport rep;
    for (const auto& x : enumerate_structures_up_to(claim.dual.signature(), scope, eopts))
        if (!duality_detail::test_one(claim, x, opts, rep)) break;
    return rep;
}

// Verification against a supplied corpus instead of exhaustive enumeration.
inline DualCheckReport verify_dual_pair_on(const DualPairClaim& claim,
                                           const std::vector<Structure>& corpus,
                                           const SearchOptions& opts = {}) {
    duality_detail::check_claim_signatures(claim);
    DualCheckReport rep;
    for (const auto& x : corpus) {
        if (!(x.signature() == claim.dual.signature()))
            throw validation_error("corpus structure signature does not match the claim");
        if (!duality_detail::test_one(claim, x, opts, rep)) break;
    }
    return rep;
}

// Restricted duality: the biconditional is only claimed inside the class of
// structures avoiding `restriction` (checked in hom mode).
inline DualCheckReport verify_restricted_duality(
    const DualPairClaim& claim, const std::vector<Structure>& restriction, int scope,
    const EnumerationOptions& eopts = hom_world_enumeration(), const SearchOptions& opts = {}) {
    duality_detail::check_claim_signatures(claim);
    for (const auto& r : restriction)
        if (!(r.signature() == claim.dual.signature()))
            throw validation_error("restriction family signature does not match the claim");
    DualCheckReport rep;
    for (const auto& x : enumerate_forb(claim.dual.signature(), restriction, MapMode::hom, scope,
                                        eopts, opts))
        if (!duality_detail::test_one(claim, x, opts, rep)) break;
    return rep;
}

// Hom-universality inside the class: the target itself avoids the family and
// every class member up to `scope` maps into it.
struct HomUniversalReport {
    bool target_in_class = false;
    bool all_admitted = true;
    long long checked = 0;
    std::optional<Structure> counterexample;

    bool verified() const { return target_in_class && all_admitted; }
};

inline HomUniversalReport hom_universal_check(const Structure& target,
                                              const std::vector<Structure>& family, int scope,
                                              const EnumerationOptions& eopts = hom_world_enumeration(),
                                              const SearchOptions& opts = {}) {
    for (const auto& f : family)
        if (!(f.signature() == target.signature()))
            throw validation_error("family signature does not match the target");
    HomUniversalReport rep;
    rep.target_in_class = forb_membership(target, family, MapMode::hom, opts).member;
    for (const auto& x :
         enumerate_forb(target.signature(), family, MapMode::hom, scope, eopts, opts)) {
        ++rep.checked;
        if (!search_map(x, target, MapMode::hom, {}, opts)) {
            rep.all_admitted = false;
            rep.counterexample = x;
            break;
        }
    }
    return rep;
}

// Same check against a supplied corpus; corpus members outside the class are
// skipped (they claim nothing about the target).
inline HomUniversalReport hom_universal_check_on(const Structure& target,
                                                 const std::vector<Structure>& family,
                                                 const std::vector<Structure>& corpus,
                                                 const SearchOptions& opts = {}) {
    for (const auto& f : family)
        if (!(f.signature() == target.signature()))
            throw validation_error("family signature does not match the target");
    HomUniversalReport rep;
    rep.target_in_class = forb_membership(target, family, MapMode::hom, opts).member;
    for (const auto& x : corpus) {
        if (!(x.signature() == target.signature()))
            throw validation_error("corpus structure signature does not match the target");
        if (!forb_membership(x, family, MapMode::hom, opts).member) continue;
        ++rep.checked;
        if (!search_map(x, target, MapMode::hom, {}, opts)) {
            rep.all_admitted = false;
            rep.counterexample = x;
            break;
        }
    }
    return rep;
}

} // namespace relift
