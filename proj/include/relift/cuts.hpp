#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relift/codec.hpp"
#include "relift/iso.hpp"
#include "relift/structure.hpp"

namespace relift {

struct CutOptions {
    int max_vertices = 15; // subset enumeration bound
    SearchOptions search;
};

namespace cut_detail {

// Connectivity of the Gaifman graph restricted to `alive`.
inline int live_component_count(const std::vector<std::vector<int>>& adj,
                                const std::vector<char>& alive) {
    int n = static_cast<int>(adj.size());
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int comps = 0;
    for (int start = 0; start < n; ++start) {
        if (!alive[static_cast<std::size_t>(start)] || seen[static_cast<std::size_t>(start)]) continue;
        ++comps;
        std::vector<int> stack{start};
        seen[static_cast<std::size_t>(start)] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(v)])
                if (alive[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
        }
    }
    return comps;
}

} // namespace cut_detail

// Irreducible: no cut; equivalently every two distinct vertices share a tuple
// (the Gaifman graph is complete).
inline bool is_irreducible(const Structure& a) {
    auto adj = gaifman_adjacency(a);
    int n = a.vertex_count();
    for (int v = 0; v < n; ++v)
        if (static_cast<int>(adj[static_cast<std::size_t>(v)].size()) != n - 1) return false;
    return true;
}

// Inclusion-minimal vertex cuts of the Gaifman graph, each cut sorted in
// natural order, the list ordered by (size, lexicographic).  Empty list iff
// the structure is irreducible.  Requires a connected input.
inline std::vector<std::vector<std::string>> minimal_cuts(const Structure& a,
                                                          const CutOptions& opts = {}) {
    if (!is_connected(a)) throw validation_error("minimal_cuts: input is disconnected");
    int n = a.vertex_count();
    if (n > opts.max_vertices) throw budget_exhausted("minimal_cuts: size above configured bound");
    auto adj = gaifman_adjacency(a);

    // Vertex indices in canonical order, so subsets come out sorted.
    std::vector<int> canon;
    for (const auto& v : a.canonical_vertices()) canon.push_back(a.index_of(v));

    std::vector<std::vector<int>> minimal; // canonical positions, ascending
    std::vector<std::vector<std::string>> out;
    // Subsets by size, then lexicographically on canonical positions.
    std::vector<int> pick;
    auto is_superset_of_known = [&](const std::vector<int>& s) {
        for (const auto& m : minimal)
            if (std::includes(s.begin(), s.end(), m.begin(), m.end())) return true;
        return false;
    };
    for (int size = 1; size <= n - 2; ++size) {
        pick.assign(static_cast<std::size_t>(size), 0);
        for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
        while (true) {
            if (!is_superset_of_known(pick)) {
                std::vector<char> alive(static_cast<std::size_t>(n), 1);
                for (int p : pick) alive[static_cast<std::size_t>(canon[static_cast<std::size_t>(p)])] = 0;
                if (cut_detail::live_component_count(adj, alive) >= 2) {
                    minimal.push_back(pick);
                    std::vector<std::string> cut;
                    for (int p : pick) cut.push_back(a.vertex(canon[static_cast<std::size_t>(p)]));
                    out.push_back(std::move(cut));
                }
            }
            // next combination
            int i = size - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - size + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j)
                pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

struct PieceProvenance {
    std::vector<std::string> cut;      // the minimal cut, natural order
    std::string component_least;       // least vertex of the component
};

// A piece: the induced substructure on cut + one component of the rest,
// rooted at the cut in natural order.
struct RootedPiece {
    RootedStructure piece;
    PieceProvenance origin;
};

inline std::vector<RootedPiece> pieces(const Structure& a, const CutOptions& opts = {}) {
    std::vector<RootedPiece> out;
    for (const auto& cut : minimal_cuts(a, opts)) {
        std::set<std::string> cutset(cut.begin(), cut.end());
        std::vector<std::string> rest;
        for (const auto& v : a.vertices())
            if (!cutset.count(v)) rest.push_back(v);
        for (const auto& comp : components(induced(a, rest))) {
            std::vector<std::string> verts = cut;
            verts.insert(verts.end(), comp.begin(), comp.end());
            RootedStructure rs(induced(a, verts), Tuple(cut.begin(), cut.end()));
            out.push_back({std::move(rs), {cut, comp[0]}});
        }
    }
    return out;
}

// Root-order-preserving isomorphism between pieces.
inline std::optional<VertexMap> piece_iso(const RootedStructure& p1, const RootedStructure& p2,
                                          const SearchOptions& opts = {}) {
    return rooted_iso_check(p1, p2, opts);
}

inline std::optional<VertexMap> piece_iso(const RootedPiece& p1, const RootedPiece& p2,
                                          const SearchOptions& opts = {}) {
    return rooted_iso_check(p1.piece, p2.piece, opts);
}

// Deduplicated piece catalog of a family.  Entry order is (size, rooted
// canonical form), stable across runs.  extend() appends new entries without
// disturbing existing indices.
class PieceCatalog {
public:
    PieceCatalog() = default;

    static PieceCatalog build(const std::vector<Structure>& family, const CutOptions& opts = {}) {
        PieceCatalog cat;
        cat.extend(family, opts);
        return cat;
    }

    // Rebuilds a catalog from explicit entries, preserving their order (used
    // when reading a stored catalog, where indices are already meaningful).
    static PieceCatalog from_entries(const std::vector<RootedStructure>& pieces) {
        PieceCatalog cat;
        std::set<std::string> keys;
        for (const auto& p : pieces) {
            if (!pieces.empty() && p.base.signature() != pieces[0].base.signature())
                throw validation_error("piece catalog: entries disagree on signature");
            if (!is_connected(p.base))
                throw validation_error("piece catalog: entries must be connected");
            if (!keys.insert(rooted_canonical_key(p)).second)
                throw validation_error("piece catalog: duplicate entry");
            cat.entries_.push_back(RootedPiece{p, PieceProvenance{}});
        }
        return cat;
    }

    // Gathers pieces of the given members, skips ones already present (up to
    // rooted isomorphism), sorts only the newly appended block.
    void extend(const std::vector<Structure>& family, const CutOptions& opts = {}) {
        for (std::size_t i = 0; i < family.size(); ++i) {
            if (i > 0 && family[i].signature() != family[0].signature())
                throw validation_error("piece catalog: family members disagree on signature");
            if (!entries_.empty() && family[i].signature() != entries_[0].piece.base.signature())
                throw validation_error("piece catalog: signature mismatch with existing entries");
            if (!is_connected(family[i]))
                throw validation_error("piece catalog: family members must be connected");
        }
        std::vector<std::pair<std::string, RootedPiece>> fresh;
        for (const auto& m : family)
            for (auto& p : pieces(m, opts)) {
                std::string key = rooted_canonical_key(p.piece);
                bool dup = std::any_of(entries_.begin(), entries_.end(), [&](const RootedPiece& e) {
                    return rooted_canonical_key(e.piece) == key;
                });
                if (!dup)
                    dup = std::any_of(fresh.begin(), fresh.end(),
                                      [&](const auto& f) { return f.first == key; });
                if (!dup) fresh.emplace_back(std::move(key), std::move(p));
            }
        std::sort(fresh.begin(), fresh.end(), [](const auto& x, const auto& y) {
            auto kx = std::make_tuple(x.second.piece.base.vertex_count(), x.first);
            auto ky = std::make_tuple(y.second.piece.base.vertex_count(), y.first);
            return kx < ky;
        });
        for (auto& f : fresh) entries_.push_back(std::move(f.second));
    }

    std::size_t size() const { return entries_.size(); }
    const RootedPiece& entry(int i) const { return entries_.at(static_cast<std::size_t>(i)); }
    int root_arity(int i) const {
        return static_cast<int>(entries_.at(static_cast<std::size_t>(i)).piece.roots.size());
    }
    const std::vector<RootedPiece>& entries() const { return entries_; }

    // Content digest used for "same catalog" checks between lifts.
    std::string key() const {
        std::string out;
        for (const auto& e : entries_) out += rooted_canonical_key(e.piece) + "\n";
        return out;
    }

    bool same_as(const PieceCatalog& o) const { return key() == o.key(); }

private:
    std::vector<RootedPiece> entries_;
};

inline PieceCatalog catalog_family(const std::vector<Structure>& family,
                                   const CutOptions& opts = {}) {
    return PieceCatalog::build(family, opts);
}

// Executable nested-piece rule.  p1 is a piece of `a`; p2 is a piece of
// p1's base.  Returns whether the hypothesis holds: every root of p1 lying in
// p2 is a root of p2.  When it does, p2 must again be a piece of `a` (up to
// root-order-preserving isomorphism); if that conclusion fails, something is
// wrong with the piece machinery and a verification_error is thrown.
inline bool nested_piece_check(const Structure& a, const RootedPiece& p1, const RootedPiece& p2,
                               const CutOptions& opts = {}) {
    // Provenance check: both claimed pieces must really occur.
    auto occurs = [&](const Structure& whole, const RootedPiece& p) {
        for (const auto& q : pieces(whole, opts))
            if (q.piece == p.piece) return true;
        return false;
    };
    if (!occurs(a, p1)) throw validation_error("nested_piece_check: p1 is not a piece of the input");
    if (!occurs(p1.piece.base, p2))
        throw validation_error("nested_piece_check: p2 is not a piece of p1");

    std::set<std::string> roots2(p2.piece.roots.begin(), p2.piece.roots.end());
    for (const auto& r : p1.piece.roots)
        if (p2.piece.base.has_vertex(r) && !roots2.count(r)) return false;

    for (const auto& q : pieces(a, opts))
        if (piece_iso(q.piece, p2.piece, opts.search)) return true;
    throw verification_error("nested_piece_check: hypothesis holds but the nested piece is not a piece of the whole");
}

struct FamilyPredicates {
    int max_min_cut_size = 0;      // 0 when no member has a cut
    bool all_cuts_singleton = true;
    bool cuts_induce_irreducible = true;
};

inline FamilyPredicates family_predicates(const std::vector<Structure>& family,
                                          const CutOptions& opts = {}) {
    FamilyPredicates out;
    for (const auto& m : family)
        for (const auto& cut : minimal_cuts(m, opts)) {
            out.max_min_cut_size = std::max(out.max_min_cut_size, static_cast<int>(cut.size()));
            if (cut.size() != 1) out.all_cuts_singleton = false;
            if (!is_irreducible(induced(m, cut))) out.cuts_induce_irreducible = false;
        }
    return out;
}

} // namespace relift
