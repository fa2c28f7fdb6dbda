#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "relift/codec.hpp"
#include "relift/hom.hpp"
#include "relift/structure.hpp"

namespace relift {

// Isomorphism test: a bijective embedding.  Intended for small structures;
// sizes above opts.iso_max_vertices raise budget_exhausted.
inline std::optional<VertexMap> iso_check(const Structure& a, const Structure& b,
                                          const SearchOptions& opts = {}) {
    if (a.signature() != b.signature()) throw validation_error("iso_check: signature mismatch");
    if (a.vertex_count() > opts.iso_max_vertices || b.vertex_count() > opts.iso_max_vertices)
        throw budget_exhausted("iso_check: size above configured bound");
    if (a.vertex_count() != b.vertex_count()) return std::nullopt;
    for (std::size_t s = 0; s < a.signature().size(); ++s)
        if (a.tuple_count(static_cast<int>(s)) != b.tuple_count(static_cast<int>(s)))
            return std::nullopt;
    // With equal sizes an embedding is bijective, and a bijective embedding
    // is an isomorphism.
    return search_map(a, b, MapMode::embed, {}, opts);
}

// Isomorphism respecting root order: roots[i] of a must land on roots[i] of b.
inline std::optional<VertexMap> rooted_iso_check(const RootedStructure& a, const RootedStructure& b,
                                                 const SearchOptions& opts = {}) {
    if (a.roots.size() != b.roots.size()) return std::nullopt;
    if (a.base.signature() != b.base.signature())
        throw validation_error("rooted iso: signature mismatch");
    if (a.base.vertex_count() != b.base.vertex_count()) return std::nullopt;
    for (std::size_t s = 0; s < a.base.signature().size(); ++s)
        if (a.base.tuple_count(static_cast<int>(s)) != b.base.tuple_count(static_cast<int>(s)))
            return std::nullopt;
    if (a.base.vertex_count() > opts.iso_max_vertices)
        throw budget_exhausted("rooted iso: size above configured bound");
    std::map<std::string, std::string> pins;
    for (std::size_t i = 0; i < a.roots.size(); ++i) pins[a.roots[i]] = b.roots[i];
    try {
        return search_map(a.base, b.base, MapMode::embed, pins, opts);
    } catch (const validation_error&) {
        return std::nullopt; // pins already violate a constraint
    }
}

namespace iso_detail {

// Compact relabel-and-serialize used by canonical keys: vertices as integers
// in the given order.
inline std::string keyed_form(const Structure& s, const std::vector<int>& order) {
    // order[i] = new index of vertex i
    std::string out;
    out += "n" + std::to_string(s.vertex_count()) + ";";
    for (std::size_t sym = 0; sym < s.signature().size(); ++sym) {
        std::vector<std::vector<int>> rows;
        for (const auto& t : s.tuples(static_cast<int>(sym))) {
            std::vector<int> r(t.size());
            for (std::size_t i = 0; i < t.size(); ++i)
                r[i] = order[static_cast<std::size_t>(t[i])];
            rows.push_back(std::move(r));
        }
        std::sort(rows.begin(), rows.end());
        out += "|";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i)
                out += (i ? "," : ";") + std::to_string(r[i]);
        }
    }
    return out;
}

} // namespace iso_detail

// Canonical form by minimizing the relabeled serialization over all vertex
// permutations.  Brute force: guarded to small sizes.
inline std::string canonical_key(const Structure& s, int max_vertices = 8) {
    int n = s.vertex_count();
    if (n > max_vertices) throw budget_exhausted("canonical_key: size above configured bound");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::string k = iso_detail::keyed_form(s, perm);
        if (best.empty() || k < best) best = std::move(k);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (best.empty()) best = iso_detail::keyed_form(s, perm);
    return "sig{" + serialize_signature(s.signature()) + "}" + best;
}

// Canonical form of a rooted structure: roots keep their positions 0..k-1,
// non-root vertices are permuted.
inline std::string rooted_canonical_key(const RootedStructure& rs, int max_free = 8) {
    int n = rs.base.vertex_count();
    int k = static_cast<int>(rs.roots.size());
    std::vector<int> order(static_cast<std::size_t>(n), -1);
    std::vector<int> free;
    for (int v = 0; v < n; ++v) {
        bool is_root = false;
        for (std::size_t i = 0; i < rs.roots.size(); ++i)
            if (rs.base.index_of(rs.roots[i]) == v) {
                order[static_cast<std::size_t>(v)] = static_cast<int>(i);
                is_root = true;
                break;
            }
        if (!is_root) free.push_back(v);
    }
    if (static_cast<int>(free.size()) > max_free)
        throw budget_exhausted("rooted_canonical_key: size above configured bound");
    std::sort(free.begin(), free.end());
    std::string best;
    do {
        auto o = order;
        for (std::size_t i = 0; i < free.size(); ++i)
            o[static_cast<std::size_t>(free[i])] = k + static_cast<int>(i);
        std::string key = iso_detail::keyed_form(rs.base, o);
        if (best.empty() || key < best) best = std::move(key);
    } while (std::next_permutation(free.begin(), free.end()));
    if (best.empty()) best = iso_detail::keyed_form(rs.base, order);
    return "sig{" + serialize_signature(rs.base.signature()) + "}r" + std::to_string(k) + best;
}

} // namespace relift
