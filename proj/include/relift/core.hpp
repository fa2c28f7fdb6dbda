#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "relift/codec.hpp"
#include "relift/hom.hpp"
#include "relift/iso.hpp"
#include "relift/structure.hpp"

namespace relift {

struct CoreResult {
    Structure core;       // induced on a subset of the input's vertices
    VertexMap retraction; // input -> core, identity on the core's vertices
};

namespace core_detail {

// Index-form endomorphism utilities.
inline std::vector<int> compose(const std::vector<int>& f, const std::vector<int>& g) {
    // (f after g)(v) = f[g[v]]
    std::vector<int> out(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) out[v] = f[static_cast<std::size_t>(g[v])];
    return out;
}

// Some power of any endomorphism of a finite structure is idempotent
// (finite monoid).  Found by cycle detection on the iterates.
inline std::vector<int> idempotent_power(const std::vector<int>& h) {
    std::vector<std::vector<int>> iterates{h};
    while (true) {
        auto next = compose(h, iterates.back());
        for (std::size_t k = 0; k < iterates.size(); ++k)
            if (iterates[k] == next) {
                // next = h^{l}, equal to h^{k+1}: period p = l - (k+1).
                std::size_t l = iterates.size() + 1;
                std::size_t period = l - (k + 1);
                std::size_t m = k + 1;
                while (m % period != 0) ++m; // first multiple of the period in the cycle
                return iterates[m - 1];
            }
        iterates.push_back(std::move(next));
    }
}

} // namespace core_detail

// The core: the unique (up to isomorphism) minimal retract.  Every
// endomorphism of the result is surjective.  Deterministic: vertices are
// dropped in canonical order.
inline CoreResult core_of(const Structure& a, const SearchOptions& opts = {}) {
    Structure cur = a;
    // retraction so far, name -> name over a's vertices
    std::map<std::string, std::string> retr;
    for (const auto& v : a.vertices()) retr[v] = v;

    bool shrunk = true;
    while (shrunk) {
        shrunk = false;
        for (const auto& drop : cur.canonical_vertices()) {
            std::vector<std::string> rest;
            for (const auto& v : cur.vertices())
                if (v != drop) rest.push_back(v);
            Structure smaller = induced(cur, rest);
            auto f = search_map(cur, smaller, MapMode::hom, {}, opts);
            if (!f) continue;
            // Lift back to an endomorphism of cur and take an idempotent
            // power: a retraction onto its image.
            std::vector<int> h(static_cast<std::size_t>(cur.vertex_count()));
            for (int v = 0; v < cur.vertex_count(); ++v)
                h[static_cast<std::size_t>(v)] = cur.index_of(f->at(cur.vertex(v)));
            auto e = core_detail::idempotent_power(h);
            std::vector<std::string> image;
            for (int v = 0; v < cur.vertex_count(); ++v)
                if (e[static_cast<std::size_t>(v)] == v) image.push_back(cur.vertex(v));
            Structure next = induced(cur, image);
            for (auto& [src, tgt] : retr)
                tgt = cur.vertex(e[static_cast<std::size_t>(cur.index_of(tgt))]);
            cur = std::move(next);
            shrunk = true;
            break;
        }
    }
    VertexMap r;
    r.mode = MapMode::hom;
    r.assignment = std::move(retr);
    if (!check_map(a, cur, r)) throw verification_error("core_of: retraction is not a hom");
    for (const auto& v : cur.vertices())
        if (r.at(v) != v) throw verification_error("core_of: retraction does not fix the core");
    return {std::move(cur), std::move(r)};
}

// Replace each member by its core, drop isomorphic duplicates, then drop any
// member into which another member maps (forbidding the smaller one already
// covers it).  Cores are pairwise non-hom-equivalent after dedup, so
// "maps into" is a strict partial order and the surviving set is unique.
// Output order: size, then tuple count, then serialized form.
inline std::vector<Structure> minimize_family(const std::vector<Structure>& family,
                                              const SearchOptions& opts = {}) {
    std::vector<Structure> cores;
    for (const auto& f : family) cores.push_back(core_of(f, opts).core);
    std::sort(cores.begin(), cores.end(),
              [](const Structure& x, const Structure& y) { return sort_key(x) < sort_key(y); });
    // Dedup up to isomorphism, keeping the first (least) representative.
    std::vector<Structure> distinct;
    for (const auto& c : cores) {
        bool dup = false;
        for (const auto& d : distinct)
            if (d.signature() == c.signature() && iso_check(d, c, opts)) {
                dup = true;
                break;
            }
        if (!dup) distinct.push_back(c);
    }
    std::vector<Structure> out;
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < distinct.size() && !redundant; ++j)
            if (i != j && distinct[j].signature() == distinct[i].signature() &&
                search_map(distinct[j], distinct[i], MapMode::hom, {}, opts))
                redundant = true;
        if (!redundant) out.push_back(distinct[i]);
    }
    return out;
}

} // namespace relift
