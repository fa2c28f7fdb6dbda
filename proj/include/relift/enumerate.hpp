#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "relift/generate.hpp"
#include "relift/hom.hpp"
#include "relift/iso.hpp"
#include "relift/structure.hpp"

namespace relift {

struct EnumerationOptions {
    bool allow_repeats = false;   // tuples with repeated entries (loops)
    bool connected_only = false;  // filters output; the build keeps everything
    std::uint64_t max_work = std::uint64_t{1} << 24; // candidate-structure guard
    int canonical_max_vertices = 8;
};

namespace enum_detail {

// One-vertex augmentations: all ways to attach a fresh vertex to `base` via
// tuples that mention it.
inline std::vector<Structure> augmentations(const Structure& base, const EnumerationOptions& opts,
                                            std::uint64_t& work) {
    int n = base.vertex_count();
    Structure grown(base.signature());
    for (const auto& v : base.vertices()) grown.add_vertex(v);
    grown.add_vertex(std::to_string(n));
    for (std::size_t s = 0; s < base.signature().size(); ++s)
        for (const auto& t : base.tuples(static_cast<int>(s)))
            grown.add_tuple_indices(static_cast<int>(s), t);

    // Candidate tuples touching the fresh vertex.
    std::vector<std::pair<int, std::vector<int>>> cand;
    for (std::size_t s = 0; s < base.signature().size(); ++s) {
        for (const auto& t : possible_tuples(base.signature().symbol(static_cast<int>(s)), n + 1,
                                             opts.allow_repeats)) {
            bool touches = false;
            for (int x : t)
                if (x == n) touches = true;
            if (touches) cand.emplace_back(static_cast<int>(s), t);
        }
    }
    if (cand.size() > 24) throw budget_exhausted("enumeration: attachment set too large");
    std::vector<Structure> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cand.size()); ++mask) {
        if (++work > opts.max_work) throw budget_exhausted("enumeration: work bound exceeded");
        Structure s = grown;
        for (std::size_t i = 0; i < cand.size(); ++i)
            if (mask & (std::uint64_t{1} << i)) s.add_tuple_indices(cand[i].first, cand[i].second);
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace enum_detail

// All structures with at most max_n vertices up to isomorphism, smallest
// first, deterministic (canonical-key order within a size).  Includes the
// empty structure.  Every n-vertex structure arises from an (n-1)-vertex one
// by deleting a vertex, so augmenting a complete list of representatives and
// deduplicating by canonical form is complete.
//
// `keep` prunes during the build, so it must be a hereditary property
// (preserved by induced substructures) for the result to be complete —
// Forb-style classes qualify.  Pass nullptr to keep everything.
inline std::vector<Structure> enumerate_structures_up_to(
    const Signature& sig, int max_n, const EnumerationOptions& opts = {},
    const std::function<bool(const Structure&)>& keep = nullptr) {
    if (max_n < 0) throw validation_error("enumerate_structures_up_to: max_n < 0");
    std::vector<Structure> out;
    std::vector<Structure> reps{Structure(sig)};
    if (!keep || keep(reps[0])) out.push_back(reps[0]);
    std::uint64_t work = 0;
    for (int size = 1; size <= max_n; ++size) {
        std::map<std::string, Structure> next;
        for (const auto& r : reps)
            for (auto& s : enum_detail::augmentations(r, opts, work)) {
                if (keep && !keep(s)) continue;
                std::string key = canonical_key(s, opts.canonical_max_vertices);
                next.emplace(std::move(key), std::move(s));
            }
        reps.clear();
        for (auto& [key, s] : next) reps.push_back(std::move(s));
        for (const auto& s : reps)
            if (!opts.connected_only || is_connected(s)) out.push_back(s);
    }
    return out;
}

// All structures on exactly n vertices up to isomorphism.
inline std::vector<Structure> enumerate_structures(
    const Signature& sig, int n, const EnumerationOptions& opts = {},
    const std::function<bool(const Structure&)>& keep = nullptr) {
    std::vector<Structure> out;
    for (auto& s : enumerate_structures_up_to(sig, n, opts, keep))
        if (s.vertex_count() == n) out.push_back(std::move(s));
    return out;
}

// Representatives of Forb(F) up to max_n vertices.  Forb classes are
// hereditary (a map into an induced substructure composes with the
// inclusion), so pruning during augmentation is sound and complete.
inline std::vector<Structure> enumerate_forb(const Signature& sig,
                                             const std::vector<Structure>& family, MapMode mode,
                                             int max_n, const EnumerationOptions& opts = {},
                                             const SearchOptions& sopts = {}) {
    auto keep = [&](const Structure& s) { return forb_membership(s, family, mode, sopts).member; };
    return enumerate_structures_up_to(sig, max_n, opts, keep);
}

} // namespace relift
