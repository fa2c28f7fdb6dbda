#pragma once
// Shared test helpers: small builders plus brute-force reference
// implementations.  The oracles are deliberately naive and share no code with
// the library's search machinery, so agreement is meaningful.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "relift/relift.hpp"

namespace testsupport {

using relift::MapMode;
using relift::Structure;
using relift::Tuple;

inline std::vector<std::string> names(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

inline Structure graph(int n, const std::vector<std::pair<int, int>>& edges) {
    Structure s(relift::Signature::graph(), names(n));
    for (auto [a, b] : edges) s.add_tuple(0, {std::to_string(a), std::to_string(b)});
    return s;
}

inline Structure digraph(int n, const std::vector<std::pair<int, int>>& arcs) {
    Structure s(relift::Signature::digraph(), names(n));
    for (auto [a, b] : arcs) s.add_tuple(0, {std::to_string(a), std::to_string(b)});
    return s;
}

inline Structure clique(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return graph(n, e);
}

inline Structure cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return graph(n, e);
}

inline Structure path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return graph(n, e);
}

inline Structure oriented_path(int arcs) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < arcs; ++i) e.emplace_back(i, i + 1);
    return digraph(arcs + 1, e);
}

// All maps from a's vertices to b's vertices satisfying the given mode,
// found by checking every one of the |b|^|a| candidate functions.
inline std::vector<std::map<std::string, std::string>> oracle_maps(const Structure& a,
                                                                   const Structure& b,
                                                                   MapMode mode) {
    std::vector<std::map<std::string, std::string>> found;
    const auto av = a.vertices();
    const auto bv = b.vertices();
    if (av.empty()) {
        found.push_back({});
        return found;
    }
    if (bv.empty()) return found;

    std::vector<std::set<Tuple>> b_rel(b.signature().size());
    for (std::size_t s = 0; s < b.signature().size(); ++s)
        for (const auto& t : b.tuples_named(static_cast<int>(s))) b_rel[s].insert(t);

    std::vector<std::size_t> pick(av.size(), 0);
    while (true) {
        std::map<std::string, std::string> f;
        for (std::size_t i = 0; i < av.size(); ++i) f[av[i]] = bv[pick[i]];

        bool ok = true;
        if (mode != MapMode::hom) {
            std::set<std::string> image;
            for (const auto& [k, v] : f) image.insert(v);
            ok = image.size() == av.size();
        }
        for (std::size_t s = 0; ok && s < a.signature().size(); ++s)
            for (const auto& t : a.tuples_named(static_cast<int>(s))) {
                Tuple u(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) u[i] = f[t[i]];
                if (!b_rel[s].count(u)) {
                    ok = false;
                    break;
                }
            }
        if (ok && mode == MapMode::embed) {
            // Reflection: a tuple on image vertices must come from a tuple.
            std::map<std::string, std::string> inv;
            for (const auto& [k, v] : f) inv[v] = k;
            std::vector<std::set<Tuple>> a_rel(a.signature().size());
            for (std::size_t s = 0; s < a.signature().size(); ++s)
                for (const auto& t : a.tuples_named(static_cast<int>(s))) a_rel[s].insert(t);
            for (std::size_t s = 0; ok && s < b.signature().size(); ++s)
                for (const auto& u : b.tuples_named(static_cast<int>(s))) {
                    bool in_image = true;
                    Tuple t(u.size());
                    for (std::size_t i = 0; i < u.size(); ++i) {
                        auto it = inv.find(u[i]);
                        if (it == inv.end()) {
                            in_image = false;
                            break;
                        }
                        t[i] = it->second;
                    }
                    if (in_image && !a_rel[s].count(t)) {
                        ok = false;
                        break;
                    }
                }
        }
        if (ok) found.push_back(std::move(f));

        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == bv.size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return found;
}

inline bool oracle_has_map(const Structure& a, const Structure& b, MapMode mode) {
    return !oracle_maps(a, b, mode).empty();
}

// Connectivity of the Gaifman graph after deleting `removed`, by plain DFS
// over tuples.
inline int oracle_component_count(const Structure& s, const std::set<std::string>& removed) {
    std::set<std::string> alive;
    for (const auto& v : s.vertices())
        if (!removed.count(v)) alive.insert(v);
    if (alive.empty()) return 0;

    std::map<std::string, std::set<std::string>> adj;
    for (std::size_t sym = 0; sym < s.signature().size(); ++sym)
        for (const auto& t : s.tuples_named(static_cast<int>(sym)))
            for (const auto& u : t)
                for (const auto& w : t)
                    if (u != w && alive.count(u) && alive.count(w)) adj[u].insert(w);

    int comps = 0;
    std::set<std::string> seen;
    for (const auto& v : alive) {
        if (seen.count(v)) continue;
        ++comps;
        std::vector<std::string> stack{v};
        seen.insert(v);
        while (!stack.empty()) {
            std::string u = stack.back();
            stack.pop_back();
            for (const auto& w : adj[u])
                if (seen.insert(w).second) stack.push_back(w);
        }
    }
    return comps;
}

// Every inclusion-minimal vertex cut, by scanning all 2^n vertex subsets.
inline std::vector<std::set<std::string>> oracle_minimal_cuts(const Structure& s) {
    const auto verts = s.canonical_vertices();
    const int n = static_cast<int>(verts.size());
    std::vector<std::set<std::string>> separating;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        std::set<std::string> cut;
        for (int i = 0; i < n; ++i)
            if (mask & (1ul << i)) cut.insert(verts[static_cast<std::size_t>(i)]);
        if (static_cast<int>(cut.size()) == n) continue;
        if (oracle_component_count(s, cut) >= 2) separating.push_back(std::move(cut));
    }
    std::vector<std::set<std::string>> minimal;
    for (const auto& c : separating) {
        bool least = true;
        for (const auto& d : separating)
            if (d != c && std::includes(c.begin(), c.end(), d.begin(), d.end())) {
                least = false;
                break;
            }
        if (least) minimal.push_back(c);
    }
    std::sort(minimal.begin(), minimal.end());
    return minimal;
}

// Proper k-colorability of the Gaifman graph by exhaustive assignment.
inline bool oracle_colorable(const Structure& s, int k) {
    const auto verts = s.vertices();
    const int n = static_cast<int>(verts.size());
    std::map<std::string, std::set<std::string>> adj;
    for (std::size_t sym = 0; sym < s.signature().size(); ++sym)
        for (const auto& t : s.tuples_named(static_cast<int>(sym)))
            for (const auto& u : t)
                for (const auto& w : t)
                    if (u != w) adj[u].insert(w);
    std::vector<int> color(static_cast<std::size_t>(n), 0);
    while (true) {
        bool proper = true;
        for (int i = 0; proper && i < n; ++i)
            for (const auto& w : adj[verts[static_cast<std::size_t>(i)]]) {
                int j = s.index_of(w);
                if (color[static_cast<std::size_t>(i)] == color[static_cast<std::size_t>(j)]) {
                    proper = false;
                    break;
                }
            }
        if (proper) return true;
        int i = 0;
        while (i < n && ++color[static_cast<std::size_t>(i)] == k)
            color[static_cast<std::size_t>(i++)] = 0;
        if (i == n) return false;
    }
}

inline Structure rand_structure(const relift::Signature& sig, int n, double p,
                                  std::mt19937_64& rng) {
    Structure s(sig, names(n));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t sym = 0; sym < sig.size(); ++sym) {
        const int arity = sig.symbol(static_cast<int>(sym)).arity;
        std::vector<int> idx(static_cast<std::size_t>(arity), 0);
        while (true) {
            bool repeats = false;
            for (std::size_t i = 0; i + 1 < idx.size(); ++i)
                for (std::size_t j = i + 1; j < idx.size(); ++j)
                    if (idx[i] == idx[j]) repeats = true;
            if (!repeats && unit(rng) < p) s.add_tuple_indices(static_cast<int>(sym), idx);
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == n) idx[i++] = 0;
            if (i == idx.size()) break;
        }
    }
    return s;
}

} // namespace testsupport
