#pragma once

#include <array>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "relift/error.hpp"
#include "relift/structure.hpp"

namespace relift {

namespace gen_detail {

inline std::vector<std::string> number_names(int n) {
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

// Deterministic uniform double in [0,1).
inline double unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace gen_detail

inline Structure make_path(int n) {
    if (n < 1) throw validation_error("path needs n >= 1");
    Structure s(Signature::graph(), gen_detail::number_names(n));
    for (int i = 0; i + 1 < n; ++i) s.add_tuple_indices(0, {i, i + 1});
    return s;
}

inline Structure make_cycle(int n) {
    if (n < 3) throw validation_error("cycle needs n >= 3");
    Structure s(Signature::graph(), gen_detail::number_names(n));
    for (int i = 0; i < n; ++i) s.add_tuple_indices(0, {i, (i + 1) % n});
    return s;
}

inline Structure make_clique(int n) {
    if (n < 1) throw validation_error("clique needs n >= 1");
    Structure s(Signature::graph(), gen_detail::number_names(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s.add_tuple_indices(0, {i, j});
    return s;
}

// n vertices, n-1 arcs 0 -> 1 -> ... -> n-1.
inline Structure make_oriented_path(int n) {
    if (n < 1) throw validation_error("oriented_path needs n >= 1");
    Structure s(Signature::digraph(), gen_detail::number_names(n));
    for (int i = 0; i + 1 < n; ++i) s.add_tuple_indices(0, {i, i + 1});
    return s;
}

inline Structure make_transitive_tournament(int n) {
    if (n < 1) throw validation_error("transitive_tournament needs n >= 1");
    Structure s(Signature::digraph(), gen_detail::number_names(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s.add_tuple_indices(0, {i, j});
    return s;
}

// Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram 5..9.
inline Structure make_petersen() {
    Structure s(Signature::graph(), gen_detail::number_names(10));
    for (int i = 0; i < 5; ++i) {
        s.add_tuple_indices(0, {i, (i + 1) % 5});
        s.add_tuple_indices(0, {i, i + 5});
        s.add_tuple_indices(0, {5 + i, 5 + (i + 2) % 5});
    }
    return s;
}

// All possible tuples of one symbol over vertex indices 0..n-1, in sorted
// order.  Distinct entries unless allow_repeats; symmetric symbols list one
// representative per reversal orbit.
inline std::vector<std::vector<int>> possible_tuples(const SymbolDecl& decl, int n,
                                                     bool allow_repeats) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(decl.arity), 0);
    while (true) {
        bool ok = true;
        if (!allow_repeats) {
            for (std::size_t i = 0; ok && i < cur.size(); ++i)
                for (std::size_t j = i + 1; ok && j < cur.size(); ++j)
                    if (cur[i] == cur[j]) ok = false;
        }
        if (ok && decl.symmetric) {
            std::vector<int> rev(cur.rbegin(), cur.rend());
            if (rev < cur) ok = false;
        }
        if (ok) out.push_back(cur);
        int pos = decl.arity - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == n - 1) {
            cur[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++cur[static_cast<std::size_t>(pos)];
    }
    return out;
}

// Each possible tuple is included independently with probability p.
inline Structure random_structure(const Signature& sig, int n, double p, std::mt19937_64& rng,
                                  bool allow_repeats = false) {
    if (n < 0) throw validation_error("random_structure needs n >= 0");
    Structure s(sig, gen_detail::number_names(n));
    for (std::size_t symi = 0; symi < sig.size(); ++symi) {
        for (const auto& t : possible_tuples(sig.symbol(static_cast<int>(symi)), n, allow_repeats))
            if (gen_detail::unit(rng) < p) s.add_tuple_indices(static_cast<int>(symi), t);
    }
    return s;
}

inline Structure random_connected_graph(int n, double p, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        Structure s = random_structure(Signature::graph(), n, p, rng);
        if (is_connected(s)) return s;
    }
    throw budget_exhausted("random_connected_graph: rejection budget exhausted");
}

// Random maximal planar graph by incremental triangulation: start from a
// triangle, repeatedly place a new vertex inside a uniformly chosen face.
inline Structure random_maximal_planar(int n, std::mt19937_64& rng) {
    if (n < 3) return make_path(n < 1 ? 1 : n);
    Structure s(Signature::graph(), gen_detail::number_names(n));
    s.add_tuple_indices(0, {0, 1});
    s.add_tuple_indices(0, {0, 2});
    s.add_tuple_indices(0, {1, 2});
    std::vector<std::array<int, 3>> faces{{0, 1, 2}};
    for (int v = 3; v < n; ++v) {
        std::size_t fi = static_cast<std::size_t>(rng() % faces.size());
        auto [a, b, c] = faces[fi];
        s.add_tuple_indices(0, {a, v});
        s.add_tuple_indices(0, {b, v});
        s.add_tuple_indices(0, {c, v});
        faces.erase(faces.begin() + static_cast<std::ptrdiff_t>(fi));
        faces.push_back({a, b, v});
        faces.push_back({b, c, v});
        faces.push_back({a, c, v});
    }
    return s;
}

// Named families used by the CLI.
inline Structure generate_named(const std::string& family, int n, double p, std::uint64_t seed) {
    if (family == "path") return make_path(n);
    if (family == "cycle") return make_cycle(n);
    if (family == "clique") return make_clique(n);
    if (family == "oriented_path") return make_oriented_path(n);
    if (family == "transitive_tournament") return make_transitive_tournament(n);
    if (family == "petersen") return make_petersen();
    if (family == "random") {
        std::mt19937_64 rng(seed);
        return random_structure(Signature::graph(), n, p, rng);
    }
    if (family == "random_connected") {
        std::mt19937_64 rng(seed);
        return random_connected_graph(n, p, rng);
    }
    if (family == "planar") {
        std::mt19937_64 rng(seed);
        return random_maximal_planar(n, rng);
    }
    throw validation_error("unknown family '" + family + "'");
}

} // namespace relift
