#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "relift/core.hpp"
#include "relift/cuts.hpp"
#include "relift/error.hpp"
#include "relift/hom.hpp"
#include "relift/iso.hpp"
#include "relift/structure.hpp"

namespace relift {

// Parameters of the coloring gadget: n levels (tuples have arity 2n), colors
// drawn from 2^k, ground set [N].  `literal_sets` switches to the uncorrected
// set-system parameters, which are recorded as inconsistent (they admit no
// member set of the size the tuple rule needs) and exist for audit only.
struct RamseyParams {
    int n = 2;
    int k = 1;
    int N = 5;
    bool literal_sets = false;
};

// A leveled structure with one relation of arity 2n whose tuples pair up two
// vertices per level; built so that any 2^k-coloring leaves some tuple with
// equal colors inside every pair.
struct RamseyStructure {
    Structure base;                    // single symbol "R" of arity 2n
    std::map<std::string, int> level;  // vertex -> 1..n
    RamseyParams params;

    int pair_count() const { return params.n; }
    int arity() const { return 2 * params.n; }
};

namespace ramsey_detail {

// k-element subsets of {1..n} in lexicographic order.
inline std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> comb(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        out.push_back(comb);
        int i = k - 1;
        while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
        if (i < 0) break;
        ++comb[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

inline std::string vertex_name(const std::vector<int>& set, int lvl) {
    std::string s = "l" + std::to_string(lvl);
    for (int e : set) s += "_" + std::to_string(e);
    return s;
}

inline unsigned long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    unsigned long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned long long>(n - k + i) /
                                      static_cast<unsigned long long>(i);
    return r;
}

} // namespace ramsey_detail

// Builds the leveled coloring gadget.  The ground objects are the
// (2n-1)-element subsets of [N]; each 2n-element subset U of [N] contributes
// one member set (all (2n-1)-subsets of U, which is 2n of them, pairwise
// sharing at most one object) and hence one tuple: with the member set sorted
// as w1 < w2 < ... < w_2n, the tuple is (v1,u1,...,vn,un) where u_i = w_{2i-1}
// and v_i = w_{2i}, each placed on level i.  Isolated vertices are pruned.
inline RamseyStructure build_ramsey_structure(const RamseyParams& params) {
    if (params.n < 1 || params.k < 0 || params.N < 1)
        throw validation_error("build_ramsey_structure: need n >= 1, k >= 0, N >= 1");
    if (params.n > 6) throw budget_exhausted("build_ramsey_structure: n above desk scale");

    const int n = params.n;
    if (params.literal_sets) {
        // Literal parameters: ground objects are (n-1)-subsets and member sets
        // collect n of them, so every member set has n elements while the
        // tuple rule needs a strictly increasing sequence of 2n distinct
        // ground objects.  No tuple can form for any n >= 1.
        throw validation_error(
            "build_ramsey_structure: the literal set-system parameters admit no member set of "
            "size 2n, so the relation is empty; use the corrected parameters");
    }

    const int m = 2 * n - 1;
    if (params.N < 2 * n)
        throw validation_error("build_ramsey_structure: N < 2n leaves the relation empty");
    if (ramsey_detail::binomial(params.N, m) > 200000ULL ||
        ramsey_detail::binomial(params.N, 2 * n) > 200000ULL)
        throw budget_exhausted("build_ramsey_structure: parameters above desk scale");

    // Tuples, named; the lexicographic order on sorted element lists is the
    // fixed linear order on ground objects.
    std::vector<std::vector<std::string>> tuples;
    for (const auto& u : ramsey_detail::k_subsets(params.N, 2 * n)) {
        std::vector<std::vector<int>> members;
        for (int leave = 0; leave < 2 * n; ++leave) {
            std::vector<int> w;
            for (int j = 0; j < 2 * n; ++j)
                if (j != leave) w.push_back(u[static_cast<std::size_t>(j)]);
            members.push_back(std::move(w));
        }
        std::sort(members.begin(), members.end());
        std::vector<std::string> tup;
        for (int i = 1; i <= n; ++i) {
            tup.push_back(ramsey_detail::vertex_name(members[static_cast<std::size_t>(2 * i - 1)], i));
            tup.push_back(ramsey_detail::vertex_name(members[static_cast<std::size_t>(2 * i - 2)], i));
        }
        tuples.push_back(std::move(tup));
    }
    if (tuples.empty())
        throw validation_error("build_ramsey_structure: construction is empty for these parameters");

    RamseyStructure out;
    out.params = params;

    std::set<std::string> in_tuples;
    for (const auto& t : tuples) in_tuples.insert(t.begin(), t.end());
    std::vector<std::string> verts;
    for (int i = 1; i <= n; ++i)
        for (const auto& x : ramsey_detail::k_subsets(params.N, m)) {
            std::string name = ramsey_detail::vertex_name(x, i);
            if (in_tuples.count(name)) verts.push_back(name);
        }

    Structure base(Signature({SymbolDecl{"R", 2 * n, false}}), verts);
    for (const auto& t : tuples) base.add_tuple(0, t);
    out.base = std::move(base);
    for (const auto& v : verts) out.level[v] = v[1] - '0';
    return out;
}

// Verification report for the four structural properties: tuples leveled in
// order without repeats, pairwise tuple intersection at most one, the
// coloring property, and no isolated vertices.
struct RamseyCheckOptions {
    bool exhaustive = true;
    long long trials = 100000;      // sampled mode
    std::uint64_t seed = 0;
    long long exhaustive_cap = 1LL << 24; // max colorings tried exhaustively
};

struct RamseyReport {
    bool tuples_leveled = true;     // property: levels in order, no repeats
    bool pairwise_sparse = true;    // property: two tuples share <= 1 vertex
    bool no_isolated = true;        // property: every vertex used
    bool coloring_holds = true;     // property: every coloring leaves a tuple
    bool coloring_proven = false;   // true when checked exhaustively
    long long colorings_checked = 0;
    std::optional<std::map<std::string, int>> failing_coloring;

    bool all_passed() const {
        return tuples_leveled && pairwise_sparse && no_isolated && coloring_holds;
    }
};

inline RamseyReport verify_ramsey_properties(const RamseyStructure& s,
                                             const RamseyCheckOptions& opts = {}) {
    RamseyReport rep;
    const Structure& b = s.base;
    const int n = s.pair_count();
    const auto& raw = b.tuples(0);

    for (const auto& t : raw) {
        std::set<int> distinct(t.begin(), t.end());
        if (static_cast<int>(distinct.size()) != 2 * n) rep.tuples_leveled = false;
        for (int i = 0; i < 2 * n; ++i) {
            int want = i / 2 + 1;
            auto it = s.level.find(b.vertex(t[static_cast<std::size_t>(i)]));
            if (it == s.level.end() || it->second != want) rep.tuples_leveled = false;
        }
    }

    for (std::size_t i = 0; i < raw.size(); ++i)
        for (std::size_t j = i + 1; j < raw.size(); ++j) {
            std::set<int> a(raw[i].begin(), raw[i].end());
            int shared = 0;
            for (int v : raw[j]) shared += a.count(v) ? 1 : 0;
            if (shared > 1) rep.pairwise_sparse = false;
        }

    std::vector<bool> used(static_cast<std::size_t>(b.vertex_count()), false);
    for (const auto& t : raw)
        for (int v : t) used[static_cast<std::size_t>(v)] = true;
    for (bool u : used)
        if (!u) rep.no_isolated = false;

    // Coloring property: for a coloring c of the vertices with 2^k colors,
    // some tuple must have c(v_i) == c(u_i) on every level.
    const int nv = b.vertex_count();
    const long long colors = 1LL << s.params.k;
    auto tuple_survives = [&](const std::vector<int>& col) {
        for (const auto& t : raw) {
            bool ok = true;
            for (int i = 0; i < n && ok; ++i)
                ok = col[static_cast<std::size_t>(t[static_cast<std::size_t>(2 * i)])] ==
                     col[static_cast<std::size_t>(t[static_cast<std::size_t>(2 * i + 1)])];
            if (ok) return true;
        }
        return false;
    };
    auto record_failure = [&](const std::vector<int>& col) {
        rep.coloring_holds = false;
        std::map<std::string, int> named;
        for (int v = 0; v < nv; ++v) named[b.vertex(v)] = col[static_cast<std::size_t>(v)];
        rep.failing_coloring = std::move(named);
    };

    if (opts.exhaustive) {
        double total = std::pow(static_cast<double>(colors), nv);
        if (total > static_cast<double>(opts.exhaustive_cap))
            throw budget_exhausted("verify_ramsey_properties: coloring space above the cap");
        rep.coloring_proven = true;
        std::vector<int> col(static_cast<std::size_t>(nv), 0);
        while (true) {
            ++rep.colorings_checked;
            if (!tuple_survives(col)) {
                record_failure(col);
                break;
            }
            int i = 0;
            while (i < nv && col[static_cast<std::size_t>(i)] == colors - 1) {
                col[static_cast<std::size_t>(i)] = 0;
                ++i;
            }
            if (i == nv) break;
            ++col[static_cast<std::size_t>(i)];
        }
    } else {
        std::mt19937_64 rng(opts.seed);
        std::vector<int> col(static_cast<std::size_t>(nv));
        for (long long trial = 0; trial < opts.trials; ++trial) {
            for (auto& c : col) c = static_cast<int>(rng() % static_cast<std::uint64_t>(colors));
            ++rep.colorings_checked;
            if (!tuple_survives(col)) {
                record_failure(col);
                break;
            }
        }
    }
    return rep;
}

// Increments N until the sampled coloring check passes, within limits.
inline RamseyStructure search_ramsey_structure(int n, int k, int max_N,
                                               const RamseyCheckOptions& opts) {
    for (int N = 2 * n; N <= max_N; ++N) {
        RamseyParams p{n, k, N, false};
        RamseyStructure s;
        try {
            s = build_ramsey_structure(p);
        } catch (const validation_error&) {
            continue;
        }
        RamseyReport rep = verify_ramsey_properties(s, opts);
        if (rep.all_passed()) return s;
    }
    throw budget_exhausted("search_ramsey_structure: no N up to the limit passed verification");
}

// The indicator product: one copy of the rooted pattern per tuple, with root
// slot j of each copy identified across copies whenever the underlying tuple
// entries coincide.  Every identified class keeps the name of its tuple entry,
// giving the 1-1 correspondence between the gadget's vertices and the root
// classes of the product.
struct IndicatorResult {
    Structure product;
    std::map<std::string, std::string> vertex_class;  // gadget vertex -> product vertex
    std::map<std::string, std::string> pattern_origin; // product vertex -> pattern vertex
    long long copies = 0;
};

inline IndicatorResult indicator_product(const RamseyStructure& s, const RootedStructure& pattern) {
    const int arity = s.arity();
    if (static_cast<int>(pattern.roots.size()) != arity)
        throw validation_error("indicator_product: pattern must have exactly " +
                               std::to_string(arity) + " roots");

    const Structure& b = s.base;
    const auto tuples = b.tuples(0);
    IndicatorResult out;
    out.copies = static_cast<long long>(tuples.size());

    Structure prod(pattern.base.signature());
    std::set<std::string> used;

    // Root classes first: one product vertex per gadget vertex, same name.
    for (const auto& v : b.vertices()) {
        prod.add_vertex(v);
        used.insert(v);
        out.vertex_class[v] = v;
    }

    std::set<std::string> rootset(pattern.roots.begin(), pattern.roots.end());
    std::vector<std::map<std::string, std::string>> into_copy;
    for (std::size_t t = 0; t < tuples.size(); ++t) {
        std::map<std::string, std::string> local;
        for (int j = 0; j < arity; ++j) {
            const std::string cls = b.vertex(tuples[t][static_cast<std::size_t>(j)]);
            local[pattern.roots[static_cast<std::size_t>(j)]] = cls;
            if (!out.pattern_origin.count(cls))
                out.pattern_origin[cls] = pattern.roots[static_cast<std::size_t>(j)];
        }
        for (const auto& a : pattern.base.vertices()) {
            if (rootset.count(a)) continue;
            std::string name = uniquify("c" + std::to_string(t) + "_" + a, used);
            used.insert(name);
            prod.add_vertex(name);
            local[a] = name;
            out.pattern_origin[name] = a;
        }
        into_copy.push_back(std::move(local));
    }

    for (std::size_t t = 0; t < tuples.size(); ++t)
        for (std::size_t sym = 0; sym < pattern.base.signature().size(); ++sym)
            for (const auto& pt : pattern.base.tuples(static_cast<int>(sym))) {
                Tuple named = pattern.base.name_tuple(pt);
                for (auto& x : named) x = into_copy[t].at(x);
                prod.add_tuple(static_cast<int>(sym), named);
            }

    out.product = std::move(prod);
    return out;
}

// The rooted double piece and the final gadget of the arity argument, with
// the two executable claims checked by brute force.
struct CounterexampleReport {
    int gadget_vertices = 0;
    long long gadget_tuples = 0;
    long long copies = 0;
    int gadget_base_size = 0;       // vertices of the leveled gadget used
    bool projection_is_hom = false;
    bool no_family_hom = false;
    double seconds = 0.0;
};

struct CounterexampleResult {
    Structure gadget;               // D
    Structure doubled;              // H: the two pieces side by side
    std::vector<std::string> doubled_roots;
    VertexMap projection;           // gadget -> member, a verified hom
    CounterexampleReport report;
};

inline CounterexampleResult build_counterexample(const std::vector<Structure>& family,
                                                 const Structure& member,
                                                 const std::vector<std::string>& cut,
                                                 const RamseyStructure& ramsey,
                                                 const SearchOptions& opts = {},
                                                 const CutOptions& copts = {}) {
    auto t0 = std::chrono::steady_clock::now();
    if (family.empty()) throw validation_error("build_counterexample: empty family");
    for (const auto& f : family)
        if (!(f.signature() == member.signature()))
            throw validation_error("build_counterexample: family signatures differ");

    bool core_member = false;
    for (const auto& m : minimize_family(family, opts))
        if (iso_check(m, member, opts)) core_member = true;
    if (!core_member)
        throw validation_error(
            "build_counterexample: member must be one of the minimized family's cores");

    std::vector<std::string> want = cut;
    std::sort(want.begin(), want.end(), natural_less{});
    const auto cuts = minimal_cuts(member, copts);
    if (cuts.empty())
        throw validation_error("build_counterexample: the member has no vertex cuts");
    if (std::find(cuts.begin(), cuts.end(), want) == cuts.end())
        throw validation_error("build_counterexample: not a minimal cut of the member");

    const int n = static_cast<int>(want.size());
    if (n < 2)
        throw validation_error(
            "build_counterexample: gadget inapplicable to a singleton cut (a one-symbol "
            "extension already handles it)");
    if (ramsey.pair_count() != n)
        throw validation_error("build_counterexample: gadget levels must equal the cut size");

    std::set<std::string> cutset(want.begin(), want.end());
    std::vector<std::string> rest;
    for (const auto& v : member.vertices())
        if (!cutset.count(v)) rest.push_back(v);
    const auto comps = components(induced(member, rest));
    if (comps.size() != 2)
        throw validation_error("build_counterexample: implemented for cuts leaving exactly two "
                               "components, got " +
                               std::to_string(comps.size()));

    // H: the two pieces side by side (cut copied, not identified), rooted by
    // the interleaved cut copies.
    CounterexampleResult out;
    Structure h(member.signature());
    std::set<std::string> used;
    std::vector<std::map<std::string, std::string>> into_h(2);
    std::map<std::string, std::string> strip; // h vertex -> member vertex
    for (int side = 0; side < 2; ++side) {
        std::vector<std::string> sel = want;
        for (const auto& v : comps[static_cast<std::size_t>(side)]) sel.push_back(v);
        Structure piece = induced(member, sel);
        for (const auto& v : piece.vertices()) {
            std::string name = uniquify(v + "_c" + std::to_string(side + 1), used);
            used.insert(name);
            h.add_vertex(name);
            into_h[static_cast<std::size_t>(side)][v] = name;
            strip[name] = v;
        }
        for (std::size_t sym = 0; sym < piece.signature().size(); ++sym)
            for (const auto& t : piece.tuples(static_cast<int>(sym))) {
                Tuple named = piece.name_tuple(t);
                for (auto& x : named) x = into_h[static_cast<std::size_t>(side)].at(x);
                h.add_tuple(static_cast<int>(sym), named);
            }
    }
    for (const auto& r : want) {
        out.doubled_roots.push_back(into_h[0].at(r));
        out.doubled_roots.push_back(into_h[1].at(r));
    }
    out.doubled = h;

    IndicatorResult ind = indicator_product(ramsey, RootedStructure(h, out.doubled_roots));
    out.gadget = ind.product;
    out.report.copies = ind.copies;
    out.report.gadget_vertices = out.gadget.vertex_count();
    out.report.gadget_tuples = out.gadget.tuple_count();
    out.report.gadget_base_size = ramsey.base.vertex_count();

    out.projection.mode = MapMode::hom;
    for (const auto& v : out.gadget.vertices())
        out.projection.assignment[v] = strip.at(ind.pattern_origin.at(v));
    out.report.projection_is_hom = check_map(out.gadget, member, out.projection);
    if (!out.report.projection_is_hom)
        throw verification_error("build_counterexample: the projection failed the hom check");

    out.report.no_family_hom = true;
    for (const auto& f : family)
        if (search_map(f, out.gadget, MapMode::hom, {}, opts)) {
            out.report.no_family_hom = false;
            throw verification_error(
                "build_counterexample: a family member maps into the gadget");
        }

    out.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

} // namespace relift
