#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "relift/error.hpp"
#include "relift/order.hpp"
#include "relift/signature.hpp"

namespace relift {

using Tuple = std::vector<std::string>;

// Vertex identifiers are free-form tokens: no whitespace, nonempty, and not
// starting with '#' (comment marker in the file format).
inline bool valid_vertex_id(std::string_view v) {
    if (v.empty() || v[0] == '#') return false;
    for (char c : v)
        if (std::isspace(static_cast<unsigned char>(c))) return false;
    return true;
}

// A finite relational structure: an ordered vertex set plus one tuple set per
// relation symbol.  Tuples are stored as indices into the vertex list, kept
// sorted and deduplicated.  Symmetric symbols keep their tuple sets closed
// under reversal.  Values are treated as immutable once built: the add_*
// mutators are for construction only.
class Structure {
public:
    Structure() : Structure(Signature{}) {}

    explicit Structure(Signature sig) : sig_(std::move(sig)), rels_(sig_.size()) {}

    Structure(Signature sig, const std::vector<std::string>& vertices) : Structure(std::move(sig)) {
        for (const auto& v : vertices) add_vertex(v);
    }

    void add_vertex(const std::string& v) {
        if (!valid_vertex_id(v)) throw validation_error("bad vertex id '" + v + "'");
        if (index_.count(v)) throw validation_error("duplicate vertex '" + v + "'");
        index_.emplace(v, static_cast<int>(verts_.size()));
        verts_.push_back(v);
    }

    void add_tuple(int sym, const Tuple& t) {
        std::vector<int> idx(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            int vi = index_of(t[i]);
            if (vi < 0) throw validation_error("undeclared vertex '" + t[i] + "' in tuple");
            idx[i] = vi;
        }
        add_tuple_indices(sym, std::move(idx));
    }

    void add_tuple(std::string_view symbol_name, const Tuple& t) {
        int s = sig_.index_of(symbol_name);
        if (s < 0) throw validation_error("unknown relation symbol '" + std::string(symbol_name) + "'");
        add_tuple(s, t);
    }

    void add_tuple_indices(int sym, std::vector<int> idx) {
        if (sym < 0 || sym >= static_cast<int>(sig_.size()))
            throw validation_error("relation symbol index out of range");
        const auto& decl = sig_.symbol(sym);
        if (static_cast<int>(idx.size()) != decl.arity)
            throw validation_error("arity mismatch for '" + decl.name + "': got " +
                                   std::to_string(idx.size()) + ", want " +
                                   std::to_string(decl.arity));
        for (int vi : idx)
            if (vi < 0 || vi >= vertex_count())
                throw validation_error("vertex index out of range in tuple");
        insert_sorted(rels_[sym], idx);
        if (decl.symmetric) {
            std::reverse(idx.begin(), idx.end());
            insert_sorted(rels_[sym], idx);
        }
    }

    const Signature& signature() const { return sig_; }
    const std::vector<std::string>& vertices() const { return verts_; }
    int vertex_count() const { return static_cast<int>(verts_.size()); }
    bool has_vertex(std::string_view v) const { return index_.find(std::string(v)) != index_.end(); }

    int index_of(std::string_view v) const {
        auto it = index_.find(std::string(v));
        return it == index_.end() ? -1 : it->second;
    }

    const std::string& vertex(int i) const { return verts_.at(static_cast<std::size_t>(i)); }

    // Index-form tuples, sorted; for symmetric symbols both orientations are
    // present.
    const std::vector<std::vector<int>>& tuples(int sym) const {
        return rels_.at(static_cast<std::size_t>(sym));
    }

    std::vector<Tuple> tuples_named(int sym) const {
        std::vector<Tuple> out;
        for (const auto& t : tuples(sym)) out.push_back(name_tuple(t));
        std::sort(out.begin(), out.end(), natural_tuple_less{});
        return out;
    }

    Tuple name_tuple(const std::vector<int>& t) const {
        Tuple out(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) out[i] = verts_[static_cast<std::size_t>(t[i])];
        return out;
    }

    bool has_tuple(int sym, const std::vector<int>& t) const {
        const auto& r = rels_.at(static_cast<std::size_t>(sym));
        return std::binary_search(r.begin(), r.end(), t);
    }

    std::size_t tuple_count(int sym) const { return rels_.at(static_cast<std::size_t>(sym)).size(); }

    std::size_t tuple_count() const {
        std::size_t n = 0;
        for (const auto& r : rels_) n += r.size();
        return n;
    }

    std::vector<std::string> canonical_vertices() const {
        auto out = verts_;
        std::sort(out.begin(), out.end(), natural_less{});
        return out;
    }

    // Semantic equality: same signature, same vertex set, same tuple sets.
    // Vertex insertion order is presentation, not identity.
    bool operator==(const Structure& o) const {
        if (sig_ != o.sig_) return false;
        if (canonical_vertices() != o.canonical_vertices()) return false;
        for (std::size_t s = 0; s < sig_.size(); ++s)
            if (tuples_named(static_cast<int>(s)) != o.tuples_named(static_cast<int>(s)))
                return false;
        return true;
    }

private:
    static void insert_sorted(std::vector<std::vector<int>>& rel, const std::vector<int>& t) {
        auto it = std::lower_bound(rel.begin(), rel.end(), t);
        if (it == rel.end() || *it != t) rel.insert(it, t);
    }

    Signature sig_;
    std::vector<std::string> verts_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<std::vector<int>>> rels_;
};

// A structure with an ordered list of distinct root vertices.
struct RootedStructure {
    Structure base;
    Tuple roots;

    RootedStructure() = default;

    RootedStructure(Structure b, Tuple r) : base(std::move(b)), roots(std::move(r)) {
        std::set<std::string> seen;
        for (const auto& v : roots) {
            if (!base.has_vertex(v)) throw validation_error("root '" + v + "' is not a vertex");
            if (!seen.insert(v).second) throw validation_error("duplicate root '" + v + "'");
        }
    }

    bool operator==(const RootedStructure& o) const { return base == o.base && roots == o.roots; }
};

// Adjacency lists of the Gaifman graph (distinct vertices sharing a tuple),
// in index form, each list sorted.
inline std::vector<std::vector<int>> gaifman_adjacency(const Structure& a) {
    std::vector<std::set<int>> adj(static_cast<std::size_t>(a.vertex_count()));
    for (std::size_t s = 0; s < a.signature().size(); ++s)
        for (const auto& t : a.tuples(static_cast<int>(s)))
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = i + 1; j < t.size(); ++j)
                    if (t[i] != t[j]) {
                        adj[static_cast<std::size_t>(t[i])].insert(t[j]);
                        adj[static_cast<std::size_t>(t[j])].insert(t[i]);
                    }
    std::vector<std::vector<int>> out(adj.size());
    for (std::size_t i = 0; i < adj.size(); ++i) out[i].assign(adj[i].begin(), adj[i].end());
    return out;
}

// The Gaifman graph (2-section) as a graph-signature structure over the same
// vertices.  Idempotent on graphs.
inline Structure gaifman(const Structure& a) {
    Structure g(Signature::graph(), a.vertices());
    auto adj = gaifman_adjacency(a);
    for (int v = 0; v < a.vertex_count(); ++v)
        for (int w : adj[static_cast<std::size_t>(v)])
            if (v < w) g.add_tuple_indices(0, {v, w});
    return g;
}

// Connected components of the Gaifman graph.  Components are ordered by their
// least vertex in natural order; vertices inside a component likewise.
inline std::vector<std::vector<std::string>> components(const Structure& a) {
    int n = a.vertex_count();
    auto adj = gaifman_adjacency(a);
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int ncomp = 0;
    for (int start = 0; start < n; ++start) {
        if (comp[static_cast<std::size_t>(start)] != -1) continue;
        std::vector<int> stack{start};
        comp[static_cast<std::size_t>(start)] = ncomp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(v)])
                if (comp[static_cast<std::size_t>(w)] == -1) {
                    comp[static_cast<std::size_t>(w)] = ncomp;
                    stack.push_back(w);
                }
        }
        ++ncomp;
    }
    std::vector<std::vector<std::string>> out(static_cast<std::size_t>(ncomp));
    for (int v = 0; v < n; ++v) out[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(a.vertex(v));
    for (auto& c : out) std::sort(c.begin(), c.end(), natural_less{});
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return natural_compare(x[0], y[0]) < 0; });
    return out;
}

inline bool is_connected(const Structure& a) { return components(a).size() <= 1; }

// Induced substructure on the vertex set `s` (order taken from `a`).
inline Structure induced(const Structure& a, const std::vector<std::string>& s) {
    std::set<int> keep;
    for (const auto& v : s) {
        int i = a.index_of(v);
        if (i < 0) throw validation_error("induced: unknown vertex '" + v + "'");
        keep.insert(i);
    }
    std::vector<std::string> verts;
    for (int i = 0; i < a.vertex_count(); ++i)
        if (keep.count(i)) verts.push_back(a.vertex(i));
    Structure out(a.signature(), verts);
    for (std::size_t sym = 0; sym < a.signature().size(); ++sym)
        for (const auto& t : a.tuples(static_cast<int>(sym))) {
            bool inside = std::all_of(t.begin(), t.end(), [&](int v) { return keep.count(v) > 0; });
            if (inside) out.add_tuple(static_cast<int>(sym), a.name_tuple(t));
        }
    return out;
}

// Appends ' until `name` is unused.
inline std::string uniquify(std::string name, const std::set<std::string>& used) {
    while (used.count(name)) name += "'";
    return name;
}

// Disjoint union.  Vertices are tagged "#1" / "#2" to avoid collisions, so
// the result is always a relabeling of both arguments.
inline Structure disjoint_union(const Structure& a, const Structure& b) {
    if (a.signature() != b.signature())
        throw validation_error("disjoint_union: signature mismatch");
    Structure out(a.signature());
    std::set<std::string> used;
    std::map<std::string, std::string> ra, rb;
    for (const auto& v : a.vertices()) {
        auto nv = uniquify(v + "#1", used);
        used.insert(nv);
        ra[v] = nv;
        out.add_vertex(nv);
    }
    for (const auto& v : b.vertices()) {
        auto nv = uniquify(v + "#2", used);
        used.insert(nv);
        rb[v] = nv;
        out.add_vertex(nv);
    }
    auto copy = [&](const Structure& src, const std::map<std::string, std::string>& ren) {
        for (std::size_t s = 0; s < src.signature().size(); ++s)
            for (const auto& t : src.tuples(static_cast<int>(s))) {
                Tuple named = src.name_tuple(t);
                for (auto& x : named) x = ren.at(x);
                out.add_tuple(static_cast<int>(s), named);
            }
    };
    copy(a, ra);
    copy(b, rb);
    return out;
}

// Renames vertices through an injective total map; tuples follow.
inline Structure rename_structure(const Structure& a, const std::map<std::string, std::string>& ren) {
    std::set<std::string> targets;
    std::vector<std::string> verts;
    for (const auto& v : a.vertices()) {
        auto it = ren.find(v);
        if (it == ren.end()) throw validation_error("rename: no image for vertex '" + v + "'");
        if (!targets.insert(it->second).second)
            throw validation_error("rename: map is not injective at '" + it->second + "'");
        verts.push_back(it->second);
    }
    Structure out(a.signature(), verts);
    for (std::size_t s = 0; s < a.signature().size(); ++s)
        for (const auto& t : a.tuples(static_cast<int>(s))) {
            Tuple named = a.name_tuple(t);
            for (auto& x : named) x = ren.at(x);
            out.add_tuple(static_cast<int>(s), named);
        }
    return out;
}

} // namespace relift
