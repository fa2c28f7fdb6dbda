#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relift/cuts.hpp"
#include "relift/enumerate.hpp"
#include "relift/hom.hpp"
#include "relift/structure.hpp"

namespace relift {

// A structure together with one extra relation per catalog entry, of arity
// equal to the entry's root count.  The catalog is shared and compared by
// content.  Ext tuples may repeat vertices (root images of a single map can
// coincide).
class Lift {
public:
    Lift() = default;

    Lift(Structure base, std::shared_ptr<const PieceCatalog> catalog)
        : base_(std::move(base)), catalog_(std::move(catalog)) {
        if (!catalog_) throw validation_error("lift: null catalog");
        ext_.resize(catalog_->size());
    }

    void add_ext(int entry, const Tuple& t) {
        if (entry < 0 || entry >= static_cast<int>(catalog_->size()))
            throw validation_error("lift: catalog entry index out of range");
        if (static_cast<int>(t.size()) != catalog_->root_arity(entry))
            throw validation_error("lift: ext tuple arity mismatch for entry " + std::to_string(entry));
        std::vector<int> idx(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            int vi = base_.index_of(t[i]);
            if (vi < 0) throw validation_error("lift: undeclared vertex '" + t[i] + "' in ext tuple");
            idx[i] = vi;
        }
        auto& rel = ext_[static_cast<std::size_t>(entry)];
        auto it = std::lower_bound(rel.begin(), rel.end(), idx);
        if (it == rel.end() || *it != idx) rel.insert(it, idx);
    }

    const Structure& base() const { return base_; }
    const PieceCatalog& catalog() const { return *catalog_; }
    std::shared_ptr<const PieceCatalog> catalog_ptr() const { return catalog_; }

    const std::vector<std::vector<int>>& ext(int entry) const {
        return ext_.at(static_cast<std::size_t>(entry));
    }

    std::vector<Tuple> ext_named(int entry) const {
        std::vector<Tuple> out;
        for (const auto& t : ext(entry)) out.push_back(base_.name_tuple(t));
        std::sort(out.begin(), out.end(), natural_tuple_less{});
        return out;
    }

    std::size_t ext_count() const {
        std::size_t n = 0;
        for (const auto& r : ext_) n += r.size();
        return n;
    }

    bool operator==(const Lift& o) const {
        if (!catalog_ || !o.catalog_) return !catalog_ && !o.catalog_;
        if (catalog_ != o.catalog_ && !catalog_->same_as(*o.catalog_)) return false;
        if (!(base_ == o.base_)) return false;
        for (std::size_t e = 0; e < ext_.size(); ++e)
            if (ext_named(static_cast<int>(e)) != o.ext_named(static_cast<int>(e))) return false;
        return true;
    }

    // The lift flattened into a plain structure over an extended signature:
    // base symbols plus one fresh symbol per catalog entry.  Lift maps are
    // exactly structure maps of this form, so the map machinery carries over.
    Structure as_structure() const {
        std::vector<SymbolDecl> decls = base_.signature().symbols();
        for (std::size_t e = 0; e < ext_.size(); ++e)
            decls.push_back({"ext_" + std::to_string(e), catalog_->root_arity(static_cast<int>(e)), false});
        for (const auto& d : base_.signature().symbols())
            if (d.name.rfind("ext_", 0) == 0)
                throw validation_error("lift: base symbol name '" + d.name + "' collides with ext symbols");
        Structure out(Signature(std::move(decls)), base_.vertices());
        for (std::size_t s = 0; s < base_.signature().size(); ++s)
            for (const auto& t : base_.tuples(static_cast<int>(s)))
                out.add_tuple_indices(static_cast<int>(s), t);
        for (std::size_t e = 0; e < ext_.size(); ++e)
            for (const auto& t : ext_[e])
                out.add_tuple_indices(static_cast<int>(base_.signature().size() + e), t);
        return out;
    }

private:
    Structure base_;
    std::shared_ptr<const PieceCatalog> catalog_;
    std::vector<std::vector<std::vector<int>>> ext_; // per entry, sorted index tuples
};

// The forgetful direction: just the base.
inline const Structure& shadow(const Lift& x) { return x.base(); }

// The canonical lift: ext tuple (v1..vk) on entry i holds iff some
// homomorphism of the entry's piece lands its roots on (v1..vk) in order.
// Root images may coincide.  Budget exhaustion propagates; it never degrades
// into a partially filled lift.
inline Lift canonical_lift(const Structure& a, std::shared_ptr<const PieceCatalog> catalog,
                           const SearchOptions& opts = {}) {
    if (!catalog) throw validation_error("canonical_lift: null catalog");
    for (const auto& e : catalog->entries())
        if (e.piece.base.signature() != a.signature())
            throw validation_error("canonical_lift: signature mismatch with catalog");
    Lift out(a, catalog);
    int n = a.vertex_count();
    for (std::size_t e = 0; e < catalog->size(); ++e) {
        const auto& piece = catalog->entry(static_cast<int>(e)).piece;
        int k = static_cast<int>(piece.roots.size());
        std::vector<int> tup(static_cast<std::size_t>(k), 0);
        if (n == 0) continue;
        while (true) {
            std::map<std::string, std::string> pins;
            for (int i = 0; i < k; ++i)
                pins[piece.roots[static_cast<std::size_t>(i)]] = a.vertex(tup[static_cast<std::size_t>(i)]);
            bool found = false;
            try {
                found = search_map(piece.base, a, MapMode::hom, pins, opts).has_value();
            } catch (const validation_error&) {
                found = false; // pins contradict a constraint: no such map
            }
            if (found) out.add_ext(static_cast<int>(e), a.name_tuple(tup));
            int pos = k - 1;
            while (pos >= 0 && tup[static_cast<std::size_t>(pos)] == n - 1) {
                tup[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++tup[static_cast<std::size_t>(pos)];
        }
    }
    return out;
}

// Induced sub-lift: induced base plus the ext tuples inside the subset.
inline Lift induced_lift(const Lift& x, const std::vector<std::string>& s) {
    Lift out(induced(x.base(), s), x.catalog_ptr());
    for (std::size_t e = 0; e < x.catalog().size(); ++e)
        for (const auto& t : x.ext_named(static_cast<int>(e))) {
            bool inside = std::all_of(t.begin(), t.end(),
                                      [&](const std::string& v) { return out.base().has_vertex(v); });
            if (inside) out.add_ext(static_cast<int>(e), t);
        }
    return out;
}

inline Lift rename_lift(const Lift& x, const std::map<std::string, std::string>& ren) {
    Lift out(rename_structure(x.base(), ren), x.catalog_ptr());
    for (std::size_t e = 0; e < x.catalog().size(); ++e)
        for (auto t : x.ext_named(static_cast<int>(e))) {
            for (auto& v : t) v = ren.at(v);
            out.add_ext(static_cast<int>(e), t);
        }
    return out;
}

// Does f respect the lift structure in the given mode?  hom/mono preserve ext
// tuples; embed also reflects them (and the base tuples) on the image.
inline bool lift_map_check(const VertexMap& f, const Lift& x, const Lift& y, MapMode mode) {
    if (!x.catalog().same_as(y.catalog())) return false;
    VertexMap g = f;
    g.mode = mode;
    return check_map(x.as_structure(), y.as_structure(), g);
}

// One lift-embedding of x into y extending `partial`, as a base-vertex map.
inline std::optional<VertexMap> find_lift_embedding(const Lift& x, const Lift& y,
                                                    const std::map<std::string, std::string>& partial = {},
                                                    const SearchOptions& opts = {}) {
    if (!x.catalog().same_as(y.catalog()))
        throw validation_error("lift embedding: catalogs differ");
    return search_map(x.as_structure(), y.as_structure(), MapMode::embed, partial, opts);
}

struct MembershipVerdict {
    enum class Status { member, non_member_up_to, unknown };
    Status status = Status::unknown;
    std::optional<Structure> witness;            // member: some A with x inside L(A)
    std::optional<VertexMap> witness_embedding;  // member: x.base -> witness vertices
    int bound = 0;                               // the size bound that was exhausted
    std::string note;
};

// Bounded witness search: is x an induced sub-lift of the canonical lift of
// some Forb member with at most size_bound vertices?  Witness candidates are
// enumerated up to isomorphism, smallest first, loops included.  Budget or
// deadline exhaustion yields `unknown`, never a yes/no.
inline MembershipVerdict membership_in_L(const Lift& x, const std::vector<Structure>& family,
                                         int size_bound, const SearchOptions& opts = {},
                                         const EnumerationOptions& eopts_in = {}) {
    MembershipVerdict out;
    out.bound = size_bound;
    try {
        if (!forb_membership(shadow(x), family, MapMode::hom, opts).member) {
            out.status = MembershipVerdict::Status::non_member_up_to;
            out.note = "shadow already violates the family";
            return out;
        }
        EnumerationOptions eopts = eopts_in;
        eopts.allow_repeats = true;
        auto cat = x.catalog_ptr();
        for (int n = x.base().vertex_count(); n <= size_bound; ++n) {
            auto keep = [&](const Structure& s) {
                return forb_membership(s, family, MapMode::hom, opts).member;
            };
            for (const auto& a : enumerate_structures(shadow(x).signature(), n, eopts, keep)) {
                Lift la = canonical_lift(a, cat, opts);
                auto emb = find_lift_embedding(x, la, {}, opts);
                if (emb) {
                    out.status = MembershipVerdict::Status::member;
                    out.witness = a;
                    out.witness_embedding = std::move(emb);
                    return out;
                }
            }
        }
        out.status = MembershipVerdict::Status::non_member_up_to;
        return out;
    } catch (const budget_exhausted& e) {
        out.status = MembershipVerdict::Status::unknown;
        out.note = e.what();
        return out;
    }
}

} // namespace relift
