#pragma once

#include <chrono>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "relift/hom.hpp"
#include "relift/lift.hpp"
#include "relift/structure.hpp"

namespace relift {

struct Amalgam {
    Structure glued;
    VertexMap left_embedding;  // a -> glued (identity on names)
    VertexMap right_embedding; // b -> glued
};

// Free amalgam of a and b over `common`, glued along the two embeddings.
// No tuple meets both private parts; both arguments sit inside as induced
// substructures.  b's private vertices are renamed if they collide with a's.
inline Amalgam free_amalgam(const Structure& a, const Structure& b, const Structure& common,
                            const VertexMap& common_into_a, const VertexMap& common_into_b) {
    if (a.signature() != b.signature() || a.signature() != common.signature())
        throw validation_error("free_amalgam: signature mismatch");
    VertexMap ea = common_into_a, eb = common_into_b;
    ea.mode = MapMode::embed;
    eb.mode = MapMode::embed;
    if (!check_map(common, a, ea)) throw validation_error("free_amalgam: left map is not an embedding");
    if (!check_map(common, b, eb)) throw validation_error("free_amalgam: right map is not an embedding");

    std::map<std::string, std::string> into_a; // b-vertex -> a-vertex, where glued
    for (const auto& c : common.vertices()) into_a[eb.at(c)] = ea.at(c);

    Structure out(a.signature());
    std::set<std::string> used;
    std::map<std::string, std::string> ra, rb;
    for (const auto& v : a.vertices()) {
        out.add_vertex(v);
        used.insert(v);
        ra[v] = v;
    }
    for (const auto& v : b.vertices()) {
        auto glue = into_a.find(v);
        if (glue != into_a.end()) {
            rb[v] = glue->second;
            continue;
        }
        auto nv = uniquify(v, used);
        used.insert(nv);
        out.add_vertex(nv);
        rb[v] = nv;
    }
    for (std::size_t s = 0; s < a.signature().size(); ++s)
        for (const auto& t : a.tuples(static_cast<int>(s)))
            out.add_tuple(static_cast<int>(s), a.name_tuple(t));
    for (std::size_t s = 0; s < b.signature().size(); ++s)
        for (const auto& t : b.tuples(static_cast<int>(s))) {
            Tuple named = b.name_tuple(t);
            for (auto& v : named) v = rb.at(v);
            out.add_tuple(static_cast<int>(s), named);
        }

    // Both sides must come back as induced substructures; guaranteed by the
    // embedding preconditions, so a failure here is a bug.
    std::vector<std::string> a_names, b_names;
    for (const auto& v : a.vertices()) a_names.push_back(ra.at(v));
    for (const auto& v : b.vertices()) b_names.push_back(rb.at(v));
    if (!(induced(out, a_names) == a))
        throw verification_error("free_amalgam: left side is not induced");
    if (!(induced(out, b_names) == rename_structure(b, rb)))
        throw verification_error("free_amalgam: right side is not induced");

    Amalgam result;
    result.glued = std::move(out);
    result.left_embedding = {MapMode::embed, std::move(ra)};
    result.right_embedding = {MapMode::embed, std::move(rb)};
    return result;
}

// Convenience: glue over the named shared vertices, which must induce the
// same substructure in both arguments.
inline Amalgam free_amalgam_over(const Structure& a, const Structure& b,
                                 const std::vector<std::string>& shared) {
    Structure common = induced(a, shared);
    if (!(common == induced(b, shared)))
        throw validation_error("free_amalgam_over: shared vertices induce different substructures");
    VertexMap id;
    id.mode = MapMode::embed;
    for (const auto& v : common.vertices()) id.assignment[v] = v;
    return free_amalgam(a, b, common, id, id);
}

// An amalgamation problem over a common catalog: z is an induced sub-lift of
// x and of y via the two lift-embeddings, and each of x, y carries a witness:
// a Forb member whose canonical lift contains it as an induced sub-lift.
struct AmalgamProblem {
    Lift x, y, z;
    VertexMap z_into_x, z_into_y;          // lift-embeddings (base-vertex maps)
    Structure witness_x, witness_y;        // members of Forb(F)
    VertexMap x_into_witness, y_into_witness; // x.base -> witness_x vertices, etc.
};

struct LiftAmalgamReport {
    bool witness_side_x_preserved = false; // re-lift restricted to the x witness equals its lift
    bool witness_side_y_preserved = false;
    bool x_preserved = false;              // x returns unchanged inside the re-lift
    bool y_preserved = false;
    bool glued_in_forb = false;            // the glued witness stays in Forb(F)
    int glued_vertices = 0;
    int x_vertices = 0, y_vertices = 0, z_vertices = 0;
    double seconds = 0.0;

    bool passed() const {
        return witness_side_x_preserved && witness_side_y_preserved && x_preserved && y_preserved &&
               glued_in_forb;
    }
};

struct LiftAmalgamResult {
    Lift amalgam;              // canonical lift of the glued witness
    VertexMap x_into_amalgam;  // lift-embeddings into the amalgam
    VertexMap y_into_amalgam;
    Structure glued_witness;
    LiftAmalgamReport report;
};

namespace amalgam_detail {

inline VertexMap compose_names(const VertexMap& outer, const VertexMap& inner, MapMode mode) {
    VertexMap out;
    out.mode = mode;
    for (const auto& [src, mid] : inner.assignment) out.assignment[src] = outer.at(mid);
    return out;
}

inline void require_lift_embedding(const VertexMap& f, const Lift& from, const Lift& to,
                                   const std::string& which) {
    if (!lift_map_check(f, from, to, MapMode::embed))
        throw validation_error("lift_amalgam: " + which + " is not a lift-embedding");
}

} // namespace amalgam_detail

// Glue the witnesses freely over z's shadow, then re-lift the result from
// scratch.  Two checks are performed and must pass: (i) the re-lift adds no
// ext tuple on either side — both witnesses' lifts, hence x and y, return
// unchanged; (ii) the glued witness is still in Forb(F).  A failed check
// throws verification_error carrying the report: it would indicate a bug,
// not an acceptable output.
inline LiftAmalgamResult lift_amalgam(const AmalgamProblem& prob,
                                      const std::vector<Structure>& family,
                                      const SearchOptions& opts = {}) {
    auto t0 = std::chrono::steady_clock::now();
    const auto cat = prob.x.catalog_ptr();
    if (!prob.y.catalog().same_as(*cat) || !prob.z.catalog().same_as(*cat))
        throw validation_error("lift_amalgam: catalogs differ");
    {
        auto fresh = catalog_family(family);
        if (!fresh.same_as(*cat))
            throw validation_error("lift_amalgam: catalog does not match the family");
    }
    amalgam_detail::require_lift_embedding(prob.z_into_x, prob.z, prob.x, "z -> x");
    amalgam_detail::require_lift_embedding(prob.z_into_y, prob.z, prob.y, "z -> y");
    for (const auto* w : {&prob.witness_x, &prob.witness_y})
        if (!forb_membership(*w, family, MapMode::hom, opts).member)
            throw validation_error("lift_amalgam: witness is not in Forb(F)");
    Lift lwx = canonical_lift(prob.witness_x, cat, opts);
    Lift lwy = canonical_lift(prob.witness_y, cat, opts);
    amalgam_detail::require_lift_embedding(prob.x_into_witness, prob.x, lwx, "x -> L(witness_x)");
    amalgam_detail::require_lift_embedding(prob.y_into_witness, prob.y, lwy, "y -> L(witness_y)");

    // Glue the witnesses over z's shadow.
    const Structure& zs = shadow(prob.z);
    VertexMap z_in_wx =
        amalgam_detail::compose_names(prob.x_into_witness, prob.z_into_x, MapMode::embed);
    VertexMap z_in_wy =
        amalgam_detail::compose_names(prob.y_into_witness, prob.z_into_y, MapMode::embed);
    Amalgam glued = free_amalgam(prob.witness_x, prob.witness_y, zs, z_in_wx, z_in_wy);

    LiftAmalgamResult out;
    out.glued_witness = glued.glued;
    Lift v = canonical_lift(glued.glued, cat, opts);

    LiftAmalgamReport rep;
    rep.x_vertices = prob.x.base().vertex_count();
    rep.y_vertices = prob.y.base().vertex_count();
    rep.z_vertices = zs.vertex_count();
    rep.glued_vertices = glued.glued.vertex_count();

    // Check (i): no new ext tuples on either witness side.
    auto side_preserved = [&](const Lift& lw, const VertexMap& incl) {
        std::vector<std::string> img;
        for (const auto& wv : lw.base().vertices()) img.push_back(incl.at(wv));
        std::map<std::string, std::string> ren;
        for (const auto& wv : lw.base().vertices()) ren[wv] = incl.at(wv);
        return induced_lift(v, img) == rename_lift(lw, ren);
    };
    rep.witness_side_x_preserved = side_preserved(lwx, glued.left_embedding);
    rep.witness_side_y_preserved = side_preserved(lwy, glued.right_embedding);

    out.x_into_amalgam = amalgam_detail::compose_names(glued.left_embedding,
                                                       prob.x_into_witness, MapMode::embed);
    out.y_into_amalgam = amalgam_detail::compose_names(glued.right_embedding,
                                                       prob.y_into_witness, MapMode::embed);
    auto member_preserved = [&](const Lift& member, const VertexMap& incl) {
        std::vector<std::string> img;
        std::map<std::string, std::string> ren;
        for (const auto& mv : member.base().vertices()) {
            img.push_back(incl.at(mv));
            ren[mv] = incl.at(mv);
        }
        return induced_lift(v, img) == rename_lift(member, ren);
    };
    rep.x_preserved = member_preserved(prob.x, out.x_into_amalgam);
    rep.y_preserved = member_preserved(prob.y, out.y_into_amalgam);

    // Check (ii): the glued witness stays in Forb(F).
    rep.glued_in_forb = forb_membership(glued.glued, family, MapMode::hom, opts).member;

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.amalgam = std::move(v);
    out.report = rep;
    if (!rep.passed()) {
        std::string what = "lift_amalgam: verification failed:";
        if (!rep.witness_side_x_preserved) what += " witness-side-x";
        if (!rep.witness_side_y_preserved) what += " witness-side-y";
        if (!rep.x_preserved) what += " x";
        if (!rep.y_preserved) what += " y";
        if (!rep.glued_in_forb) what += " forb-membership";
        throw verification_error(what);
    }
    // The two inclusions agree on z by construction; assert it anyway.
    for (const auto& zv : zs.vertices())
        if (out.x_into_amalgam.at(prob.z_into_x.at(zv)) !=
            out.y_into_amalgam.at(prob.z_into_y.at(zv)))
            throw verification_error("lift_amalgam: inclusions disagree on z");
    return out;
}

} // namespace relift
