#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relift/amalgam.hpp"
#include "relift/cuts.hpp"
#include "relift/enumerate.hpp"
#include "relift/error.hpp"
#include "relift/generate.hpp"
#include "relift/hom.hpp"
#include "relift/lift.hpp"

namespace relift {

// Budgets for the bounded generic-growth loop.  Every bound is explicit: the
// grown object is generic only relative to these numbers, and the demand scan
// refuses to silently look past them.
struct GrowthBudgets {
    int max_vertices = 12;   // stop once the grown structure reaches this size
    int max_rounds = 64;     // hard cap on amalgamation rounds
    int witness_bound = 5;   // demands are drawn from Forb members up to this size
    int max_demand_base = 4; // demands are scanned over base sets up to this size
};

// A one-point extension demand: over the base set `base` (current vertex
// names, in canonical order), some lift in the class has an extra vertex whose
// induced sub-lift has the canonical text `extension_key`.  The key pins the
// base vertices as x0..x{k-1} (in `base` order) and the new vertex as y, so
// equal keys mean equal extensions over the same base.
struct Demand {
    std::vector<std::string> base;
    std::string extension_key;

    bool operator==(const Demand&) const = default;
};

inline bool demand_less(const Demand& a, const Demand& b) {
    if (a.base.size() != b.base.size()) return a.base.size() < b.base.size();
    if (a.base != b.base) return natural_tuple_less{}(a.base, b.base);
    return a.extension_key < b.extension_key;
}

// The evolving state of a growth run.  `current` is the grown lift; `witness`
// is a Forb member whose canonical lift contains `current` as an induced
// sub-lift via `witness_embedding`.  Both are rebuilt every round.
struct GrowthState {
    Lift current;
    Structure witness;
    std::map<std::string, std::string> witness_embedding;
    int rounds = 0;
    int next_fresh = 0;
    std::vector<Demand> realized;
    GrowthBudgets budgets;
};

struct DemandScan {
    std::vector<Demand> unrealized; // in demand order (least first)
    std::size_t satisfied = 0;      // demands already present in `current`
};

namespace growth_detail {

// Canonical text of a lift after renaming: vertex order is normalised so that
// equal-up-to-storage-order lifts produce identical text.
inline std::string canonical_text(const Lift& y, const std::vector<std::string>& base_order,
                                  const std::string& extra) {
    std::map<std::string, std::string> ren;
    for (std::size_t i = 0; i < base_order.size(); ++i)
        ren[base_order[i]] = "x" + std::to_string(i);
    ren[extra] = "y";
    Structure flat = rename_lift(y, ren).as_structure();
    Structure norm(flat.signature());
    for (const auto& v : flat.canonical_vertices()) norm.add_vertex(v);
    for (std::size_t s = 0; s < flat.signature().symbols().size(); ++s)
        for (const auto& t : flat.tuples_named(static_cast<int>(s)))
            norm.add_tuple(static_cast<int>(s), t);
    return serialize(norm);
}

// Size-then-lexicographic combination scan over 0..n-1.
inline void for_each_subset(int n, int max_size,
                            const std::function<void(const std::vector<int>&)>& fn) {
    for (int k = 0; k <= max_size && k <= n; ++k) {
        std::vector<int> comb(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
        while (true) {
            fn(comb);
            int i = k - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
            if (i < 0) break;
            ++comb[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

} // namespace growth_detail

// Drives the growth loop for one family.  Construction enumerates the Forb
// members up to the witness bound once (with their canonical lifts); `step`
// realizes the least unrealized demand by a lift amalgamation, and `run`
// iterates until the budgets stop it or no demand is left.
class GrowthEngine {
  public:
    GrowthEngine(std::vector<Structure> family, GrowthBudgets budgets, SearchOptions opts = {})
        : family_(std::move(family)), budgets_(budgets), opts_(opts) {
        if (family_.empty()) throw validation_error("growth requires a non-empty family");
        catalog_ = std::make_shared<const PieceCatalog>(catalog_family(family_, CutOptions{}));
        EnumerationOptions eopts;
        eopts.allow_repeats = true;
        reps_ = enumerate_forb(family_[0].signature(), family_, MapMode::hom,
                               budgets_.witness_bound, eopts, opts_);
        for (const auto& b : reps_) {
            rep_lifts_.push_back(canonical_lift(b, catalog_, opts_));
            rep_flats_.push_back(rep_lifts_.back().as_structure());
        }
    }

    const std::vector<Structure>& family() const { return family_; }
    const GrowthBudgets& budgets() const { return budgets_; }
    std::shared_ptr<const PieceCatalog> catalog() const { return catalog_; }
    const std::vector<Structure>& witness_pool() const { return reps_; }

    GrowthState fresh_state() const {
        GrowthState st;
        st.current = Lift(Structure(family_[0].signature()), catalog_);
        st.witness = Structure(family_[0].signature());
        st.budgets = budgets_;
        return st;
    }

    DemandScan scan(const GrowthState& st) const {
        DemandScan out;
        scan_internal(st, [&](const PendingDemand& pd, bool realized) {
            if (realized)
                ++out.satisfied;
            else
                out.unrealized.push_back(pd.demand);
            return false;
        });
        return out;
    }

    // Realizes the least unrealized demand.  Returns false when every demand
    // within the budgets is already realized.
    bool step(GrowthState& st) const {
        std::optional<PendingDemand> first;
        scan_internal(st, [&](const PendingDemand& pd, bool realized) {
            if (realized) return false;
            first = pd;
            return true;
        });
        if (!first) return false;
        realize(st, *first);
        return true;
    }

    GrowthState run() const {
        GrowthState st = fresh_state();
        while (st.rounds < budgets_.max_rounds &&
               st.current.base().vertex_count() < budgets_.max_vertices) {
            if (!step(st)) break;
        }
        return st;
    }

  private:
    struct PendingDemand {
        Demand demand;
        std::size_t rep = 0;                     // index into reps_
        std::map<std::string, std::string> emb;  // demand base -> rep vertex
        std::string extra;                       // rep vertex realizing the extension
    };

    // Enumerates demands in (base size, base, key) order.  For each distinct
    // demand the visitor sees whether a current vertex already realizes it;
    // returning true stops the scan.
    void scan_internal(const GrowthState& st,
                       const std::function<bool(const PendingDemand&, bool)>& visit) const {
        const std::vector<std::string> verts = st.current.base().canonical_vertices();
        const int n = static_cast<int>(verts.size());
        int cap = std::min(budgets_.max_demand_base, budgets_.witness_bound - 1);
        bool stop = false;
        growth_detail::for_each_subset(n, cap, [&](const std::vector<int>& comb) {
            if (stop) return;
            std::vector<std::string> base;
            base.reserve(comb.size());
            for (int i : comb) base.push_back(verts[static_cast<std::size_t>(i)]);
            Lift x = induced_lift(st.current, base);
            Structure x_flat = x.as_structure();

            // Keys already realized over this base by some current vertex.
            std::set<std::string> realized_keys;
            for (const auto& c : verts) {
                if (std::find(base.begin(), base.end(), c) != base.end()) continue;
                std::vector<std::string> ext = base;
                ext.push_back(c);
                realized_keys.insert(
                    growth_detail::canonical_text(induced_lift(st.current, ext), base, c));
            }

            // Candidate extensions drawn from the witness pool, deduplicated
            // and ordered by key so "least demand" is well defined.
            std::map<std::string, PendingDemand> found;
            for (std::size_t r = 0; r < reps_.size(); ++r) {
                if (reps_[r].vertex_count() < static_cast<int>(base.size()) + 1) continue;
                for_each_map(x_flat, rep_flats_[r], MapMode::embed, {}, opts_,
                             [&](const VertexMap& e) {
                                 std::set<std::string> image;
                                 for (const auto& [from, to] : e.assignment) image.insert(to);
                                 for (const auto& w : rep_lifts_[r].base().canonical_vertices()) {
                                     if (image.count(w)) continue;
                                     std::vector<std::string> sel;
                                     for (const auto& v : base) sel.push_back(e.at(v));
                                     sel.push_back(w);
                                     Lift y = induced_lift(rep_lifts_[r], sel);
                                     std::vector<std::string> img_base(sel.begin(),
                                                                       sel.end() - 1);
                                     std::string key =
                                         growth_detail::canonical_text(y, img_base, w);
                                     if (found.count(key)) continue;
                                     PendingDemand pd;
                                     pd.demand.base = base;
                                     pd.demand.extension_key = key;
                                     pd.rep = r;
                                     for (const auto& v : base) pd.emb[v] = e.at(v);
                                     pd.extra = w;
                                     found.emplace(key, std::move(pd));
                                 }
                                 return false;
                             });
            }
            for (const auto& [key, pd] : found) {
                if (stop) return;
                if (visit(pd, realized_keys.count(key) > 0)) stop = true;
            }
        });
    }

    void realize(GrowthState& st, const PendingDemand& pd) const {
        AmalgamProblem prob;
        prob.x = st.current;
        prob.z = induced_lift(st.current, pd.demand.base);
        prob.z_into_x.mode = MapMode::embed;
        for (const auto& v : pd.demand.base) prob.z_into_x.assignment[v] = v;
        prob.witness_x = st.witness;
        prob.x_into_witness.mode = MapMode::embed;
        prob.x_into_witness.assignment = st.witness_embedding;

        std::vector<std::string> sel;
        for (const auto& v : pd.demand.base) sel.push_back(pd.emb.at(v));
        sel.push_back(pd.extra);
        prob.y = induced_lift(rep_lifts_[pd.rep], sel);
        prob.z_into_y.mode = MapMode::embed;
        prob.z_into_y.assignment = pd.emb;
        prob.witness_y = reps_[pd.rep];
        prob.y_into_witness.mode = MapMode::embed;
        for (const auto& v : sel) prob.y_into_witness.assignment[v] = v;

        LiftAmalgamResult res = lift_amalgam(prob, family_, opts_);

        std::string fresh;
        do {
            fresh = "g" + std::to_string(st.next_fresh++);
        } while (st.current.base().has_vertex(fresh));
        const std::string grown = res.y_into_amalgam.at(pd.extra);

        std::vector<std::string> keep;
        std::map<std::string, std::string> back;
        for (const auto& v : st.current.base().vertices()) {
            keep.push_back(res.x_into_amalgam.at(v));
            back[keep.back()] = v;
        }
        keep.push_back(grown);
        back[grown] = fresh;

        std::map<std::string, std::string> emb;
        for (const auto& [glued_name, local] : back) emb[local] = glued_name;

        st.current = rename_lift(induced_lift(res.amalgam, keep), back);
        st.witness = res.glued_witness;
        st.witness_embedding = emb;
        st.realized.push_back(pd.demand);
        ++st.rounds;

        if (!forb_membership(shadow(st.current), family_, MapMode::hom, opts_).member)
            throw verification_error("growth produced a structure outside the class");
    }

    std::vector<Structure> family_;
    GrowthBudgets budgets_;
    SearchOptions opts_;
    std::shared_ptr<const PieceCatalog> catalog_;
    std::vector<Structure> reps_;
    std::vector<Lift> rep_lifts_;
    std::vector<Structure> rep_flats_;
};

inline GrowthState grow_generic(const std::vector<Structure>& family, GrowthBudgets budgets,
                                const SearchOptions& opts = {}) {
    return GrowthEngine(family, budgets, opts).run();
}

// Random-sample universality probe: how much of the class (up to the sampled
// size) maps into the grown structure.  Sampling depends only on the family
// and the seed, never on the state, so fractions from the same seed are
// comparable across growth stages.
struct ProbeReport {
    int sample_size = 0;
    int max_test_size = 0;
    std::uint64_t seed = 0;
    MapMode mode = MapMode::embed;
    int admitted = 0;               // samples that map into the shadow
    std::vector<Structure> failures;

    double fraction() const {
        return sample_size == 0 ? 0.0 : static_cast<double>(admitted) / sample_size;
    }
};

inline std::vector<Structure> sample_forb(const Signature& sig,
                                          const std::vector<Structure>& family, int sample_size,
                                          int max_test_size, std::uint64_t seed,
                                          const SearchOptions& opts = {}) {
    if (sample_size < 0 || max_test_size < 1)
        throw validation_error("sample_forb: bad sample parameters");
    std::mt19937_64 rng(seed);
    std::vector<Structure> out;
    long long attempts = 0;
    const long long cap = 10000LL * std::max(1, sample_size);
    while (static_cast<int>(out.size()) < sample_size) {
        if (++attempts > cap) throw budget_exhausted("sample_forb: rejection sampler stalled");
        int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_test_size));
        double p = 0.15 + 0.5 * gen_detail::unit(rng);
        Structure s = random_structure(sig, n, p, rng, false);
        if (forb_membership(s, family, MapMode::hom, opts).member) out.push_back(std::move(s));
    }
    return out;
}

inline ProbeReport universality_probe(const GrowthState& st, const std::vector<Structure>& family,
                                      int sample_size, int max_test_size, std::uint64_t seed,
                                      MapMode mode = MapMode::embed,
                                      const SearchOptions& opts = {}) {
    if (family.empty()) throw validation_error("universality_probe requires a non-empty family");
    ProbeReport rep;
    rep.sample_size = sample_size;
    rep.max_test_size = max_test_size;
    rep.seed = seed;
    rep.mode = mode;
    const Structure target = shadow(st.current);
    for (const auto& s :
         sample_forb(family[0].signature(), family, sample_size, max_test_size, seed, opts)) {
        if (search_map(s, target, mode, {}, opts))
            ++rep.admitted;
        else
            rep.failures.push_back(s);
    }
    return rep;
}

} // namespace relift
