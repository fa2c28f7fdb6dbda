#pragma once

#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relift/error.hpp"
#include "relift/structure.hpp"

namespace relift {

enum class MapMode { hom, mono, embed };

inline const char* to_string(MapMode m) {
    switch (m) {
        case MapMode::hom: return "hom";
        case MapMode::mono: return "mono";
        case MapMode::embed: return "embed";
    }
    return "?";
}

inline MapMode map_mode_from_string(std::string_view s) {
    if (s == "hom") return MapMode::hom;
    if (s == "mono") return MapMode::mono;
    if (s == "embed") return MapMode::embed;
    throw validation_error("unknown map mode '" + std::string(s) + "'");
}

// A total vertex map between two structures, tagged with the intended mode.
struct VertexMap {
    MapMode mode = MapMode::hom;
    std::map<std::string, std::string> assignment;

    const std::string& at(const std::string& v) const {
        auto it = assignment.find(v);
        if (it == assignment.end()) throw validation_error("map has no image for '" + v + "'");
        return it->second;
    }
};

struct SearchOptions {
    std::uint64_t node_budget = 50'000'000;
    int iso_max_vertices = 16;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Definition-level validity check; independent of any search machinery.
//   hom:   tuples map to tuples.
//   mono:  hom and injective.
//   embed: mono and tuples on the image pull back (induced copy).
inline bool check_map(const Structure& a, const Structure& b, const VertexMap& f) {
    std::vector<int> img(static_cast<std::size_t>(a.vertex_count()), -1);
    for (int v = 0; v < a.vertex_count(); ++v) {
        auto it = f.assignment.find(a.vertex(v));
        if (it == f.assignment.end()) return false;
        int w = b.index_of(it->second);
        if (w < 0) return false;
        img[static_cast<std::size_t>(v)] = w;
    }
    if (a.signature() != b.signature()) return false;
    for (std::size_t s = 0; s < a.signature().size(); ++s)
        for (const auto& t : a.tuples(static_cast<int>(s))) {
            std::vector<int> u(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) u[i] = img[static_cast<std::size_t>(t[i])];
            if (!b.has_tuple(static_cast<int>(s), u)) return false;
        }
    if (f.mode == MapMode::hom) return true;
    std::vector<int> pre(static_cast<std::size_t>(b.vertex_count()), -1);
    for (int v = 0; v < a.vertex_count(); ++v) {
        int w = img[static_cast<std::size_t>(v)];
        if (pre[static_cast<std::size_t>(w)] != -1) return false; // not injective
        pre[static_cast<std::size_t>(w)] = v;
    }
    if (f.mode == MapMode::mono) return true;
    for (std::size_t s = 0; s < b.signature().size(); ++s)
        for (const auto& u : b.tuples(static_cast<int>(s))) {
            std::vector<int> t(u.size());
            bool inside = true;
            for (std::size_t i = 0; inside && i < u.size(); ++i) {
                int v = pre[static_cast<std::size_t>(u[i])];
                if (v < 0) inside = false;
                else t[i] = v;
            }
            if (inside && !a.has_tuple(static_cast<int>(s), t)) return false;
        }
    return true;
}

namespace hom_detail {

using Mask = std::uint64_t;

inline int lowest(Mask m) { return std::countr_zero(m); }

struct Constraint {
    int sym;
    std::vector<int> vars; // the tuple of A, as variable indices
};

// Backtracking search with arc-consistency over tuple (table) constraints.
// Variable order: smallest domain first, ties by canonical vertex order.
// Value order: canonical vertex order of the target.  Deterministic; node
// budget and deadline surface as budget_exhausted.
class Searcher {
public:
    Searcher(const Structure& a, const Structure& b, MapMode mode, const SearchOptions& opts)
        : a_(a), b_(b), mode_(mode), opts_(opts) {
        if (a.signature() != b.signature())
            throw validation_error("map search: signature mismatch");
        na_ = a.vertex_count();
        nb_ = b.vertex_count();
        if (nb_ > 64) throw budget_exhausted("map search: target exceeds 64 vertices");
        full_ = nb_ == 64 ? ~Mask{0} : ((Mask{1} << nb_) - 1);
        domains_.assign(static_cast<std::size_t>(na_), full_);
        assigned_.assign(static_cast<std::size_t>(na_), -1);
        // Canonical ranks for deterministic tie-breaks and value order.
        auto rank_of = [](const Structure& s) {
            auto canon = s.canonical_vertices();
            std::vector<int> rank(static_cast<std::size_t>(s.vertex_count()));
            for (std::size_t i = 0; i < canon.size(); ++i)
                rank[static_cast<std::size_t>(s.index_of(canon[i]))] = static_cast<int>(i);
            return rank;
        };
        arank_ = rank_of(a);
        value_order_.clear();
        for (const auto& v : b.canonical_vertices()) value_order_.push_back(b.index_of(v));
        for (std::size_t s = 0; s < a.signature().size(); ++s)
            for (const auto& t : a.tuples(static_cast<int>(s)))
                constraints_.push_back({static_cast<int>(s), t});
        cons_of_var_.assign(static_cast<std::size_t>(na_), {});
        for (std::size_t c = 0; c < constraints_.size(); ++c)
            for (int v : constraints_[c].vars) {
                auto& list = cons_of_var_[static_cast<std::size_t>(v)];
                if (list.empty() || list.back() != static_cast<int>(c)) list.push_back(static_cast<int>(c));
            }
        if (mode_ != MapMode::hom) {
            // Injective maps send distinct tuples to distinct tuples, so a
            // vertex needs at least as many incident tuples on the target side.
            for (int v = 0; v < na_; ++v) {
                for (std::size_t s = 0; s < a.signature().size(); ++s) {
                    std::size_t need = incident_count(a, static_cast<int>(s), v);
                    if (need == 0) continue;
                    Mask keep = 0;
                    for (int w = 0; w < nb_; ++w)
                        if (incident_count(b, static_cast<int>(s), w) >= need) keep |= Mask{1} << w;
                    domains_[static_cast<std::size_t>(v)] &= keep;
                }
            }
        }
    }

    // Applies a partial assignment (by vertex name).  Throws validation_error
    // if the partial itself is inconsistent for the mode.
    void preassign(const std::map<std::string, std::string>& partial) {
        Mask used = 0;
        for (const auto& [src, tgt] : partial) {
            int v = a_.index_of(src);
            if (v < 0) throw validation_error("partial map: unknown source vertex '" + src + "'");
            int w = b_.index_of(tgt);
            if (w < 0) throw validation_error("partial map: unknown target vertex '" + tgt + "'");
            if (mode_ != MapMode::hom && (used & (Mask{1} << w)))
                throw validation_error("partial map: not injective at '" + tgt + "'");
            used |= Mask{1} << w;
            pins_.emplace_back(v, w);
        }
        // Tuples fully covered by the pins must already map correctly.
        std::vector<int> img(static_cast<std::size_t>(na_), -1);
        for (auto [v, w] : pins_) img[static_cast<std::size_t>(v)] = w;
        for (const auto& c : constraints_) {
            std::vector<int> u;
            bool covered = true;
            for (int v : c.vars) {
                if (img[static_cast<std::size_t>(v)] < 0) {
                    covered = false;
                    break;
                }
                u.push_back(img[static_cast<std::size_t>(v)]);
            }
            if (covered && !b_.has_tuple(c.sym, u))
                throw validation_error("partial map: violates a tuple constraint");
        }
    }

    // Runs the search.  on_solution returns true to stop (find-one) or false
    // to keep enumerating (count-all).  Returns true if stopped early.
    bool run(const std::function<bool(const std::vector<int>&)>& on_solution) {
        for (auto [v, w] : pins_) {
            if (!(domains_[static_cast<std::size_t>(v)] & (Mask{1} << w))) return false;
            domains_[static_cast<std::size_t>(v)] = Mask{1} << w;
        }
        if (!propagate_all()) return false;
        on_solution_ = &on_solution;
        return dfs();
    }

private:
    static std::size_t incident_count(const Structure& s, int sym, int v) {
        std::size_t n = 0;
        for (const auto& t : s.tuples(sym))
            for (int x : t)
                if (x == v) {
                    ++n;
                    break;
                }
        return n;
    }

    void tick() {
        if (++nodes_ > opts_.node_budget)
            throw budget_exhausted("map search: node budget exhausted");
        if (opts_.deadline && (nodes_ & 0xFFF) == 0 &&
            std::chrono::steady_clock::now() > *opts_.deadline)
            throw budget_exhausted("map search: deadline exceeded");
    }

    // Recomputes the supported values of every variable of one constraint.
    bool revise(const Constraint& c, std::vector<int>& touched) {
        const auto& bt = b_.tuples(c.sym);
        std::size_t k = c.vars.size();
        std::vector<Mask> posmask(k, 0);
        for (const auto& u : bt) {
            bool feasible = true;
            for (std::size_t i = 0; feasible && i < k; ++i) {
                if (!(domains_[static_cast<std::size_t>(c.vars[i])] & (Mask{1} << u[i]))) feasible = false;
                for (std::size_t j = i + 1; feasible && j < k; ++j) {
                    if (c.vars[i] == c.vars[j] && u[i] != u[j]) feasible = false;
                    if (mode_ != MapMode::hom && c.vars[i] != c.vars[j] && u[i] == u[j])
                        feasible = false;
                }
            }
            if (feasible)
                for (std::size_t i = 0; i < k; ++i) posmask[i] |= Mask{1} << u[i];
        }
        for (std::size_t i = 0; i < k; ++i) {
            int v = c.vars[i];
            Mask allowed = posmask[i];
            for (std::size_t j = 0; j < k; ++j)
                if (c.vars[j] == v) allowed &= posmask[j];
            Mask nd = domains_[static_cast<std::size_t>(v)] & allowed;
            if (nd != domains_[static_cast<std::size_t>(v)]) {
                domains_[static_cast<std::size_t>(v)] = nd;
                if (nd == 0) return false;
                touched.push_back(v);
            }
        }
        return true;
    }

    bool propagate_all() {
        std::vector<char> queued(constraints_.size(), 1);
        std::vector<int> queue;
        for (std::size_t c = 0; c < constraints_.size(); ++c) queue.push_back(static_cast<int>(c));
        return propagate(queue, queued);
    }

    bool propagate_from(int var) {
        std::vector<char> queued(constraints_.size(), 0);
        std::vector<int> queue;
        for (int c : cons_of_var_[static_cast<std::size_t>(var)]) {
            queued[static_cast<std::size_t>(c)] = 1;
            queue.push_back(c);
        }
        return propagate(queue, queued);
    }

    bool propagate(std::vector<int>& queue, std::vector<char>& queued) {
        std::vector<int> touched;
        while (!queue.empty()) {
            int c = queue.back();
            queue.pop_back();
            queued[static_cast<std::size_t>(c)] = 0;
            touched.clear();
            if (!revise(constraints_[static_cast<std::size_t>(c)], touched)) return false;
            for (int v : touched)
                for (int c2 : cons_of_var_[static_cast<std::size_t>(v)])
                    if (!queued[static_cast<std::size_t>(c2)]) {
                        queued[static_cast<std::size_t>(c2)] = 1;
                        queue.push_back(c2);
                    }
        }
        return true;
    }

    int pick_var() const {
        int best = -1;
        int bestpop = 65;
        for (int v = 0; v < na_; ++v) {
            if (assigned_[static_cast<std::size_t>(v)] >= 0) continue;
            int pop = std::popcount(domains_[static_cast<std::size_t>(v)]);
            if (pop < bestpop ||
                (pop == bestpop && best >= 0 &&
                 arank_[static_cast<std::size_t>(v)] < arank_[static_cast<std::size_t>(best)])) {
                best = v;
                bestpop = pop;
            }
        }
        return best;
    }

    // For embed mode: every target tuple fully inside the current image must
    // pull back to a source tuple.
    bool reflects_so_far() const {
        std::vector<int> pre(static_cast<std::size_t>(nb_), -1);
        for (int v = 0; v < na_; ++v)
            if (assigned_[static_cast<std::size_t>(v)] >= 0)
                pre[static_cast<std::size_t>(assigned_[static_cast<std::size_t>(v)])] = v;
        for (std::size_t s = 0; s < b_.signature().size(); ++s)
            for (const auto& u : b_.tuples(static_cast<int>(s))) {
                std::vector<int> t(u.size());
                bool inside = true;
                for (std::size_t i = 0; inside && i < u.size(); ++i) {
                    int v = pre[static_cast<std::size_t>(u[i])];
                    if (v < 0) inside = false;
                    else t[i] = v;
                }
                if (inside && !a_.has_tuple(static_cast<int>(s), t)) return false;
            }
        return true;
    }

    bool dfs() {
        int var = pick_var();
        if (var < 0) {
            std::vector<int> sol(assigned_);
            return (*on_solution_)(sol);
        }
        Mask dom = domains_[static_cast<std::size_t>(var)];
        for (int w : value_order_) {
            if (!(dom & (Mask{1} << w))) continue;
            tick();
            auto saved_domains = domains_;
            assigned_[static_cast<std::size_t>(var)] = w;
            domains_[static_cast<std::size_t>(var)] = Mask{1} << w;
            bool ok = true;
            if (mode_ != MapMode::hom) {
                for (int v = 0; ok && v < na_; ++v)
                    if (v != var) {
                        Mask nd = domains_[static_cast<std::size_t>(v)] & ~(Mask{1} << w);
                        if (nd != domains_[static_cast<std::size_t>(v)]) {
                            domains_[static_cast<std::size_t>(v)] = nd;
                            if (nd == 0) ok = false;
                        }
                    }
            }
            if (ok) ok = propagate_from(var);
            if (ok && mode_ == MapMode::embed) ok = reflects_so_far();
            if (ok && dfs()) return true;
            assigned_[static_cast<std::size_t>(var)] = -1;
            domains_ = std::move(saved_domains);
        }
        return false;
    }

    const Structure& a_;
    const Structure& b_;
    MapMode mode_;
    SearchOptions opts_;
    int na_ = 0, nb_ = 0;
    Mask full_ = 0;
    std::vector<Mask> domains_;
    std::vector<int> assigned_;
    std::vector<int> arank_;
    std::vector<int> value_order_;
    std::vector<Constraint> constraints_;
    std::vector<std::vector<int>> cons_of_var_;
    std::vector<std::pair<int, int>> pins_;
    std::uint64_t nodes_ = 0;
    const std::function<bool(const std::vector<int>&)>* on_solution_ = nullptr;
};

} // namespace hom_detail

// Finds one map of the requested mode extending `partial`, or nullopt if none
// exists.  Deterministic.  Budget exhaustion throws; it is never reported as
// "none".
inline std::optional<VertexMap> search_map(const Structure& a, const Structure& b, MapMode mode,
                                           const std::map<std::string, std::string>& partial = {},
                                           const SearchOptions& opts = {}) {
    hom_detail::Searcher s(a, b, mode, opts);
    s.preassign(partial);
    std::optional<VertexMap> out;
    s.run([&](const std::vector<int>& sol) {
        VertexMap f;
        f.mode = mode;
        for (int v = 0; v < a.vertex_count(); ++v)
            f.assignment[a.vertex(v)] = b.vertex(sol[static_cast<std::size_t>(v)]);
        out = std::move(f);
        return true;
    });
    if (out && !check_map(a, b, *out)) throw verification_error("search returned an invalid map");
    return out;
}

// Enumerates maps of the requested mode extending `partial`, in deterministic
// order.  The callback returns true to stop early.
inline void for_each_map(const Structure& a, const Structure& b, MapMode mode,
                         const std::map<std::string, std::string>& partial,
                         const SearchOptions& opts,
                         const std::function<bool(const VertexMap&)>& fn) {
    hom_detail::Searcher s(a, b, mode, opts);
    s.preassign(partial);
    s.run([&](const std::vector<int>& sol) {
        VertexMap f;
        f.mode = mode;
        for (int v = 0; v < a.vertex_count(); ++v)
            f.assignment[a.vertex(v)] = b.vertex(sol[static_cast<std::size_t>(v)]);
        return fn(f);
    });
}

// Exhaustive count of maps of the requested mode.
inline std::uint64_t count_maps(const Structure& a, const Structure& b, MapMode mode,
                                const SearchOptions& opts = {}) {
    hom_detail::Searcher s(a, b, mode, opts);
    std::uint64_t n = 0;
    s.run([&](const std::vector<int>&) {
        ++n;
        return false;
    });
    return n;
}

struct ForbWitness {
    int family_index = -1;
    VertexMap map;
};

struct ForbResult {
    bool member = false;
    std::optional<ForbWitness> witness; // set when not a member
};

// Membership in Forb(F): no family member admits a map of the given mode into
// `a`.  On failure the witness names the member and the map.
inline ForbResult forb_membership(const Structure& a, const std::vector<Structure>& family,
                                  MapMode mode, const SearchOptions& opts = {}) {
    for (std::size_t i = 0; i < family.size(); ++i) {
        auto f = search_map(family[i], a, mode, {}, opts);
        if (f) return {false, ForbWitness{static_cast<int>(i), std::move(*f)}};
    }
    return {true, std::nullopt};
}

} // namespace relift
