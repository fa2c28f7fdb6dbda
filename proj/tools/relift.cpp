// relift: command-line surface over the relational-structure toolkit.
// Every subcommand is a thin adapter: load inputs, call one library
// operation, format the outcome.  Exit codes: 0 success/true, 1 false or
// counterexample found, 2 unknown (budget/deadline), 3 usage or input error.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relift/lift_codec.hpp"
#include "relift/relift.hpp"

using nlohmann::json;
using namespace relift;

namespace {

constexpr std::uint64_t kDefaultSeed = 1729;

enum ExitCode : int { exit_ok = 0, exit_false = 1, exit_unknown = 2, exit_usage = 3 };

struct Global {
    std::string format = "text";
    std::uint64_t seed = kDefaultSeed;
    std::optional<std::uint64_t> budget;
    std::optional<double> timeout_s;
    std::optional<int> max_size;
    int rc = exit_ok;

    SearchOptions search() const {
        SearchOptions o;
        if (const char* env = std::getenv("RELIFT_BUDGET_NODES")) {
            try {
                o.node_budget = std::stoull(env);
            } catch (const std::exception&) {
                throw validation_error("RELIFT_BUDGET_NODES is not a number");
            }
        }
        if (budget) o.node_budget = *budget;
        if (max_size) o.iso_max_vertices = *max_size;
        if (timeout_s)
            o.deadline = std::chrono::steady_clock::now() +
                         std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                             std::chrono::duration<double>(*timeout_s));
        return o;
    }

    CutOptions cuts() const {
        CutOptions o;
        if (max_size) o.max_vertices = *max_size;
        o.search = search();
        return o;
    }
};

void emit(const Global& g, const std::string& command, json result,
          const std::vector<std::string>& text) {
    if (g.format == "json") {
        result["schema_version"] = 1;
        result["command"] = command;
        std::cout << result.dump(2) << "\n";
    } else {
        for (const auto& line : text) std::cout << line << "\n";
    }
}

json map_to_json(const std::map<std::string, std::string>& m) {
    json out = json::object();
    for (const auto& [k, v] : m) out[k] = v;
    return out;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::map<std::string, std::string> parse_assignments(const std::vector<std::string>& items) {
    std::map<std::string, std::string> out;
    for (const auto& raw : items)
        for (const auto& item : split_csv(raw)) {
            auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
                throw validation_error("expected name=name, got '" + item + "'");
            out[item.substr(0, eq)] = item.substr(eq + 1);
        }
    return out;
}

std::vector<Structure> load_family(const std::vector<std::string>& paths) {
    if (paths.empty()) throw validation_error("at least one family member is required");
    std::vector<Structure> out;
    for (const auto& p : paths) out.push_back(load_structure(p));
    return out;
}

// A corpus argument is a directory of .rel files, a single .rel file, or a
// JSON generator spec {"kind","count","max_vertices",["min_vertices","p","seed"]}.
std::vector<Structure> load_corpus(const std::string& arg) {
    namespace fs = std::filesystem;
    std::vector<Structure> out;
    if (fs::is_directory(arg)) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(arg))
            if (e.path().extension() == ".rel") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) out.push_back(load_structure(f));
        if (out.empty()) throw validation_error("corpus directory has no .rel files");
        return out;
    }
    std::string text = read_text_file(arg);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json spec = json::parse(text, nullptr, true, true);
        const std::string kind = spec.at("kind").get<std::string>();
        const int count = spec.at("count").get<int>();
        const int max_v = spec.at("max_vertices").get<int>();
        const int min_v = spec.value("min_vertices", 3);
        const double p = spec.value("p", 0.5);
        const std::uint64_t seed = spec.value("seed", kDefaultSeed);
        if (count < 1 || min_v < 1 || max_v < min_v)
            throw validation_error("corpus spec: bad count or vertex range");
        for (int i = 0; i < count; ++i) {
            int n = min_v + (i % (max_v - min_v + 1));
            out.push_back(generate_named(kind, n, p, seed + static_cast<std::uint64_t>(i)));
        }
        return out;
    }
    out.push_back(parse_structure(text));
    return out;
}

void write_or_print(const Global& g, const std::string& command, const std::string& payload_key,
                    const std::string& payload, const std::string& out_path, json extra,
                    std::vector<std::string> text_extra = {}) {
    std::vector<std::string> text;
    if (out_path.empty()) {
        text.push_back(payload);
    } else {
        write_text_file(out_path, payload);
        text.push_back("written: " + out_path);
    }
    for (auto& t : text_extra) text.push_back(std::move(t));
    extra[payload_key] = payload;
    if (!out_path.empty()) extra["output"] = out_path;
    emit(g, command, std::move(extra), text);
}

json vertex_map_json(const VertexMap& f) {
    json out;
    out["mode"] = to_string(f.mode);
    out["assignment"] = map_to_json(f.assignment);
    return out;
}

json structures_json(const std::vector<Structure>& v) {
    json out = json::array();
    for (const auto& s : v) out.push_back(serialize(s));
    return out;
}

json demand_json(const Demand& d) {
    return json{{"base", d.base}, {"extension_key", d.extension_key}};
}

json growth_checkpoint(const GrowthState& st, const std::vector<Structure>& family) {
    json realized = json::array();
    for (const auto& d : st.realized) realized.push_back(demand_json(d));
    return json{{"schema_version", 1},
                {"kind", "growth_state"},
                {"family", structures_json(family)},
                {"budgets",
                 {{"max_vertices", st.budgets.max_vertices},
                  {"max_rounds", st.budgets.max_rounds},
                  {"witness_bound", st.budgets.witness_bound},
                  {"max_demand_base", st.budgets.max_demand_base}}},
                {"lift", serialize_lift(st.current)},
                {"witness", serialize(st.witness)},
                {"witness_embedding", map_to_json(st.witness_embedding)},
                {"rounds", st.rounds},
                {"next_fresh", st.next_fresh},
                {"realized", realized}};
}

std::pair<GrowthState, std::vector<Structure>> load_checkpoint(const std::string& path) {
    json j = json::parse(read_text_file(path), nullptr, true, true);
    if (j.value("kind", "") != "growth_state")
        throw validation_error("checkpoint file is not a growth state");
    std::vector<Structure> family;
    for (const auto& t : j.at("family")) family.push_back(parse_structure(t.get<std::string>()));
    GrowthState st;
    st.current = parse_lift(j.at("lift").get<std::string>());
    st.witness = parse_structure(j.at("witness").get<std::string>());
    for (const auto& [k, v] : j.at("witness_embedding").items())
        st.witness_embedding[k] = v.get<std::string>();
    st.rounds = j.at("rounds").get<int>();
    st.next_fresh = j.at("next_fresh").get<int>();
    for (const auto& d : j.at("realized"))
        st.realized.push_back(Demand{d.at("base").get<std::vector<std::string>>(),
                                     d.at("extension_key").get<std::string>()});
    const auto& b = j.at("budgets");
    st.budgets = GrowthBudgets{b.at("max_vertices").get<int>(), b.at("max_rounds").get<int>(),
                               b.at("witness_bound").get<int>(), b.at("max_demand_base").get<int>()};
    return {std::move(st), std::move(family)};
}

} // namespace

int main(int argc, char** argv) {
    Global g;
    CLI::App app{"relift: finite relational structures, lifts, and their checks"};
    app.require_subcommand(1);
    app.add_option("--format", g.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", g.seed, "random seed (fixed default for reproducibility)");
    app.add_option("--budget", g.budget, "search node budget (overrides RELIFT_BUDGET_NODES)");
    app.add_option("--timeout-s", g.timeout_s, "wall-clock deadline for searches, seconds");
    app.add_option("--max-size", g.max_size, "size guard for iso/cut computations");

    auto sub = [&](const std::string& name, const std::string& desc) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };

    // ---- plumbing commands ------------------------------------------------
    {
        auto* c = sub("validate", "parse a .rel file and report its shape");
        auto path = std::make_shared<std::string>();
        auto rooted = std::make_shared<bool>(false);
        c->add_option("file", *path, "structure file")->required();
        c->add_flag("--rooted", *rooted, "require a roots line");
        c->callback([&, path, rooted] {
            json r;
            std::vector<std::string> text;
            if (*rooted) {
                RootedStructure rs = load_rooted(*path);
                r["vertices"] = rs.base.vertex_count();
                r["tuples"] = rs.base.tuple_count();
                r["roots"] = rs.roots;
                r["signature"] = serialize_signature(rs.base.signature());
                text.push_back("ok: " + std::to_string(rs.base.vertex_count()) + " vertices, " +
                               std::to_string(rs.base.tuple_count()) + " tuples, " +
                               std::to_string(rs.roots.size()) + " roots");
            } else {
                Structure s = load_structure(*path);
                r["vertices"] = s.vertex_count();
                r["tuples"] = s.tuple_count();
                r["signature"] = serialize_signature(s.signature());
                text.push_back("ok: " + std::to_string(s.vertex_count()) + " vertices, " +
                               std::to_string(s.tuple_count()) + " tuples");
            }
            emit(g, "validate", std::move(r), text);
        });
    }
    {
        auto* c = sub("gaifman", "emit the Gaifman graph of a structure");
        auto path = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        c->add_option("file", *path)->required();
        c->add_option("-o,--output", *out, "write to file instead of stdout");
        c->callback([&, path, out] {
            write_or_print(g, "gaifman", "structure", serialize(gaifman(load_structure(*path))),
                           *out, {});
        });
    }
    {
        auto* c = sub("components", "connected components of the Gaifman graph");
        auto path = std::make_shared<std::string>();
        c->add_option("file", *path)->required();
        c->callback([&, path] {
            auto comps = components(load_structure(*path));
            json r;
            r["components"] = comps;
            r["connected"] = comps.size() <= 1;
            std::vector<std::string> text;
            for (const auto& comp : comps) {
                std::string line = "component:";
                for (const auto& v : comp) line += " " + v;
                text.push_back(line);
            }
            text.push_back(comps.size() <= 1 ? "connected" : "disconnected");
            emit(g, "components", std::move(r), text);
        });
    }
    {
        auto* c = sub("induced", "induced substructure on a vertex set");
        auto path = std::make_shared<std::string>();
        auto verts = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        c->add_option("file", *path)->required();
        c->add_option("-v,--vertices", *verts, "comma-separated vertex names")->required();
        c->add_option("-o,--output", *out);
        c->callback([&, path, verts, out] {
            write_or_print(g, "induced", "structure",
                           serialize(induced(load_structure(*path), split_csv(*verts))), *out, {});
        });
    }
    {
        auto* c = sub("union", "disjoint union of two structures");
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        c->add_option("a", *a)->required();
        c->add_option("b", *b)->required();
        c->add_option("-o,--output", *out);
        c->callback([&, a, b, out] {
            write_or_print(g, "union", "structure",
                           serialize(disjoint_union(load_structure(*a), load_structure(*b))), *out,
                           {});
        });
    }
    {
        auto* c = sub("generate", "generate a named structure");
        auto family = std::make_shared<std::string>();
        auto n = std::make_shared<int>(5);
        auto p = std::make_shared<double>(0.5);
        auto out = std::make_shared<std::string>();
        c->add_option("family", *family,
                      "path|cycle|clique|oriented_path|transitive_tournament|petersen|random|"
                      "random_connected|planar")
            ->required();
        c->add_option("-n,--vertices", *n);
        c->add_option("-p,--density", *p);
        c->add_option("-o,--output", *out);
        c->callback([&, family, n, p, out] {
            write_or_print(g, "generate", "structure",
                           serialize(generate_named(*family, *n, *p, g.seed)), *out,
                           {{"family", *family}, {"n", *n}});
        });
    }

    // ---- maps and classes --------------------------------------------------
    {
        auto* c = sub("iso", "isomorphism test");
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        c->add_option("a", *a)->required();
        c->add_option("b", *b)->required();
        c->callback([&, a, b] {
            auto f = iso_check(load_structure(*a), load_structure(*b), g.search());
            json r;
            r["isomorphic"] = f.has_value();
            std::vector<std::string> text;
            if (f) {
                r["map"] = map_to_json(f->assignment);
                text.push_back("isomorphic");
            } else {
                text.push_back("not isomorphic");
                g.rc = exit_false;
            }
            emit(g, "iso", std::move(r), text);
        });
    }
    {
        auto* c = sub("hom", "search for a structure map");
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        auto mode = std::make_shared<std::string>("hom");
        auto pins = std::make_shared<std::vector<std::string>>();
        c->add_option("a", *a)->required();
        c->add_option("b", *b)->required();
        c->add_option("--mode", *mode)->check(CLI::IsMember({"hom", "mono", "embed"}));
        c->add_option("--pin", *pins, "partial assignment, name=name");
        c->callback([&, a, b, mode, pins] {
            auto f = search_map(load_structure(*a), load_structure(*b),
                                map_mode_from_string(*mode), parse_assignments(*pins), g.search());
            json r;
            r["mode"] = *mode;
            r["found"] = f.has_value();
            std::vector<std::string> text;
            if (f) {
                r["map"] = map_to_json(f->assignment);
                std::string line = "found:";
                for (const auto& [k, v] : f->assignment) line += " " + k + "->" + v;
                text.push_back(line);
            } else {
                text.push_back("none");
                g.rc = exit_false;
            }
            emit(g, "hom", std::move(r), text);
        });
    }
    {
        auto* c = sub("count", "count structure maps");
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        auto mode = std::make_shared<std::string>("hom");
        c->add_option("a", *a)->required();
        c->add_option("b", *b)->required();
        c->add_option("--mode", *mode)->check(CLI::IsMember({"hom", "mono", "embed"}));
        c->callback([&, a, b, mode] {
            auto n = count_maps(load_structure(*a), load_structure(*b),
                                map_mode_from_string(*mode), g.search());
            emit(g, "count", {{"mode", *mode}, {"count", n}},
                 {std::to_string(n)});
        });
    }
    auto forb_cmd = [&](const std::string& name, MapMode mode, const std::string& desc) {
        auto* c = sub(name, desc);
        auto x = std::make_shared<std::string>();
        auto fam = std::make_shared<std::vector<std::string>>();
        c->add_option("x", *x, "structure to test")->required();
        c->add_option("family", *fam, "family members")->required()->expected(-1);
        c->callback([&, x, fam, mode, name] {
            auto res = forb_membership(load_structure(*x), load_family(*fam), mode, g.search());
            json r;
            r["member"] = res.member;
            std::vector<std::string> text;
            if (res.member) {
                text.push_back("member");
            } else {
                r["witness"] = {{"family_index", res.witness->family_index},
                                {"map", map_to_json(res.witness->map.assignment)}};
                text.push_back("not a member: family[" +
                               std::to_string(res.witness->family_index) + "] maps in");
                g.rc = exit_false;
            }
            emit(g, name, std::move(r), text);
        });
    };
    forb_cmd("forbh", MapMode::hom, "membership in Forb_h (no hom from any member)");
    forb_cmd("forbe", MapMode::embed, "membership in Forb_e (no embedding of any member)");
    {
        auto* c = sub("core", "compute the core");
        auto a = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        c->add_option("a", *a)->required();
        c->add_option("-o,--output", *out);
        c->callback([&, a, out] {
            auto res = core_of(load_structure(*a), g.search());
            write_or_print(g, "core", "structure", serialize(res.core), *out,
                           {{"retraction", map_to_json(res.retraction.assignment)},
                            {"vertices", res.core.vertex_count()}});
        });
    }
    {
        auto* c = sub("minimize", "reduce a family to pairwise-incomparable cores");
        auto fam = std::make_shared<std::vector<std::string>>();
        c->add_option("family", *fam)->required()->expected(-1);
        c->callback([&, fam] {
            auto min = minimize_family(load_family(*fam), g.search());
            json r;
            r["count"] = min.size();
            r["members"] = structures_json(min);
            std::vector<std::string> text;
            for (std::size_t i = 0; i < min.size(); ++i) {
                text.push_back("# member " + std::to_string(i));
                text.push_back(serialize(min[i]));
            }
            emit(g, "minimize", std::move(r), text);
        });
    }

    // ---- cuts, pieces, catalogs --------------------------------------------
    {
        auto* c = sub("cuts", "inclusion-minimal vertex cuts of the Gaifman graph");
        auto a = std::make_shared<std::string>();
        c->add_option("a", *a)->required();
        c->callback([&, a] {
            auto cuts = minimal_cuts(load_structure(*a), g.cuts());
            json r;
            r["cuts"] = cuts;
            std::vector<std::string> text;
            for (const auto& cut : cuts) {
                std::string line = "cut:";
                for (const auto& v : cut) line += " " + v;
                text.push_back(line);
            }
            if (cuts.empty()) text.push_back("no cuts (irreducible or too small)");
            emit(g, "cuts", std::move(r), text);
        });
    }
    {
        auto* c = sub("pieces", "pieces generated by the minimal cuts");
        auto a = std::make_shared<std::string>();
        c->add_option("a", *a)->required();
        c->callback([&, a] {
            auto ps = pieces(load_structure(*a), g.cuts());
            json r = json::array();
            std::vector<std::string> text;
            for (const auto& p : ps) {
                r.push_back({{"cut", p.origin.cut},
                             {"component", p.origin.component_least},
                             {"roots", p.piece.roots},
                             {"structure", serialize(p.piece.base)}});
                std::string line = "piece over {";
                for (std::size_t i = 0; i < p.origin.cut.size(); ++i)
                    line += (i ? "," : "") + p.origin.cut[i];
                line += "} component " + p.origin.component_least + ": " +
                        std::to_string(p.piece.base.vertex_count()) + " vertices";
                text.push_back(line);
            }
            emit(g, "pieces", {{"pieces", std::move(r)}}, text);
        });
    }
    {
        auto* c = sub("catalog", "deduplicated piece catalog of a family");
        auto fam = std::make_shared<std::vector<std::string>>();
        auto out = std::make_shared<std::string>();
        c->add_option("family", *fam)->required()->expected(-1);
        c->add_option("-o,--output", *out);
        c->callback([&, fam, out] {
            auto cat = catalog_family(load_family(*fam), g.cuts());
            write_or_print(g, "catalog", "catalog", serialize_catalog(cat), *out,
                           {{"entries", cat.size()}},
                           {"entries: " + std::to_string(cat.size())});
        });
    }
    {
        auto* c = sub("predicates", "cut-shape predicates of a family");
        auto fam = std::make_shared<std::vector<std::string>>();
        c->add_option("family", *fam)->required()->expected(-1);
        c->callback([&, fam] {
            auto p = family_predicates(load_family(*fam), g.cuts());
            json r{{"max_min_cut_size", p.max_min_cut_size},
                   {"all_cuts_singleton", p.all_cuts_singleton},
                   {"cuts_induce_irreducible", p.cuts_induce_irreducible}};
            emit(g, "predicates", std::move(r),
                 {"max_min_cut_size: " + std::to_string(p.max_min_cut_size),
                  std::string("all_cuts_singleton: ") + (p.all_cuts_singleton ? "yes" : "no"),
                  std::string("cuts_induce_irreducible: ") +
                      (p.cuts_induce_irreducible ? "yes" : "no")});
        });
    }

    // ---- lifts ---------------------------------------------------------------
    auto catalog_from_flags = [&](const std::vector<std::string>& fam, const std::string& catpath) {
        if (!catpath.empty() && !fam.empty())
            throw validation_error("give either --family or --catalog, not both");
        if (!catpath.empty())
            return std::make_shared<const PieceCatalog>(load_catalog(catpath));
        return std::make_shared<const PieceCatalog>(catalog_family(load_family(fam), g.cuts()));
    };
    {
        auto* c = sub("lift", "canonical lift of a structure");
        auto a = std::make_shared<std::string>();
        auto fam = std::make_shared<std::vector<std::string>>();
        auto catpath = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        c->add_option("a", *a)->required();
        c->add_option("--family", *fam)->expected(-1);
        c->add_option("--catalog", *catpath);
        c->add_option("-o,--output", *out);
        c->callback([&, a, fam, catpath, out] {
            auto cat = catalog_from_flags(*fam, *catpath);
            Lift l = canonical_lift(load_structure(*a), cat, g.search());
            json ext_counts = json::array();
            for (std::size_t e = 0; e < cat->size(); ++e)
                ext_counts.push_back(l.ext_named(static_cast<int>(e)).size());
            write_or_print(g, "lift", "lift", serialize_lift(l), *out,
                           {{"ext_counts", ext_counts}});
        });
    }
    {
        auto* c = sub("shadow", "forget the extended relations of a lift");
        auto x = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        c->add_option("x", *x, "lift file")->required();
        c->add_option("-o,--output", *out);
        c->callback([&, x, out] {
            write_or_print(g, "shadow", "structure", serialize(shadow(load_lift(*x))), *out, {});
        });
    }
    {
        auto* c = sub("lift-induce", "induced sub-lift on a vertex set");
        auto x = std::make_shared<std::string>();
        auto verts = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        c->add_option("x", *x, "lift file")->required();
        c->add_option("-v,--vertices", *verts)->required();
        c->add_option("-o,--output", *out);
        c->callback([&, x, verts, out] {
            write_or_print(g, "lift-induce", "lift",
                           serialize_lift(induced_lift(load_lift(*x), split_csv(*verts))), *out,
                           {});
        });
    }
    {
        auto* c = sub("lift-member", "bounded membership test in the lifted class");
        auto x = std::make_shared<std::string>();
        auto fam = std::make_shared<std::vector<std::string>>();
        auto bound = std::make_shared<int>(6);
        c->add_option("x", *x, "lift file")->required();
        c->add_option("--family", *fam)->required()->expected(-1);
        c->add_option("--bound", *bound, "witness size bound");
        c->callback([&, x, fam, bound] {
            auto v = membership_in_L(load_lift(*x), load_family(*fam), *bound, g.search());
            json r;
            std::vector<std::string> text;
            switch (v.status) {
                case MembershipVerdict::Status::member:
                    r["status"] = "member";
                    r["witness"] = serialize(*v.witness);
                    r["embedding"] = map_to_json(v.witness_embedding->assignment);
                    text.push_back("member (witness on " +
                                   std::to_string(v.witness->vertex_count()) + " vertices)");
                    break;
                case MembershipVerdict::Status::non_member_up_to:
                    r["status"] = "non_member_up_to";
                    r["bound"] = v.bound;
                    r["note"] = v.note;
                    text.push_back("no witness up to " + std::to_string(v.bound) +
                                   (v.note.empty() ? "" : ": " + v.note));
                    g.rc = exit_false;
                    break;
                case MembershipVerdict::Status::unknown:
                    r["status"] = "unknown";
                    r["note"] = v.note;
                    text.push_back("unknown: " + v.note);
                    g.rc = exit_unknown;
                    break;
            }
            emit(g, "lift-member", std::move(r), text);
        });
    }

    // ---- amalgamation --------------------------------------------------------
    {
        auto* c = sub("amalgam", "free amalgam over a shared induced substructure");
        auto a = std::make_shared<std::string>();
        auto b = std::make_shared<std::string>();
        auto shared_v = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        c->add_option("a", *a)->required();
        c->add_option("b", *b)->required();
        c->add_option("--shared", *shared_v, "comma-separated shared vertex names")->required();
        c->add_option("-o,--output", *out);
        c->callback([&, a, b, shared_v, out] {
            auto res =
                free_amalgam_over(load_structure(*a), load_structure(*b), split_csv(*shared_v));
            write_or_print(g, "amalgam", "structure", serialize(res.glued), *out,
                           {{"left", map_to_json(res.left_embedding.assignment)},
                            {"right", map_to_json(res.right_embedding.assignment)}});
        });
    }
    {
        auto* c = sub("lift-amalgam", "amalgamate two lifts over a shared sub-lift, with checks");
        auto x = std::make_shared<std::string>();
        auto y = std::make_shared<std::string>();
        auto z = std::make_shared<std::string>();
        auto zx = std::make_shared<std::vector<std::string>>();
        auto zy = std::make_shared<std::vector<std::string>>();
        auto wx = std::make_shared<std::string>();
        auto wy = std::make_shared<std::string>();
        auto xw = std::make_shared<std::vector<std::string>>();
        auto yw = std::make_shared<std::vector<std::string>>();
        auto fam = std::make_shared<std::vector<std::string>>();
        auto out = std::make_shared<std::string>();
        auto out_witness = std::make_shared<std::string>();
        c->add_option("--x", *x, "lift file")->required();
        c->add_option("--y", *y, "lift file")->required();
        c->add_option("--z", *z, "shared sub-lift file")->required();
        c->add_option("--z-into-x", *zx, "name=name list")->required();
        c->add_option("--z-into-y", *zy, "name=name list")->required();
        c->add_option("--witness-x", *wx, "Forb member containing x")->required();
        c->add_option("--witness-y", *wy, "Forb member containing y")->required();
        c->add_option("--x-into-witness", *xw, "name=name list")->required();
        c->add_option("--y-into-witness", *yw, "name=name list")->required();
        c->add_option("--family", *fam)->required()->expected(-1);
        c->add_option("-o,--output", *out, "write the amalgam lift here");
        c->add_option("--out-witness", *out_witness, "write the glued witness here");
        c->callback([&, x, y, z, zx, zy, wx, wy, xw, yw, fam, out, out_witness] {
            AmalgamProblem prob;
            prob.x = load_lift(*x);
            prob.y = load_lift(*y);
            prob.z = load_lift(*z);
            prob.z_into_x = VertexMap{MapMode::embed, parse_assignments(*zx)};
            prob.z_into_y = VertexMap{MapMode::embed, parse_assignments(*zy)};
            prob.witness_x = load_structure(*wx);
            prob.witness_y = load_structure(*wy);
            prob.x_into_witness = VertexMap{MapMode::embed, parse_assignments(*xw)};
            prob.y_into_witness = VertexMap{MapMode::embed, parse_assignments(*yw)};
            auto res = lift_amalgam(prob, load_family(*fam), g.search());
            if (!out->empty()) write_text_file(*out, serialize_lift(res.amalgam));
            if (!out_witness->empty()) write_text_file(*out_witness, serialize(res.glued_witness));
            json r{{"report",
                    {{"witness_side_x_preserved", res.report.witness_side_x_preserved},
                     {"witness_side_y_preserved", res.report.witness_side_y_preserved},
                     {"x_preserved", res.report.x_preserved},
                     {"y_preserved", res.report.y_preserved},
                     {"glued_in_forb", res.report.glued_in_forb},
                     {"glued_vertices", res.report.glued_vertices},
                     {"seconds", res.report.seconds},
                     {"passed", res.report.passed()}}},
                   {"amalgam", serialize_lift(res.amalgam)},
                   {"glued_witness", serialize(res.glued_witness)},
                   {"x_embedding", map_to_json(res.x_into_amalgam.assignment)},
                   {"y_embedding", map_to_json(res.y_into_amalgam.assignment)}};
            emit(g, "lift-amalgam", std::move(r),
                 {"passed: all five checks",
                  "glued witness vertices: " + std::to_string(res.report.glued_vertices)});
        });
    }

    // ---- growth ----------------------------------------------------------------
    {
        auto* c = sub("grow", "bounded generic growth by lift amalgamation");
        auto fam = std::make_shared<std::vector<std::string>>();
        auto maxv = std::make_shared<int>(12);
        auto maxr = std::make_shared<int>(64);
        auto wb = std::make_shared<int>(5);
        auto db = std::make_shared<int>(4);
        auto ckpt = std::make_shared<std::string>();
        c->add_option("--family", *fam)->required()->expected(-1);
        c->add_option("--max-vertices", *maxv);
        c->add_option("--max-rounds", *maxr);
        c->add_option("--witness-bound", *wb);
        c->add_option("--demand-base", *db);
        c->add_option("--checkpoint", *ckpt, "write the growth state as JSON");
        c->callback([&, fam, maxv, maxr, wb, db, ckpt] {
            auto family = load_family(*fam);
            GrowthEngine eng(family, GrowthBudgets{*maxv, *maxr, *wb, *db}, g.search());
            GrowthState st = eng.run();
            if (!ckpt->empty()) write_text_file(*ckpt, growth_checkpoint(st, family).dump(2));
            json realized = json::array();
            for (const auto& d : st.realized) realized.push_back(demand_json(d));
            json r{{"rounds", st.rounds},
                   {"vertices", st.current.base().vertex_count()},
                   {"witness_vertices", st.witness.vertex_count()},
                   {"shadow", serialize(shadow(st.current))},
                   {"realized", std::move(realized)}};
            if (!ckpt->empty()) r["checkpoint"] = *ckpt;
            emit(g, "grow", std::move(r),
                 {"rounds: " + std::to_string(st.rounds),
                  "vertices: " + std::to_string(st.current.base().vertex_count()),
                  serialize(shadow(st.current))});
        });
    }
    {
        auto* c = sub("probe", "random-sample universality probe of a growth state");
        auto ckpt = std::make_shared<std::string>();
        auto samples = std::make_shared<int>(50);
        auto maxt = std::make_shared<int>(5);
        auto mode = std::make_shared<std::string>("embed");
        c->add_option("--checkpoint", *ckpt, "growth state JSON from 'grow'")->required();
        c->add_option("--samples", *samples);
        c->add_option("--max-test-size", *maxt);
        c->add_option("--mode", *mode)->check(CLI::IsMember({"hom", "embed"}));
        c->callback([&, ckpt, samples, maxt, mode] {
            auto [st, family] = load_checkpoint(*ckpt);
            auto rep = universality_probe(st, family, *samples, *maxt, g.seed,
                                          map_mode_from_string(*mode), g.search());
            json fails = json::array();
            for (const auto& s : rep.failures) fails.push_back(serialize(s));
            json r{{"fraction", rep.fraction()}, {"admitted", rep.admitted},
                   {"sample_size", rep.sample_size}, {"max_test_size", rep.max_test_size},
                   {"seed", rep.seed},             {"mode", *mode},
                   {"failures", std::move(fails)}};
            emit(g, "probe", std::move(r),
                 {"admitted " + std::to_string(rep.admitted) + "/" +
                  std::to_string(rep.sample_size) + " (fraction " +
                  std::to_string(rep.fraction()) + ")"});
        });
    }

    // ---- duality ----------------------------------------------------------------
    {
        auto* c = sub("tree-check", "relational-tree test");
        auto files = std::make_shared<std::vector<std::string>>();
        c->add_option("files", *files)->required()->expected(-1);
        c->callback([&, files] {
            json r = json::array();
            std::vector<std::string> text;
            bool all = true;
            for (const auto& f : *files) {
                bool t = is_relational_tree(load_structure(f));
                r.push_back({{"file", f}, {"tree", t}});
                text.push_back(f + ": " + (t ? "tree" : "not a tree"));
                all = all && t;
            }
            if (!all) g.rc = exit_false;
            emit(g, "tree-check", {{"results", std::move(r)}, {"all_trees", all}}, text);
        });
    }
    auto dual_report = [&](const std::string& cmd, const DualCheckReport& rep) {
        json r{{"verified", rep.verified}, {"checked", rep.checked}};
        std::vector<std::string> text;
        if (rep.verified) {
            text.push_back("verified over " + std::to_string(rep.checked) + " structures");
        } else {
            r["counterexample"] = serialize(*rep.counterexample);
            r["kind"] = to_string(*rep.kind);
            text.push_back("counterexample (" + to_string(*rep.kind) + "):");
            text.push_back(serialize(*rep.counterexample));
            g.rc = exit_false;
        }
        emit(g, cmd, std::move(r), text);
    };
    {
        auto* c = sub("dual-verify", "verify a duality claim: family members..., then the dual");
        auto files = std::make_shared<std::vector<std::string>>();
        auto scope = std::make_shared<int>(-1);
        auto corpus = std::make_shared<std::string>();
        c->add_option("files", *files, "family members then the dual")->required()->expected(-1);
        c->add_option("--exhaustive", *scope, "check all structures up to this many vertices");
        c->add_option("--corpus", *corpus, "check against a corpus (dir, .rel, or spec JSON)");
        c->callback([&, files, scope, corpus] {
            if (files->size() < 2) throw validation_error("need family members and a dual");
            if ((*scope < 0) == corpus->empty())
                throw validation_error("choose exactly one of --exhaustive or --corpus");
            DualPairClaim claim;
            for (std::size_t i = 0; i + 1 < files->size(); ++i)
                claim.forbidden.push_back(load_structure((*files)[i]));
            claim.dual = load_structure(files->back());
            DualCheckReport rep = corpus->empty()
                                      ? verify_dual_pair(claim, *scope, hom_world_enumeration(),
                                                         g.search())
                                      : verify_dual_pair_on(claim, load_corpus(*corpus), g.search());
            dual_report("dual-verify", rep);
        });
    }
    {
        auto* c = sub("restricted-dual", "verify a duality claim inside a restricted class");
        auto fam = std::make_shared<std::vector<std::string>>();
        auto dual = std::make_shared<std::string>();
        auto restriction = std::make_shared<std::vector<std::string>>();
        auto scope = std::make_shared<int>(3);
        c->add_option("--family", *fam)->required()->expected(-1);
        c->add_option("--dual", *dual)->required();
        c->add_option("--restriction", *restriction, "family defining the restricted class")
            ->required()
            ->expected(-1);
        c->add_option("--exhaustive", *scope)->required();
        c->callback([&, fam, dual, restriction, scope] {
            DualPairClaim claim{load_family(*fam), load_structure(*dual)};
            dual_report("restricted-dual",
                        verify_restricted_duality(claim, load_family(*restriction), *scope,
                                                  hom_world_enumeration(), g.search()));
        });
    }
    {
        auto* c = sub("hom-universal", "does every class member map into the target?");
        auto target = std::make_shared<std::string>();
        auto fam = std::make_shared<std::vector<std::string>>();
        auto scope = std::make_shared<int>(-1);
        auto corpus = std::make_shared<std::string>();
        c->add_option("target", *target)->required();
        c->add_option("--family", *fam)->required()->expected(-1);
        c->add_option("--scope", *scope, "enumerate class members up to this many vertices");
        c->add_option("--corpus", *corpus, "check against a corpus (dir, .rel, or spec JSON)");
        c->callback([&, target, fam, scope, corpus] {
            if ((*scope < 0) == corpus->empty())
                throw validation_error("choose exactly one of --scope or --corpus");
            Structure t = load_structure(*target);
            auto family = load_family(*fam);
            HomUniversalReport rep =
                corpus->empty()
                    ? hom_universal_check(t, family, *scope, hom_world_enumeration(), g.search())
                    : hom_universal_check_on(t, family, load_corpus(*corpus), g.search());
            json r{{"target_in_class", rep.target_in_class},
                   {"all_admitted", rep.all_admitted},
                   {"checked", rep.checked},
                   {"verified", rep.verified()}};
            std::vector<std::string> text;
            if (rep.verified()) {
                text.push_back("hom-universal over " + std::to_string(rep.checked) + " members");
            } else {
                if (!rep.target_in_class) text.push_back("target is outside the class");
                if (rep.counterexample) {
                    r["counterexample"] = serialize(*rep.counterexample);
                    text.push_back("member with no hom into the target:");
                    text.push_back(serialize(*rep.counterexample));
                }
                g.rc = exit_false;
            }
            emit(g, "hom-universal", std::move(r), text);
        });
    }

    // ---- coloring gadget -----------------------------------------------------
    auto ramsey_flags = [&](CLI::App* c, std::shared_ptr<int> n, std::shared_ptr<int> k,
                            std::shared_ptr<int> N, std::shared_ptr<bool> literal) {
        c->add_option("-n,--levels", *n, "levels; tuples have arity 2n");
        c->add_option("-k,--colors-exp", *k, "coloring uses 2^k colors");
        c->add_option("-N,--ground", *N, "ground set size");
        c->add_flag("--literal-sets", *literal, "use the uncorrected set-system parameters");
    };
    {
        auto* c = sub("ramsey", "build the leveled coloring gadget");
        auto n = std::make_shared<int>(2), k = std::make_shared<int>(1), N = std::make_shared<int>(5);
        auto literal = std::make_shared<bool>(false);
        auto out = std::make_shared<std::string>();
        ramsey_flags(c, n, k, N, literal);
        c->add_option("-o,--output", *out);
        c->callback([&, n, k, N, literal, out] {
            RamseyStructure s = build_ramsey_structure({*n, *k, *N, *literal});
            write_or_print(g, "ramsey", "structure", serialize(s.base), *out,
                           {{"vertices", s.base.vertex_count()},
                            {"tuples", s.base.tuple_count()},
                            {"levels", s.pair_count()}},
                           {"vertices: " + std::to_string(s.base.vertex_count()),
                            "tuples: " + std::to_string(s.base.tuple_count())});
        });
    }
    {
        auto* c = sub("ramsey-verify", "verify the gadget's four properties");
        auto n = std::make_shared<int>(2), k = std::make_shared<int>(1), N = std::make_shared<int>(5);
        auto literal = std::make_shared<bool>(false);
        auto sampled = std::make_shared<bool>(false);
        auto trials = std::make_shared<long long>(100000);
        auto cap = std::make_shared<long long>(1LL << 24);
        ramsey_flags(c, n, k, N, literal);
        c->add_flag("--sampled", *sampled, "random colorings instead of exhaustive");
        c->add_option("--trials", *trials);
        c->add_option("--cap", *cap, "max colorings in exhaustive mode");
        c->callback([&, n, k, N, literal, sampled, trials, cap] {
            RamseyStructure s = build_ramsey_structure({*n, *k, *N, *literal});
            RamseyCheckOptions o;
            o.exhaustive = !*sampled;
            o.trials = *trials;
            o.seed = g.seed;
            o.exhaustive_cap = *cap;
            RamseyReport rep = verify_ramsey_properties(s, o);
            json r{{"tuples_leveled", rep.tuples_leveled},
                   {"pairwise_sparse", rep.pairwise_sparse},
                   {"no_isolated", rep.no_isolated},
                   {"coloring_holds", rep.coloring_holds},
                   {"coloring_proven", rep.coloring_proven},
                   {"colorings_checked", rep.colorings_checked},
                   {"all_passed", rep.all_passed()}};
            std::vector<std::string> text;
            text.push_back(std::string("tuples leveled: ") + (rep.tuples_leveled ? "yes" : "no"));
            text.push_back(std::string("pairwise sparse: ") + (rep.pairwise_sparse ? "yes" : "no"));
            text.push_back(std::string("no isolated: ") + (rep.no_isolated ? "yes" : "no"));
            text.push_back(std::string("coloring property: ") +
                           (rep.coloring_holds ? "holds" : "fails") +
                           (rep.coloring_proven ? " (exhaustive)" : " (sampled)"));
            if (rep.failing_coloring) {
                r["failing_coloring"] = *rep.failing_coloring;
                std::string line = "failing coloring:";
                for (const auto& [v, col] : *rep.failing_coloring)
                    line += " " + v + "=" + std::to_string(col);
                text.push_back(line);
            }
            if (!rep.all_passed()) g.rc = exit_false;
            emit(g, "ramsey-verify", std::move(r), text);
        });
    }
    {
        auto* c = sub("indicator", "indicator product of the gadget with a rooted pattern");
        auto n = std::make_shared<int>(2), k = std::make_shared<int>(1), N = std::make_shared<int>(5);
        auto literal = std::make_shared<bool>(false);
        auto pattern = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        ramsey_flags(c, n, k, N, literal);
        c->add_option("--pattern", *pattern, "rooted .rel file with 2n roots")->required();
        c->add_option("-o,--output", *out);
        c->callback([&, n, k, N, literal, pattern, out] {
            RamseyStructure s = build_ramsey_structure({*n, *k, *N, *literal});
            IndicatorResult res = indicator_product(s, load_rooted(*pattern));
            write_or_print(g, "indicator", "structure", serialize(res.product), *out,
                           {{"copies", res.copies},
                            {"vertices", res.product.vertex_count()},
                            {"correspondence", map_to_json(res.vertex_class)}},
                           {"copies: " + std::to_string(res.copies),
                            "vertices: " + std::to_string(res.product.vertex_count())});
        });
    }
    {
        auto* c = sub("counterexample", "build and verify the double-piece gadget for a cut");
        auto fam = std::make_shared<std::vector<std::string>>();
        auto member = std::make_shared<std::string>();
        auto cutspec = std::make_shared<std::string>();
        auto k = std::make_shared<int>(1), N = std::make_shared<int>(5);
        auto out = std::make_shared<std::string>();
        c->add_option("--family", *fam)->required()->expected(-1);
        c->add_option("--member", *member, "the family member carrying the cut")->required();
        c->add_option("--cut", *cutspec, "comma-separated cut vertices")->required();
        c->add_option("-k,--colors-exp", *k);
        c->add_option("-N,--ground", *N);
        c->add_option("-o,--output", *out, "write the gadget here");
        c->callback([&, fam, member, cutspec, k, N, out] {
            auto cut = split_csv(*cutspec);
            RamseyStructure s =
                build_ramsey_structure({static_cast<int>(cut.size()), *k, *N, false});
            CounterexampleResult res = build_counterexample(
                load_family(*fam), load_structure(*member), cut, s, g.search(), g.cuts());
            if (!out->empty()) write_text_file(*out, serialize(res.gadget));
            json r{{"gadget", serialize(res.gadget)},
                   {"doubled", serialize(res.doubled)},
                   {"doubled_roots", res.doubled_roots},
                   {"projection", map_to_json(res.projection.assignment)},
                   {"report",
                    {{"gadget_vertices", res.report.gadget_vertices},
                     {"gadget_tuples", res.report.gadget_tuples},
                     {"copies", res.report.copies},
                     {"gadget_base_size", res.report.gadget_base_size},
                     {"projection_is_hom", res.report.projection_is_hom},
                     {"no_family_hom", res.report.no_family_hom},
                     {"seconds", res.report.seconds}}}};
            if (!out->empty()) r["output"] = *out;
            emit(g, "counterexample", std::move(r),
                 {"gadget vertices: " + std::to_string(res.report.gadget_vertices),
                  "copies: " + std::to_string(res.report.copies),
                  "no family member maps into the gadget: verified"});
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const parse_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_usage;
    } catch (const validation_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_usage;
    } catch (const budget_exhausted& e) {
        std::cerr << "unknown: " << e.what() << "\n";
        return exit_unknown;
    } catch (const verification_error& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return exit_false;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return g.rc;
}
