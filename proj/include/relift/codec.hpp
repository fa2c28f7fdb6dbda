#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "relift/error.hpp"
#include "relift/structure.hpp"

// Line-oriented text format:
//
//   # full-line comment
//   signature E/2 sym R/3
//   vertices a b c
//   E a b
//   R a b c
//   roots a c
//
// The signature line comes first and appears once.  `vertices` lines may
// repeat and append.  Tuple lines start with a declared symbol name.  `roots`
// is optional and appears at most once.  Blank lines are ignored.  Tokens are
// whitespace-separated; comments are whole lines starting with '#'.

namespace relift {

namespace codec_detail {

inline std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

inline bool comment_or_blank(const std::vector<std::string>& toks) {
    return toks.empty() || toks[0][0] == '#';
}

} // namespace codec_detail

struct ParsedRel {
    Structure structure;
    std::optional<Tuple> roots;
};

inline ParsedRel parse_rel(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    std::optional<Structure> s;
    std::optional<Tuple> roots;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = codec_detail::tokens(line);
        if (codec_detail::comment_or_blank(toks)) continue;
        const std::string& head = toks[0];
        if (head == "signature") {
            if (s) throw parse_error(lineno, "duplicate signature line");
            std::vector<SymbolDecl> decls;
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (toks[i] == "sym") {
                    if (decls.empty()) throw parse_error(lineno, "'sym' with no preceding symbol");
                    if (decls.back().symmetric) throw parse_error(lineno, "repeated 'sym'");
                    decls.back().symmetric = true;
                    continue;
                }
                auto slash = toks[i].rfind('/');
                if (slash == std::string::npos)
                    throw parse_error(lineno, "expected NAME/ARITY, got '" + toks[i] + "'");
                std::string name = toks[i].substr(0, slash);
                std::string ar = toks[i].substr(slash + 1);
                int arity = 0;
                try {
                    std::size_t pos = 0;
                    arity = std::stoi(ar, &pos);
                    if (pos != ar.size()) throw std::invalid_argument("");
                } catch (const std::exception&) {
                    throw parse_error(lineno, "bad arity '" + ar + "'");
                }
                decls.push_back({name, arity, false});
            }
            try {
                s.emplace(Signature(decls));
            } catch (const validation_error& e) {
                throw parse_error(lineno, e.what());
            }
            continue;
        }
        if (!s) throw parse_error(lineno, "expected 'signature' line before '" + head + "'");
        try {
            if (head == "vertices") {
                for (std::size_t i = 1; i < toks.size(); ++i) s->add_vertex(toks[i]);
            } else if (head == "roots") {
                if (roots) throw parse_error(lineno, "duplicate roots line");
                Tuple r(toks.begin() + 1, toks.end());
                // Validation happens here; RootedStructure re-checks later.
                std::set<std::string> seen;
                for (const auto& v : r) {
                    if (!s->has_vertex(v)) throw validation_error("root '" + v + "' is not a vertex");
                    if (!seen.insert(v).second) throw validation_error("duplicate root '" + v + "'");
                }
                roots = std::move(r);
            } else {
                int sym = s->signature().index_of(head);
                if (sym < 0) throw validation_error("unknown relation symbol '" + head + "'");
                Tuple t(toks.begin() + 1, toks.end());
                s->add_tuple(sym, t);
            }
        } catch (const parse_error&) {
            throw;
        } catch (const validation_error& e) {
            throw parse_error(lineno, e.what());
        }
    }
    if (!s) throw parse_error(lineno, "missing 'signature' line");
    return {std::move(*s), std::move(roots)};
}

inline Structure parse_structure(std::string_view text) {
    auto p = parse_rel(text);
    if (p.roots) throw validation_error("unexpected roots line in plain structure");
    return std::move(p.structure);
}

inline RootedStructure parse_rooted(std::string_view text) {
    auto p = parse_rel(text);
    if (!p.roots) throw validation_error("missing roots line in rooted structure");
    return RootedStructure(std::move(p.structure), std::move(*p.roots));
}

inline std::string serialize_signature(const Signature& sig) {
    std::string out = "signature";
    for (const auto& sym : sig.symbols()) {
        out += " " + sym.name + "/" + std::to_string(sym.arity);
        if (sym.symmetric) out += " sym";
    }
    return out;
}

// Normalized form: single spaces, vertex order preserved, tuples per symbol
// in natural order.  Symmetric symbols emit one representative per
// reversal orbit.
inline std::string serialize(const Structure& s) {
    std::ostringstream out;
    out << serialize_signature(s.signature()) << "\n";
    out << "vertices";
    for (const auto& v : s.vertices()) out << " " << v;
    out << "\n";
    for (std::size_t symi = 0; symi < s.signature().size(); ++symi) {
        const auto& decl = s.signature().symbol(static_cast<int>(symi));
        std::vector<Tuple> rows;
        for (const auto& t : s.tuples(static_cast<int>(symi))) {
            Tuple named = s.name_tuple(t);
            if (decl.symmetric) {
                Tuple rev(named.rbegin(), named.rend());
                if (natural_compare(rev, named) < 0) continue; // keep the lesser orientation
            }
            rows.push_back(std::move(named));
        }
        std::sort(rows.begin(), rows.end(), natural_tuple_less{});
        for (const auto& row : rows) {
            out << decl.name;
            for (const auto& v : row) out << " " << v;
            out << "\n";
        }
    }
    return out.str();
}

inline std::string serialize(const RootedStructure& rs) {
    std::string out = serialize(rs.base);
    out += "roots";
    for (const auto& v : rs.roots) out += " " + v;
    out += "\n";
    return out;
}

// Deterministic ordering key for structures: size, then tuple count, then the
// normalized serialization.
inline std::tuple<int, std::size_t, std::string> sort_key(const Structure& s) {
    return {s.vertex_count(), s.tuple_count(), serialize(s)};
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write '" + path.string() + "'");
    out << text;
}

inline Structure load_structure(const std::filesystem::path& path) {
    return parse_structure(read_text_file(path));
}

inline RootedStructure load_rooted(const std::filesystem::path& path) {
    return parse_rooted(read_text_file(path));
}

} // namespace relift
