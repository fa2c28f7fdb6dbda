#pragma once

#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "relift/codec.hpp"
#include "relift/cuts.hpp"
#include "relift/error.hpp"
#include "relift/lift.hpp"

// Text format for lifts and piece catalogs, layered over the structure
// format.  A lift file is:
//
//   base
//   <structure lines>
//   piece
//   <structure lines + roots line>      (one section per catalog entry)
//   ...
//   ext <entry-index> <v1> <v2> ...     (one line per extended tuple)
//
// A catalog file is just the piece sections.  Section keywords occupy the
// first token of a line, so relation symbols named 'base', 'piece' or 'ext'
// cannot be serialized; writers reject them up front.

namespace relift {

namespace lift_codec_detail {

inline void check_symbols(const Signature& sig) {
    for (const auto& sym : sig.symbols())
        if (sym.name == "base" || sym.name == "piece" || sym.name == "ext")
            throw validation_error("lift format: relation symbol '" + sym.name +
                                   "' collides with a section keyword");
}

struct Sections {
    std::string base;                     // empty when absent
    std::vector<std::string> pieces;
    std::vector<std::vector<std::string>> ext_lines; // tokenized
};

inline Sections split_sections(std::string_view text) {
    Sections out;
    std::string* current = nullptr;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (toks.empty() || toks[0][0] == '#') continue;
        if (toks[0] == "base") {
            if (toks.size() != 1) throw parse_error(lineno, "'base' takes no arguments");
            if (!out.base.empty() || (current && current == &out.base))
                throw parse_error(lineno, "duplicate 'base' section");
            current = &out.base;
        } else if (toks[0] == "piece") {
            if (toks.size() != 1) throw parse_error(lineno, "'piece' takes no arguments");
            out.pieces.emplace_back();
            current = &out.pieces.back();
        } else if (toks[0] == "ext") {
            out.ext_lines.push_back(toks);
            current = nullptr;
        } else {
            if (!current) throw parse_error(lineno, "line outside any section");
            *current += line;
            *current += "\n";
        }
    }
    return out;
}

} // namespace lift_codec_detail

inline std::string serialize_catalog(const PieceCatalog& cat) {
    std::string out;
    for (const auto& e : cat.entries()) {
        lift_codec_detail::check_symbols(e.piece.base.signature());
        out += "piece\n";
        out += serialize(e.piece);
    }
    return out;
}

inline PieceCatalog parse_catalog(std::string_view text) {
    auto sec = lift_codec_detail::split_sections(text);
    if (!sec.base.empty()) throw validation_error("catalog file must not contain a base section");
    if (!sec.ext_lines.empty()) throw validation_error("catalog file must not contain ext lines");
    std::vector<RootedStructure> entries;
    for (const auto& p : sec.pieces) {
        ParsedRel parsed = parse_rel(p);
        if (!parsed.roots) throw validation_error("catalog piece is missing a roots line");
        entries.emplace_back(std::move(parsed.structure), std::move(*parsed.roots));
    }
    return PieceCatalog::from_entries(entries);
}

inline std::string serialize_lift(const Lift& x) {
    lift_codec_detail::check_symbols(x.base().signature());
    std::string out = "base\n";
    out += serialize(x.base());
    out += serialize_catalog(*x.catalog_ptr());
    for (std::size_t e = 0; e < x.catalog_ptr()->size(); ++e)
        for (const auto& t : x.ext_named(static_cast<int>(e))) {
            out += "ext " + std::to_string(e);
            for (const auto& v : t) out += " " + v;
            out += "\n";
        }
    return out;
}

inline Lift parse_lift(std::string_view text) {
    auto sec = lift_codec_detail::split_sections(text);
    if (sec.base.empty()) throw validation_error("lift file is missing the base section");
    ParsedRel base = parse_rel(sec.base);
    if (base.roots) throw validation_error("lift base must not carry roots");

    std::vector<RootedStructure> entries;
    for (const auto& p : sec.pieces) {
        ParsedRel parsed = parse_rel(p);
        if (!parsed.roots) throw validation_error("catalog piece is missing a roots line");
        entries.emplace_back(std::move(parsed.structure), std::move(*parsed.roots));
    }
    auto catalog = std::make_shared<const PieceCatalog>(PieceCatalog::from_entries(entries));

    Lift out(std::move(base.structure), catalog);
    for (const auto& toks : sec.ext_lines) {
        if (toks.size() < 2) throw validation_error("ext line needs an entry index");
        int entry = 0;
        try {
            entry = std::stoi(toks[1]);
        } catch (const std::exception&) {
            throw validation_error("ext line has a bad entry index '" + toks[1] + "'");
        }
        Tuple t(toks.begin() + 2, toks.end());
        out.add_ext(entry, t);
    }
    return out;
}

inline Lift load_lift(const std::filesystem::path& path) {
    return parse_lift(read_text_file(path));
}

inline PieceCatalog load_catalog(const std::filesystem::path& path) {
    return parse_catalog(read_text_file(path));
}

} // namespace relift
