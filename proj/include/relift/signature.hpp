#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "relift/error.hpp"

namespace relift {

struct SymbolDecl {
    std::string name;
    int arity = 2;
    bool symmetric = false;

    bool operator==(const SymbolDecl&) const = default;
};

// Relation symbol names are identifiers: [A-Za-z_][A-Za-z0-9_]*.  Anything
// else is reserved for the file format and for internally generated symbols.
inline bool valid_symbol_name(std::string_view s) {
    if (s.empty()) return false;
    auto alpha = [](unsigned char c) { return std::isalpha(c) || c == '_'; };
    auto alnum = [](unsigned char c) { return std::isalnum(c) || c == '_'; };
    if (!alpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s.substr(1))
        if (!alnum(static_cast<unsigned char>(c))) return false;
    return true;
}

class Signature {
public:
    Signature() = default;

    explicit Signature(std::vector<SymbolDecl> symbols) : symbols_(std::move(symbols)) {
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            const auto& s = symbols_[i];
            if (!valid_symbol_name(s.name))
                throw validation_error("bad relation symbol name '" + s.name + "'");
            if (s.arity < 1)
                throw validation_error("symbol '" + s.name + "' has arity < 1");
            for (std::size_t j = 0; j < i; ++j)
                if (symbols_[j].name == s.name)
                    throw validation_error("duplicate relation symbol '" + s.name + "'");
        }
    }

    // One symmetric binary symbol E: undirected graphs.
    static Signature graph() { return Signature({{"E", 2, true}}); }

    // One plain binary symbol E: digraphs.
    static Signature digraph() { return Signature({{"E", 2, false}}); }

    std::size_t size() const { return symbols_.size(); }
    const SymbolDecl& symbol(int i) const { return symbols_.at(static_cast<std::size_t>(i)); }
    const std::vector<SymbolDecl>& symbols() const { return symbols_; }

    int index_of(std::string_view name) const {
        for (std::size_t i = 0; i < symbols_.size(); ++i)
            if (symbols_[i].name == name) return static_cast<int>(i);
        return -1;
    }

    bool operator==(const Signature&) const = default;

private:
    std::vector<SymbolDecl> symbols_;
};

} // namespace relift
