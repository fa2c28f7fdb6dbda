#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace relift {

// Numeric-aware lexicographic comparison: "v2" < "v10", plain byte order
// otherwise.  Digit runs compare by value; equal values tie-break on the raw
// run text so the order stays total ("01" vs "1").
inline int natural_compare(std::string_view a, std::string_view b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        unsigned char ca = static_cast<unsigned char>(a[i]);
        unsigned char cb = static_cast<unsigned char>(b[j]);
        if (std::isdigit(ca) && std::isdigit(cb)) {
            std::size_t i0 = i, j0 = j;
            while (i < a.size() && std::isdigit(static_cast<unsigned char>(a[i]))) ++i;
            while (j < b.size() && std::isdigit(static_cast<unsigned char>(b[j]))) ++j;
            std::string_view ra = a.substr(i0, i - i0);
            std::string_view rb = b.substr(j0, j - j0);
            std::string_view sa = ra.substr(std::min(ra.find_first_not_of('0'), ra.size() - 1));
            std::string_view sb = rb.substr(std::min(rb.find_first_not_of('0'), rb.size() - 1));
            if (sa.size() != sb.size()) return sa.size() < sb.size() ? -1 : 1;
            if (int c = sa.compare(sb); c != 0) return c < 0 ? -1 : 1;
            if (ra != rb) return ra < rb ? -1 : 1;
        } else {
            if (ca != cb) return ca < cb ? -1 : 1;
            ++i;
            ++j;
        }
    }
    if (i < a.size()) return 1;
    if (j < b.size()) return -1;
    return 0;
}

struct natural_less {
    bool operator()(std::string_view a, std::string_view b) const {
        return natural_compare(a, b) < 0;
    }
};

inline int natural_compare(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (int c = natural_compare(std::string_view(a[i]), std::string_view(b[i])); c != 0) return c;
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

struct natural_tuple_less {
    bool operator()(const std::vector<std::string>& a, const std::vector<std::string>& b) const {
        return natural_compare(a, b) < 0;
    }
};

} // namespace relift
