#pragma once
// Journal name canonicalization. All journal lookups (thesaurus, ratings,
// impact factors) go through canonical form so that "Res. Policy" and
// "RES POLICY" resolve to the same key.

#include <cctype>
#include <string>
#include <string_view>

namespace idr {

// Uppercase ASCII, punctuation replaced by spaces, whitespace collapsed,
// leading/trailing space trimmed. Non-ASCII bytes pass through untouched.
inline std::string canonicalize_journal(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    bool pending_space = false;
    for (unsigned char c : name) {
        if (std::isalnum(c)) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.push_back(static_cast<char>(std::toupper(c)));
        } else if (c >= 0x80) {
            if (pending_space && !out.empty()) out.push_back(' ');
            pending_space = false;
            out.push_back(static_cast<char>(c));
        } else {
            // ASCII punctuation and whitespace both act as separators
            pending_space = true;
        }
    }
    return out;
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace idr
