#pragma once
// Core bibliographic value types: publication records and citing records.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "idrkit/canonical.hpp"

namespace idr {

enum class DocType { article, letter, proceedings_paper, review, other };

// Which bibliographic dimension a distribution summarizes.
enum class Facet { publications, references, citations, journals };

inline const char* doc_type_name(DocType t) {
    switch (t) {
        case DocType::article: return "article";
        case DocType::letter: return "letter";
        case DocType::proceedings_paper: return "proceedings_paper";
        case DocType::review: return "review";
        case DocType::other: return "other";
    }
    return "other";
}

inline const char* facet_name(Facet f) {
    switch (f) {
        case Facet::publications: return "publications";
        case Facet::references: return "references";
        case Facet::citations: return "citations";
        case Facet::journals: return "journals";
    }
    return "publications";
}

// Accepts the document-type strings found in field-tagged exports
// ("Article", "Proceedings Paper", ...). Multi-valued entries like
// "Article; Proceedings Paper" resolve to their first segment.
inline DocType parse_doc_type(std::string_view raw) {
    std::string s(raw);
    if (auto semi = s.find(';'); semi != std::string::npos) s = s.substr(0, semi);
    s = to_lower(trim(s));
    if (s == "article") return DocType::article;
    if (s == "letter") return DocType::letter;
    if (s == "proceedings paper" || s == "proceedings_paper") return DocType::proceedings_paper;
    if (s == "review") return DocType::review;
    return DocType::other;
}

inline const std::set<DocType>& default_allowed_types() {
    static const std::set<DocType> kinds{DocType::article, DocType::letter,
                                         DocType::proceedings_paper, DocType::review};
    return kinds;
}

// One cited reference: best-effort extracted journal (canonical form, may be
// empty when extraction failed) plus the raw citation string.
struct Reference {
    std::string journal;
    std::string raw;
};

struct BibRecord {
    std::string record_id;
    std::string journal;  // canonical form, non-empty
    int year = 0;         // within [1900, 2100]
    DocType doc_type = DocType::other;
    long times_cited = 0;  // >= 0
    std::vector<Reference> references;
    std::string source_unit;  // empty when unknown
};

struct CitingRecord {
    std::string record_id;
    std::string journal;      // canonical form
    long reference_count = 0; // >= 1
    std::vector<std::string> cited_unit_papers;  // record ids, non-empty
    std::string citing_unit;  // empty when unknown
};

// Drops citing records tagged with the given unit; unknown tags are kept and
// survivor order is preserved. Idempotent.
inline std::vector<CitingRecord> exclude_same_unit(const std::vector<CitingRecord>& citing,
                                                   std::string_view unit) {
    std::vector<CitingRecord> out;
    out.reserve(citing.size());
    for (const auto& c : citing)
        if (c.citing_unit != unit) out.push_back(c);
    return out;
}

}  // namespace idr
