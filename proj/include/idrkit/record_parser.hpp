#pragma once
// Parsers for bibliographic inputs:
//  - field-tagged plain-text exports (two-letter tags at line start,
//    continuation lines indented, records closed by an end tag)
//  - CSV record files with a declared header mapping
//  - CSV citing-record files
//
// Parsing never throws on record content: malformed records produce one
// diagnostic each and are skipped, the parse continues.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "idrkit/canonical.hpp"
#include "idrkit/csv.hpp"
#include "idrkit/records.hpp"

namespace idr {

// Tag names of the tagged-record format. Defaults follow the common
// bibliographic export convention; a small `key=TAG` mapping file overrides
// them so other exports load without code changes.
struct TagMap {
    std::string record_id = "UT";
    std::string journal = "SO";
    std::string doc_type = "DT";
    std::string year = "PY";
    std::string times_cited = "TC";
    std::string references = "CR";
    std::string source_unit = "UN";
    std::string end_record = "ER";

    static TagMap from_text(std::string_view text) {
        TagMap map;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t nl = text.find('\n', pos);
            std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
            pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
            std::string entry = trim(line);
            if (entry.empty() || entry[0] == '#') continue;
            auto eq = entry.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("tag map: expected key=TAG, got '" + entry + "'");
            std::string key = to_lower(trim(entry.substr(0, eq)));
            std::string tag = trim(entry.substr(eq + 1));
            if (tag.empty()) throw std::runtime_error("tag map: empty tag for key '" + key + "'");
            if (key == "record_id") map.record_id = tag;
            else if (key == "journal") map.journal = tag;
            else if (key == "doc_type") map.doc_type = tag;
            else if (key == "year") map.year = tag;
            else if (key == "times_cited") map.times_cited = tag;
            else if (key == "references") map.references = tag;
            else if (key == "source_unit") map.source_unit = tag;
            else if (key == "end_record") map.end_record = tag;
            else throw std::runtime_error("tag map: unknown key '" + key + "'");
        }
        return map;
    }

    static TagMap from_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open tag map: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        return from_text(buf.str());
    }
};

struct ParseDiagnostic {
    std::size_t record_number = 0;  // 1-based position in the input
    std::string record_id;          // may be empty when the id itself is missing
    std::string message;
};

struct ParseResult {
    std::vector<BibRecord> records;
    std::vector<ParseDiagnostic> diagnostics;
    std::size_t dropped_by_type = 0;  // well-formed records outside allowed_types
};

// Best-effort journal extraction from one raw citation string. The common
// shape is "<authors>, <year>, <JOURNAL>, V.., P..": the segment after the
// first year-like token is taken as the journal. A bare single-segment
// string is treated as a journal name on its own.
inline Reference parse_reference(std::string_view raw) {
    Reference ref;
    ref.raw = trim(raw);
    std::vector<std::string> parts;
    std::size_t start = 0;
    const std::string& s = ref.raw;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == ',') {
            parts.push_back(trim(std::string_view(s).substr(start, i - start)));
            start = i + 1;
        }
    }
    auto year_like = [](const std::string& tok) {
        if (tok.size() != 4) return false;
        for (char c : tok)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        int y = std::stoi(tok);
        return y >= 1500 && y <= 2100;
    };
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (year_like(parts[i])) {
            if (i + 1 < parts.size()) ref.journal = canonicalize_journal(parts[i + 1]);
            return ref;
        }
    }
    if (parts.size() == 1) ref.journal = canonicalize_journal(parts[0]);
    return ref;
}

namespace detail {

inline bool parse_long(const std::string& s, long& out) {
    std::string t = trim(s);
    if (t.empty()) return false;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    return ec == std::errc() && ptr == t.data() + t.size();
}

struct RawRecord {
    // tag -> value lines, in input order (references keep one line per item)
    std::vector<std::pair<std::string, std::vector<std::string>>> fields;

    const std::vector<std::string>* find(const std::string& tag) const {
        for (const auto& [t, v] : fields)
            if (t == tag) return &v;
        return nullptr;
    }
};

inline void finish_record(const RawRecord& rec, std::size_t number, const std::set<DocType>& allowed,
                          const TagMap& tags, ParseResult& result) {
    if (rec.fields.empty()) return;
    // blocks made of unknown tags only (file headers, EF footers) are not records
    bool has_known_tag = false;
    for (const auto& [tag, _] : rec.fields)
        if (tag == tags.record_id || tag == tags.journal || tag == tags.doc_type || tag == tags.year ||
            tag == tags.times_cited || tag == tags.references || tag == tags.source_unit)
            has_known_tag = true;
    if (!has_known_tag) return;
    auto scalar = [&](const std::string& tag) -> std::string {
        const auto* v = rec.find(tag);
        if (!v || v->empty()) return {};
        std::string joined = (*v)[0];
        for (std::size_t i = 1; i < v->size(); ++i) joined += " " + (*v)[i];
        return trim(joined);
    };

    BibRecord out;
    out.record_id = scalar(tags.record_id);
    out.journal = canonicalize_journal(scalar(tags.journal));
    if (out.record_id.empty() || out.journal.empty()) {
        result.diagnostics.push_back({number, out.record_id, "missing record id or journal"});
        return;
    }
    out.doc_type = parse_doc_type(scalar(tags.doc_type));
    if (!allowed.count(out.doc_type)) {
        ++result.dropped_by_type;
        return;
    }
    long year = 0;
    if (!parse_long(scalar(tags.year), year) || year < 1900 || year > 2100) {
        result.diagnostics.push_back({number, out.record_id, "missing or out-of-range year"});
        return;
    }
    out.year = static_cast<int>(year);
    std::string tc = scalar(tags.times_cited);
    if (!tc.empty()) {
        long cited = 0;
        if (!parse_long(tc, cited) || cited < 0) {
            result.diagnostics.push_back({number, out.record_id, "bad times-cited value '" + tc + "'"});
            return;
        }
        out.times_cited = cited;
    }
    out.source_unit = scalar(tags.source_unit);
    if (const auto* refs = rec.find(tags.references)) {
        for (const auto& line : *refs) {
            std::string item = trim(line);
            if (!item.empty()) out.references.push_back(parse_reference(item));
        }
    }
    result.records.push_back(std::move(out));
}

}  // namespace detail

// Tagged-record stream -> records. Records whose document type falls outside
// allowed_types are dropped and counted; malformed ones are skipped with one
// diagnostic each. Unknown tags are ignored. EOF acts as an implicit record
// terminator.
inline ParseResult parse_records(std::string_view text, const std::set<DocType>& allowed = default_allowed_types(),
                                 const TagMap& tags = {}) {
    ParseResult result;
    detail::RawRecord current;
    std::string open_tag;
    std::size_t record_number = 1;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        bool last = nl == std::string_view::npos;
        pos = last ? text.size() + 1 : nl + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (line.empty()) {
            open_tag.clear();
        } else if (std::isspace(static_cast<unsigned char>(line[0]))) {
            // continuation of the previous tag
            if (!open_tag.empty() && !current.fields.empty() && current.fields.back().first == open_tag)
                current.fields.back().second.push_back(trim(line));
        } else {
            // tag is the leading run of non-space characters
            std::size_t tag_end = 0;
            while (tag_end < line.size() && !std::isspace(static_cast<unsigned char>(line[tag_end]))) ++tag_end;
            std::string tag(line.substr(0, tag_end));
            std::string value = trim(line.substr(tag_end));
            if (tag == tags.end_record) {
                detail::finish_record(current, record_number++, allowed, tags, result);
                current = {};
                open_tag.clear();
            } else {
                current.fields.push_back({tag, {value}});
                open_tag = tag;
            }
        }
        if (last) break;
    }
    detail::finish_record(current, record_number, allowed, tags, result);
    return result;
}

// Column names for CSV record input; reference strings are ';'-separated
// inside their single cell.
struct CsvFieldMap {
    std::string record_id = "record_id";
    std::string journal = "journal";
    std::string doc_type = "doc_type";
    std::string year = "year";
    std::string times_cited = "times_cited";
    std::string references = "references";
    std::string source_unit = "source_unit";
};

inline ParseResult parse_records_csv(std::string_view text, const std::set<DocType>& allowed = default_allowed_types(),
                                     const CsvFieldMap& cols = {}) {
    ParseResult result;
    CsvTable table = parse_csv(text);
    if (table.header.empty()) return result;
    auto col_id = table.column(cols.record_id);
    auto col_journal = table.column(cols.journal);
    if (!col_id || !col_journal)
        throw std::runtime_error("record csv: header lacks '" + cols.record_id + "' or '" + cols.journal + "'");
    auto col_type = table.column(cols.doc_type);
    auto col_year = table.column(cols.year);
    auto col_tc = table.column(cols.times_cited);
    auto col_refs = table.column(cols.references);
    auto col_unit = table.column(cols.source_unit);

    auto cell = [&](const std::vector<std::string>& row, std::optional<std::size_t> c) -> std::string {
        return (c && *c < row.size()) ? row[*c] : std::string();
    };
    std::size_t number = 0;
    for (const auto& row : table.rows) {
        ++number;
        BibRecord rec;
        rec.record_id = trim(cell(row, col_id));
        rec.journal = canonicalize_journal(cell(row, col_journal));
        if (rec.record_id.empty() || rec.journal.empty()) {
            result.diagnostics.push_back({number, rec.record_id, "missing record id or journal"});
            continue;
        }
        rec.doc_type = parse_doc_type(cell(row, col_type));
        if (!allowed.count(rec.doc_type)) {
            ++result.dropped_by_type;
            continue;
        }
        long year = 0;
        if (!detail::parse_long(cell(row, col_year), year) || year < 1900 || year > 2100) {
            result.diagnostics.push_back({number, rec.record_id, "missing or out-of-range year"});
            continue;
        }
        rec.year = static_cast<int>(year);
        std::string tc = trim(cell(row, col_tc));
        if (!tc.empty()) {
            long cited = 0;
            if (!detail::parse_long(tc, cited) || cited < 0) {
                result.diagnostics.push_back({number, rec.record_id, "bad times-cited value '" + tc + "'"});
                continue;
            }
            rec.times_cited = cited;
        }
        rec.source_unit = trim(cell(row, col_unit));
        std::string refs = cell(row, col_refs);
        std::size_t start = 0;
        for (std::size_t i = 0; i <= refs.size(); ++i) {
            if (i == refs.size() || refs[i] == ';') {
                std::string item = trim(std::string_view(refs).substr(start, i - start));
                if (!item.empty()) rec.references.push_back(parse_reference(item));
                start = i + 1;
            }
        }
        result.records.push_back(std::move(rec));
    }
    return result;
}

struct CitingParseResult {
    std::vector<CitingRecord> records;
    std::vector<ParseDiagnostic> diagnostics;
};

// Citing-record CSV: record_id,journal,reference_count,cited_unit_papers,citing_unit
// with cited_unit_papers ';'-separated. citing_unit may be empty (external).
inline CitingParseResult parse_citing_csv(std::string_view text) {
    CitingParseResult result;
    CsvTable table = parse_csv(text);
    if (table.header.empty()) return result;
    std::size_t col_id = table.require_column("record_id");
    std::size_t col_journal = table.require_column("journal");
    std::size_t col_refs = table.require_column("reference_count");
    std::size_t col_cited = table.require_column("cited_unit_papers");
    auto col_unit = table.column("citing_unit");

    std::size_t number = 0;
    for (const auto& row : table.rows) {
        ++number;
        auto cell = [&](std::size_t c) -> std::string { return c < row.size() ? row[c] : std::string(); };
        CitingRecord rec;
        rec.record_id = trim(cell(col_id));
        rec.journal = canonicalize_journal(cell(col_journal));
        if (rec.record_id.empty() || rec.journal.empty()) {
            result.diagnostics.push_back({number, rec.record_id, "missing record id or journal"});
            continue;
        }
        if (!detail::parse_long(cell(col_refs), rec.reference_count) || rec.reference_count < 1) {
            result.diagnostics.push_back({number, rec.record_id, "reference_count must be >= 1"});
            continue;
        }
        std::string cited = cell(col_cited);
        std::size_t start = 0;
        for (std::size_t i = 0; i <= cited.size(); ++i) {
            if (i == cited.size() || cited[i] == ';') {
                std::string id = trim(std::string_view(cited).substr(start, i - start));
                if (!id.empty()) rec.cited_unit_papers.push_back(id);
                start = i + 1;
            }
        }
        if (rec.cited_unit_papers.empty()) {
            result.diagnostics.push_back({number, rec.record_id, "cited_unit_papers is empty"});
            continue;
        }
        if (col_unit) rec.citing_unit = trim(cell(*col_unit));
        result.records.push_back(std::move(rec));
    }
    return result;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace idr
