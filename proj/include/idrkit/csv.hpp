#pragma once
// Minimal RFC 4180 CSV reader/writer: quoted fields, "" escapes, CRLF or LF.
// Output CSVs produced by this tool may carry leading '#' comment lines
// (parameter echo); parse_csv skips those when asked.

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace idr {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> comments;  // leading '#' lines, without the '#'

    std::optional<std::size_t> column(std::string_view name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        return std::nullopt;
    }

    // Throws if the column is absent; use for required columns.
    std::size_t require_column(std::string_view name) const {
        if (auto c = column(name)) return *c;
        throw std::runtime_error("csv: missing required column '" + std::string(name) + "'");
    }
};

inline CsvTable parse_csv(std::string_view text, bool allow_hash_comments = true) {
    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    bool line_start = true;
    bool in_comment = false;
    std::string comment;

    auto end_field = [&] {
        record.push_back(field);
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        // an entirely empty line is not a record
        if (!(record.size() == 1 && record[0].empty())) {
            if (table.header.empty() && table.rows.empty())
                table.header = record;
            else
                table.rows.push_back(record);
        }
        record.clear();
        line_start = true;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_comment) {
            if (c == '\n') {
                table.comments.push_back(comment);
                comment.clear();
                in_comment = false;
                line_start = true;
            } else if (c != '\r') {
                comment.push_back(c);
            }
            continue;
        }
        if (line_start && allow_hash_comments && c == '#' && table.header.empty() && !field_started &&
            record.empty()) {
            in_comment = true;
            continue;
        }
        line_start = false;
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() || field_started || !record.empty()) end_record();
            line_start = true;
        } else if (c == '\r') {
            // swallowed; LF handles the record break
        } else {
            field.push_back(c);
            field_started = true;
        }
    }
    if (in_quotes) throw std::runtime_error("csv: unterminated quoted field");
    if (in_comment) table.comments.push_back(comment);
    if (!field.empty() || field_started || !record.empty()) end_record();
    return table;
}

inline CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    CsvTable t = parse_csv(buf.str());
    if (t.header.empty()) throw std::runtime_error("csv: missing header row in " + path);
    return t;
}

inline std::string csv_escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += csv_escape(fields[i]);
    }
    out.push_back('\n');
    return out;
}

// Parses a strictly formatted real; throws with context on garbage.
inline double parse_real(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("csv: bad numeric value '" + s + "' in " + context);
    }
}

}  // namespace idr
