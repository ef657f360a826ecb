#pragma once
// Labeled square matrices. One dense template carries the storage; the tag
// parameter keeps cross-citation counts, similarities and distances as
// distinct types so they cannot be mixed up at call sites.

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "idrkit/csv.hpp"

namespace idr {

template <typename Tag>
class LabeledSquare {
public:
    LabeledSquare() = default;

    explicit LabeledSquare(std::vector<std::string> labels)
        : labels_(std::move(labels)), cells_(labels_.size() * labels_.size(), 0.0) {
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            if (!index_.emplace(labels_[i], i).second)
                throw std::runtime_error("matrix: duplicate label '" + labels_[i] + "'");
        }
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    std::optional<std::size_t> index_of(std::string_view label) const {
        auto it = index_.find(std::string(label));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    double at(std::size_t i, std::size_t j) const { return cells_.at(i * labels_.size() + j); }
    double& at(std::size_t i, std::size_t j) { return cells_.at(i * labels_.size() + j); }

    double total() const {
        double sum = 0.0;
        for (double v : cells_) sum += v;
        return sum;
    }

    // Copy onto a new label set; cells whose labels are absent become 0.
    LabeledSquare aligned_to(const std::vector<std::string>& labels) const {
        LabeledSquare out(labels);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            auto si = index_of(labels[i]);
            if (!si) continue;
            for (std::size_t j = 0; j < labels.size(); ++j) {
                auto sj = index_of(labels[j]);
                if (sj) out.at(i, j) = at(*si, *sj);
            }
        }
        return out;
    }

private:
    std::vector<std::string> labels_;
    std::map<std::string, std::size_t> index_;
    std::vector<double> cells_;
};

struct CrossCitationTag {};
struct SimilarityTag {};
struct DistanceTag {};

// C[i][j] = citations from label i to label j; entries >= 0.
using CrossCitationMatrix = LabeledSquare<CrossCitationTag>;
// s_ij in [0,1], symmetric, unit diagonal.
using SimilarityMatrix = LabeledSquare<SimilarityTag>;
// d_ij = 1 - s_ij; zero diagonal.
using DistanceMatrix = LabeledSquare<DistanceTag>;

inline void validate_similarity(const SimilarityMatrix& s, double symmetry_tol = 1e-12) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.at(i, i) != 1.0)
            throw std::runtime_error("similarity: diagonal must be exactly 1 at " + s.label(i));
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(s.at(i, j) - s.at(j, i)) > symmetry_tol)
                throw std::runtime_error("similarity: asymmetry at " + s.label(i) + "/" + s.label(j));
            if (s.at(i, j) < 0.0 || s.at(i, j) > 1.0)
                throw std::runtime_error("similarity: value outside [0,1] at " + s.label(i) + "/" + s.label(j));
        }
    }
}

// CSV layout: header `label,<L1>,<L2>,...`; each row starts with the citing
// label followed by one cell per column label.
template <typename Tag>
LabeledSquare<Tag> read_matrix_csv(const CsvTable& table, bool require_non_negative = true) {
    if (table.header.size() < 2) throw std::runtime_error("matrix csv: header too short");
    std::vector<std::string> labels(table.header.begin() + 1, table.header.end());
    LabeledSquare<Tag> m(labels);
    if (table.rows.size() != labels.size())
        throw std::runtime_error("matrix csv: expected " + std::to_string(labels.size()) + " rows, got " +
                                 std::to_string(table.rows.size()));
    for (const auto& row : table.rows) {
        if (row.size() != labels.size() + 1)
            throw std::runtime_error("matrix csv: short row for label '" + (row.empty() ? "" : row[0]) + "'");
        auto i = m.index_of(row[0]);
        if (!i) throw std::runtime_error("matrix csv: row label '" + row[0] + "' not in header");
        for (std::size_t j = 0; j < labels.size(); ++j) {
            double v = parse_real(row[j + 1], "matrix cell " + row[0] + "/" + labels[j]);
            if (require_non_negative && v < 0)
                throw std::runtime_error("matrix csv: negative cell " + row[0] + "/" + labels[j]);
            m.at(*i, j) = v;
        }
    }
    return m;
}

template <typename Tag>
std::string write_matrix_csv(const LabeledSquare<Tag>& m, int precision = 6) {
    std::string out = "label";
    for (const auto& l : m.labels()) out += "," + csv_escape(l);
    out.push_back('\n');
    char buf[64];
    for (std::size_t i = 0; i < m.size(); ++i) {
        out += csv_escape(m.label(i));
        for (std::size_t j = 0; j < m.size(); ++j) {
            std::snprintf(buf, sizeof buf, ",%.*f", precision, m.at(i, j));
            out += buf;
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace idr
