#pragma once
// Similarity space: cosine similarities over cross-citation vectors, the
// induced distance matrix, and the thresholded journal graph.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "idrkit/matrix.hpp"

namespace idr {

enum class CitationDimension { cited, citing };

struct CosineResult {
    SimilarityMatrix matrix;
    std::vector<std::string> zero_labels;  // labels whose vector was all zero
};

// Cosine similarity between the label vectors of C. dimension=cited compares
// columns (citations received), citing compares rows. The diagonal is forced
// to 1; labels with an all-zero vector get similarity 0 against every other
// label and are reported back. zero_diagonal removes self-citations from the
// vectors first.
inline CosineResult cosine_similarity(const CrossCitationMatrix& c, CitationDimension dimension,
                                      bool zero_diagonal = false) {
    const std::size_t n = c.size();
    if (n == 0) throw std::runtime_error("degenerate cross-citation matrix");

    // vectors[i][k]: component k of label i's profile
    std::vector<std::vector<double>> vectors(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            double v = dimension == CitationDimension::cited ? c.at(k, i) : c.at(i, k);
            if (zero_diagonal && k == i) v = 0.0;
            vectors[i][k] = v;
        }

    CosineResult result{SimilarityMatrix(c.labels()), {}};
    std::vector<double> norms(n, 0.0);
    bool any_nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
        double sq = 0.0;
        for (double v : vectors[i]) sq += v * v;
        norms[i] = std::sqrt(sq);
        if (norms[i] > 0.0) any_nonzero = true;
        else result.zero_labels.push_back(c.label(i));
    }
    if (!any_nonzero) throw std::runtime_error("degenerate cross-citation matrix");

    for (std::size_t i = 0; i < n; ++i) {
        result.matrix.at(i, i) = 1.0;
        for (std::size_t j = 0; j < i; ++j) {
            double s = 0.0;
            if (norms[i] > 0.0 && norms[j] > 0.0) {
                double dot = 0.0;
                for (std::size_t k = 0; k < n; ++k) dot += vectors[i][k] * vectors[j][k];
                s = dot / (norms[i] * norms[j]);
                if (s < 0.0) s = 0.0;
                if (s > 1.0) s = 1.0;
            }
            result.matrix.at(i, j) = s;
            result.matrix.at(j, i) = s;
        }
    }
    return result;
}

inline DistanceMatrix to_distance(const SimilarityMatrix& s) {
    DistanceMatrix d(s.labels());
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) d.at(i, j) = i == j ? 0.0 : 1.0 - s.at(i, j);
    return d;
}

inline SimilarityMatrix to_similarity(const DistanceMatrix& d) {
    SimilarityMatrix s(d.labels());
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) s.at(i, j) = i == j ? 1.0 : 1.0 - d.at(i, j);
    return s;
}

// Undirected journal graph: edge {i,j} present iff s_ij >= threshold, i != j.
class JournalGraph {
public:
    JournalGraph() = default;

    JournalGraph(std::vector<std::string> labels, double threshold)
        : labels_(std::move(labels)), adj_(labels_.size() * labels_.size(), 0), threshold_(threshold) {
        for (std::size_t i = 0; i < labels_.size(); ++i) index_[labels_[i]] = i;
    }

    std::size_t size() const { return labels_.size(); }
    double threshold() const { return threshold_; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::optional<std::size_t> index_of(std::string_view label) const {
        auto it = index_.find(std::string(label));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool has_edge(std::size_t i, std::size_t j) const {
        return i != j && adj_.at(i * labels_.size() + j) != 0;
    }

    void set_edge(std::size_t i, std::size_t j) {
        if (i == j) return;
        adj_.at(i * labels_.size() + j) = 1;
        adj_.at(j * labels_.size() + i) = 1;
    }

    std::vector<std::size_t> neighbors(std::size_t i) const {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < labels_.size(); ++j)
            if (has_edge(i, j)) out.push_back(j);
        return out;
    }

    std::size_t edge_count() const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < labels_.size(); ++i)
            for (std::size_t j = i + 1; j < labels_.size(); ++j)
                if (has_edge(i, j)) ++n;
        return n;
    }

private:
    std::vector<std::string> labels_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::uint8_t> adj_;
    double threshold_ = 0.2;
};

inline JournalGraph build_journal_graph(const SimilarityMatrix& s, double edge_threshold = 0.2) {
    if (edge_threshold <= 0.0 || edge_threshold >= 1.0)
        throw std::invalid_argument("edge threshold must lie in (0,1)");
    JournalGraph g(s.labels(), edge_threshold);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s.at(i, j) >= edge_threshold) g.set_edge(i, j);
    return g;
}

}  // namespace idr
