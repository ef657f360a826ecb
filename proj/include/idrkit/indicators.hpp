#pragma once
// Interdisciplinarity indicators.
//
// Diversity of a category distribution:
//   variety          n, count of categories above the share threshold
//   balance          -(1/ln n0) * sum_i p_i ln p_i     (Shannon evenness)
//   disparity        mean of d_ij over ordered pairs of thresholded categories
//   shannon_entropy  -sum_i p_i ln p_i
//   rao_stirling     sum_{i,j} p_i p_j d_ij            (ordered pairs)
//
// Coherence compares the observed mean cross-citation distance inside a set
// with the distance expected if categories cited each other proportionally
// to their reference shares.
//
// Intermediation works at the journal level: the p-weighted clustering
// coefficient on the thresholded journal graph, and the p-weighted mean
// similarity of each journal to all others.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "idrkit/distribution.hpp"
#include "idrkit/matrix.hpp"
#include "idrkit/simspace.hpp"

namespace idr {

struct DiversityReport {
    int variety = 0;
    double balance = 0.0;
    double disparity = 0.0;
    double shannon_entropy = 0.0;
    double rao_stirling = 0.0;
};

inline int variety(const CategoryDistribution& dist, double min_share) {
    if (dist.counts.empty()) throw std::invalid_argument("variety: empty distribution");
    return static_cast<int>(dist.thresholded_labels(min_share).size());
}

// Over all nonzero-share categories, no threshold. A single-category
// distribution is trivially even: balance = 1.
inline double balance(const CategoryDistribution& dist) {
    if (dist.counts.empty() || dist.total <= 0.0)
        throw std::invalid_argument("balance: empty distribution");
    double entropy = 0.0;
    std::size_t nonzero = 0;
    for (const auto& [_, count] : dist.counts) {
        if (count <= 0.0) continue;
        ++nonzero;
        double p = count / dist.total;
        entropy -= p * std::log(p);
    }
    if (nonzero <= 1) return 1.0;
    return entropy / std::log(static_cast<double>(nonzero));
}

inline double shannon_entropy(const CategoryDistribution& dist) {
    if (dist.counts.empty() || dist.total <= 0.0)
        throw std::invalid_argument("shannon_entropy: empty distribution");
    double entropy = 0.0;
    for (const auto& [_, count] : dist.counts) {
        if (count <= 0.0) continue;  // 0 ln 0 := 0
        double p = count / dist.total;
        entropy -= p * std::log(p);
    }
    return entropy;
}

namespace detail {

inline std::size_t require_index(const DistanceMatrix& d, const std::string& label) {
    auto i = d.index_of(label);
    if (!i) throw std::out_of_range("distance matrix lacks category '" + label + "'");
    return *i;
}

}  // namespace detail

// Unweighted mean dissimilarity over ordered pairs of the thresholded
// category set.
inline double disparity(const CategoryDistribution& dist, const DistanceMatrix& d, double min_share) {
    std::vector<std::string> labels = dist.thresholded_labels(min_share);
    if (labels.size() < 2) throw std::runtime_error("disparity undefined for single category");
    std::vector<std::size_t> idx;
    idx.reserve(labels.size());
    for (const auto& l : labels) idx.push_back(detail::require_index(d, l));
    double sum = 0.0;
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b)
            if (a != b) sum += d.at(idx[a], idx[b]);
    double n = static_cast<double>(idx.size());
    return sum / (n * (n - 1.0));
}

inline double rao_stirling(const CategoryDistribution& dist, const DistanceMatrix& d) {
    if (dist.counts.empty() || dist.total <= 0.0)
        throw std::invalid_argument("rao_stirling: empty distribution");
    auto p = dist.proportions();
    std::vector<std::pair<std::size_t, double>> items;
    items.reserve(p.size());
    for (const auto& [label, share] : p) items.push_back({detail::require_index(d, label), share});
    double sum = 0.0;
    for (const auto& [i, pi] : items)
        for (const auto& [j, pj] : items)
            if (i != j) sum += pi * pj * d.at(i, j);
    return sum;
}

inline DiversityReport diversity_report(const CategoryDistribution& dist, const DistanceMatrix& d,
                                        double min_share) {
    DiversityReport r;
    r.variety = variety(dist, min_share);
    r.balance = balance(dist);
    r.disparity = disparity(dist, d, min_share);
    r.shannon_entropy = shannon_entropy(dist);
    r.rao_stirling = rao_stirling(dist, d);
    return r;
}

struct CoherenceReport {
    double observed_mean_distance = 0.0;
    double expected_mean_distance = 0.0;
    double coherence = 0.0;  // observed / expected
};

// within: cross-citation counts between categories inside the set under
// study. ref_dist supplies the p_i of the expectation model, under which
// category pairs cite proportionally to the product of their shares.
inline CoherenceReport coherence(const CrossCitationMatrix& within, const CategoryDistribution& ref_dist,
                                 const DistanceMatrix& d) {
    double within_total = within.total();
    if (within_total <= 0.0) throw std::runtime_error("coherence: no within-set cross-citations");

    CoherenceReport report;
    for (std::size_t i = 0; i < within.size(); ++i) {
        std::size_t di = detail::require_index(d, within.label(i));
        for (std::size_t j = 0; j < within.size(); ++j) {
            double pij = within.at(i, j) / within_total;
            if (pij == 0.0) continue;
            report.observed_mean_distance += pij * d.at(di, detail::require_index(d, within.label(j)));
        }
    }
    report.expected_mean_distance = rao_stirling(ref_dist, d);
    if (report.expected_mean_distance <= 0.0) throw std::runtime_error("coherence undefined");
    report.coherence = report.observed_mean_distance / report.expected_mean_distance;
    return report;
}

enum class Neighborhood { one, two };

// Clustering coefficient of node i over its 1- or 2-edge neighborhood:
// observed links among the neighborhood nodes over the maximum possible.
// Nodes with fewer than two neighborhood members score 0.
inline double clustering_coefficient(const JournalGraph& g, std::size_t i, Neighborhood scope) {
    std::vector<std::size_t> hood = g.neighbors(i);
    if (scope == Neighborhood::two) {
        std::vector<bool> in(g.size(), false);
        in[i] = true;
        for (std::size_t n : hood) in[n] = true;
        std::vector<std::size_t> second;
        for (std::size_t n : hood)
            for (std::size_t m : g.neighbors(n))
                if (!in[m]) {
                    in[m] = true;
                    second.push_back(m);
                }
        hood.insert(hood.end(), second.begin(), second.end());
    }
    if (hood.size() < 2) return 0.0;
    std::size_t links = 0;
    for (std::size_t a = 0; a < hood.size(); ++a)
        for (std::size_t b = a + 1; b < hood.size(); ++b)
            if (g.has_edge(hood[a], hood[b])) ++links;
    double m = static_cast<double>(hood.size());
    return static_cast<double>(links) / (m * (m - 1.0) / 2.0);
}

// sum_i p_i cc_i over the journal distribution. Journals missing from the
// graph contribute 0 and are reported through `missing` when given.
inline double weighted_clustering(const CategoryDistribution& journal_dist, const JournalGraph& g,
                                  Neighborhood scope = Neighborhood::two,
                                  std::vector<std::string>* missing = nullptr) {
    if (journal_dist.counts.empty() || journal_dist.total <= 0.0)
        throw std::invalid_argument("weighted_clustering: empty distribution");
    double value = 0.0;
    for (const auto& [journal, count] : journal_dist.counts) {
        if (count <= 0.0) continue;
        double p = count / journal_dist.total;
        auto idx = g.index_of(journal);
        if (!idx) {
            if (missing) missing->push_back(journal);
            continue;
        }
        value += p * clustering_coefficient(g, *idx, scope);
    }
    return value;
}

// sum_i p_i * (1/N) sum_{j != i} s_ij, with N the full label count of S.
// The self-term is dropped; the denominator stays N.
inline double average_similarity(const CategoryDistribution& journal_dist, const SimilarityMatrix& s,
                                 std::vector<std::string>* missing = nullptr) {
    if (journal_dist.counts.empty() || journal_dist.total <= 0.0)
        throw std::invalid_argument("average_similarity: empty distribution");
    if (s.size() == 0) throw std::invalid_argument("average_similarity: empty similarity matrix");
    double value = 0.0;
    double n = static_cast<double>(s.size());
    for (const auto& [journal, count] : journal_dist.counts) {
        if (count <= 0.0) continue;
        double p = count / journal_dist.total;
        auto idx = s.index_of(journal);
        if (!idx) {
            if (missing) missing->push_back(journal);
            continue;
        }
        double sum = 0.0;
        for (std::size_t j = 0; j < s.size(); ++j)
            if (j != *idx) sum += s.at(*idx, j);
        value += p * (sum / n);
    }
    return value;
}

struct IntermediationReport {
    double weighted_clustering = 0.0;
    double average_similarity = 0.0;
};

inline IntermediationReport intermediation_report(const CategoryDistribution& journal_dist,
                                                  const JournalGraph& g, const SimilarityMatrix& s,
                                                  Neighborhood scope = Neighborhood::two,
                                                  std::vector<std::string>* missing = nullptr) {
    IntermediationReport r;
    r.weighted_clustering = weighted_clustering(journal_dist, g, scope, missing);
    r.average_similarity = average_similarity(journal_dist, s, nullptr);
    return r;
}

}  // namespace idr
