#pragma once
// Research-performance indicators: rating-based means, citation rates with
// journal / field / citing-side normalizations, impact-factor means, and the
// funding-allocation model that converts rating histograms into resource
// shares on a quasi-exponential multiplier scale.
//
// Every mean is reported with its standard error (sample standard deviation
// over sqrt(n)) and the contributing n; papers excluded by a missing
// denominator are counted, not silently dropped.

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "idrkit/records.hpp"
#include "idrkit/tables.hpp"

namespace idr {

struct MeanSE {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

inline MeanSE mean_se(const std::vector<double>& values) {
    MeanSE out;
    out.n = values.size();
    if (out.n == 0) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(out.n);
    if (out.n < 2) return out;
    double sq = 0.0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    double sd = std::sqrt(sq / static_cast<double>(out.n - 1));
    out.std_error = sd / std::sqrt(static_cast<double>(out.n));
    return out;
}

struct RatingSummary {
    MeanSE rating;          // over rated papers only
    double percent_rated = 0.0;  // rated / all papers
    std::size_t rated = 0;
    std::size_t total = 0;
};

inline RatingSummary mean_rating(const std::vector<BibRecord>& papers, const RatingScheme& scheme) {
    RatingSummary out;
    out.total = papers.size();
    std::vector<double> weights;
    for (const auto& p : papers) {
        auto rank = scheme.lookup(p.journal);
        if (!rank) continue;
        weights.push_back(scheme.weight(*rank));
    }
    out.rated = weights.size();
    if (out.rated == 0) throw std::runtime_error("no rated publications");
    out.rating = mean_se(weights);
    out.percent_rated = out.total == 0 ? 0.0 : static_cast<double>(out.rated) / static_cast<double>(out.total);
    return out;
}

inline MeanSE citations_per_paper(const std::vector<BibRecord>& papers) {
    if (papers.empty()) throw std::invalid_argument("citations_per_paper: no papers");
    std::vector<double> values;
    values.reserve(papers.size());
    for (const auto& p : papers) values.push_back(static_cast<double>(p.times_cited));
    return mean_se(values);
}

struct NormalizedSummary {
    MeanSE stats;
    std::size_t excluded = 0;  // papers without a usable denominator
};

// Citations divided by the paper's journal impact factor; papers whose
// journal has no IF, or IF zero, are excluded and counted.
inline NormalizedSummary journal_normalized(const std::vector<BibRecord>& papers,
                                            const CategoryBaseline& baseline) {
    NormalizedSummary out;
    std::vector<double> values;
    for (const auto& p : papers) {
        auto factor = baseline.impact_factor(p.journal);
        if (!factor || *factor <= 0.0) {
            ++out.excluded;
            continue;
        }
        values.push_back(static_cast<double>(p.times_cited) / *factor);
    }
    if (values.empty()) throw std::runtime_error("journal_normalized: all papers excluded");
    out.stats = mean_se(values);
    return out;
}

namespace detail {

// Mean of a category-keyed baseline over the journal's categories; averages
// across the categories that carry a value.
inline std::optional<double> category_mean(const JournalThesaurus& thesaurus,
                                           const std::map<std::string, double>& table,
                                           const std::string& journal) {
    const auto* cats = thesaurus.lookup(journal);
    if (!cats || cats->empty()) return std::nullopt;
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& cat : *cats) {
        auto it = table.find(cat);
        if (it == table.end()) continue;
        sum += it->second;
        ++n;
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

}  // namespace detail

// Citations divided by the mean citations-per-paper of the journal's
// categories (multi-category journals average their categories' baselines).
inline NormalizedSummary field_normalized(const std::vector<BibRecord>& papers,
                                          const CategoryBaseline& baseline,
                                          const JournalThesaurus& thesaurus) {
    NormalizedSummary out;
    std::vector<double> values;
    for (const auto& p : papers) {
        auto denom = detail::category_mean(thesaurus, baseline.category_mean_citations, p.journal);
        if (!denom || *denom <= 0.0) {
            ++out.excluded;
            continue;
        }
        values.push_back(static_cast<double>(p.times_cited) / *denom);
    }
    if (values.empty()) throw std::runtime_error("field_normalized: all papers excluded");
    out.stats = mean_se(values);
    return out;
}

struct CitingSideSummary {
    double mean = 0.0;          // no standard error: incoming weights are aggregate
    std::size_t papers = 0;
    std::size_t qualifying_citers = 0;
};

// Each citing record with at least min_refs references contributes
// 1/reference_count to every unit paper it cites; the unit value is the mean
// per-paper weight over all unit papers (papers nobody cites count as 0).
// The citing list is expected to be unit-filtered already.
inline CitingSideSummary citing_side_normalized(const std::vector<BibRecord>& papers,
                                                const std::vector<CitingRecord>& citing,
                                                long min_refs = 11) {
    CitingSideSummary out;
    out.papers = papers.size();
    if (papers.empty()) return out;
    std::map<std::string, double> weight;
    for (const auto& p : papers) weight[p.record_id] = 0.0;
    for (const auto& c : citing) {
        if (c.reference_count < min_refs) continue;
        ++out.qualifying_citers;
        double w = 1.0 / static_cast<double>(c.reference_count);
        for (const auto& id : c.cited_unit_papers) {
            auto it = weight.find(id);
            if (it != weight.end()) it->second += w;
        }
    }
    double sum = 0.0;
    for (const auto& [_, w] : weight) sum += w;
    out.mean = sum / static_cast<double>(papers.size());
    return out;
}

struct ImpactFactorSummary {
    NormalizedSummary journal_if;          // mean IF of publication journals
    NormalizedSummary field_normalized_if; // journal IF over category mean IF
    NormalizedSummary citing_journal_if;   // mean IF of citing journals
};

inline ImpactFactorSummary impact_factor_means(const std::vector<BibRecord>& papers,
                                               const CategoryBaseline& baseline,
                                               const JournalThesaurus& thesaurus,
                                               const std::vector<CitingRecord>& citing) {
    ImpactFactorSummary out;
    std::vector<double> own, field, incoming;
    for (const auto& p : papers) {
        auto factor = baseline.impact_factor(p.journal);
        if (!factor) {
            ++out.journal_if.excluded;
            ++out.field_normalized_if.excluded;
            continue;
        }
        own.push_back(*factor);
        auto denom = detail::category_mean(thesaurus, baseline.category_mean_if, p.journal);
        if (!denom || *denom <= 0.0) ++out.field_normalized_if.excluded;
        else field.push_back(*factor / *denom);
    }
    for (const auto& c : citing) {
        auto factor = baseline.impact_factor(c.journal);
        if (!factor) ++out.citing_journal_if.excluded;
        else incoming.push_back(*factor);
    }
    out.journal_if.stats = mean_se(own);
    out.field_normalized_if.stats = mean_se(field);
    out.citing_journal_if.stats = mean_se(incoming);
    return out;
}

// rank -> paper count
using RankHistogram = std::map<Rank, long>;

struct FundingModel {
    std::array<double, kRankCount> multipliers{0, 1, 3, 9, 9};

    static FundingModel from_scheme(const RatingScheme& scheme) {
        return FundingModel{scheme.multipliers()};
    }
    double multiplier(Rank r) const { return multipliers[static_cast<std::size_t>(r)]; }
};

struct FundingAllocation {
    double score = 0.0;
    double share = 0.0;
    double per_capita = 0.0;  // score / submitted papers
};

inline std::map<std::string, FundingAllocation> allocate_funding(
    const std::map<std::string, RankHistogram>& histograms, const FundingModel& model) {
    std::map<std::string, FundingAllocation> out;
    double total_score = 0.0;
    for (const auto& [unit, hist] : histograms) {
        FundingAllocation a;
        long papers = 0;
        for (const auto& [rank, count] : hist) {
            if (count < 0) throw std::invalid_argument("allocate_funding: negative count for " + unit);
            a.score += static_cast<double>(count) * model.multiplier(rank);
            papers += count;
        }
        a.per_capita = papers > 0 ? a.score / static_cast<double>(papers) : 0.0;
        total_score += a.score;
        out[unit] = a;
    }
    if (total_score <= 0.0) throw std::runtime_error("allocate_funding: all unit scores are zero");
    for (auto& [_, a] : out) a.share = a.score / total_score;
    return out;
}

}  // namespace idr
