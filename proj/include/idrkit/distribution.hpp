#pragma once
// Activity distributions over subject categories (or journals). Items map
// through the thesaurus and contribute fractionally, 1/k per category, when
// their journal belongs to k categories. Unmapped items are excluded from
// the distribution but drive the coverage statistic.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "idrkit/matrix.hpp"
#include "idrkit/records.hpp"
#include "idrkit/tables.hpp"

namespace idr {

struct CategoryDistribution {
    Facet facet = Facet::publications;
    std::map<std::string, double> counts;  // label -> fractional count
    double total = 0.0;                    // sum of counts
    std::size_t mapped_items = 0;
    std::size_t unmapped_items = 0;
    double min_share = 0.0001;  // default threshold carried for variety/disparity

    // Proportions are always derived from counts, never cached.
    std::map<std::string, double> proportions() const {
        std::map<std::string, double> p;
        if (total <= 0.0) return p;
        for (const auto& [label, count] : counts) p[label] = count / total;
        return p;
    }

    // Labels whose share clears the threshold, in label order.
    std::vector<std::string> thresholded_labels(double threshold) const {
        std::vector<std::string> out;
        if (total <= 0.0) return out;
        for (const auto& [label, count] : counts)
            if (count / total >= threshold) out.push_back(label);
        return out;
    }

    double coverage() const {
        std::size_t items = mapped_items + unmapped_items;
        return items == 0 ? 0.0 : static_cast<double>(mapped_items) / static_cast<double>(items);
    }
};

namespace detail {

inline void add_item(CategoryDistribution& dist, const JournalThesaurus& thesaurus,
                     const std::string& journal) {
    const auto* cats = thesaurus.lookup(journal);
    if (!cats || cats->empty()) {
        ++dist.unmapped_items;
        return;
    }
    double share = 1.0 / static_cast<double>(cats->size());
    for (const auto& cat : *cats) dist.counts[cat] += share;
    dist.total += 1.0;
    ++dist.mapped_items;
}

}  // namespace detail

// Distribution of a unit's own publications or of their cited references
// over subject categories.
inline CategoryDistribution build_distribution(const std::vector<BibRecord>& records,
                                               const JournalThesaurus& thesaurus, Facet facet,
                                               double min_share = 0.0001) {
    if (facet != Facet::publications && facet != Facet::references)
        throw std::invalid_argument("build_distribution: facet must be publications or references");
    CategoryDistribution dist;
    dist.facet = facet;
    dist.min_share = min_share;
    for (const auto& rec : records) {
        if (facet == Facet::publications) {
            detail::add_item(dist, thesaurus, rec.journal);
        } else {
            for (const auto& ref : rec.references) {
                if (ref.journal.empty()) {
                    ++dist.unmapped_items;
                    continue;
                }
                detail::add_item(dist, thesaurus, ref.journal);
            }
        }
    }
    if (dist.mapped_items == 0) throw std::runtime_error("empty distribution");
    return dist;
}

// Distribution of citing documents over subject categories.
inline CategoryDistribution build_distribution(const std::vector<CitingRecord>& citing,
                                               const JournalThesaurus& thesaurus,
                                               double min_share = 0.0001) {
    CategoryDistribution dist;
    dist.facet = Facet::citations;
    dist.min_share = min_share;
    for (const auto& rec : citing) detail::add_item(dist, thesaurus, rec.journal);
    if (dist.mapped_items == 0) throw std::runtime_error("empty distribution");
    return dist;
}

// Journal-level distribution (each journal its own category); used for the
// intermediation indicators and journal-map exports.
inline CategoryDistribution build_journal_distribution(const std::vector<std::string>& journals) {
    CategoryDistribution dist;
    dist.facet = Facet::journals;
    dist.min_share = 0.0;
    for (const auto& j : journals) {
        if (j.empty()) {
            ++dist.unmapped_items;
            continue;
        }
        dist.counts[j] += 1.0;
        dist.total += 1.0;
        ++dist.mapped_items;
    }
    if (dist.mapped_items == 0) throw std::runtime_error("empty distribution");
    return dist;
}

inline std::vector<std::string> journals_of(const std::vector<BibRecord>& records, Facet facet) {
    std::vector<std::string> out;
    for (const auto& rec : records) {
        if (facet == Facet::publications) out.push_back(rec.journal);
        else if (facet == Facet::references)
            for (const auto& ref : rec.references) out.push_back(ref.journal);
    }
    return out;
}

inline std::vector<std::string> journals_of(const std::vector<CitingRecord>& citing) {
    std::vector<std::string> out;
    out.reserve(citing.size());
    for (const auto& rec : citing) out.push_back(rec.journal);
    return out;
}

// Within-unit cross-citation counts between categories: for each paper, the
// paper journal's categories cite each reference journal's categories, both
// sides split fractionally. Items with unmappable journals are skipped.
inline CrossCitationMatrix build_cross_citations(const std::vector<BibRecord>& records,
                                                 const JournalThesaurus& thesaurus) {
    std::map<std::string, std::map<std::string, double>> counts;
    std::set<std::string> seen;
    for (const auto& rec : records) {
        const auto* from = thesaurus.lookup(rec.journal);
        if (!from || from->empty()) continue;
        for (const auto& ref : rec.references) {
            if (ref.journal.empty()) continue;
            const auto* to = thesaurus.lookup(ref.journal);
            if (!to || to->empty()) continue;
            double weight = 1.0 / (static_cast<double>(from->size()) * static_cast<double>(to->size()));
            for (const auto& i : *from)
                for (const auto& j : *to) {
                    counts[i][j] += weight;
                    seen.insert(i);
                    seen.insert(j);
                }
        }
    }
    CrossCitationMatrix m(std::vector<std::string>(seen.begin(), seen.end()));
    for (const auto& [i, row] : counts) {
        auto ii = m.index_of(i);
        for (const auto& [j, v] : row) m.at(*ii, *m.index_of(j)) = v;
    }
    return m;
}

}  // namespace idr
