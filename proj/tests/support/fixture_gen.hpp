#pragma once
// Deterministic randomized fixtures for oracle-equivalence and property
// tests: a small category space, a thesaurus, global category and journal
// cross-citation counts, ratings, baselines, unit records and citing
// records. Every structure is produced both as library types and as the
// plain containers the oracle consumes.

#include <random>
#include <string>
#include <vector>

#include "idrkit/distribution.hpp"
#include "idrkit/matrix.hpp"
#include "idrkit/records.hpp"
#include "idrkit/tables.hpp"

#include "oracle.hpp"

namespace fixture {

struct Fixture {
    unsigned seed = 0;
    std::vector<std::string> categories;
    std::vector<std::string> journals;

    oracle::Thesaurus thesaurus_map;
    idr::JournalThesaurus thesaurus;

    oracle::Matrix category_counts;
    idr::CrossCitationMatrix category_matrix;
    oracle::Matrix journal_counts;
    idr::CrossCitationMatrix journal_matrix;

    std::map<std::string, std::string> ratings_map;  // journal -> rank label
    idr::RatingScheme scheme;

    std::map<std::string, double> journal_if;
    std::map<std::string, double> cat_mean_citations;
    std::map<std::string, double> cat_mean_if;
    idr::CategoryBaseline baseline;

    std::vector<idr::BibRecord> records;
    std::vector<idr::CitingRecord> citing_raw;  // before same-unit exclusion
    std::string unit = "UNIT";
};

inline Fixture make_fixture(unsigned seed) {
    std::mt19937 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto real = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

    Fixture f;
    f.seed = seed;
    int n_cats = uniform(3, 6);
    int n_journals = uniform(4, 12);
    for (int i = 0; i < n_cats; ++i) f.categories.push_back("CAT" + std::to_string(i + 1));
    for (int i = 0; i < n_journals; ++i) f.journals.push_back("JRNL " + std::to_string(i + 1));

    // Thesaurus: journal i always covers category i mod k, sometimes one more.
    // The first two journals stay single-category so the forced records below
    // guarantee at least two distinct categories everywhere.
    for (int i = 0; i < n_journals; ++i) {
        const std::string& j = f.journals[static_cast<std::size_t>(i)];
        f.thesaurus_map[j].insert(f.categories[static_cast<std::size_t>(i % n_cats)]);
        if (i >= 2 && uniform(0, 2) == 0)
            f.thesaurus_map[j].insert(f.categories[static_cast<std::size_t>(uniform(0, n_cats - 1))]);
    }
    for (auto& [j, cats] : f.thesaurus_map)
        for (auto& c : cats) f.thesaurus.add(j, c);

    // Global cross-citation counts; the +diagonal keeps every column nonzero.
    f.category_matrix = idr::CrossCitationMatrix(f.categories);
    for (int a = 0; a < n_cats; ++a)
        for (int b = 0; b < n_cats; ++b) {
            double v = a == b ? uniform(20, 100) : uniform(0, 50);
            f.category_counts[f.categories[a]][f.categories[b]] = v;
            f.category_matrix.at(a, b) = v;
        }
    f.journal_matrix = idr::CrossCitationMatrix(f.journals);
    for (int a = 0; a < n_journals; ++a)
        for (int b = 0; b < n_journals; ++b) {
            double v = a == b ? uniform(10, 60) : uniform(0, 25);
            f.journal_counts[f.journals[a]][f.journals[b]] = v;
            f.journal_matrix.at(a, b) = v;
        }

    const char* labels[] = {"1", "2", "3", "4", "4*"};
    for (int i = 0; i < n_journals; ++i) {
        if (i > 0 && uniform(0, 4) == 0) continue;  // some journals unrated
        std::string label = labels[uniform(0, 4)];
        f.ratings_map[f.journals[i]] = label;
        f.scheme.add(f.journals[i], *idr::parse_rank(label));
    }
    for (int i = 0; i < n_journals; ++i) {
        if (i > 0 && uniform(0, 6) == 0) continue;  // some journals without IF
        double factor = uniform(0, 9) == 0 ? 0.0 : real(0.2, 6.0);
        f.journal_if[f.journals[i]] = factor;
        f.baseline.journal_impact_factor[idr::canonicalize_journal(f.journals[i])] = factor;
    }
    for (const auto& c : f.categories) {
        double mean = real(0.5, 8.0);
        double mif = real(0.5, 4.0);
        f.cat_mean_citations[c] = mean;
        f.cat_mean_if[c] = mif;
        f.baseline.category_mean_citations[c] = mean;
        f.baseline.category_mean_if[c] = mif;
    }

    int n_records = uniform(10, 100);
    for (int i = 0; i < n_records; ++i) {
        idr::BibRecord r;
        r.record_id = "P" + std::to_string(i);
        // the first two records pin two single-category journals
        r.journal = i < 2 ? f.journals[static_cast<std::size_t>(i)]
                          : f.journals[static_cast<std::size_t>(uniform(0, n_journals - 1))];
        r.year = 2006 + uniform(0, 4);
        r.doc_type = idr::DocType::article;
        r.times_cited = uniform(0, 30);
        int n_refs = i < 2 ? 2 : uniform(0, 8);
        for (int k = 0; k < n_refs; ++k) {
            idr::Reference ref;
            if (i >= 2 && uniform(0, 5) == 0) {
                ref.raw = "SOME UNTRACEABLE BOOK TITLE";  // stays unmapped
            } else {
                std::string j = i < 2 ? f.journals[static_cast<std::size_t>(k % 2)]
                                      : f.journals[static_cast<std::size_t>(uniform(0, n_journals - 1))];
                ref.raw = "Author A, 2005, " + j + ", V1, P1";
                ref.journal = idr::canonicalize_journal(j);
            }
            r.references.push_back(ref);
        }
        r.source_unit = f.unit;
        f.records.push_back(std::move(r));
    }

    int n_citing = uniform(3, 30);
    for (int i = 0; i < n_citing; ++i) {
        idr::CitingRecord c;
        c.record_id = "CIT" + std::to_string(i);
        c.journal = i < 2 ? f.journals[static_cast<std::size_t>(i)]
                          : f.journals[static_cast<std::size_t>(uniform(0, n_journals - 1))];
        c.reference_count = i == 0 ? 20 : (i == 1 ? 10 : uniform(3, 40));
        int cites = uniform(1, 3);
        for (int k = 0; k < cites; ++k)
            c.cited_unit_papers.push_back("P" + std::to_string(uniform(0, n_records - 1)));
        if (i >= 2 && uniform(0, 4) == 0) c.citing_unit = f.unit;
        f.citing_raw.push_back(std::move(c));
    }
    return f;
}

}  // namespace fixture
