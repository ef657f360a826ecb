#pragma once
// Lookup tables loaded from CSV: journal->category thesaurus, journal rating
// scheme, and the citation / impact-factor baselines used for normalization.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

#include "idrkit/canonical.hpp"
#include "idrkit/csv.hpp"

namespace idr {

class JournalThesaurus {
public:
    void add(std::string_view journal, std::string_view category) {
        std::string key = canonicalize_journal(journal);
        std::string cat = trim(category);
        if (key.empty() || cat.empty())
            throw std::runtime_error("thesaurus: empty journal or category");
        map_[key].insert(cat);
    }

    // nullptr when the journal is unknown; lookups canonicalize first.
    const std::set<std::string>* lookup(std::string_view journal) const {
        auto it = map_.find(canonicalize_journal(journal));
        return it == map_.end() ? nullptr : &it->second;
    }

    std::size_t size() const { return map_.size(); }

    std::set<std::string> all_categories() const {
        std::set<std::string> cats;
        for (const auto& [_, set] : map_) cats.insert(set.begin(), set.end());
        return cats;
    }

    const std::map<std::string, std::set<std::string>>& entries() const { return map_; }

    // CSV `journal,category`, one row per pair.
    static JournalThesaurus from_csv(const CsvTable& table) {
        JournalThesaurus t;
        std::size_t cj = table.require_column("journal");
        std::size_t cc = table.require_column("category");
        for (const auto& row : table.rows) {
            if (cj >= row.size() || cc >= row.size())
                throw std::runtime_error("thesaurus: short row");
            t.add(row[cj], row[cc]);
        }
        return t;
    }

private:
    std::map<std::string, std::set<std::string>> map_;
};

enum class Rank { r1 = 0, r2 = 1, r3 = 2, r4 = 3, r4_star = 4 };

inline constexpr std::size_t kRankCount = 5;

inline const char* rank_label(Rank r) {
    switch (r) {
        case Rank::r1: return "1";
        case Rank::r2: return "2";
        case Rank::r3: return "3";
        case Rank::r4: return "4";
        case Rank::r4_star: return "4*";
    }
    return "?";
}

inline std::optional<Rank> parse_rank(std::string_view raw) {
    std::string s = trim(raw);
    if (s == "1") return Rank::r1;
    if (s == "2") return Rank::r2;
    if (s == "3") return Rank::r3;
    if (s == "4") return Rank::r4;
    if (s == "4*") return Rank::r4_star;
    return std::nullopt;
}

// Journal -> rank map plus the ordinal weights (1,2,3,4 and 5 for the top
// band) and the funding multipliers of the quasi-exponential allocation
// scale (0,1,3,9; the top band defaults to 9 and is configurable).
class RatingScheme {
public:
    void add(std::string_view journal, Rank rank) {
        std::string key = canonicalize_journal(journal);
        if (key.empty()) throw std::runtime_error("rating scheme: empty journal");
        ranks_[key] = rank;
    }

    std::optional<Rank> lookup(std::string_view journal) const {
        auto it = ranks_.find(canonicalize_journal(journal));
        if (it == ranks_.end()) return std::nullopt;
        return it->second;
    }

    double weight(Rank r) const { return weights_[static_cast<std::size_t>(r)]; }
    double multiplier(Rank r) const { return multipliers_[static_cast<std::size_t>(r)]; }
    const std::array<double, kRankCount>& multipliers() const { return multipliers_; }

    // Multipliers must stay non-decreasing in rank order.
    void set_multipliers(const std::array<double, kRankCount>& m) {
        for (std::size_t i = 0; i < kRankCount; ++i) {
            if (m[i] < 0) throw std::runtime_error("funding multipliers must be >= 0");
            if (i > 0 && m[i] < m[i - 1])
                throw std::runtime_error("funding multipliers must be non-decreasing");
        }
        multipliers_ = m;
    }

    std::size_t size() const { return ranks_.size(); }
    const std::map<std::string, Rank>& entries() const { return ranks_; }

    // CSV `journal,rank` with rank in {1,2,3,4,4*}.
    static RatingScheme from_csv(const CsvTable& table) {
        RatingScheme s;
        std::size_t cj = table.require_column("journal");
        std::size_t cr = table.require_column("rank");
        for (const auto& row : table.rows) {
            if (cj >= row.size() || cr >= row.size())
                throw std::runtime_error("rating scheme: short row");
            auto rank = parse_rank(row[cr]);
            if (!rank) throw std::runtime_error("rating scheme: unknown rank '" + row[cr] + "'");
            s.add(row[cj], *rank);
        }
        return s;
    }

private:
    std::map<std::string, Rank> ranks_;
    std::array<double, kRankCount> weights_{1, 2, 3, 4, 5};
    std::array<double, kRankCount> multipliers_{0, 1, 3, 9, 9};
};

// Normalization baselines. Category mean citations must be positive (they
// are denominators); a zero or negative value is rejected at load. The
// optional mean_if column supplies the category-level impact-factor
// denominator.
struct CategoryBaseline {
    std::map<std::string, double> category_mean_citations;
    std::map<std::string, double> category_mean_if;
    std::map<std::string, double> journal_impact_factor;  // canonical journal -> IF

    std::optional<double> mean_citations(const std::string& category) const {
        auto it = category_mean_citations.find(category);
        if (it == category_mean_citations.end()) return std::nullopt;
        return it->second;
    }
    std::optional<double> mean_if(const std::string& category) const {
        auto it = category_mean_if.find(category);
        if (it == category_mean_if.end()) return std::nullopt;
        return it->second;
    }
    std::optional<double> impact_factor(std::string_view journal) const {
        auto it = journal_impact_factor.find(canonicalize_journal(journal));
        if (it == journal_impact_factor.end()) return std::nullopt;
        return it->second;
    }
};

// CSV `category,mean_citations[,mean_if]`.
inline void load_category_baseline(const CsvTable& table, CategoryBaseline& out) {
    std::size_t cc = table.require_column("category");
    std::size_t cm = table.require_column("mean_citations");
    auto ci = table.column("mean_if");
    for (const auto& row : table.rows) {
        if (cc >= row.size() || cm >= row.size())
            throw std::runtime_error("category baseline: short row");
        std::string cat = trim(row[cc]);
        double mean = parse_real(row[cm], "category baseline for " + cat);
        if (mean <= 0)
            throw std::runtime_error("category baseline: mean citations must be > 0 for " + cat);
        out.category_mean_citations[cat] = mean;
        if (ci && *ci < row.size() && !trim(row[*ci]).empty()) {
            double mif = parse_real(row[*ci], "category mean_if for " + cat);
            if (mif < 0) throw std::runtime_error("category baseline: mean_if must be >= 0 for " + cat);
            out.category_mean_if[cat] = mif;
        }
    }
}

// CSV `journal,impact_factor`.
inline void load_journal_baseline(const CsvTable& table, CategoryBaseline& out) {
    std::size_t cj = table.require_column("journal");
    std::size_t cf = table.require_column("impact_factor");
    for (const auto& row : table.rows) {
        if (cj >= row.size() || cf >= row.size())
            throw std::runtime_error("journal baseline: short row");
        std::string key = canonicalize_journal(row[cj]);
        double factor = parse_real(row[cf], "impact factor for " + key);
        if (factor < 0) throw std::runtime_error("journal baseline: impact factor must be >= 0 for " + key);
        out.journal_impact_factor[key] = factor;
    }
}

}  // namespace idr
