#pragma once
// Manifest-driven runs. Loads the shared inputs once, processes units
// concurrently (all computations are pure over shared read-only data),
// isolates per-unit failures, and writes every output atomically
// (temp file + rename) with the run parameters echoed into each header.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "idrkit/distribution.hpp"
#include "idrkit/indicators.hpp"
#include "idrkit/log.hpp"
#include "idrkit/manifest.hpp"
#include "idrkit/matrix.hpp"
#include "idrkit/overlay.hpp"
#include "idrkit/performance.hpp"
#include "idrkit/record_parser.hpp"
#include "idrkit/simspace.hpp"
#include "idrkit/tables.hpp"

namespace idr {

// Shared read-only inputs of one run.
struct Context {
    JournalThesaurus thesaurus;
    RatingScheme scheme;
    CategoryBaseline baseline;
    CrossCitationMatrix category_citations;
    SimilarityMatrix category_similarity;
    DistanceMatrix category_distance;
    CrossCitationMatrix journal_citations;
    SimilarityMatrix journal_similarity;
    JournalGraph journal_graph;
    std::map<std::string, std::pair<double, double>> coordinates;
    TagMap tags;
    Parameters params;
};

inline Context load_context(const RunManifest& m) {
    Context ctx;
    ctx.params = m.params;
    ctx.thesaurus = JournalThesaurus::from_csv(read_csv_file(m.thesaurus.string()));
    ctx.scheme = RatingScheme::from_csv(read_csv_file(m.rating_scheme.string()));
    ctx.scheme.set_multipliers(m.params.multipliers);
    load_category_baseline(read_csv_file(m.category_baseline.string()), ctx.baseline);
    load_journal_baseline(read_csv_file(m.journal_baseline.string()), ctx.baseline);
    ctx.category_citations =
        read_matrix_csv<CrossCitationTag>(read_csv_file(m.category_cross_citations.string()));
    ctx.journal_citations =
        read_matrix_csv<CrossCitationTag>(read_csv_file(m.journal_cross_citations.string()));

    // Base similarity spaces are built in the cited dimension.
    CosineResult categories =
        cosine_similarity(ctx.category_citations, CitationDimension::cited, m.params.zero_diagonal);
    for (const auto& label : categories.zero_labels)
        log_warn("category '" + label + "' has an all-zero citation vector");
    ctx.category_similarity = std::move(categories.matrix);
    ctx.category_distance = to_distance(ctx.category_similarity);

    CosineResult journals =
        cosine_similarity(ctx.journal_citations, CitationDimension::cited, m.params.zero_diagonal);
    for (const auto& label : journals.zero_labels)
        log_warn("journal '" + label + "' has an all-zero citation vector");
    ctx.journal_similarity = std::move(journals.matrix);
    ctx.journal_graph = build_journal_graph(ctx.journal_similarity, m.params.edge_threshold);

    if (!m.base_map_coordinates.empty()) {
        CsvTable t = read_csv_file(m.base_map_coordinates.string());
        std::size_t cl = t.require_column("label");
        std::size_t cx = t.require_column("x");
        std::size_t cy = t.require_column("y");
        for (const auto& row : t.rows) {
            if (cl >= row.size() || cx >= row.size() || cy >= row.size())
                throw std::runtime_error("coordinates: short row");
            ctx.coordinates[row[cl]] = {parse_real(row[cx], "coordinate x of " + row[cl]),
                                        parse_real(row[cy], "coordinate y of " + row[cl])};
        }
    }
    if (!m.tag_map.empty()) ctx.tags = TagMap::from_file(m.tag_map.string());
    return ctx;
}

// Records and citing documents of one unit, with the same-unit citing
// exclusion already applied.
struct UnitData {
    std::string name;
    std::vector<BibRecord> records;
    std::vector<CitingRecord> citing;          // after exclude_same_unit
    std::size_t citing_before_exclusion = 0;
    std::size_t parse_diagnostics = 0;
    std::size_t dropped_by_type = 0;
};

inline UnitData load_unit(const UnitSpec& spec, const Context& ctx) {
    UnitData unit;
    unit.name = spec.name;
    for (const auto& file : spec.record_files) {
        std::string text = read_text_file(file.string());
        ParseResult parsed = file.extension() == ".csv"
                                 ? parse_records_csv(text, ctx.params.allowed_types)
                                 : parse_records(text, ctx.params.allowed_types, ctx.tags);
        for (const auto& d : parsed.diagnostics)
            log_warn(file.filename().string() + ": record " + std::to_string(d.record_number) + " (" +
                     d.record_id + "): " + d.message);
        unit.parse_diagnostics += parsed.diagnostics.size();
        unit.dropped_by_type += parsed.dropped_by_type;
        for (auto& r : parsed.records) unit.records.push_back(std::move(r));
    }
    std::vector<CitingRecord> citing;
    for (const auto& file : spec.citing_files) {
        CitingParseResult parsed = parse_citing_csv(read_text_file(file.string()));
        for (const auto& d : parsed.diagnostics)
            log_warn(file.filename().string() + ": row " + std::to_string(d.record_number) + ": " + d.message);
        for (auto& c : parsed.records) citing.push_back(std::move(c));
    }
    unit.citing_before_exclusion = citing.size();
    unit.citing = exclude_same_unit(citing, spec.name);
    return unit;
}

namespace detail {

inline std::string real_str(double v) { return nlohmann::json(v).dump(); }

inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

inline nlohmann::json params_to_json(const Parameters& p) {
    nlohmann::json j;
    j["min_share"] = p.min_share;
    j["edge_threshold"] = p.edge_threshold;
    j["link_min_share"] = p.link_min_share;
    j["link_min_ratio"] = p.link_min_ratio;
    j["display_threshold"] = p.display_threshold;
    j["journal_map_cutoff"] = p.journal_map_cutoff;
    j["citing_min_refs"] = p.citing_min_refs;
    j["zero_diagonal"] = p.zero_diagonal;
    j["cc_neighborhood"] = p.cc_neighborhood == Neighborhood::two ? "two" : "one";
    nlohmann::json mult;
    for (std::size_t i = 0; i < kRankCount; ++i)
        mult[rank_label(static_cast<Rank>(i))] = p.multipliers[i];
    j["multipliers"] = mult;
    return j;
}

inline std::string params_comment(const Parameters& p) {
    std::string out;
    out += "# min_share=" + real_str(p.min_share) + "\n";
    out += "# edge_threshold=" + real_str(p.edge_threshold) + "\n";
    out += "# link_min_share=" + real_str(p.link_min_share) + "\n";
    out += "# link_min_ratio=" + real_str(p.link_min_ratio) + "\n";
    out += "# display_threshold=" + real_str(p.display_threshold) + "\n";
    out += "# journal_map_cutoff=" + real_str(p.journal_map_cutoff) + "\n";
    out += "# citing_min_refs=" + std::to_string(p.citing_min_refs) + "\n";
    out += "# zero_diagonal=" + std::string(p.zero_diagonal ? "true" : "false") + "\n";
    out += "# cc_neighborhood=" + std::string(p.cc_neighborhood == Neighborhood::two ? "two" : "one") + "\n";
    std::string mult;
    for (std::size_t i = 0; i < kRankCount; ++i) {
        if (i) mult += " ";
        mult += std::string(rank_label(static_cast<Rank>(i))) + ":" +
                real_str(p.multipliers[i]);
    }
    out += "# multipliers=" + mult + "\n";
    return out;
}

inline nlohmann::json mean_se_json(const MeanSE& m) {
    return {{"mean", m.mean}, {"std_error", m.std_error}, {"n", m.n}};
}

inline const std::vector<Facet>& report_facets() {
    static const std::vector<Facet> facets{Facet::publications, Facet::references, Facet::citations};
    return facets;
}

}  // namespace detail

struct RunOutcome {
    std::vector<std::string> failed_units;  // unit names with at least one error
    std::vector<std::string> messages;      // human-readable failure summaries
    std::string stdout_text;                // e.g. the funding ratio matrix

    bool clean() const { return failed_units.empty(); }
};

namespace detail {

struct UnitIndicators {
    nlohmann::json report;
    std::vector<std::string> csv_rows;
    bool failed = false;
};

inline CategoryDistribution facet_distribution(const UnitData& unit, const Context& ctx, Facet facet) {
    if (facet == Facet::citations) return build_distribution(unit.citing, ctx.thesaurus, ctx.params.min_share);
    return build_distribution(unit.records, ctx.thesaurus, facet, ctx.params.min_share);
}

inline CategoryDistribution facet_journal_distribution(const UnitData& unit, Facet facet) {
    if (facet == Facet::citations) return build_journal_distribution(journals_of(unit.citing));
    return build_journal_distribution(journals_of(unit.records, facet));
}

inline UnitIndicators unit_indicators(const UnitData& unit, const Context& ctx,
                                      const std::optional<Facet>& only_facet) {
    UnitIndicators out;
    nlohmann::json& j = out.report;
    j["unit"] = unit.name;
    j["parameters"] = params_to_json(ctx.params);
    j["facets"] = nlohmann::json::object();
    j["intermediation"] = nlohmann::json::object();

    auto row = [&](const std::string& facet, const std::string& indicator, double value) {
        out.csv_rows.push_back(csv_row({unit.name, facet, indicator, real_str(value)}));
    };

    for (Facet facet : detail::report_facets()) {
        if (only_facet && facet != *only_facet) continue;
        const std::string fname = facet_name(facet);
        try {
            CategoryDistribution dist = facet_distribution(unit, ctx, facet);
            DiversityReport div = diversity_report(dist, ctx.category_distance, ctx.params.min_share);
            nlohmann::json& block = j["facets"][fname];
            block["items_total"] = dist.mapped_items + dist.unmapped_items;
            block["items_mapped"] = dist.mapped_items;
            block["coverage"] = dist.coverage();
            block["variety"] = div.variety;
            block["balance"] = div.balance;
            block["disparity"] = div.disparity;
            block["shannon_entropy"] = div.shannon_entropy;
            block["rao_stirling"] = div.rao_stirling;
            row(fname, "coverage", dist.coverage());
            row(fname, "variety", div.variety);
            row(fname, "balance", div.balance);
            row(fname, "disparity", div.disparity);
            row(fname, "shannon_entropy", div.shannon_entropy);
            row(fname, "rao_stirling", div.rao_stirling);
        } catch (const std::exception& e) {
            j["facets"][fname]["error"] = e.what();
            out.failed = true;
        }
        try {
            CategoryDistribution jdist = facet_journal_distribution(unit, facet);
            std::vector<std::string> missing;
            double cc = weighted_clustering(jdist, ctx.journal_graph, ctx.params.cc_neighborhood, &missing);
            double avg = average_similarity(jdist, ctx.journal_similarity);
            nlohmann::json& block = j["intermediation"][fname];
            block["weighted_clustering"] = cc;
            block["average_similarity"] = avg;
            block["journals_off_graph"] = missing.size();
            row(fname, "weighted_clustering", cc);
            row(fname, "average_similarity", avg);
        } catch (const std::exception& e) {
            j["intermediation"][fname]["error"] = e.what();
            out.failed = true;
        }
    }

    if (!only_facet || *only_facet == Facet::references) {
        try {
            CrossCitationMatrix within = build_cross_citations(unit.records, ctx.thesaurus);
            CategoryDistribution refs =
                build_distribution(unit.records, ctx.thesaurus, Facet::references, ctx.params.min_share);
            CoherenceReport rep = coherence(within, refs, ctx.category_distance);
            j["coherence"]["observed_mean_distance"] = rep.observed_mean_distance;
            j["coherence"]["expected_mean_distance"] = rep.expected_mean_distance;
            j["coherence"]["coherence"] = rep.coherence;
            row("cross_citations", "observed_mean_distance", rep.observed_mean_distance);
            row("cross_citations", "expected_mean_distance", rep.expected_mean_distance);
            row("cross_citations", "coherence", rep.coherence);
        } catch (const std::exception& e) {
            j["coherence"]["error"] = e.what();
            out.failed = true;
        }
    }
    return out;
}

}  // namespace detail

inline RunOutcome run_indicators(const RunManifest& m, const Context& ctx,
                                 const std::optional<std::string>& unit_filter = std::nullopt,
                                 const std::optional<Facet>& facet_filter = std::nullopt) {
    RunOutcome outcome;
    std::vector<const UnitSpec*> specs;
    for (const auto& u : m.units)
        if (!unit_filter || u.name == *unit_filter) specs.push_back(&u);
    if (specs.empty()) throw std::runtime_error("no unit matches the requested name");

    struct Task {
        std::string name;
        std::future<detail::UnitIndicators> future;
    };
    std::vector<Task> tasks;
    for (const UnitSpec* spec : specs) {
        tasks.push_back({spec->name, std::async(std::launch::async, [spec, &ctx, &facet_filter] {
                             UnitData unit = load_unit(*spec, ctx);
                             return detail::unit_indicators(unit, ctx, facet_filter);
                         })});
    }

    std::string csv = detail::params_comment(ctx.params);
    csv += "unit,facet,indicator,value\n";
    for (auto& task : tasks) {
        try {
            detail::UnitIndicators result = task.future.get();
            detail::atomic_write(m.output_dir / "indicators" / (task.name + ".json"),
                                 result.report.dump(2) + "\n");
            for (const auto& r : result.csv_rows) csv += r;
            if (result.failed) {
                outcome.failed_units.push_back(task.name);
                outcome.messages.push_back(task.name + ": some indicator blocks failed (see unit report)");
            }
        } catch (const std::exception& e) {
            outcome.failed_units.push_back(task.name);
            outcome.messages.push_back(task.name + ": " + e.what());
        }
    }
    detail::atomic_write(m.output_dir / "indicators.csv", csv);
    return outcome;
}

namespace detail {

struct UnitPerformance {
    nlohmann::json report;
    std::vector<std::string> csv_rows;
    bool failed = false;
};

inline UnitPerformance unit_performance(const UnitData& unit, const Context& ctx) {
    UnitPerformance out;
    nlohmann::json& j = out.report;
    j["unit"] = unit.name;
    j["parameters"] = params_to_json(ctx.params);
    j["counts"] = {{"papers", unit.records.size()},
                   {"citing_records", unit.citing_before_exclusion},
                   {"citing_after_exclusion", unit.citing.size()},
                   {"parse_diagnostics", unit.parse_diagnostics},
                   {"dropped_by_type", unit.dropped_by_type}};
    if (!unit.records.empty()) {
        int lo = unit.records.front().year, hi = lo;
        for (const auto& r : unit.records) {
            lo = std::min(lo, r.year);
            hi = std::max(hi, r.year);
        }
        j["observation_span"] = {{"year_min", lo}, {"year_max", hi}};
    }

    auto row = [&](const std::string& indicator, double mean, double se, std::size_t n, std::size_t excluded) {
        out.csv_rows.push_back(csv_row({unit.name, indicator, real_str(mean), real_str(se),
                                        std::to_string(n), std::to_string(excluded)}));
    };
    auto fail = [&](const char* key, const std::exception& e) {
        j[key]["error"] = e.what();
        out.failed = true;
    };

    try {
        RatingSummary rating = mean_rating(unit.records, ctx.scheme);
        j["rating"] = mean_se_json(rating.rating);
        j["rating"]["percent_rated"] = rating.percent_rated;
        row("mean_rating", rating.rating.mean, rating.rating.std_error, rating.rating.n, 0);
        row("percent_rated", rating.percent_rated, 0.0, rating.total, 0);
    } catch (const std::exception& e) {
        fail("rating", e);
    }
    try {
        MeanSE cites = citations_per_paper(unit.records);
        j["citations_per_paper"] = mean_se_json(cites);
        row("citations_per_paper", cites.mean, cites.std_error, cites.n, 0);
    } catch (const std::exception& e) {
        fail("citations_per_paper", e);
    }
    try {
        NormalizedSummary s = journal_normalized(unit.records, ctx.baseline);
        j["journal_normalized"] = mean_se_json(s.stats);
        j["journal_normalized"]["excluded"] = s.excluded;
        row("journal_normalized", s.stats.mean, s.stats.std_error, s.stats.n, s.excluded);
    } catch (const std::exception& e) {
        fail("journal_normalized", e);
    }
    try {
        NormalizedSummary s = field_normalized(unit.records, ctx.baseline, ctx.thesaurus);
        j["field_normalized"] = mean_se_json(s.stats);
        j["field_normalized"]["excluded"] = s.excluded;
        row("field_normalized", s.stats.mean, s.stats.std_error, s.stats.n, s.excluded);
    } catch (const std::exception& e) {
        fail("field_normalized", e);
    }
    try {
        CitingSideSummary s = citing_side_normalized(unit.records, unit.citing, ctx.params.citing_min_refs);
        j["citing_side_normalized"] = {{"mean", s.mean},
                                       {"papers", s.papers},
                                       {"qualifying_citers", s.qualifying_citers}};
        row("citing_side_normalized", s.mean, 0.0, s.papers, 0);
    } catch (const std::exception& e) {
        fail("citing_side_normalized", e);
    }
    try {
        ImpactFactorSummary s = impact_factor_means(unit.records, ctx.baseline, ctx.thesaurus, unit.citing);
        j["journal_if"] = mean_se_json(s.journal_if.stats);
        j["journal_if"]["excluded"] = s.journal_if.excluded;
        j["field_normalized_if"] = mean_se_json(s.field_normalized_if.stats);
        j["field_normalized_if"]["excluded"] = s.field_normalized_if.excluded;
        j["citing_journal_if"] = mean_se_json(s.citing_journal_if.stats);
        j["citing_journal_if"]["excluded"] = s.citing_journal_if.excluded;
        row("journal_if", s.journal_if.stats.mean, s.journal_if.stats.std_error, s.journal_if.stats.n,
            s.journal_if.excluded);
        row("field_normalized_if", s.field_normalized_if.stats.mean, s.field_normalized_if.stats.std_error,
            s.field_normalized_if.stats.n, s.field_normalized_if.excluded);
        row("citing_journal_if", s.citing_journal_if.stats.mean, s.citing_journal_if.stats.std_error,
            s.citing_journal_if.stats.n, s.citing_journal_if.excluded);
    } catch (const std::exception& e) {
        fail("impact_factor", e);
    }
    return out;
}

}  // namespace detail

inline RunOutcome run_performance(const RunManifest& m, const Context& ctx,
                                  const std::optional<std::string>& unit_filter = std::nullopt) {
    RunOutcome outcome;
    std::vector<const UnitSpec*> specs;
    for (const auto& u : m.units)
        if (!unit_filter || u.name == *unit_filter) specs.push_back(&u);
    if (specs.empty()) throw std::runtime_error("no unit matches the requested name");

    struct Task {
        std::string name;
        std::future<detail::UnitPerformance> future;
    };
    std::vector<Task> tasks;
    for (const UnitSpec* spec : specs) {
        tasks.push_back({spec->name, std::async(std::launch::async, [spec, &ctx] {
                             UnitData unit = load_unit(*spec, ctx);
                             return detail::unit_performance(unit, ctx);
                         })});
    }

    std::string csv = detail::params_comment(ctx.params);
    csv += "unit,indicator,mean,std_error,n,excluded_count\n";
    for (auto& task : tasks) {
        try {
            detail::UnitPerformance result = task.future.get();
            detail::atomic_write(m.output_dir / "performance" / (task.name + ".json"),
                                 result.report.dump(2) + "\n");
            for (const auto& r : result.csv_rows) csv += r;
            if (result.failed) {
                outcome.failed_units.push_back(task.name);
                outcome.messages.push_back(task.name + ": some performance rows failed (see unit report)");
            }
        } catch (const std::exception& e) {
            outcome.failed_units.push_back(task.name);
            outcome.messages.push_back(task.name + ": " + e.what());
        }
    }
    detail::atomic_write(m.output_dir / "performance.csv", csv);
    return outcome;
}

namespace detail {

struct UnitOverlays {
    // path suffix -> file content, prepared by the task and written in order
    std::vector<std::pair<std::string, std::string>> files;
    std::vector<std::string> failures;  // per-facet error messages
};

inline UnitOverlays unit_overlays(const UnitData& unit, const Context& ctx,
                                  const std::optional<Facet>& only_facet) {
    UnitOverlays out;
    CrossCitationMatrix within = build_cross_citations(unit.records, ctx.thesaurus)
                                     .aligned_to(ctx.category_citations.labels());
    std::vector<OverlayLink> links =
        filter_links(within, ctx.category_citations, ctx.params.link_min_share, ctx.params.link_min_ratio);
    BaseMap base = build_base_map(ctx.category_similarity, ctx.params.display_threshold, ctx.coordinates);

    for (Facet facet : report_facets()) {
        if (only_facet && facet != *only_facet) continue;
        const std::string fname = facet_name(facet);
        try {
            CategoryDistribution dist = facet_distribution(unit, ctx, facet);
            OverlayMap map = compose_overlay(base, dist, links);

            nlohmann::json j = overlay_to_json(map);
            j["unit"] = unit.name;
            j["facet"] = fname;
            j["parameters"] = params_to_json(ctx.params);
            out.files.push_back({"overlay/" + unit.name + "_" + fname + ".json", j.dump(2) + "\n"});
            out.files.push_back({"overlay/" + unit.name + "_" + fname + ".net", export_pajek(map)});

            nlohmann::json sidecar;
            sidecar["unit"] = unit.name;
            sidecar["facet"] = fname;
            sidecar["unplaced"] = map.unplaced;
            sidecar["dropped_links"] = map.dropped_links;
            out.files.push_back(
                {"overlay/" + unit.name + "_" + fname + "_unplaced.json", sidecar.dump(2) + "\n"});

            CategoryDistribution jdist = facet_journal_distribution(unit, facet);
            nlohmann::json jm =
                export_journal_map(jdist, ctx.journal_similarity, ctx.params.journal_map_cutoff);
            jm["unit"] = unit.name;
            jm["facet"] = fname;
            jm["parameters"] = params_to_json(ctx.params);
            out.files.push_back({"journal_map/" + unit.name + "_" + fname + ".json", jm.dump(2) + "\n"});
        } catch (const std::exception& e) {
            out.failures.push_back(fname + ": " + e.what());
        }
    }
    return out;
}

}  // namespace detail

inline RunOutcome run_overlay(const RunManifest& m, const Context& ctx,
                              const std::optional<std::string>& unit_filter = std::nullopt,
                              const std::optional<Facet>& facet_filter = std::nullopt) {
    RunOutcome outcome;
    std::vector<const UnitSpec*> specs;
    for (const auto& u : m.units)
        if (!unit_filter || u.name == *unit_filter) specs.push_back(&u);
    if (specs.empty()) throw std::runtime_error("no unit matches the requested name");

    struct Task {
        std::string name;
        std::future<detail::UnitOverlays> future;
    };
    std::vector<Task> tasks;
    for (const UnitSpec* spec : specs) {
        tasks.push_back({spec->name, std::async(std::launch::async, [spec, &ctx, &facet_filter] {
                             UnitData unit = load_unit(*spec, ctx);
                             return detail::unit_overlays(unit, ctx, facet_filter);
                         })});
    }
    for (auto& task : tasks) {
        try {
            detail::UnitOverlays result = task.future.get();
            for (const auto& [suffix, content] : result.files)
                detail::atomic_write(m.output_dir / suffix, content);
            if (!result.failures.empty()) {
                outcome.failed_units.push_back(task.name);
                for (const auto& f : result.failures)
                    outcome.messages.push_back(task.name + ": " + f);
            }
        } catch (const std::exception& e) {
            outcome.failed_units.push_back(task.name);
            outcome.messages.push_back(task.name + ": " + e.what());
        }
    }
    return outcome;
}

inline RunOutcome run_fund(const RunManifest& m, const Context& ctx) {
    RunOutcome outcome;
    std::map<std::string, RankHistogram> histograms;
    for (const auto& spec : m.units) {
        UnitData unit = load_unit(spec, ctx);
        RankHistogram hist;
        for (const auto& rec : unit.records) {
            auto rank = ctx.scheme.lookup(rec.journal);
            if (rank) ++hist[*rank];
        }
        histograms[spec.name] = hist;
    }
    FundingModel model = FundingModel::from_scheme(ctx.scheme);
    std::map<std::string, FundingAllocation> shares = allocate_funding(histograms, model);

    std::string csv = detail::params_comment(ctx.params);
    csv += "unit,score,share,per_capita_score\n";
    for (const auto& [unit, a] : shares)
        csv += csv_row({unit, detail::real_str(a.score), detail::real_str(a.share),
                        detail::real_str(a.per_capita)});
    detail::atomic_write(m.output_dir / "funding.csv", csv);

    // share ratio matrix, row unit / column unit
    std::string table = "share ratios (row / column)\n";
    table += "unit";
    for (const auto& [unit, _] : shares) table += "," + unit;
    table += "\n";
    for (const auto& [row_unit, row_alloc] : shares) {
        table += row_unit;
        for (const auto& [col_unit, col_alloc] : shares) {
            table += ",";
            if (col_alloc.share > 0.0) table += detail::real_str(row_alloc.share / col_alloc.share);
            else table += "inf";
        }
        table += "\n";
    }
    outcome.stdout_text = table;
    return outcome;
}

inline RunOutcome run_all(const RunManifest& m, const Context& ctx) {
    RunOutcome outcome;
    for (RunOutcome step : {run_indicators(m, ctx), run_performance(m, ctx), run_overlay(m, ctx),
                            run_fund(m, ctx)}) {
        for (auto& u : step.failed_units)
            if (std::find(outcome.failed_units.begin(), outcome.failed_units.end(), u) ==
                outcome.failed_units.end())
                outcome.failed_units.push_back(u);
        for (auto& msg : step.messages) outcome.messages.push_back(std::move(msg));
        outcome.stdout_text += step.stdout_text;
    }
    return outcome;
}

}  // namespace idr
