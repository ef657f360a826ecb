#pragma once
// Run manifests: one JSON file names every input of an analysis run (unit
// record files, thesaurus, ratings, baselines, cross-citation matrices,
// optional base-map coordinates) plus parameter overrides, so published runs
// are reproducible from a single file. Relative paths resolve against the
// manifest's directory.

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "idrkit/csv.hpp"
#include "idrkit/indicators.hpp"
#include "idrkit/matrix.hpp"
#include "idrkit/record_parser.hpp"
#include "idrkit/records.hpp"
#include "idrkit/tables.hpp"

namespace idr {

struct UnitSpec {
    std::string name;
    std::vector<std::filesystem::path> record_files;
    std::vector<std::filesystem::path> citing_files;
};

struct Parameters {
    double min_share = 0.0001;        // category share floor for variety/disparity
    double edge_threshold = 0.2;      // journal graph edges
    double link_min_share = 0.002;    // overlay link filter: share floor
    double link_min_ratio = 5.0;      // overlay link filter: observed/expected
    double display_threshold = 0.2;   // base-map background edges
    double journal_map_cutoff = 0.05; // sparse triplet floor in journal-map JSON
    long citing_min_refs = 11;        // citing-side normalization floor
    bool zero_diagonal = false;       // drop self-citations before cosine
    Neighborhood cc_neighborhood = Neighborhood::two;
    std::array<double, kRankCount> multipliers{0, 1, 3, 9, 9};
    std::set<DocType> allowed_types = default_allowed_types();
};

struct RunManifest {
    std::vector<UnitSpec> units;
    std::filesystem::path thesaurus;
    std::filesystem::path rating_scheme;
    std::filesystem::path category_baseline;
    std::filesystem::path journal_baseline;
    std::filesystem::path category_cross_citations;
    std::filesystem::path journal_cross_citations;
    std::filesystem::path base_map_coordinates;  // optional (empty = none)
    std::filesystem::path tag_map;               // optional
    std::filesystem::path output_dir;
    Parameters params;

    static RunManifest load(const std::filesystem::path& path);
    void apply_param(const std::string& key, const std::string& value);
};

enum class Severity { warning, error };

struct Diagnostic {
    Severity severity = Severity::error;
    std::string file;
    std::string message;
};

namespace detail {

inline std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

inline double param_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("parameter " + key + ": bad numeric value '" + value + "'");
    }
}

}  // namespace detail

inline void RunManifest::apply_param(const std::string& key, const std::string& value) {
    if (key == "min_share") params.min_share = detail::param_real(key, value);
    else if (key == "edge_threshold") params.edge_threshold = detail::param_real(key, value);
    else if (key == "link_min_share") params.link_min_share = detail::param_real(key, value);
    else if (key == "link_min_ratio") params.link_min_ratio = detail::param_real(key, value);
    else if (key == "display_threshold") params.display_threshold = detail::param_real(key, value);
    else if (key == "journal_map_cutoff") params.journal_map_cutoff = detail::param_real(key, value);
    else if (key == "citing_min_refs") params.citing_min_refs = static_cast<long>(detail::param_real(key, value));
    else if (key == "zero_diagonal") params.zero_diagonal = (value == "true" || value == "1");
    else if (key == "cc_neighborhood") {
        if (value == "one") params.cc_neighborhood = Neighborhood::one;
        else if (value == "two") params.cc_neighborhood = Neighborhood::two;
        else throw std::runtime_error("parameter cc_neighborhood: expected one|two");
    } else if (key.rfind("multiplier_", 0) == 0) {
        auto rank = parse_rank(key.substr(11));
        if (!rank) throw std::runtime_error("parameter " + key + ": unknown rank");
        params.multipliers[static_cast<std::size_t>(*rank)] = detail::param_real(key, value);
    } else {
        throw std::runtime_error("unknown parameter '" + key + "'");
    }
    if (params.min_share < 0.0 || params.min_share >= 1.0)
        throw std::runtime_error("parameter min_share must lie in [0,1)");
    if (params.link_min_share < 0.0 || params.link_min_share >= 1.0)
        throw std::runtime_error("parameter link_min_share must lie in [0,1)");
    if (params.citing_min_refs < 1) throw std::runtime_error("parameter citing_min_refs must be >= 1");
    for (std::size_t i = 0; i < kRankCount; ++i) {
        if (params.multipliers[i] < 0) throw std::runtime_error("multipliers must be >= 0");
        if (i > 0 && params.multipliers[i] < params.multipliers[i - 1])
            throw std::runtime_error("multipliers must be non-decreasing in rank order");
    }
}

inline RunManifest RunManifest::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error("manifest: invalid JSON: " + std::string(e.what()));
    }
    RunManifest m;
    std::filesystem::path base = path.parent_path();
    auto need = [&](const char* key) -> std::string {
        if (!j.contains(key) || !j[key].is_string())
            throw std::runtime_error(std::string("manifest: missing path '") + key + "'");
        return j[key].get<std::string>();
    };
    m.thesaurus = detail::resolve(base, need("thesaurus"));
    m.rating_scheme = detail::resolve(base, need("rating_scheme"));
    m.category_baseline = detail::resolve(base, need("category_baseline"));
    m.journal_baseline = detail::resolve(base, need("journal_baseline"));
    m.category_cross_citations = detail::resolve(base, need("category_cross_citations"));
    m.journal_cross_citations = detail::resolve(base, need("journal_cross_citations"));
    if (j.contains("base_map_coordinates"))
        m.base_map_coordinates = detail::resolve(base, j["base_map_coordinates"].get<std::string>());
    if (j.contains("tag_map")) m.tag_map = detail::resolve(base, j["tag_map"].get<std::string>());
    m.output_dir = detail::resolve(base, need("output_dir"));

    if (!j.contains("units") || !j["units"].is_array() || j["units"].empty())
        throw std::runtime_error("manifest: 'units' must be a non-empty array");
    for (const auto& u : j["units"]) {
        UnitSpec spec;
        if (!u.contains("name") || !u["name"].is_string() || u["name"].get<std::string>().empty())
            throw std::runtime_error("manifest: every unit needs a non-empty 'name'");
        spec.name = u["name"].get<std::string>();
        if (!u.contains("records") || !u["records"].is_array() || u["records"].empty())
            throw std::runtime_error("manifest: unit '" + spec.name + "' needs 'records' files");
        for (const auto& f : u["records"]) spec.record_files.push_back(detail::resolve(base, f.get<std::string>()));
        if (u.contains("citing"))
            for (const auto& f : u["citing"]) spec.citing_files.push_back(detail::resolve(base, f.get<std::string>()));
        m.units.push_back(std::move(spec));
    }
    if (j.contains("parameters")) {
        for (const auto& [key, value] : j["parameters"].items()) {
            if (value.is_boolean()) m.apply_param(key, value.get<bool>() ? "true" : "false");
            else if (value.is_string()) m.apply_param(key, value.get<std::string>());
            else m.apply_param(key, nlohmann::json(value).dump());
        }
    }
    return m;
}

// Static validation: paths exist, formats parse, labels are consistent
// across thesaurus, baselines and matrices. Errors make the run invalid;
// warnings flag likely coverage gaps.
inline std::vector<Diagnostic> validate_manifest(const RunManifest& m) {
    std::vector<Diagnostic> out;
    auto check_file = [&](const std::filesystem::path& p, const char* what, bool required) {
        if (p.empty()) {
            if (required) out.push_back({Severity::error, "", std::string(what) + " path missing"});
            return false;
        }
        if (!std::filesystem::exists(p)) {
            out.push_back({Severity::error, p.string(), std::string(what) + " file does not exist"});
            return false;
        }
        return true;
    };

    JournalThesaurus thesaurus;
    bool have_thesaurus = false;
    if (check_file(m.thesaurus, "thesaurus", true)) {
        try {
            thesaurus = JournalThesaurus::from_csv(read_csv_file(m.thesaurus.string()));
            have_thesaurus = true;
        } catch (const std::exception& e) {
            out.push_back({Severity::error, m.thesaurus.string(), e.what()});
        }
    }
    if (check_file(m.rating_scheme, "rating scheme", true)) {
        try {
            RatingScheme::from_csv(read_csv_file(m.rating_scheme.string()));
        } catch (const std::exception& e) {
            out.push_back({Severity::error, m.rating_scheme.string(), e.what()});
        }
    }
    CategoryBaseline baseline;
    if (check_file(m.category_baseline, "category baseline", true)) {
        try {
            load_category_baseline(read_csv_file(m.category_baseline.string()), baseline);
        } catch (const std::exception& e) {
            out.push_back({Severity::error, m.category_baseline.string(), e.what()});
        }
    }
    if (check_file(m.journal_baseline, "journal baseline", true)) {
        try {
            load_journal_baseline(read_csv_file(m.journal_baseline.string()), baseline);
        } catch (const std::exception& e) {
            out.push_back({Severity::error, m.journal_baseline.string(), e.what()});
        }
    }
    std::optional<CrossCitationMatrix> categories;
    if (check_file(m.category_cross_citations, "category cross-citation matrix", true)) {
        try {
            categories = read_matrix_csv<CrossCitationTag>(read_csv_file(m.category_cross_citations.string()));
        } catch (const std::exception& e) {
            out.push_back({Severity::error, m.category_cross_citations.string(), e.what()});
        }
    }
    if (check_file(m.journal_cross_citations, "journal cross-citation matrix", true)) {
        try {
            read_matrix_csv<CrossCitationTag>(read_csv_file(m.journal_cross_citations.string()));
        } catch (const std::exception& e) {
            out.push_back({Severity::error, m.journal_cross_citations.string(), e.what()});
        }
    }
    if (!m.base_map_coordinates.empty() && check_file(m.base_map_coordinates, "base-map coordinates", false)) {
        try {
            CsvTable t = read_csv_file(m.base_map_coordinates.string());
            t.require_column("label");
            t.require_column("x");
            t.require_column("y");
        } catch (const std::exception& e) {
            out.push_back({Severity::error, m.base_map_coordinates.string(), e.what()});
        }
    }
    if (!m.tag_map.empty() && check_file(m.tag_map, "tag map", false)) {
        try {
            TagMap::from_file(m.tag_map.string());
        } catch (const std::exception& e) {
            out.push_back({Severity::error, m.tag_map.string(), e.what()});
        }
    }
    for (const auto& unit : m.units) {
        for (const auto& f : unit.record_files) check_file(f, "record", true);
        for (const auto& f : unit.citing_files) check_file(f, "citing", true);
    }

    // Cross-source label consistency.
    if (have_thesaurus && categories) {
        std::set<std::string> thesaurus_cats = thesaurus.all_categories();
        for (const auto& label : categories->labels()) {
            if (!thesaurus_cats.count(label))
                out.push_back({Severity::warning, m.category_cross_citations.string(),
                               "matrix label '" + label + "' never appears in the thesaurus"});
        }
        for (const auto& cat : thesaurus_cats) {
            if (!categories->index_of(cat))
                out.push_back({Severity::warning, m.thesaurus.string(),
                               "thesaurus category '" + cat + "' is absent from the matrix"});
        }
        for (const auto& [cat, _] : baseline.category_mean_citations) {
            if (!thesaurus_cats.count(cat))
                out.push_back({Severity::warning, m.category_baseline.string(),
                               "baseline category '" + cat + "' never appears in the thesaurus"});
        }
    }
    return out;
}

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::error) return true;
    return false;
}

}  // namespace idr
