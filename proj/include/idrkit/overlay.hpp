#pragma once
// Overlay-map exports: a base map of categories (or journals) with a unit's
// activity drawn on top as sized nodes plus the cross-citation links that
// clear the share-and-ratio filter. Emits a Pajek .net subset and JSON;
// layout coordinates are data (an optional input file), never computed here.

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "idrkit/distribution.hpp"
#include "idrkit/matrix.hpp"

namespace idr {

struct BaseMap {
    std::vector<std::string> labels;
    std::map<std::string, std::pair<double, double>> coords;  // optional, per label
    // undirected edges with similarity >= the display threshold, first < second
    std::vector<std::tuple<std::string, std::string, double>> edges;

    bool contains(const std::string& label) const {
        return std::find(labels.begin(), labels.end(), label) != labels.end();
    }
};

inline BaseMap build_base_map(const SimilarityMatrix& s, double display_threshold = 0.2,
                              std::map<std::string, std::pair<double, double>> coords = {}) {
    BaseMap base;
    base.labels = s.labels();
    std::sort(base.labels.begin(), base.labels.end());
    for (const auto& l : base.labels) {
        auto it = coords.find(l);
        if (it != coords.end()) base.coords[l] = it->second;
    }
    for (std::size_t a = 0; a < base.labels.size(); ++a) {
        std::size_t i = *s.index_of(base.labels[a]);
        for (std::size_t b = a + 1; b < base.labels.size(); ++b) {
            std::size_t j = *s.index_of(base.labels[b]);
            if (s.at(i, j) >= display_threshold)
                base.edges.push_back({base.labels[a], base.labels[b], s.at(i, j)});
        }
    }
    return base;
}

struct OverlayLink {
    std::string from;
    std::string to;
    double observed = 0.0;   // within-set share p_ij
    double expected = 0.0;   // global share g_ij
    double ratio = 0.0;      // observed / expected; unset when infinite
    bool ratio_infinite = false;
};

// Directed link (i,j), i != j, kept iff its within-set share reaches
// min_share and exceeds the global share by more than min_ratio. A link
// with global share zero but positive observed share is kept and flagged
// as an infinite ratio. Shares are normalized by the full matrix totals.
inline std::vector<OverlayLink> filter_links(const CrossCitationMatrix& within,
                                             const CrossCitationMatrix& global,
                                             double min_share = 0.002, double min_ratio = 5.0) {
    if (within.labels() != global.labels())
        throw std::invalid_argument("filter_links: matrices must share the same labels");
    double within_total = within.total();
    double global_total = global.total();
    if (within_total <= 0.0) return {};

    std::vector<OverlayLink> links;
    for (std::size_t i = 0; i < within.size(); ++i) {
        for (std::size_t j = 0; j < within.size(); ++j) {
            if (i == j) continue;
            double observed = within.at(i, j) / within_total;
            if (observed < min_share) continue;
            double expected = global_total > 0.0 ? global.at(i, j) / global_total : 0.0;
            OverlayLink link{within.label(i), within.label(j), observed, expected, 0.0, false};
            if (expected <= 0.0) {
                link.ratio_infinite = true;
            } else {
                link.ratio = observed / expected;
                if (!(link.ratio > min_ratio)) continue;
            }
            links.push_back(std::move(link));
        }
    }
    return links;
}

struct OverlayMap {
    BaseMap base;
    std::map<std::string, double> node_sizes;  // label -> p_i, only placed labels
    std::vector<OverlayLink> links;
    std::vector<std::string> unplaced;         // distribution labels missing from the base
    std::size_t dropped_links = 0;             // links with an endpoint off the base
};

inline OverlayMap compose_overlay(const BaseMap& base, const CategoryDistribution& dist,
                                  const std::vector<OverlayLink>& links) {
    OverlayMap map;
    map.base = base;
    auto p = dist.proportions();
    for (const auto& [label, share] : p) {
        if (base.contains(label)) map.node_sizes[label] = share;
        else map.unplaced.push_back(label);
    }
    if (map.node_sizes.empty())
        throw std::runtime_error("compose_overlay: no distribution label appears on the base map");
    for (const auto& link : links) {
        if (base.contains(link.from) && base.contains(link.to)) map.links.push_back(link);
        else ++map.dropped_links;
    }
    // endpoints the unit never touches in this facet stay visible at size 0
    for (const auto& link : map.links) {
        map.node_sizes.try_emplace(link.from, 0.0);
        map.node_sizes.try_emplace(link.to, 0.0);
    }
    return map;
}

namespace detail {

inline std::string fixed6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace detail

// Pajek .net subset: `*Vertices N`, one `id "label" x y size` line per node
// in lexicographic label order, then `*Arcs` with `src dst weight` rows
// (weight = observed share). LF endings, 6-decimal reals, missing
// coordinates written as 0.
inline std::string export_pajek(const OverlayMap& map) {
    std::vector<std::string> order;
    order.reserve(map.node_sizes.size());
    for (const auto& [label, _] : map.node_sizes) order.push_back(label);
    std::sort(order.begin(), order.end());
    std::map<std::string, std::size_t> ids;
    for (std::size_t i = 0; i < order.size(); ++i) ids[order[i]] = i + 1;

    std::string out = "*Vertices " + std::to_string(order.size()) + "\n";
    for (const auto& label : order) {
        double x = 0.0, y = 0.0;
        auto it = map.base.coords.find(label);
        if (it != map.base.coords.end()) {
            x = it->second.first;
            y = it->second.second;
        }
        std::string quoted = label;
        // Pajek labels are double-quoted; embedded quotes are not supported
        // by the subset, so they are replaced.
        for (char& c : quoted)
            if (c == '"') c = '\'';
        out += std::to_string(ids[label]) + " \"" + quoted + "\" " + detail::fixed6(x) + " " +
               detail::fixed6(y) + " " + detail::fixed6(map.node_sizes.at(label)) + "\n";
    }
    out += "*Arcs\n";
    std::vector<OverlayLink> arcs = map.links;
    std::sort(arcs.begin(), arcs.end(), [](const OverlayLink& a, const OverlayLink& b) {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    for (const auto& link : arcs) {
        auto src = ids.find(link.from);
        auto dst = ids.find(link.to);
        if (src == ids.end() || dst == ids.end()) continue;  // endpoint carries no node size
        out += std::to_string(src->second) + " " + std::to_string(dst->second) + " " +
               detail::fixed6(link.observed) + "\n";
    }
    return out;
}

struct PajekVertex {
    std::size_t id = 0;
    std::string label;
    double x = 0.0, y = 0.0;
    double size = 0.0;
};

struct PajekNet {
    std::vector<PajekVertex> vertices;
    std::vector<std::tuple<std::size_t, std::size_t, double>> arcs;
};

// Parses the subset emitted by export_pajek.
inline PajekNet parse_pajek(std::string_view text) {
    PajekNet net;
    enum class Section { none, vertices, arcs } section = Section::none;
    std::size_t declared = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string line = trim(text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (line.empty()) continue;
        if (line.rfind("*Vertices", 0) == 0) {
            declared = static_cast<std::size_t>(std::stoul(trim(line.substr(9))));
            section = Section::vertices;
            continue;
        }
        if (line.rfind("*Arcs", 0) == 0) {
            section = Section::arcs;
            continue;
        }
        if (section == Section::vertices) {
            std::size_t q1 = line.find('"');
            std::size_t q2 = line.rfind('"');
            if (q1 == std::string::npos || q2 <= q1)
                throw std::runtime_error("pajek: malformed vertex line '" + line + "'");
            PajekVertex v;
            v.id = static_cast<std::size_t>(std::stoul(trim(line.substr(0, q1))));
            v.label = line.substr(q1 + 1, q2 - q1 - 1);
            std::string rest = trim(line.substr(q2 + 1));
            if (std::sscanf(rest.c_str(), "%lf %lf %lf", &v.x, &v.y, &v.size) != 3)
                throw std::runtime_error("pajek: vertex line lacks x y size: '" + line + "'");
            net.vertices.push_back(std::move(v));
        } else if (section == Section::arcs) {
            unsigned long src = 0, dst = 0;
            double weight = 0.0;
            if (std::sscanf(line.c_str(), "%lu %lu %lf", &src, &dst, &weight) != 3)
                throw std::runtime_error("pajek: malformed arc line '" + line + "'");
            net.arcs.push_back({src, dst, weight});
        } else {
            throw std::runtime_error("pajek: content before *Vertices");
        }
    }
    if (net.vertices.size() != declared)
        throw std::runtime_error("pajek: vertex count mismatch");
    return net;
}

inline nlohmann::json overlay_to_json(const OverlayMap& map) {
    nlohmann::json j;
    j["base"]["labels"] = map.base.labels;
    if (!map.base.coords.empty()) {
        nlohmann::json coords = nlohmann::json::object();
        for (const auto& [label, xy] : map.base.coords) coords[label] = {xy.first, xy.second};
        j["base"]["coords"] = coords;
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b, s] : map.base.edges) edges.push_back({a, b, s});
    j["base"]["edges"] = edges;
    nlohmann::json nodes = nlohmann::json::object();
    for (const auto& [label, size] : map.node_sizes) nodes[label] = size;
    j["nodes"] = nodes;
    nlohmann::json links = nlohmann::json::array();
    for (const auto& link : map.links) {
        nlohmann::json l;
        l["from"] = link.from;
        l["to"] = link.to;
        l["observed"] = link.observed;
        l["expected"] = link.expected;
        if (link.ratio_infinite) l["ratio"] = nullptr;
        else l["ratio"] = link.ratio;
        l["ratio_infinite"] = link.ratio_infinite;
        links.push_back(l);
    }
    j["links"] = links;
    j["unplaced"] = map.unplaced;
    j["dropped_links"] = map.dropped_links;
    return j;
}

// Journal-map JSON: every journal of the similarity matrix with its activity
// weight (0 when the unit never touches it) plus the sparse off-diagonal
// similarity triplets at or above the cutoff, each unordered pair once.
inline nlohmann::json export_journal_map(const CategoryDistribution& journal_dist,
                                         const SimilarityMatrix& s, double cutoff = 0.05) {
    nlohmann::json j;
    std::vector<std::string> order = s.labels();
    std::sort(order.begin(), order.end());
    j["journals"] = order;
    auto p = journal_dist.proportions();
    nlohmann::json weights = nlohmann::json::object();
    for (const auto& label : order) {
        auto it = p.find(label);
        weights[label] = it == p.end() ? 0.0 : it->second;
    }
    j["weights"] = weights;
    nlohmann::json triplets = nlohmann::json::array();
    for (std::size_t a = 0; a < order.size(); ++a) {
        std::size_t i = *s.index_of(order[a]);
        for (std::size_t b = a + 1; b < order.size(); ++b) {
            std::size_t jdx = *s.index_of(order[b]);
            double value = s.at(i, jdx);
            if (value >= cutoff) triplets.push_back({order[a], order[b], value});
        }
    }
    j["similarities"] = triplets;
    return j;
}

}  // namespace idr
