#include <cmath>
#include <random>

#include <catch_amalgamated.hpp>

#include "idrkit/indicators.hpp"

#include "support/fixture_gen.hpp"
#include "support/oracle.hpp"

using Catch::Approx;

namespace {

idr::CategoryDistribution dist(const std::map<std::string, double>& counts) {
    idr::CategoryDistribution d;
    d.facet = idr::Facet::references;
    d.counts = counts;
    for (auto& [_, c] : counts) d.total += c;
    d.mapped_items = counts.size();
    return d;
}

idr::DistanceMatrix distances(const std::vector<std::string>& labels,
                              const std::map<std::pair<std::string, std::string>, double>& d) {
    idr::DistanceMatrix m(labels);
    for (auto& [pair, value] : d) {
        auto i = *m.index_of(pair.first);
        auto j = *m.index_of(pair.second);
        m.at(i, j) = value;
        m.at(j, i) = value;
    }
    return m;
}

}  // namespace

TEST_CASE("variety counts categories above the share threshold") {
    CHECK(idr::variety(dist({{"A", 0.5}, {"B", 0.3}, {"C", 0.2}}), 0.0001) == 3);
    CHECK(idr::variety(dist({{"A", 0.99995}, {"B", 0.00005}}), 0.0001) == 1);

    std::map<std::string, double> uniform;
    for (int i = 0; i < 28; ++i) uniform["C" + std::to_string(i)] = 1.0;
    CHECK(idr::variety(dist(uniform), 0.0001) == 28);
}

TEST_CASE("balance is shannon evenness") {
    std::map<std::string, double> uniform;
    for (int i = 0; i < 5; ++i) uniform["C" + std::to_string(i)] = 2.0;
    CHECK(idr::balance(dist(uniform)) == Approx(1.0).margin(1e-12));
    CHECK(idr::balance(dist({{"A", 3.0}})) == 1.0);
    CHECK(idr::balance(dist({{"A", 0.5}, {"B", 0.25}, {"C", 0.25}})) ==
          Approx(0.946395).margin(5e-7));
}

TEST_CASE("shannon entropy") {
    CHECK(idr::shannon_entropy(dist({{"A", 1.0}})) == Approx(0.0).margin(1e-15));
    std::map<std::string, double> uniform{{"A", 1}, {"B", 1}, {"C", 1}, {"D", 1}};
    CHECK(idr::shannon_entropy(dist(uniform)) == Approx(std::log(4.0)).epsilon(1e-12));
    CHECK(idr::shannon_entropy(dist({{"A", 0.5}, {"B", 0.25}, {"C", 0.25}})) ==
          Approx(1.039721).margin(5e-7));
}

TEST_CASE("disparity averages pairwise distances of the thresholded set") {
    idr::DistanceMatrix d2 = distances({"A", "B"}, {{{"A", "B"}, 0.8}});
    CHECK(idr::disparity(dist({{"A", 1}, {"B", 1}}), d2, 0.0001) == Approx(0.8));

    idr::DistanceMatrix d3c =
        distances({"A", "B", "C"}, {{{"A", "B"}, 0.6}, {{"A", "C"}, 0.6}, {{"B", "C"}, 0.6}});
    CHECK(idr::disparity(dist({{"A", 1}, {"B", 2}, {"C", 3}}), d3c, 0.0001) == Approx(0.6));

    idr::DistanceMatrix d3 =
        distances({"A", "B", "C"}, {{{"A", "B"}, 0.2}, {{"A", "C"}, 0.4}, {{"B", "C"}, 0.9}});
    CHECK(idr::disparity(dist({{"A", 1}, {"B", 1}, {"C", 1}}), d3, 0.0001) == Approx(0.5));

    SECTION("single category above threshold is an error") {
        CHECK_THROWS_WITH(idr::disparity(dist({{"A", 1.0}}), d2, 0.0001),
                          "disparity undefined for single category");
        CHECK_THROWS(idr::disparity(dist({{"A", 0.99995}, {"B", 0.00005}}), d2, 0.0001));
    }
    SECTION("threshold removes low-share categories from the mean") {
        // C's share is 0.00005: with it the mean would include 0.4 and 0.9
        double value = idr::disparity(dist({{"A", 9999.0}, {"B", 9999.5}, {"C", 1.0}}), d3, 0.0001);
        CHECK(value == Approx(0.2));
    }
}

TEST_CASE("rao-stirling diversity") {
    idr::DistanceMatrix d2 = distances({"A", "B"}, {{{"A", "B"}, 0.8}});
    CHECK(idr::rao_stirling(dist({{"A", 1.0}}), distances({"A"}, {})) == 0.0);
    CHECK(idr::rao_stirling(dist({{"A", 1}, {"B", 1}}), d2) == Approx(0.4).epsilon(1e-12));

    SECTION("uniform over n with constant d equals d(1-1/n)") {
        for (int n = 2; n <= 10; ++n) {
            const double kDistance = 0.7;
            std::vector<std::string> labels;
            std::map<std::string, double> counts;
            std::map<std::pair<std::string, std::string>, double> pairs;
            for (int i = 0; i < n; ++i) {
                labels.push_back("C" + std::to_string(i));
                counts[labels.back()] = 1.0;
            }
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) pairs[{labels[i], labels[j]}] = kDistance;
            double value = idr::rao_stirling(dist(counts), distances(labels, pairs));
            double closed_form = kDistance * (1.0 - 1.0 / n);
            CHECK(value == Approx(closed_form).epsilon(1e-12));

            // brute-force loop over ordered pairs agrees
            double brute = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) brute += (1.0 / n) * (1.0 / n) * kDistance;
            CHECK(value == Approx(brute).epsilon(1e-12));
        }
    }
}

TEST_CASE("diversity identities and bounds") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        std::vector<std::string> labels;
        std::map<std::string, double> counts;
        std::map<std::pair<std::string, std::string>, double> pairs;
        double dmax = 0;
        for (int i = 0; i < n; ++i) {
            labels.push_back("C" + std::to_string(i));
            counts[labels.back()] = u(rng) * 40.0;
        }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                double v = u(rng);
                pairs[{labels[i], labels[j]}] = v;
                dmax = std::max(dmax, v);
            }
        idr::CategoryDistribution cd = dist(counts);
        idr::DistanceMatrix dm = distances(labels, pairs);

        // H = balance * ln(n0)
        CHECK(idr::shannon_entropy(cd) ==
              Approx(idr::balance(cd) * std::log(static_cast<double>(n))).margin(1e-9));
        // rao-stirling never exceeds the largest pairwise distance
        CHECK(idr::rao_stirling(cd, dm) <= dmax + 1e-12);
    }
}

TEST_CASE("merging zero-distance categories leaves rao-stirling unchanged") {
    // A and B sit at distance 0 from each other and equal distance to C
    idr::DistanceMatrix d =
        distances({"A", "B", "C"}, {{{"A", "B"}, 0.0}, {{"A", "C"}, 0.6}, {{"B", "C"}, 0.6}});
    double split = idr::rao_stirling(dist({{"A", 2}, {"B", 3}, {"C", 5}}), d);
    double merged = idr::rao_stirling(dist({{"AB", 5}, {"C", 5}}),
                                      distances({"AB", "C"}, {{{"AB", "C"}, 0.6}}));
    CHECK(split == Approx(merged).margin(1e-12));
}

TEST_CASE("coherence calibrates to 1 under independent cross-citations") {
    std::vector<std::string> labels{"A", "B", "C"};
    idr::DistanceMatrix d =
        distances(labels, {{{"A", "B"}, 0.3}, {{"A", "C"}, 0.8}, {{"B", "C"}, 0.5}});
    idr::CategoryDistribution refs = dist({{"A", 4}, {"B", 3}, {"C", 3}});

    SECTION("counts proportional to p_i p_j") {
        idr::CrossCitationMatrix within(labels);
        auto p = refs.proportions();
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                within.at(i, j) = 55.0 * p.at(labels[i]) * p.at(labels[j]);
        idr::CoherenceReport r = idr::coherence(within, refs, d);
        CHECK(r.coherence == Approx(1.0).margin(1e-9));
    }
    SECTION("concentrating citations on the most distant pair raises coherence above 1") {
        idr::CrossCitationMatrix within(labels);
        within.at(0, 2) = 5.0;  // A -> C, the d = 0.8 pair
        within.at(2, 0) = 5.0;
        idr::CoherenceReport r = idr::coherence(within, refs, d);
        CHECK(r.coherence > 1.0);
    }
    SECTION("hand-built counts match the oracle's double sum") {
        idr::CrossCitationMatrix within(labels);
        double values[3][3] = {{2, 1, 0.5}, {0, 3, 1}, {1.5, 0, 2}};
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) within.at(i, j) = values[i][j];
        idr::CoherenceReport r = idr::coherence(within, refs, d);

        double total = 0, observed = 0;
        for (auto& row : values)
            for (double v : row) total += v;
        double dd[3][3] = {{0, 0.3, 0.8}, {0.3, 0, 0.5}, {0.8, 0.5, 0}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) observed += values[i][j] / total * dd[i][j];
        double expected = 0;
        double p[3] = {0.4, 0.3, 0.3};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) expected += p[i] * p[j] * dd[i][j];
        CHECK(r.observed_mean_distance == Approx(observed).epsilon(1e-12));
        CHECK(r.expected_mean_distance == Approx(expected).epsilon(1e-12));
        CHECK(r.coherence == Approx(observed / expected).epsilon(1e-12));
    }
    SECTION("degenerate inputs") {
        idr::CrossCitationMatrix empty(labels);
        CHECK_THROWS(idr::coherence(empty, refs, d));
        idr::CrossCitationMatrix some(std::vector<std::string>{"A"});
        some.at(0, 0) = 2.0;
        CHECK_THROWS(idr::coherence(some, dist({{"A", 1.0}}), d));
    }
}

namespace {

idr::JournalGraph graph(const std::vector<std::string>& labels,
                        const std::vector<std::pair<int, int>>& edges) {
    idr::JournalGraph g(labels, 0.2);
    for (auto& [a, b] : edges) g.set_edge(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    return g;
}

}  // namespace

TEST_CASE("clustering coefficient") {
    // triangle 0-1-2 plus pendant 3 attached to 0; isolated 4
    idr::JournalGraph g = graph({"A", "B", "C", "D", "E"}, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});

    SECTION("one-edge neighborhood is the standard local coefficient") {
        CHECK(idr::clustering_coefficient(g, 1, idr::Neighborhood::one) == Approx(1.0));
        // node 0's neighborhood {1,2,3}: one link of three possible
        CHECK(idr::clustering_coefficient(g, 0, idr::Neighborhood::one) == Approx(1.0 / 3.0));
        CHECK(idr::clustering_coefficient(g, 3, idr::Neighborhood::one) == 0.0);  // < 2 neighbors
        CHECK(idr::clustering_coefficient(g, 4, idr::Neighborhood::one) == 0.0);
    }
    SECTION("two-edge neighborhood reaches distance 2") {
        // node 3 reaches {0} then {1,2}: neighborhood {0,1,2} has 3 links of 3
        CHECK(idr::clustering_coefficient(g, 3, idr::Neighborhood::two) == Approx(1.0));
        // node 1 reaches {0,2} then {3}: links among {0,2,3} = {0-2, 0-3} of 3
        CHECK(idr::clustering_coefficient(g, 1, idr::Neighborhood::two) == Approx(2.0 / 3.0));
    }
}

TEST_CASE("weighted clustering matches an exhaustive oracle on a fixture graph") {
    std::vector<std::string> labels{"A", "B", "C", "D", "E"};
    idr::JournalGraph g = graph(labels, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {3, 4}});
    idr::CategoryDistribution jd = dist({{"A", 1}, {"B", 1}, {"C", 1}, {"D", 1}, {"E", 1}});
    jd.facet = idr::Facet::journals;

    oracle::Graph og;
    og.nodes = labels;
    for (auto& [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {3, 4}}) {
        og.edges.insert({labels[a], labels[b]});
        og.edges.insert({labels[b], labels[a]});
    }
    oracle::Dist od;
    for (auto& l : labels) od.counts[l] = 1.0;

    for (auto scope : {idr::Neighborhood::one, idr::Neighborhood::two}) {
        double mine = idr::weighted_clustering(jd, g, scope);
        double ref = oracle::weighted_clustering(od, og, scope == idr::Neighborhood::two);
        CHECK(mine == Approx(ref).epsilon(1e-12));
    }

    SECTION("journals missing from the graph score zero and are reported") {
        idr::CategoryDistribution with_missing =
            dist({{"A", 1}, {"B", 1}, {"ZZ UNKNOWN", 2}});
        std::vector<std::string> missing;
        double value = idr::weighted_clustering(with_missing, g, idr::Neighborhood::one, &missing);
        REQUIRE(missing == std::vector<std::string>{"ZZ UNKNOWN"});
        // A and B carry 1/4 weight each; cc(A)=1/3, cc(B)=1
        CHECK(value == Approx(0.25 * (1.0 / 3.0) + 0.25 * 1.0).epsilon(1e-12));
    }
}

TEST_CASE("average similarity") {
    std::vector<std::string> labels{"A", "B", "C", "D"};
    idr::SimilarityMatrix s(labels);
    for (int i = 0; i < 4; ++i) s.at(i, i) = 1.0;

    SECTION("all off-diagonal zero") {
        idr::CategoryDistribution jd = dist({{"A", 1}, {"B", 3}});
        CHECK(idr::average_similarity(jd, s) == Approx(0.0).margin(1e-15));
    }
    SECTION("constant off-diagonal c gives c(N-1)/N") {
        const double c = 0.4;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j) s.at(i, j) = c;
        idr::CategoryDistribution jd = dist({{"A", 2}, {"C", 1}});
        double expected = c * 3.0 / 4.0;
        CHECK(idr::average_similarity(jd, s) == Approx(expected).epsilon(1e-12));

        // closed form checked by loop
        double loop = 0;
        for (int j = 1; j < 4; ++j) loop += c;
        CHECK(idr::average_similarity(jd, s) == Approx(loop / 4.0).epsilon(1e-12));
    }
    SECTION("mixed matrix against the oracle's double loop") {
        double vals[4][4] = {{1, 0.2, 0.5, 0.0},
                             {0.2, 1, 0.1, 0.7},
                             {0.5, 0.1, 1, 0.3},
                             {0.0, 0.7, 0.3, 1}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s.at(i, j) = vals[i][j];
        idr::CategoryDistribution jd = dist({{"A", 1}, {"B", 2}, {"C", 3}, {"D", 4}});

        oracle::Matrix om;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) om[labels[i]][labels[j]] = vals[i][j];
        oracle::Dist od;
        od.counts = {{"A", 1}, {"B", 2}, {"C", 3}, {"D", 4}};
        CHECK(idr::average_similarity(jd, s) ==
              Approx(oracle::average_similarity(od, om, labels)).epsilon(1e-12));
    }
}

TEST_CASE("label permutation leaves every indicator unchanged") {
    fixture::Fixture f = fixture::make_fixture(42);
    idr::SimilarityMatrix s = idr::cosine_similarity(f.category_matrix, idr::CitationDimension::cited).matrix;
    idr::DistanceMatrix d = idr::to_distance(s);
    idr::CategoryDistribution refs =
        idr::build_distribution(f.records, f.thesaurus, idr::Facet::references, 0.0001);

    // rebuild the distance matrix under a reversed label order
    std::vector<std::string> reversed(f.categories.rbegin(), f.categories.rend());
    idr::DistanceMatrix dr(reversed);
    for (std::size_t i = 0; i < reversed.size(); ++i)
        for (std::size_t j = 0; j < reversed.size(); ++j)
            dr.at(i, j) = d.at(*d.index_of(reversed[i]), *d.index_of(reversed[j]));

    CHECK(idr::rao_stirling(refs, d) == Approx(idr::rao_stirling(refs, dr)).epsilon(1e-12));
    CHECK(idr::disparity(refs, d, 0.0001) == Approx(idr::disparity(refs, dr, 0.0001)).epsilon(1e-12));
}

TEST_CASE("indicators match the naive oracle on randomized fixtures") {
    for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
        fixture::Fixture f = fixture::make_fixture(seed);
        CAPTURE(seed);

        idr::SimilarityMatrix s =
            idr::cosine_similarity(f.category_matrix, idr::CitationDimension::cited).matrix;
        idr::DistanceMatrix d = idr::to_distance(s);
        oracle::Matrix os = oracle::cosine_cited(f.category_counts, f.categories);

        idr::CategoryDistribution refs =
            idr::build_distribution(f.records, f.thesaurus, idr::Facet::references, 0.0001);
        oracle::Dist orefs = oracle::dist_from_journals(oracle::ref_journals(f.records), f.thesaurus_map);

        CHECK(idr::variety(refs, 0.0001) == oracle::variety(orefs, 0.0001));
        CHECK(idr::balance(refs) == Approx(oracle::balance(orefs)).epsilon(1e-12));
        CHECK(idr::shannon_entropy(refs) == Approx(oracle::entropy(orefs)).epsilon(1e-12));
        CHECK(idr::disparity(refs, d, 0.0001) ==
              Approx(oracle::disparity(orefs, os, 0.0001)).epsilon(1e-12));
        CHECK(idr::rao_stirling(refs, d) == Approx(oracle::rao_stirling(orefs, os)).epsilon(1e-12));

        idr::CrossCitationMatrix within = idr::build_cross_citations(f.records, f.thesaurus);
        idr::CoherenceReport mine = idr::coherence(within, refs, d);
        oracle::Coherence ref = oracle::coherence(f.records, f.thesaurus_map, os);
        CHECK(mine.coherence == Approx(ref.ratio).epsilon(1e-12));
    }
}
