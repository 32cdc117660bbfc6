#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "supergraph/graph.hpp"

using namespace supergraph;

namespace {

SuperGraph unit_graph(std::size_t n, std::vector<Edge> edges) {
    return SuperGraph(std::vector<std::uint32_t>(n, 1), std::move(edges));
}

SuperGraph complete_graph(std::size_t n) {
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) edges.push_back({u, v});
    return unit_graph(n, edges);
}

}  // namespace

TEST_CASE("DisjointSetForest") {
    DisjointSetForest forest(6);
    CHECK(forest.set_count() == 6);
    CHECK(forest.unite(0, 1));
    CHECK(forest.unite(2, 3));
    CHECK_FALSE(forest.unite(1, 0));
    CHECK(forest.unite(1, 3));
    CHECK(forest.set_count() == 3);
    CHECK(forest.find(0) == forest.find(2));
    CHECK(forest.find(forest.find(2)) == forest.find(2));
    CHECK(forest.find(4) != forest.find(5));
}

TEST_CASE("connected_components") {
    auto summary = connected_components(unit_graph(5, {}));
    CHECK(summary.sizes_desc == std::vector<std::uint64_t>{1, 1, 1, 1, 1});
    CHECK(summary.isolated_count == 5);

    summary = connected_components(complete_graph(4));
    CHECK(summary.sizes_desc == std::vector<std::uint64_t>{4});
    CHECK(summary.isolated_count == 0);

    summary = connected_components(unit_graph(5, {{0, 1}, {2, 3}}));
    CHECK(summary.sizes_desc == std::vector<std::uint64_t>{2, 2, 1});
    CHECK(summary.isolated_count == 1);
    CHECK(summary.largest() == 2);
    CHECK(summary.second_largest() == 2);
}

TEST_CASE("is_connected") {
    CHECK(is_connected(unit_graph(1, {})));
    CHECK(is_connected(unit_graph(3, {{0, 1}, {1, 2}})));
    CHECK_FALSE(is_connected(unit_graph(3, {{0, 1}})));
}

TEST_CASE("isolated_count") {
    CHECK(isolated_count(unit_graph(7, {})) == 7);
    CHECK(isolated_count(unit_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})) == 0);
    CHECK(isolated_count(unit_graph(4, {{0, 1}})) == 2);
}

TEST_CASE("degree_histogram") {
    using Histogram = std::map<std::uint64_t, std::uint64_t>;
    CHECK(degree_histogram(unit_graph(3, {})) == Histogram{{0, 3}});
    CHECK(degree_histogram(complete_graph(3)) == Histogram{{2, 3}});
    CHECK(degree_histogram(unit_graph(3, {{0, 1}, {1, 2}})) == Histogram{{1, 2}, {2, 1}});
}

TEST_CASE("largest_component_fraction") {
    CHECK(largest_component_fraction(unit_graph(4, {})) == 0.25);
    CHECK(largest_component_fraction(complete_graph(5)) == 1.0);
    CHECK(largest_component_fraction(unit_graph(4, {{0, 1}})) == 0.5);
}

TEST_CASE("union-find agrees with BFS and graph invariants hold on random graphs") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const std::uint64_t n = 1 + rng() % 200;
        const auto config = parse_shorthand("1x" + std::to_string(n));
        const double c = static_cast<double>(rng() % 400) / 100.0;
        const auto graph = sample_direct(config, resolve_p(Regime::sparse, std::min(c, double(n)), config),
                                         Seed{rng()});
        const auto summary = connected_components(graph);
        CHECK(summary.sizes_desc == oracle::bfs_component_sizes(graph));

        std::uint64_t total = 0;
        std::uint64_t singletons = 0;
        for (auto s : summary.sizes_desc) {
            total += s;
            singletons += s == 1;
        }
        CHECK(total == n);
        CHECK(summary.isolated_count == singletons);

        std::uint64_t nodes = 0;
        std::uint64_t degree_sum = 0;
        for (const auto& [k, z] : degree_histogram(graph)) {
            nodes += z;
            degree_sum += k * z;
        }
        CHECK(nodes == n);
        CHECK(degree_sum == 2 * graph.edges().size());

        const bool connected = is_connected(graph);
        CHECK(connected == (summary.sizes_desc[0] == n));
        if (connected && n > 1) CHECK(summary.isolated_count == 0);
    }
}
