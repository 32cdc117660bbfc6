#include "supergraph/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace supergraph {

DisjointSetForest::DisjointSetForest(std::size_t elements)
    : parent_(elements), rank_(elements, 0), sets_(elements) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSetForest::find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
        const std::size_t next = parent_[x];
        parent_[x] = root;
        x = next;
    }
    return root;
}

bool DisjointSetForest::unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    --sets_;
    return true;
}

ComponentSummary connected_components(const SuperGraph& graph) {
    const std::size_t n = graph.node_count();
    DisjointSetForest forest(n);
    for (const auto& [u, v] : graph.edges()) forest.unite(u, v);

    std::vector<std::uint64_t> root_size(n, 0);
    for (std::size_t x = 0; x < n; ++x) ++root_size[forest.find(x)];

    ComponentSummary summary;
    summary.sizes_desc.reserve(forest.set_count());
    for (auto s : root_size) {
        if (s > 0) summary.sizes_desc.push_back(s);
    }
    std::sort(summary.sizes_desc.begin(), summary.sizes_desc.end(), std::greater<>{});
    summary.isolated_count = isolated_count(graph);
    return summary;
}

bool is_connected(const SuperGraph& graph) {
    DisjointSetForest forest(graph.node_count());
    for (const auto& [u, v] : graph.edges()) {
        forest.unite(u, v);
        if (forest.set_count() == 1) return true;
    }
    return forest.set_count() <= 1;
}

std::vector<std::uint64_t> degrees(const SuperGraph& graph) {
    std::vector<std::uint64_t> deg(graph.node_count(), 0);
    for (const auto& [u, v] : graph.edges()) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

std::uint64_t isolated_count(const SuperGraph& graph) {
    const auto deg = degrees(graph);
    return static_cast<std::uint64_t>(std::count(deg.begin(), deg.end(), std::uint64_t{0}));
}

std::map<std::uint64_t, std::uint64_t> degree_histogram(const SuperGraph& graph) {
    std::map<std::uint64_t, std::uint64_t> histogram;
    for (auto d : degrees(graph)) ++histogram[d];
    return histogram;
}

double largest_component_fraction(const SuperGraph& graph) {
    if (graph.node_count() == 0) return 0.0;
    return static_cast<double>(connected_components(graph).largest()) /
           static_cast<double>(graph.node_count());
}

}  // namespace supergraph
