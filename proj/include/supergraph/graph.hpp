#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "supergraph/sampler.hpp"

namespace supergraph {

/// Union-find with path compression and union by rank.
class DisjointSetForest {
public:
    explicit DisjointSetForest(std::size_t elements);

    std::size_t find(std::size_t x);
    /// Returns true when x and y were in different sets.
    bool unite(std::size_t x, std::size_t y);

    std::size_t size() const noexcept { return parent_.size(); }
    std::size_t set_count() const noexcept { return sets_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::uint8_t> rank_;
    std::size_t sets_;
};

struct ComponentSummary {
    std::vector<std::uint64_t> sizes_desc;  // L1 >= L2 >= ...
    std::uint64_t isolated_count = 0;

    std::uint64_t largest() const { return sizes_desc.empty() ? 0 : sizes_desc[0]; }
    std::uint64_t second_largest() const { return sizes_desc.size() < 2 ? 0 : sizes_desc[1]; }
};

ComponentSummary connected_components(const SuperGraph& graph);
bool is_connected(const SuperGraph& graph);
std::uint64_t isolated_count(const SuperGraph& graph);

std::vector<std::uint64_t> degrees(const SuperGraph& graph);
/// Sparse histogram: degree k -> Z_k, the number of super-vertices of degree k.
std::map<std::uint64_t, std::uint64_t> degree_histogram(const SuperGraph& graph);

double largest_component_fraction(const SuperGraph& graph);

}  // namespace supergraph
