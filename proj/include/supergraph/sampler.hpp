#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "supergraph/config.hpp"

namespace supergraph {

/// Raised when model parameters do not resolve to a valid probability.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// How the scalar c maps to the underlying edge probability p.
///   raw:          p = c
///   connectivity: p = (ln N + c) / N
///   sparse:       p = c / n
enum class Regime { raw, connectivity, sparse };

std::string_view to_string(Regime regime);
Regime parse_regime(std::string_view text);

struct ModelParams {
    Regime regime = Regime::raw;
    double c = 0.0;
    double p = 0.0;
};

ModelParams resolve_p(Regime regime, double c, const SizeConfiguration& config);

/// Probability that super-vertices of sizes i and j are adjacent:
/// 1 - (1 - p)^(i j), evaluated as -expm1(i j log1p(-p)).
double edge_probability(std::uint64_t i, std::uint64_t j, double p);

struct Seed {
    std::uint64_t value = 0;
};

using NodeId = std::uint32_t;

struct Edge {
    NodeId u;
    NodeId v;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on super-vertices. Edges are stored sorted with
/// u < v; construction rejects loops, duplicates and out-of-range ends.
class SuperGraph {
public:
    SuperGraph(std::vector<std::uint32_t> sizes, std::vector<Edge> edges);

    std::size_t node_count() const noexcept { return sizes_.size(); }
    const std::vector<std::uint32_t>& sizes() const noexcept { return sizes_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    friend bool operator==(const SuperGraph&, const SuperGraph&) = default;

private:
    std::vector<std::uint32_t> sizes_;
    std::vector<Edge> edges_;
};

/// Super-vertex sizes in canonical node order: size classes ascending, each
/// class occupying a contiguous index range.
std::vector<std::uint32_t> node_sizes(const SizeConfiguration& config);

/// Samples each super-vertex pair independently with edge_probability.
/// Pairs are grouped into blocks by size class; each block has its own
/// random stream keyed by (seed, block) and is walked with geometric skips,
/// so expected work is O(R N + |E|) for R size classes.
SuperGraph sample_direct(const SizeConfiguration& config, const ModelParams& params, Seed seed);

/// Samples the underlying G(n, p) on the cross-super-vertex vertex pairs and
/// collapses it: two super-vertices are adjacent iff some underlying edge
/// joins them.
SuperGraph sample_constructive(const SizeConfiguration& config, const ModelParams& params,
                               Seed seed);

/// "# N=<N> sizes=<i>x<k_i>,..." header followed by "u v" lines.
std::string format_edge_list(const SizeConfiguration& config, const SuperGraph& graph);

}  // namespace supergraph
