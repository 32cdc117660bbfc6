#include "supergraph/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rng.hpp"

namespace supergraph {

namespace {

constexpr std::uint64_t kDirectStream = 0x64697265ULL;        // "dire"
constexpr std::uint64_t kConstructiveStream = 0x636f6e73ULL;  // "cons"

struct SizeClass {
    std::uint64_t size;
    std::uint64_t first;  // index of the first super-vertex in the class
    std::uint64_t count;
};

std::vector<SizeClass> size_classes(const SizeConfiguration& config) {
    std::vector<SizeClass> classes;
    std::uint64_t first = 0;
    for (const auto& [size, count] : config.counts()) {
        classes.push_back({size, first, count});
        first += count;
    }
    return classes;
}

void check_addressable(const SizeConfiguration& config) {
    constexpr auto limit = std::numeric_limits<NodeId>::max();
    if (config.super_vertex_count() > limit || config.max_size() > limit) {
        throw ModelError("configuration exceeds 32-bit node addressing");
    }
}

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ModelError("edge probability must lie in [0, 1], got " + std::to_string(p));
    }
}

// Walks a sequence of rows with lengths row_length(r), r in [0, rows), and
// reports every hit of a Bernoulli process with miss probability
// exp(log_miss) as emit(row, column).
template <typename RowLength, typename Emit>
void walk_rows(std::uint64_t rows, RowLength row_length, double log_miss,
               detail::Engine& engine, Emit emit) {
    const detail::GeometricSkip draw(log_miss);
    std::uint64_t skip = draw(engine);
    for (std::uint64_t row = 0; row < rows; ++row) {
        if (skip == detail::GeometricSkip::kNever) return;
        const std::uint64_t len = row_length(row);
        while (skip < len) {
            emit(row, skip);
            skip = detail::saturating_add(skip, detail::saturating_add(1, draw(engine)));
        }
        skip -= len;
    }
}

}  // namespace

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::raw: return "raw";
        case Regime::connectivity: return "connectivity";
        case Regime::sparse: return "sparse";
    }
    return "raw";
}

Regime parse_regime(std::string_view text) {
    if (text == "raw") return Regime::raw;
    if (text == "connectivity") return Regime::connectivity;
    if (text == "sparse") return Regime::sparse;
    throw ModelError("unknown regime '" + std::string(text) + "'");
}

ModelParams resolve_p(Regime regime, double c, const SizeConfiguration& config) {
    const auto big_n = static_cast<double>(config.super_vertex_count());
    const auto small_n = static_cast<double>(config.vertex_count());
    if (!std::isfinite(c)) throw ModelError("c must be finite");
    double p = 0.0;
    switch (regime) {
        case Regime::raw:
            p = c;
            break;
        case Regime::connectivity: {
            const double scaled = std::log(big_n) + c;
            if (scaled < 0.0) throw ModelError("connectivity regime requires ln N + c >= 0");
            p = scaled / big_n;
            break;
        }
        case Regime::sparse:
            if (c < 0.0 || c > small_n) throw ModelError("sparse regime requires 0 <= c <= n");
            p = c / small_n;
            break;
    }
    check_probability(p);
    return {regime, c, p};
}

double edge_probability(std::uint64_t i, std::uint64_t j, double p) {
    if (p <= 0.0) return 0.0;
    if (p >= 1.0) return 1.0;
    const double pairs = static_cast<double>(i) * static_cast<double>(j);
    return -std::expm1(pairs * std::log1p(-p));
}

SuperGraph::SuperGraph(std::vector<std::uint32_t> sizes, std::vector<Edge> edges)
    : sizes_(std::move(sizes)), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const auto& [u, v] = edges_[e];
        if (u >= v) throw ModelError("edges must satisfy u < v (no loops)");
        if (v >= sizes_.size()) throw ModelError("edge endpoint out of range");
        if (e > 0 && edges_[e - 1] == edges_[e]) throw ModelError("duplicate edge");
    }
    for (auto s : sizes_) {
        if (s == 0) throw ModelError("super-vertex sizes must be >= 1");
    }
}

std::vector<std::uint32_t> node_sizes(const SizeConfiguration& config) {
    check_addressable(config);
    std::vector<std::uint32_t> sizes;
    sizes.reserve(config.super_vertex_count());
    for (const auto& [size, count] : config.counts()) {
        sizes.insert(sizes.end(), count, static_cast<std::uint32_t>(size));
    }
    return sizes;
}

SuperGraph sample_direct(const SizeConfiguration& config, const ModelParams& params, Seed seed) {
    check_probability(params.p);
    auto sizes = node_sizes(config);
    std::vector<Edge> edges;
    if (params.p > 0.0) {
        const auto classes = size_classes(config);
        const double log_keep = std::log1p(-params.p);
        const std::uint64_t class_count = classes.size();
        for (std::uint64_t a = 0; a < class_count; ++a) {
            for (std::uint64_t b = a; b < class_count; ++b) {
                const auto& lo = classes[a];
                const auto& hi = classes[b];
                const double log_miss =
                    static_cast<double>(lo.size) * static_cast<double>(hi.size) * log_keep;
                auto engine = detail::make_engine(
                    detail::stream_key(seed.value, kDirectStream, a * class_count + b));
                if (a == b) {
                    // Upper triangle of the class, row r pairs (r, r+1+col).
                    walk_rows(
                        lo.count - 1, [&](std::uint64_t r) { return lo.count - 1 - r; }, log_miss,
                        engine, [&](std::uint64_t r, std::uint64_t col) {
                            edges.push_back({static_cast<NodeId>(lo.first + r),
                                             static_cast<NodeId>(lo.first + r + 1 + col)});
                        });
                } else {
                    walk_rows(
                        lo.count, [&](std::uint64_t) { return hi.count; }, log_miss, engine,
                        [&](std::uint64_t r, std::uint64_t col) {
                            edges.push_back({static_cast<NodeId>(lo.first + r),
                                             static_cast<NodeId>(hi.first + col)});
                        });
                }
            }
        }
    }
    return SuperGraph(std::move(sizes), std::move(edges));
}

SuperGraph sample_constructive(const SizeConfiguration& config, const ModelParams& params,
                               Seed seed) {
    check_probability(params.p);
    auto sizes = node_sizes(config);
    std::vector<Edge> edges;
    if (params.p > 0.0) {
        const std::uint64_t n = config.vertex_count();
        // owner[v] is the super-vertex holding underlying vertex v; end[s] is one
        // past the last underlying vertex of super-vertex s.
        std::vector<NodeId> owner;
        owner.reserve(n);
        std::vector<std::uint64_t> end;
        end.reserve(sizes.size());
        for (std::size_t s = 0; s < sizes.size(); ++s) {
            owner.insert(owner.end(), sizes[s], static_cast<NodeId>(s));
            end.push_back(owner.size());
        }
        auto engine = detail::make_engine(detail::stream_key(seed.value, kConstructiveStream));
        // Row v lists the pairs (v, w) with w beyond v's own super-vertex.
        walk_rows(
            n, [&](std::uint64_t v) { return n - end[owner[v]]; }, std::log1p(-params.p), engine,
            [&](std::uint64_t v, std::uint64_t col) {
                const auto w = end[owner[v]] + col;
                edges.push_back({owner[v], owner[w]});
            });
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }
    return SuperGraph(std::move(sizes), std::move(edges));
}

std::string format_edge_list(const SizeConfiguration& config, const SuperGraph& graph) {
    std::string out = "# N=" + std::to_string(graph.node_count()) +
                      " sizes=" + to_shorthand(config) + "\n";
    for (const auto& [u, v] : graph.edges()) {
        out += std::to_string(u);
        out += ' ';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

}  // namespace supergraph
