#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace supergraph {

/// Raised for malformed or invalid size configurations.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The multiset K of super-vertex sizes: `counts()[i]` is the number k_i of
/// super-vertices made of i underlying vertices. Sizes and counts are >= 1.
class SizeConfiguration {
public:
    using CountMap = std::map<std::uint64_t, std::uint64_t>;

    explicit SizeConfiguration(CountMap counts);

    const CountMap& counts() const noexcept { return counts_; }

    /// N, the number of super-vertices.
    std::uint64_t super_vertex_count() const noexcept { return super_vertices_; }
    /// n, the number of underlying vertices.
    std::uint64_t vertex_count() const noexcept { return vertices_; }
    std::uint64_t max_size() const noexcept { return counts_.rbegin()->first; }

    friend bool operator==(const SizeConfiguration&, const SizeConfiguration&) = default;

private:
    CountMap counts_;
    std::uint64_t super_vertices_ = 0;
    std::uint64_t vertices_ = 0;
};

struct VertexCounts {
    std::uint64_t super_vertices;  // N
    std::uint64_t vertices;        // n
};

VertexCounts derive_counts(const SizeConfiguration& config);

/// Size profile of a configuration: mu[i] = k_i / N, u = n / N and
/// s2 = sum_j j^2 k_j / n (mean size of the super-vertex holding a uniformly
/// chosen underlying vertex).
struct LimitProfile {
    std::map<std::uint64_t, double> mu;
    double u = 1.0;
    double s2 = 1.0;
};

LimitProfile empirical_profile(const SizeConfiguration& config);

/// Builds a profile from explicit size frequencies. Entries must be positive
/// and sum to one within 1e-12.
LimitProfile make_profile(const std::map<std::uint64_t, double>& mu);

/// Parses {"sizes": {"<i>": <k_i>, ...}}.
SizeConfiguration parse_configuration(std::string_view json_text);

/// Parses the inline form "1x500,2x250".
SizeConfiguration parse_shorthand(std::string_view text);

std::string serialize_configuration(const SizeConfiguration& config);
std::string to_shorthand(const SizeConfiguration& config);

/// Synthetic configuration whose size tail sum_{i>=k} mu_i follows k^-alpha.
///
/// Each size i in 1..max_size receives weight (i^-alpha - (i+1)^-alpha),
/// normalized over the truncated support, so the tail mass from k upward is
/// proportional to k^-alpha - (max_size+1)^-alpha. Counts are floored and the
/// integer remainder goes to size 1; sizes whose count floors to zero are
/// dropped. The result always has exactly N super-vertices.
SizeConfiguration power_law_configuration(std::uint64_t super_vertices, double alpha,
                                          std::uint64_t max_size);

}  // namespace supergraph
