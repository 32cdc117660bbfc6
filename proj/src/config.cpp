#include "supergraph/config.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <vector>

#include <json.hpp>

namespace supergraph {

namespace {

constexpr double kProfileTolerance = 1e-12;

std::uint64_t parse_positive(std::string_view text, std::string_view what) {
    std::uint64_t value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw ConfigError("invalid " + std::string(what) + " '" + std::string(text) +
                          "': expected a decimal integer");
    }
    if (value == 0) {
        throw ConfigError(std::string(what) + " must be >= 1");
    }
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' ||
                          s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

SizeConfiguration::SizeConfiguration(CountMap counts) : counts_(std::move(counts)) {
    if (counts_.empty()) {
        throw ConfigError("configuration must contain at least one size class");
    }
    for (const auto& [size, count] : counts_) {
        if (size == 0) throw ConfigError("size must be >= 1");
        if (count == 0) throw ConfigError("count for size " + std::to_string(size) + " must be >= 1");
        if (count > std::numeric_limits<std::uint64_t>::max() / size ||
            vertices_ > std::numeric_limits<std::uint64_t>::max() - size * count) {
            throw ConfigError("configuration too large");
        }
        super_vertices_ += count;
        vertices_ += size * count;
    }
}

VertexCounts derive_counts(const SizeConfiguration& config) {
    return {config.super_vertex_count(), config.vertex_count()};
}

LimitProfile empirical_profile(const SizeConfiguration& config) {
    const auto [big_n, small_n] = derive_counts(config);
    LimitProfile profile;
    double second_moment = 0.0;
    for (const auto& [size, count] : config.counts()) {
        profile.mu[size] = static_cast<double>(count) / static_cast<double>(big_n);
        second_moment += static_cast<double>(size) * static_cast<double>(size) *
                         static_cast<double>(count);
    }
    profile.u = static_cast<double>(small_n) / static_cast<double>(big_n);
    profile.s2 = second_moment / static_cast<double>(small_n);
    return profile;
}

LimitProfile make_profile(const std::map<std::uint64_t, double>& mu) {
    if (mu.empty()) throw ConfigError("profile must contain at least one size class");
    double total = 0.0;
    double first = 0.0;
    double second = 0.0;
    for (const auto& [size, weight] : mu) {
        if (size == 0) throw ConfigError("size must be >= 1");
        if (!(weight > 0.0)) throw ConfigError("profile weights must be positive");
        const double i = static_cast<double>(size);
        total += weight;
        first += i * weight;
        second += i * i * weight;
    }
    if (std::abs(total - 1.0) > kProfileTolerance) {
        throw ConfigError("profile weights must sum to 1");
    }
    return LimitProfile{mu, first, second / first};
}

SizeConfiguration parse_configuration(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed configuration document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("sizes") || !doc["sizes"].is_object()) {
        throw ConfigError("configuration document must be an object with a \"sizes\" object");
    }
    SizeConfiguration::CountMap counts;
    for (const auto& [key, value] : doc["sizes"].items()) {
        const auto size = parse_positive(key, "size");
        std::uint64_t count = 0;
        if (value.is_number_unsigned()) {
            count = value.get<std::uint64_t>();
        } else if (value.is_number_integer()) {
            throw ConfigError("count for size " + key + " must be >= 1");
        } else {
            throw ConfigError("count for size " + key + " must be an integer");
        }
        if (count == 0) throw ConfigError("count for size " + key + " must be >= 1");
        if (!counts.emplace(size, count).second) {
            throw ConfigError("duplicate size " + key);
        }
    }
    return SizeConfiguration(std::move(counts));
}

SizeConfiguration parse_shorthand(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ConfigError("empty configuration");
    SizeConfiguration::CountMap counts;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto item = trim(text.substr(0, comma));
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        if (comma != std::string_view::npos && trim(text).empty()) {
            throw ConfigError("trailing ',' in configuration");
        }
        const auto x = item.find('x');
        if (x == std::string_view::npos) {
            throw ConfigError("expected <size>x<count>, got '" + std::string(item) + "'");
        }
        const auto size = parse_positive(item.substr(0, x), "size");
        const auto count = parse_positive(item.substr(x + 1), "count");
        if (!counts.emplace(size, count).second) {
            throw ConfigError("duplicate size " + std::to_string(size));
        }
    }
    return SizeConfiguration(std::move(counts));
}

std::string serialize_configuration(const SizeConfiguration& config) {
    // Keys sorted numerically rather than lexicographically.
    std::string out = "{\"sizes\": {";
    bool first = true;
    for (const auto& [size, count] : config.counts()) {
        if (!first) out += ", ";
        first = false;
        out += '"' + std::to_string(size) + "\": " + std::to_string(count);
    }
    out += "}}\n";
    return out;
}

std::string to_shorthand(const SizeConfiguration& config) {
    std::string out;
    for (const auto& [size, count] : config.counts()) {
        if (!out.empty()) out += ',';
        out += std::to_string(size) + 'x' + std::to_string(count);
    }
    return out;
}

SizeConfiguration power_law_configuration(std::uint64_t super_vertices, double alpha,
                                          std::uint64_t max_size) {
    if (!(alpha > 1.0)) throw ConfigError("power-law exponent alpha must be > 1");
    if (max_size < 1) throw ConfigError("max_size must be >= 1");
    if (max_size > super_vertices) throw ConfigError("max_size must not exceed N");

    const auto tail = [alpha](double k) { return std::pow(k, -alpha); };
    const double norm = 1.0 - tail(static_cast<double>(max_size) + 1.0);
    const double total = static_cast<double>(super_vertices);

    SizeConfiguration::CountMap counts;
    std::uint64_t assigned = 0;
    for (std::uint64_t i = 2; i <= max_size; ++i) {
        const double x = static_cast<double>(i);
        const double weight = (tail(x) - tail(x + 1.0)) / norm;
        const auto count = static_cast<std::uint64_t>(std::floor(weight * total));
        if (count > 0) {
            counts[i] = count;
            assigned += count;
        }
    }
    counts[1] = super_vertices - assigned;
    return SizeConfiguration(std::move(counts));
}

}  // namespace supergraph
