#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace supergraph::detail {

// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept {
    return mix64(mix64(mix64(seed) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t key) {
    std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
    return Engine(seq);
}

/// Uniform double on (0, 1].
inline double uniform_open_closed(Engine& engine) {
    return (static_cast<double>(engine() >> 11) + 1.0) * 0x1.0p-53;
}

/// Draws failure counts before the next success of a Bernoulli sequence whose
/// failure probability is exp(log_miss). log_miss == -inf means every trial
/// succeeds; log_miss == 0 means none does (returns max()).
class GeometricSkip {
public:
    explicit GeometricSkip(double log_miss) : log_miss_(log_miss) {}

    std::uint64_t operator()(Engine& engine) const {
        if (log_miss_ == -std::numeric_limits<double>::infinity()) return 0;
        if (log_miss_ >= 0.0) return kNever;
        const double skip = std::floor(std::log(uniform_open_closed(engine)) / log_miss_);
        return skip >= 1.8e19 ? kNever : static_cast<std::uint64_t>(skip);
    }

    static constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

private:
    double log_miss_;
};

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) noexcept {
    return a > GeometricSkip::kNever - b ? GeometricSkip::kNever : a + b;
}

}  // namespace supergraph::detail
