#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "supergraph/config.hpp"
#include "supergraph/sampler.hpp"

namespace supergraph {

enum class Experiment { connectivity, giant, degree };
enum class SamplerKind { direct, constructive };

std::string_view to_string(Experiment experiment);
std::string_view to_string(SamplerKind sampler);
SamplerKind parse_sampler(std::string_view text);

/// Raised when a run's estimates disagree with the exact finite-N moments
/// by more than the self-check allows.
class SelfCheckError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentPlan {
    SizeConfiguration config;
    Regime regime = Regime::sparse;
    double c = 0.0;
    std::uint64_t trials = 1;
    Seed seed;
    Experiment experiment = Experiment::connectivity;
    SamplerKind sampler = SamplerKind::direct;
    unsigned workers = 0;  // 0 selects std::thread::hardware_concurrency()
};

struct Estimate {
    double value = 0.0;
    std::optional<double> standard_error;  // empty for derived statistics such as TV

    friend bool operator==(const Estimate&, const Estimate&) = default;
};

struct TrialRecord {
    std::uint64_t trial = 0;
    bool connected = false;
    std::uint64_t isolated = 0;
    std::uint64_t largest = 0;         // L1
    std::uint64_t second_largest = 0;  // L2
};

struct ReportMeta {
    std::string experiment;
    std::string config;  // shorthand form
    std::string regime;
    std::string sampler;
    double c = 0.0;
    std::uint64_t super_vertices = 0;  // N
    std::uint64_t vertices = 0;        // n
    double p = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double wall_time = 0.0;  // seconds
};

struct ExperimentReport {
    std::map<std::string, Estimate> estimates;
    std::map<std::string, double> theory;
    std::map<std::string, std::vector<double>> distributions;
    std::vector<TrialRecord> trial_records;
    ReportMeta meta;
};

/// Per-trial seed; trial t always draws from the same stream regardless of
/// which worker runs it.
Seed trial_seed(Seed master, std::uint64_t trial);

SuperGraph sample(const SizeConfiguration& config, const ModelParams& params, Seed seed,
                  SamplerKind sampler);

ExperimentReport run_experiment(const ExperimentPlan& plan);

/// Connectivity and isolated-count statistics: P(connected), moments and
/// empirical law of X, and TV(X, Poisson(E[X])). Runs with >= 500 trials
/// check the mean of X against its exact expectation (4 standard errors);
/// runs with >= 2000 trials and N <= 100 also check the sample variance
/// (5 standard errors). A failed check throws SelfCheckError.
ExperimentReport run_connectivity_experiment(const ExperimentPlan& plan);

/// Mean L1/N and L2/N against the giant-component fraction rho and c*.
ExperimentReport run_giant_experiment(const ExperimentPlan& plan);

/// Averaged degree law Z_k/N against the mixed Poisson law, truncated at the
/// first k with theoretical tail below 1e-9 plus one lumped tail bucket.
ExperimentReport run_degree_experiment(const ExperimentPlan& plan);

/// Half the l1 distance between two pmfs indexed by k; the shorter one is
/// padded with zeros. Throws std::invalid_argument on negative mass or total
/// mass above 1 + 1e-9.
double total_variation(std::span<const double> a, std::span<const double> b);

}  // namespace supergraph
