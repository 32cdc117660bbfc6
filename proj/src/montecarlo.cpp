#include "supergraph/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "rng.hpp"
#include "supergraph/graph.hpp"
#include "supergraph/theory.hpp"

namespace supergraph {

namespace {

constexpr std::uint64_t kTrialStream = 0x747269616cULL;  // "trial"

struct TrialOutcome {
    TrialRecord record;
    std::map<std::uint64_t, std::uint64_t> degree_histogram;
};

// Runs fn(t) for t in [0, trials) on a worker pool; results are indexed by
// trial, so the reduction order never depends on scheduling.
template <typename Fn>
auto run_trials(std::uint64_t trials, unsigned workers, Fn fn) {
    using Result = decltype(fn(std::uint64_t{}));
    std::vector<Result> results(trials);
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const auto t = next.fetch_add(1);
            if (t >= trials) return;
            try {
                results[t] = fn(t);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(trials);
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double fourth = 0.0;    // central fourth moment (biased)
    std::uint64_t count = 0;

    double standard_error() const {
        return count > 1 ? std::sqrt(variance / static_cast<double>(count)) : 0.0;
    }
    double variance_standard_error() const {
        if (count < 2) return 0.0;
        const double biased = variance * static_cast<double>(count - 1) / static_cast<double>(count);
        return std::sqrt(std::max(fourth - biased * biased, 0.0) / static_cast<double>(count));
    }
};

Moments moments(std::span<const double> values) {
    Moments m;
    m.count = values.size();
    if (values.empty()) return m;
    for (double x : values) m.mean += x;
    m.mean /= static_cast<double>(values.size());
    double second = 0.0;
    for (double x : values) {
        const double d = x - m.mean;
        second += d * d;
        m.fourth += d * d * d * d;
    }
    m.fourth /= static_cast<double>(values.size());
    m.variance = values.size() > 1 ? second / static_cast<double>(values.size() - 1) : 0.0;
    return m;
}

Estimate estimate_of(const Moments& m) { return {m.mean, m.standard_error()}; }

std::vector<TrialOutcome> sample_trials(const ExperimentPlan& plan, const ModelParams& params,
                                        bool keep_degrees) {
    if (plan.trials < 1) throw std::invalid_argument("trials must be >= 1");
    return run_trials(plan.trials, plan.workers, [&](std::uint64_t t) {
        const auto graph = sample(plan.config, params, trial_seed(plan.seed, t), plan.sampler);
        const auto summary = connected_components(graph);
        TrialOutcome outcome;
        outcome.record = {t, summary.sizes_desc.size() == 1, summary.isolated_count,
                          summary.largest(), summary.second_largest()};
        if (keep_degrees) outcome.degree_histogram = degree_histogram(graph);
        return outcome;
    });
}

ExperimentReport start_report(const ExperimentPlan& plan, const ModelParams& params) {
    ExperimentReport report;
    report.meta.experiment = std::string(to_string(plan.experiment));
    report.meta.config = to_shorthand(plan.config);
    report.meta.regime = std::string(to_string(plan.regime));
    report.meta.sampler = std::string(to_string(plan.sampler));
    report.meta.c = plan.c;
    report.meta.super_vertices = plan.config.super_vertex_count();
    report.meta.vertices = plan.config.vertex_count();
    report.meta.p = params.p;
    report.meta.trials = plan.trials;
    report.meta.seed = plan.seed.value;
    return report;
}

std::vector<double> column(const std::vector<TrialOutcome>& outcomes, auto field) {
    std::vector<double> values;
    values.reserve(outcomes.size());
    for (const auto& o : outcomes) values.push_back(field(o.record));
    return values;
}

// Poisson(mean) pmf on 0..length-2 with the remaining mass lumped into the
// last entry.
std::vector<double> lumped_poisson(double mean, std::size_t length) {
    std::vector<double> pmf(length, 0.0);
    double below = 0.0;
    for (std::size_t k = 0; k + 1 < length; ++k) {
        pmf[k] = poisson_pmf(mean, k);
        below += pmf[k];
    }
    pmf[length - 1] = std::max(1.0 - below, 0.0);
    return pmf;
}

std::size_t poisson_support(double mean, double eps) {
    double below = 0.0;
    std::size_t k = 0;
    while (1.0 - below >= eps) below += poisson_pmf(mean, k++);
    return k;
}

void check_isolated_moments(const ExperimentPlan& plan, const Moments& x, double expected,
                            double variance) {
    const double trials = static_cast<double>(plan.trials);
    if (plan.trials >= 500) {
        // An all-equal sample has zero spread; fall back to the exact moment.
        const double se = std::max(x.standard_error(), std::sqrt(variance / trials));
        if (std::abs(x.mean - expected) > 4.0 * se + 1e-12) {
            std::ostringstream msg;
            msg << "self-check failed: isolated mean " << x.mean << " vs E[X] " << expected
                << " (standard error " << se << ", trials " << plan.trials << ", config "
                << to_shorthand(plan.config) << ")";
            throw SelfCheckError(msg.str());
        }
    }
    if (plan.trials >= 2000 && plan.config.super_vertex_count() <= 100) {
        const double se = std::max(x.variance_standard_error(),
                                   variance * std::sqrt(2.0 / (trials - 1.0)));
        if (std::abs(x.variance - variance) > 5.0 * se + 1e-12) {
            std::ostringstream msg;
            msg << "self-check failed: isolated variance " << x.variance << " vs Var[X] "
                << variance << " (standard error " << se << ", trials " << plan.trials
                << ", config " << to_shorthand(plan.config) << ")";
            throw SelfCheckError(msg.str());
        }
    }
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

std::string_view to_string(Experiment experiment) {
    switch (experiment) {
        case Experiment::connectivity: return "connectivity";
        case Experiment::giant: return "giant";
        case Experiment::degree: return "degree";
    }
    return "connectivity";
}

std::string_view to_string(SamplerKind sampler) {
    return sampler == SamplerKind::direct ? "direct" : "constructive";
}

SamplerKind parse_sampler(std::string_view text) {
    if (text == "direct") return SamplerKind::direct;
    if (text == "constructive") return SamplerKind::constructive;
    throw std::invalid_argument("unknown sampler '" + std::string(text) + "'");
}

Seed trial_seed(Seed master, std::uint64_t trial) {
    return {detail::stream_key(master.value, kTrialStream, trial)};
}

SuperGraph sample(const SizeConfiguration& config, const ModelParams& params, Seed seed,
                  SamplerKind sampler) {
    return sampler == SamplerKind::direct ? sample_direct(config, params, seed)
                                          : sample_constructive(config, params, seed);
}

ExperimentReport run_experiment(const ExperimentPlan& plan) {
    switch (plan.experiment) {
        case Experiment::connectivity: return run_connectivity_experiment(plan);
        case Experiment::giant: return run_giant_experiment(plan);
        case Experiment::degree: return run_degree_experiment(plan);
    }
    throw std::invalid_argument("unknown experiment");
}

ExperimentReport run_connectivity_experiment(const ExperimentPlan& plan) {
    const Stopwatch clock;
    const auto params = resolve_p(plan.regime, plan.c, plan.config);
    const auto outcomes = sample_trials(plan, params, false);
    auto report = start_report(plan, params);

    const auto connected = moments(column(outcomes, [](const TrialRecord& r) { return r.connected ? 1.0 : 0.0; }));
    const auto isolated = moments(column(outcomes, [](const TrialRecord& r) { return static_cast<double>(r.isolated); }));

    const double expected = expected_isolated(plan.config, params.p);
    const double variance = variance_isolated(plan.config, params.p);
    check_isolated_moments(plan, isolated, expected, variance);

    std::uint64_t max_isolated = 0;
    for (const auto& o : outcomes) max_isolated = std::max(max_isolated, o.record.isolated);
    const std::size_t length =
        std::max<std::size_t>(max_isolated + 1, poisson_support(expected, 1e-12) + 1);
    std::vector<double> empirical(length, 0.0);
    for (const auto& o : outcomes) empirical[o.record.isolated] += 1.0;
    for (auto& x : empirical) x /= static_cast<double>(plan.trials);
    auto poisson = lumped_poisson(expected, length);

    report.estimates["P_connected"] = estimate_of(connected);
    report.estimates["isolated_mean"] = estimate_of(isolated);
    report.estimates["isolated_variance"] = {isolated.variance, isolated.variance_standard_error()};
    report.estimates["tv_isolated_poisson"] = {total_variation(empirical, poisson), std::nullopt};

    const double c_eff = connectivity_parameter(plan.config, params.p);
    const double u = empirical_profile(plan.config).u;
    report.theory["c"] = c_eff;
    report.theory["u"] = u;
    report.theory["E_isolated"] = expected;
    report.theory["Var_isolated"] = variance;
    report.theory["exp_minus_c"] = std::exp(-c_eff);
    report.theory["P_connected_limit"] =
        limit_connectivity_probability({ConnectivityLimit::fixed_c, c_eff}, u);

    report.distributions["isolated_pmf_empirical"] = std::move(empirical);
    report.distributions["isolated_pmf_poisson"] = std::move(poisson);
    for (const auto& o : outcomes) report.trial_records.push_back(o.record);
    report.meta.wall_time = clock.seconds();
    return report;
}

ExperimentReport run_giant_experiment(const ExperimentPlan& plan) {
    const Stopwatch clock;
    const auto params = resolve_p(plan.regime, plan.c, plan.config);
    const auto outcomes = sample_trials(plan, params, false);
    auto report = start_report(plan, params);

    const double big_n = static_cast<double>(plan.config.super_vertex_count());
    report.estimates["L1_fraction"] = estimate_of(moments(column(
        outcomes, [big_n](const TrialRecord& r) { return static_cast<double>(r.largest) / big_n; })));
    report.estimates["L2_fraction"] = estimate_of(moments(column(outcomes, [big_n](const TrialRecord& r) {
        return static_cast<double>(r.second_largest) / big_n;
    })));

    const auto profile = empirical_profile(plan.config);
    const double c_eff = sparse_parameter(plan.config, params.p);
    const auto giant = solve_giant_fraction(profile, c_eff);
    report.theory["c"] = c_eff;
    report.theory["u"] = profile.u;
    report.theory["s2"] = profile.s2;
    report.theory["c_star"] = critical_threshold(profile);
    report.theory["rho"] = giant.rho;
    for (const auto& [size, rho_i] : giant.rho_by_size) {
        report.theory["rho_size_" + std::to_string(size)] = rho_i;
    }

    for (const auto& o : outcomes) report.trial_records.push_back(o.record);
    report.meta.wall_time = clock.seconds();
    return report;
}

ExperimentReport run_degree_experiment(const ExperimentPlan& plan) {
    const Stopwatch clock;
    const auto params = resolve_p(plan.regime, plan.c, plan.config);
    const auto outcomes = sample_trials(plan, params, true);
    auto report = start_report(plan, params);

    const auto profile = empirical_profile(plan.config);
    const double c_eff = sparse_parameter(plan.config, params.p);
    const std::uint64_t k_max = degree_truncation(profile, c_eff);
    const double big_n = static_cast<double>(plan.config.super_vertex_count());
    const double trials = static_cast<double>(plan.trials);

    // Entry k < k_max holds Z_k / N, entry k_max holds Z_{>=k_max} / N.
    std::vector<double> empirical(k_max + 1, 0.0);
    std::vector<double> tail_empirical(k_max + 1, 0.0);
    std::vector<double> zero_fraction;
    std::vector<double> mean_degree;
    for (const auto& o : outcomes) {
        double degree_sum = 0.0;
        for (const auto& [k, z] : o.degree_histogram) {
            const double share = static_cast<double>(z) / big_n / trials;
            empirical[std::min(k, k_max)] += share;
            for (std::uint64_t j = 0; j <= std::min(k, k_max); ++j) tail_empirical[j] += share;
            degree_sum += static_cast<double>(k) * static_cast<double>(z);
        }
        const auto zero = o.degree_histogram.find(0);
        zero_fraction.push_back(zero == o.degree_histogram.end() ? 0.0 : static_cast<double>(zero->second) / big_n);
        mean_degree.push_back(degree_sum / big_n);
    }

    auto theory_pmf = mixed_poisson_pmf_table(profile, c_eff, k_max);
    double below = 0.0;
    for (double x : theory_pmf) below += x;
    theory_pmf.push_back(std::max(1.0 - below, 0.0));

    std::vector<double> tail_theory(k_max + 1, 0.0);
    std::vector<double> tail_ratio(k_max + 1, 0.0);
    double mass = 1.0;
    for (std::uint64_t k = 0; k <= k_max; ++k) {
        tail_theory[k] = std::max(mass, 0.0);
        if (k < k_max) mass -= theory_pmf[k];
        tail_ratio[k] = tail_theory[k] > 0.0 ? tail_empirical[k] / tail_theory[k] : 0.0;
    }

    report.estimates["pmf_0"] = estimate_of(moments(zero_fraction));
    report.estimates["mean_degree"] = estimate_of(moments(mean_degree));
    report.estimates["tv_degree_mixed_poisson"] = {total_variation(empirical, theory_pmf),
                                                    std::nullopt};

    report.theory["c"] = c_eff;
    report.theory["u"] = profile.u;
    report.theory["s2"] = profile.s2;
    report.theory["K_max"] = static_cast<double>(k_max);
    report.theory["pmf_0"] = theory_pmf[0];
    report.theory["mean_degree"] = c_eff * profile.u;

    report.distributions["degree_pmf_empirical"] = std::move(empirical);
    report.distributions["degree_pmf_theory"] = std::move(theory_pmf);
    report.distributions["degree_tail_empirical"] = std::move(tail_empirical);
    report.distributions["degree_tail_theory"] = std::move(tail_theory);
    report.distributions["degree_tail_ratio"] = std::move(tail_ratio);
    for (const auto& o : outcomes) report.trial_records.push_back(o.record);
    report.meta.wall_time = clock.seconds();
    return report;
}

double total_variation(std::span<const double> a, std::span<const double> b) {
    const auto check = [](std::span<const double> pmf) {
        double total = 0.0;
        for (double x : pmf) {
            if (!(x >= 0.0)) throw std::invalid_argument("pmf has negative mass");
            total += x;
        }
        if (total > 1.0 + 1e-9) throw std::invalid_argument("pmf mass exceeds 1");
    };
    check(a);
    check(b);
    double distance = 0.0;
    const std::size_t length = std::max(a.size(), b.size());
    for (std::size_t k = 0; k < length; ++k) {
        const double x = k < a.size() ? a[k] : 0.0;
        const double y = k < b.size() ? b[k] : 0.0;
        distance += std::abs(x - y);
    }
    return 0.5 * distance;
}

}  // namespace supergraph
