#include "supergraph/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace supergraph {

namespace {

double log_factorial(std::uint64_t k) {
    const double x = static_cast<double>(k) + 1.0;
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);  // std::lgamma writes the global signgam
#else
    return std::lgamma(x);
#endif
}

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
}

}  // namespace

double expected_isolated(const SizeConfiguration& config, double p) {
    check_probability(p);
    const auto n = config.vertex_count();
    double total = 0.0;
    if (p == 1.0) {
        // Only a super-vertex holding every vertex can be isolated.
        for (const auto& [size, count] : config.counts()) {
            if (size == n) total += static_cast<double>(count);
        }
        return total;
    }
    const double log_keep = std::log1p(-p);
    for (const auto& [size, count] : config.counts()) {
        const double exposure = static_cast<double>(size) * static_cast<double>(n - size);
        total += static_cast<double>(count) * std::exp(exposure * log_keep);
    }
    return total;
}

double variance_isolated(const SizeConfiguration& config, double p) {
    check_probability(p);
    if (p == 1.0) return 0.0;
    const auto n = config.vertex_count();
    const double log_keep = std::log1p(-p);

    struct Term {
        double size;
        double count;
        double exposure;  // i (n - i)
    };
    std::vector<Term> terms;
    for (const auto& [size, count] : config.counts()) {
        terms.push_back({static_cast<double>(size), static_cast<double>(count),
                         static_cast<double>(size) * static_cast<double>(n - size)});
    }

    // Var X = sum_v pi_v (1 - pi_v) + sum_{v != w} cov(I_v, I_w), where
    // cov = pi_v pi_w ((1-p)^{-ij} - 1) = (1-p)^{a_i + a_j - ij} (1 - (1-p)^{ij}).
    // Every term is non-negative, so nothing cancels.
    double variance = 0.0;
    for (const auto& a : terms) {
        const double pi = std::exp(a.exposure * log_keep);
        variance += a.count * pi * -std::expm1(a.exposure * log_keep);
        for (const auto& b : terms) {
            const double pairs = &a == &b ? a.count * (a.count - 1.0) : a.count * b.count;
            if (pairs == 0.0) continue;
            const double overlap = a.size * b.size;
            variance += pairs * std::exp((a.exposure + b.exposure - overlap) * log_keep) *
                        -std::expm1(overlap * log_keep);
        }
    }
    return std::max(variance, 0.0);
}

double limit_connectivity_probability(const ConnectivityRegime& regime, double u) {
    if (!(u >= 1.0)) throw std::invalid_argument("u must be >= 1");
    switch (regime.kind) {
        case ConnectivityLimit::c_to_minus_infinity: return 0.0;
        case ConnectivityLimit::c_to_plus_infinity: return 1.0;
        case ConnectivityLimit::fixed_c:
            if (std::abs(u - 1.0) <= 1e-9) return std::exp(-std::exp(-regime.c));
            return 1.0;
    }
    return 0.0;
}

double connectivity_parameter(const SizeConfiguration& config, double p) {
    const auto big_n = static_cast<double>(config.super_vertex_count());
    return big_n * p - std::log(big_n);
}

double sparse_parameter(const SizeConfiguration& config, double p) {
    return static_cast<double>(config.vertex_count()) * p;
}

double limit_kernel(std::uint64_t i, std::uint64_t j, double c, double u) {
    return (c / u) * static_cast<double>(i) * static_cast<double>(j);
}

double critical_threshold(const LimitProfile& profile) { return 1.0 / profile.s2; }

bool is_supercritical(const LimitProfile& profile, double c) { return c * profile.s2 > 1.0; }

GiantSolution solve_giant_fraction(const LimitProfile& profile, double c, double tol,
                                   std::uint64_t max_iter) {
    if (!(c >= 0.0)) throw std::invalid_argument("c must be >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");

    GiantSolution solution;
    if (!is_supercritical(profile, c)) {
        for (const auto& [size, weight] : profile.mu) solution.rho_by_size[size] = 0.0;
        return solution;
    }

    const double rate = c / profile.u;
    double s = profile.u;  // sum_j j mu_j, the supremum of the map
    double step = std::numeric_limits<double>::infinity();
    while (step > tol) {
        if (solution.iterations == max_iter) {
            throw ConvergenceError("giant-component fixed point did not converge within " +
                                       std::to_string(max_iter) + " iterations",
                                   step);
        }
        double next = 0.0;
        for (const auto& [size, weight] : profile.mu) {
            const double j = static_cast<double>(size);
            next += j * weight * -std::expm1(-rate * j * s);
        }
        step = std::abs(next - s);
        s = next;
        ++solution.iterations;
    }
    solution.residual = step;

    for (const auto& [size, weight] : profile.mu) {
        const double rho_i = -std::expm1(-rate * static_cast<double>(size) * s);
        solution.rho_by_size[size] = rho_i;
        solution.rho += rho_i * weight;
    }
    return solution;
}

double poisson_pmf(double mean, std::uint64_t k) {
    if (mean <= 0.0) return k == 0 ? 1.0 : 0.0;
    const double kd = static_cast<double>(k);
    return std::exp(-mean + kd * std::log(mean) - log_factorial(k));
}

double mixed_poisson_pmf(const LimitProfile& profile, double c, std::uint64_t k) {
    double total = 0.0;
    for (const auto& [size, weight] : profile.mu) {
        total += weight * poisson_pmf(static_cast<double>(size) * c, k);
    }
    return std::clamp(total, 0.0, 1.0);
}

double mixed_poisson_tail(const LimitProfile& profile, double c, std::uint64_t k) {
    double below = 0.0;
    for (std::uint64_t j = 0; j < k; ++j) below += mixed_poisson_pmf(profile, c, j);
    return std::clamp(1.0 - below, 0.0, 1.0);
}

std::uint64_t degree_truncation(const LimitProfile& profile, double c, double eps) {
    if (!(eps >= 1e-12)) throw std::invalid_argument("eps must be >= 1e-12");
    double below = 0.0;
    std::uint64_t k = 0;
    while (1.0 - below >= eps) {
        below += mixed_poisson_pmf(profile, c, k);
        ++k;
    }
    return k;
}

std::vector<double> mixed_poisson_pmf_table(const LimitProfile& profile, double c,
                                            std::uint64_t count) {
    std::vector<double> table(count);
    for (std::uint64_t k = 0; k < count; ++k) table[k] = mixed_poisson_pmf(profile, c, k);
    return table;
}

}  // namespace supergraph
