#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "supergraph/config.hpp"

namespace supergraph {

/// Raised when the giant-component fixed point fails to converge.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

// ---------------------------------------------------------------------------
// Isolated super-vertices at finite N

/// E[X] = sum_i k_i (1-p)^{i(n-i)}, X the number of isolated super-vertices.
double expected_isolated(const SizeConfiguration& config, double p);

/// Exact Var[X]:
///   E[X] + sum_{i,j} k_i k_j (1-p)^{i(n-i)+j(n-j)} ((1-p)^{-ij} - 1)
///        - sum_i k_i (1-p)^{2i(n-i)-i^2}
/// Powers are evaluated in the log domain. Returns 0 for p = 1.
double variance_isolated(const SizeConfiguration& config, double p);

// ---------------------------------------------------------------------------
// Connectivity threshold, p = (ln N + c) / N

enum class ConnectivityLimit { c_to_minus_infinity, fixed_c, c_to_plus_infinity };

struct ConnectivityRegime {
    ConnectivityLimit kind = ConnectivityLimit::fixed_c;
    double c = 0.0;  // only read for fixed_c
};

/// Limiting probability that the graph is connected:
///   c -> -inf: 0 for every u
///   fixed c, u = 1 (within 1e-9): exp(-exp(-c))
///   fixed c with u > 1, or c -> +inf: 1
double limit_connectivity_probability(const ConnectivityRegime& regime, double u);

/// The c with p = (ln N + c) / N for this configuration.
double connectivity_parameter(const SizeConfiguration& config, double p);
/// The c with p = c / n for this configuration.
double sparse_parameter(const SizeConfiguration& config, double p);

// ---------------------------------------------------------------------------
// Sparse regime, p = c / n

/// Rank-one limit kernel kappa(i, j) = (c / u) i j.
double limit_kernel(std::uint64_t i, std::uint64_t j, double c, double u);

/// c* = 1 / s2. The boundary c = c* counts as subcritical.
double critical_threshold(const LimitProfile& profile);
bool is_supercritical(const LimitProfile& profile, double c);

struct GiantSolution {
    std::map<std::uint64_t, double> rho_by_size;
    double rho = 0.0;
    std::uint64_t iterations = 0;
    double residual = 0.0;
};

/// Survival probabilities of the multi-type branching process with kernel
/// kappa(i, j) = (c/u) i j. With S = sum_j j mu_j rho(j), the fixed point is
///   S = sum_j j mu_j (1 - exp(-(c j / u) S)),   rho(i) = 1 - exp(-(c i / u) S).
/// Iteration starts at S = u and decreases monotonically to the maximal
/// fixed point. Subcritical profiles (c s2 <= 1) return rho = 0 exactly.
GiantSolution solve_giant_fraction(const LimitProfile& profile, double c, double tol = 1e-12,
                                   std::uint64_t max_iter = 1'000'000);

// ---------------------------------------------------------------------------
// Degree law

/// P(Xi = k) = sum_i mu_i P(Po(i c) = k).
double mixed_poisson_pmf(const LimitProfile& profile, double c, std::uint64_t k);
/// P(Xi >= k) = 1 - sum_{j<k} P(Xi = j).
double mixed_poisson_tail(const LimitProfile& profile, double c, std::uint64_t k);

/// Smallest k with P(Xi >= k) < eps.
std::uint64_t degree_truncation(const LimitProfile& profile, double c, double eps = 1e-9);

/// P(Xi = k) for k = 0..count-1.
std::vector<double> mixed_poisson_pmf_table(const LimitProfile& profile, double c,
                                            std::uint64_t count);

double poisson_pmf(double mean, std::uint64_t k);

}  // namespace supergraph
