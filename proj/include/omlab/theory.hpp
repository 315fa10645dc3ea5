#pragma once

/// @file theory.hpp
/// @brief Closed-form models for optimal-mixing EAs with disjoint masks.
///
/// Notation used in the comments: chi is the alphabet size, k a mask size, m
/// the number of masks, n the population size, alpha the tolerated failure
/// rate. All functions are pure.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace omlab::theory {

struct SupplyParams {
    double chi = 2.0;
    std::size_t k = 1;
    std::size_t m = 1;
    double alpha = 0.1;
};

struct GrowthState {
    double t = 0.0;
    double p = 0.0;
    double q = 1.0;
};

enum class BoundStatus {
    ok,
    /// Expected minimum supply x1 < 1: the initial population is too small
    /// for the bound to mean anything.
    supply_starved,
};

struct ConvergenceBound {
    double t_lower = 0.0;
    /// Expected first order statistic of the per-mask correct-set counts.
    double x1 = 0.0;
    BoundStatus status = BoundStatus::ok;
};

struct NfeModel {
    double u_of_k = 0.0;
    double l_of_k = 0.0;
    double lower_total = 0.0;
    double upper_total = 0.0;
};

struct ReverseGrowth {
    std::size_t k = 2;
    double p_gt = 0.0;
    double p_eq = 0.0;
    double p_lt = 0.0;
    double p_rg = 0.0;
};

struct CrossCompetitionParams {
    double s = 1.0;
    double p0 = 0.5;
    double alpha = 0.5;
};

struct RequiredPopulation {
    double n = 0.0;
    std::size_t ceiling = 0;
};

/// chi^k (k ln chi + ln m).
double goldberg_supply_size(double chi, std::size_t k, std::size_t m);

/// Probability that every mask has at least one correct set in a uniform
/// random population: prod_i (1 - (1 - chi^-k_i)^n).
double success_probability(std::span<const std::size_t> mask_sizes, double chi, double n);
double success_probability(std::size_t k, std::size_t m, double chi, double n);

/// Root n of success_probability(k, m, chi, n) = 1 - alpha, plus its ceiling.
RequiredPopulation required_population(const SupplyParams& params);

/// Expected correct proportion after t generations: 1 - (1 - chi^-k)^(2^t).
double growth_closed_form(double chi, std::size_t k, double t);
GrowthState growth_state(double chi, std::size_t k, double t);

/// p + p(1 - p).
double growth_recurrence_step(double p);

/// Single-mask convergence-time lower bound log2(ln(1/n) / ln(1 - chi^-k)); n >= 2.
double conv_lower_bound_single(double n, double chi, std::size_t k);

/// E[min of m iid Binomial(n, p)], by exact survival-function summation.
double expected_min_binomial(std::size_t n, double p, std::size_t m);

/// Multi-mask convergence-time lower bound using the least-supplied mask.
ConvergenceBound conv_lower_bound_multi(std::size_t n, double chi, std::size_t k, std::size_t m);

/// Lower per-mask evaluation factor 2(1 - chi^-k).
double nfe_L(double chi, std::size_t k);
/// Upper per-mask evaluation factor, sum_t (1 - p_t^2 - (1 - p_t)^2 / (chi^k - 1)).
double nfe_U(double chi, std::size_t k);

/// Bounds on total evaluations n(1 + m L(k)) .. n(1 + m U(k)).
NfeModel nfe_bounds(double n, std::size_t m, double chi, std::size_t k);
/// Heterogeneous masks: per-mask U and L summed.
NfeModel nfe_bounds(double n, std::span<const std::size_t> mask_sizes, double chi);

/// Exact comparison of X1 = 1 + X0 and X0' with X0, X0' iid Binomial(k - 1, 1/2); k >= 2.
ReverseGrowth reverse_growth(std::size_t k);

/// s ln(alpha) / ln(1 - p0).
double cross_competition_min_pop(const CrossCompetitionParams& params);

}  // namespace omlab::theory
