#include "omlab/theory.hpp"

#include "omlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace omlab::theory {

namespace {

void require_chi(double chi) { require(chi >= 2.0, "alphabet size chi must be >= 2"); }

/// chi^-k, the chance a uniform random fragment is the optimal one.
double correct_chance(double chi, std::size_t k) { return std::pow(chi, -static_cast<double>(k)); }

}  // namespace

double goldberg_supply_size(double chi, std::size_t k, std::size_t m) {
    require_chi(chi);
    require(k >= 1 && m >= 1, "goldberg_supply_size needs k >= 1 and m >= 1");
    const double kd = static_cast<double>(k);
    return std::pow(chi, kd) * (kd * std::log(chi) + std::log(static_cast<double>(m)));
}

double success_probability(std::span<const std::size_t> mask_sizes, double chi, double n) {
    require_chi(chi);
    require(n >= 0.0, "population size must be non-negative");
    double product = 1.0;
    for (std::size_t k : mask_sizes) {
        require(k >= 1, "mask sizes must be >= 1");
        // 1 - (1 - chi^-k)^n without cancellation.
        product *= -std::expm1(n * std::log1p(-correct_chance(chi, k)));
    }
    return product;
}

double success_probability(std::size_t k, std::size_t m, double chi, double n) {
    require_chi(chi);
    require(k >= 1 && m >= 1, "success_probability needs k >= 1 and m >= 1");
    const double per_mask = -std::expm1(n * std::log1p(-correct_chance(chi, k)));
    return std::pow(per_mask, static_cast<double>(m));
}

RequiredPopulation required_population(const SupplyParams& params) {
    require_chi(params.chi);
    require(params.k >= 1 && params.m >= 1, "required_population needs k >= 1 and m >= 1");
    require(params.alpha > 0.0 && params.alpha < 1.0, "alpha must lie in (0, 1)");
    const double m = static_cast<double>(params.m);
    // 1 - (1 - alpha)^(1/m)
    const double per_mask_failure = -std::expm1(std::log1p(-params.alpha) / m);
    RequiredPopulation out;
    out.n = std::log(per_mask_failure) / std::log1p(-correct_chance(params.chi, params.k));
    const double ceiling = std::ceil(out.n - 1e-9);
    out.ceiling = static_cast<std::size_t>(std::max(1.0, ceiling));
    return out;
}

double growth_closed_form(double chi, std::size_t k, double t) {
    require_chi(chi);
    require(t >= 0.0, "generation t must be non-negative");
    return -std::expm1(std::exp2(t) * std::log1p(-correct_chance(chi, k)));
}

GrowthState growth_state(double chi, std::size_t k, double t) {
    const double p = growth_closed_form(chi, k, t);
    return {t, p, std::exp(std::exp2(t) * std::log1p(-correct_chance(chi, k)))};
}

double growth_recurrence_step(double p) {
    require(p >= 0.0 && p <= 1.0, "proportion p must lie in [0, 1]");
    return p + p * (1.0 - p);
}

double conv_lower_bound_single(double n, double chi, std::size_t k) {
    require_chi(chi);
    require(n >= 2.0, "convergence bound needs n >= 2");
    return std::log2(std::log(1.0 / n) / std::log1p(-correct_chance(chi, k)));
}

double expected_min_binomial(std::size_t n, double p, std::size_t m) {
    require(n >= 1 && m >= 1, "expected_min_binomial needs n >= 1 and m >= 1");
    require(p > 0.0 && p < 1.0, "binomial p must lie in (0, 1)");
    const double nd = static_cast<double>(n);
    const double odds = p / (1.0 - p);

    // Walk the pmf outward from the mode with the ratio recurrence and stop
    // once terms are negligible next to the mode.
    const auto mode = static_cast<std::size_t>(std::min(nd, std::floor((nd + 1.0) * p)));
    const double md = static_cast<double>(mode);
    const double log_mode = std::lgamma(nd + 1.0) - std::lgamma(md + 1.0) - std::lgamma(nd - md + 1.0) +
                            md * std::log(p) + (nd - md) * std::log1p(-p);
    const double mode_pmf = std::exp(log_mode);
    const double cutoff = mode_pmf * 1e-20;

    std::vector<double> below;  // pmf(mode-1), pmf(mode-2), ...
    for (std::size_t x = mode; x > 0;) {
        const double prev = (below.empty() ? mode_pmf : below.back()) * static_cast<double>(x) /
                            (static_cast<double>(n - x + 1) * odds);
        if (prev < cutoff) break;
        below.push_back(prev);
        --x;
    }
    std::vector<double> above;  // pmf(mode+1), pmf(mode+2), ...
    for (std::size_t x = mode; x < n;) {
        const double next = (above.empty() ? mode_pmf : above.back()) * static_cast<double>(n - x) * odds /
                            static_cast<double>(x + 1);
        if (next < cutoff) break;
        above.push_back(next);
        ++x;
    }

    const std::size_t lo = mode - below.size();
    std::vector<double> pmf(below.rbegin(), below.rend());
    pmf.push_back(mode_pmf);
    pmf.insert(pmf.end(), above.begin(), above.end());
    double mass = 0.0;
    for (double v : pmf) mass += v;

    // sum_{x=0}^{n-1} P(X > x)^m; P(X > x) is 1 to double precision below lo
    // and 0 from the last retained value on.
    const double md_m = static_cast<double>(m);
    double total = static_cast<double>(lo);
    double tail = 0.0;
    std::vector<double> survival(pmf.size());
    for (std::size_t j = pmf.size(); j-- > 0;) {
        survival[j] = tail / mass;  // P(X > lo + j)
        tail += pmf[j];
    }
    for (std::size_t j = 0; j < survival.size() && lo + j < n; ++j) total += std::pow(survival[j], md_m);
    return total;
}

ConvergenceBound conv_lower_bound_multi(std::size_t n, double chi, std::size_t k, std::size_t m) {
    require_chi(chi);
    require(n >= 2 && m >= 1, "convergence bound needs n >= 2 and m >= 1");
    ConvergenceBound out;
    const double nd = static_cast<double>(n);
    out.x1 = expected_min_binomial(n, correct_chance(chi, k), m);
    out.status = out.x1 < 1.0 ? BoundStatus::supply_starved : BoundStatus::ok;
    out.t_lower = out.x1 > 0.0 ? std::log2(std::log(1.0 / nd) / std::log1p(-out.x1 / nd))
                               : std::numeric_limits<double>::infinity();
    return out;
}

double nfe_L(double chi, std::size_t k) {
    require_chi(chi);
    require(k >= 1, "mask size k must be >= 1");
    return 2.0 * (1.0 - correct_chance(chi, k));
}

double nfe_U(double chi, std::size_t k) {
    require_chi(chi);
    require(k >= 1, "mask size k must be >= 1");
    const double suboptimal = std::pow(chi, static_cast<double>(k)) - 1.0;
    double q = 1.0 - correct_chance(chi, k);
    double sum = 0.0;
    // q squares every generation, so the series collapses within a few dozen terms.
    for (int t = 0; t < 64; ++t) {
        // 1 - p^2 - q^2 / (chi^k - 1) with p = 1 - q.
        const double term = 2.0 * q - q * q - q * q / suboptimal;
        if (term < 1e-12) break;
        sum += term;
        q *= q;
    }
    return sum;
}

NfeModel nfe_bounds(double n, std::size_t m, double chi, std::size_t k) {
    require(n >= 1.0 && m >= 1, "nfe_bounds needs n >= 1 and m >= 1");
    NfeModel out;
    out.u_of_k = nfe_U(chi, k);
    out.l_of_k = nfe_L(chi, k);
    const double md = static_cast<double>(m);
    out.lower_total = n * (1.0 + md * out.l_of_k);
    out.upper_total = n * (1.0 + md * out.u_of_k);
    return out;
}

NfeModel nfe_bounds(double n, std::span<const std::size_t> mask_sizes, double chi) {
    require(n >= 1.0 && !mask_sizes.empty(), "nfe_bounds needs n >= 1 and at least one mask");
    NfeModel out;
    for (std::size_t k : mask_sizes) {
        out.u_of_k += nfe_U(chi, k);
        out.l_of_k += nfe_L(chi, k);
    }
    out.lower_total = n * (1.0 + out.l_of_k);
    out.upper_total = n * (1.0 + out.u_of_k);
    return out;
}

ReverseGrowth reverse_growth(std::size_t k) {
    require(k >= 2, "reverse_growth needs k >= 2");
    require(k <= 64, "reverse_growth supports k <= 64");
    const std::size_t trials = k - 1;
    std::vector<double> pmf(trials + 1);
    double coefficient = 1.0;
    const double scale = std::exp2(-static_cast<double>(trials));
    for (std::size_t x = 0; x <= trials; ++x) {
        pmf[x] = coefficient * scale;
        coefficient = coefficient * static_cast<double>(trials - x) / static_cast<double>(x + 1);
    }
    ReverseGrowth out;
    out.k = k;
    for (std::size_t a = 0; a <= trials; ++a)
        for (std::size_t b = 0; b <= trials; ++b) {
            const double joint = pmf[a] * pmf[b];
            if (a + 1 > b)
                out.p_gt += joint;
            else if (a + 1 == b)
                out.p_eq += joint;
            else
                out.p_lt += joint;
        }
    out.p_rg = out.p_eq + out.p_lt;
    return out;
}

double cross_competition_min_pop(const CrossCompetitionParams& params) {
    require(params.s > 0.0, "selection pressure s must be positive");
    require(params.p0 > 0.0 && params.p0 < 1.0, "p0 must lie in (0, 1)");
    require(params.alpha > 0.0 && params.alpha < 1.0, "alpha must lie in (0, 1)");
    return params.s * std::log(params.alpha) / std::log1p(-params.p0);
}

}  // namespace omlab::theory
