#pragma once

/// @file experiments.hpp
/// @brief Seeded experiment sweeps comparing GOMEA runs against the models.
///
/// Every run owns a seed derived as derive_seed({base_seed, experiment id,
/// grid value, repeat}); see rng.hpp for the mixing function. Runs execute on
/// a worker pool and are aggregated in index order, so output does not depend
/// on the worker count.

#include "omlab/fos.hpp"
#include "omlab/mixing.hpp"
#include "omlab/problems.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace omlab::experiments {

enum class SweepKind { success_rate, conv_time, nfe, trajectory, two_layer };
enum class GridParam { n, ell, k };

std::string_view to_string(SweepKind kind) noexcept;
std::string_view to_string(GridParam param) noexcept;
GridParam parse_grid_param(std::string_view name);

/// Declarative sweep. Fields a kind does not use are ignored:
///   success_rate: problem, ell, k, fos; grid over n.
///   conv_time:    problem, k, fos; grid over n (fixed ell) or ell (fixed n).
///   nfe:          problems, m; grid over k (fixed n, ell = m k) or n (fixed k).
///   trajectory:   problem, ell, k, fos; grid over n.
struct SweepSpec {
    SweepKind kind = SweepKind::success_rate;
    ProblemKind problem = ProblemKind::onemax;
    std::vector<ProblemKind> problems{ProblemKind::onemax, ProblemKind::royal_road, ProblemKind::trap};
    std::size_t ell = 0;
    std::size_t k = 1;
    std::size_t n = 0;
    std::size_t m = 0;
    std::string fos = "f_k";
    GridParam grid_param = GridParam::n;
    std::vector<std::size_t> grid;
    std::size_t repeats = 10;
    std::uint64_t base_seed = 0;
    std::size_t jobs = 1;
    std::size_t max_generations = 512;
    /// NFE averages include failed runs when set.
    bool include_failures = false;
};

struct SuccessRateRow {
    std::size_t n = 0;
    std::size_t repeats = 0;
    double success_rate = 0.0;
    double theory = 0.0;
};

struct ConvTimeRow {
    GridParam grid_param = GridParam::n;
    std::size_t grid_value = 0;
    std::size_t n = 0;
    /// Runs averaged (successful runs only).
    std::size_t repeats = 0;
    double mean_generations = 0.0;
    double stderr_generations = 0.0;
    double theory_t_lower = 0.0;
};

struct NfeRow {
    ProblemKind problem = ProblemKind::onemax;
    std::size_t k = 0;
    std::size_t m = 0;
    std::size_t n = 0;
    /// Runs averaged.
    std::size_t repeats = 0;
    double mean_nfe = 0.0;
    double stderr_nfe = 0.0;
    double bound_lower = 0.0;
    double bound_upper = 0.0;
};

struct TrajectoryRow {
    std::size_t n = 0;
    std::size_t generation = 0;
    double mean_p = 0.0;
};

std::vector<SuccessRateRow> sweep_success_rate(const SweepSpec& spec);
std::vector<ConvTimeRow> sweep_conv_time(const SweepSpec& spec);
std::vector<NfeRow> sweep_nfe(const SweepSpec& spec);
std::vector<TrajectoryRow> record_growth_trajectory(const SweepSpec& spec);

/// Thrown when the doubling phase exceeds the population cap.
class BisectionGaveUp : public std::runtime_error {
public:
    explicit BisectionGaveUp(const std::string& what) : std::runtime_error(what) {}
};

struct BisectionConfig {
    std::size_t repeats = 10;
    /// Successes needed to pass a probe; 0 means all repeats.
    std::size_t min_successes = 0;
    std::size_t n_floor = 2;
    double growth = 2.0;
    /// Binary search stops once high / low <= 1 + resolution (or they are adjacent).
    double resolution = 0.05;
    std::size_t n_cap = std::size_t{1} << 20;
    std::uint64_t base_seed = 0;
    std::size_t jobs = 1;
    std::size_t max_generations = 512;
};

struct Probe {
    std::size_t n = 0;
    bool passed = false;
};

struct BisectionResult {
    std::size_t n_min = 0;
    std::vector<Probe> probes;
};

/// Doubling from n_floor until `passes`, then binary search between the last
/// failing and first passing size. Returns the smallest probed passing size.
BisectionResult bisect(const std::function<bool(std::size_t)>& passes, const BisectionConfig& cfg);

/// Bisection with a probe that runs cfg.repeats seeded GOMEA runs at size n.
BisectionResult bisect_min_population(const Problem& problem, const Fos& fos, const BisectionConfig& cfg);

struct TwoLayerSpec {
    std::vector<std::size_t> ell_grid;
    /// Layer sizes of F_{k,1}; the F_1 baseline (k = 1) is always added.
    std::vector<std::size_t> k_list;
    BisectionConfig bisection;
    /// Independent bisections averaged per (k, ell).
    std::size_t bisections = 1;
    /// Failure rate used for the F_1 baseline curve.
    double alpha = 0.1;
};

struct TwoLayerRow {
    std::size_t k = 0;
    /// Problem length actually used: the requested ell rounded down to a multiple of k.
    std::size_t ell = 0;
    double n_min_emp = 0.0;
    double n_base_theory = 0.0;
    double c_k = 0.0;
    double rel_err = 0.0;
};

struct RatioFit {
    std::size_t k = 0;
    double c_k = 0.0;
    double max_rel_err = 0.0;
};

struct TwoLayerResult {
    std::vector<TwoLayerRow> rows;
    std::vector<RatioFit> fits;
};

/// Least-squares constant through the origin: sum(emp * base) / sum(base^2).
double fit_ratio(std::span<const double> empirical, std::span<const double> base);

TwoLayerResult two_layer_ratio_fit(const TwoLayerSpec& spec);

// CSV writers; a header line is always written.
void write_csv(std::ostream& out, const std::vector<SuccessRateRow>& rows);
void write_csv(std::ostream& out, const std::vector<ConvTimeRow>& rows);
void write_csv(std::ostream& out, const std::vector<NfeRow>& rows);
void write_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows);
void write_csv(std::ostream& out, const std::vector<TwoLayerRow>& rows);

/// Decimal text with ten significant digits ("%.10g").
std::string format_number(double value);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Rethrows the first exception.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace omlab::experiments
