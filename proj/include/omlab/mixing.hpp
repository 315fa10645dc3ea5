#pragma once

/// @file mixing.hpp
/// @brief Gene-pool optimal mixing and the generational GOMEA loop.
///
/// Each generation builds n offspring from a frozen parent population and then
/// replaces the parents wholesale. Receiver i in generation g draws donors from
/// its own stream `receiver_seed(run seed, g, i)`, so offspring do not depend on
/// the order in which receivers are processed.

#include "omlab/chromosome.hpp"
#include "omlab/fos.hpp"
#include "omlab/problems.hpp"
#include "omlab/rng.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace omlab {

using Population = std::vector<Chromosome>;

struct RunConfig {
    std::size_t n = 1;
    std::size_t max_generations = 512;
    std::uint64_t seed = 0;
    bool record_trajectory = false;
};

enum class HaltReason { converged, generation_cap };

struct RunResult {
    /// Some member equals the (unique) global optimum at halt.
    bool success = false;
    std::size_t generations = 0;
    HaltReason halt = HaltReason::converged;
    EvalLedger ledger;
    double best_fitness = 0.0;
    /// trajectory[g][i]: proportion of members holding the optimal fragment on
    /// mask i of the FOS after g generations (g = 0 is the initial population).
    /// Empty unless RunConfig::record_trajectory.
    std::vector<std::vector<double>> trajectory;
    std::optional<Chromosome> converged_to;
};

/// Precomputed per-mask view of which problem blocks a mask touches, used to
/// re-score a candidate by the affected blocks only.
class MixingContext {
public:
    /// Throws InvalidParameter when fos.ell() != problem.ell().
    MixingContext(const Problem& problem, const Fos& fos);

    const Problem& problem() const noexcept { return *problem_; }
    const Fos& fos() const noexcept { return *fos_; }
    std::span<const std::size_t> affected_blocks(std::size_t mask) const noexcept { return affected_[mask]; }

    /// Sum of the scores of the blocks mask `mask` touches.
    std::int64_t partial_score(std::size_t mask, const Chromosome& x) const noexcept;

private:
    const Problem* problem_;
    const Fos* fos_;
    std::vector<std::vector<std::size_t>> affected_;
};

struct Offspring {
    Chromosome genes;
    /// Integer score, see Problem::score_scale.
    std::int64_t score = 0;
};

/// One application of gene-pool optimal mixing to `receiver` (whose score is
/// already known and not re-counted). Masks are visited in FOS order; for each,
/// a donor is drawn uniformly from `pop` (the receiver's own parent included).
/// A candidate is evaluated, and counted as one om evaluation, only when the
/// donor fragment differs from the offspring's current fragment; it is kept
/// iff its fitness is >= the offspring's.
Offspring gom(const MixingContext& ctx, const Chromosome& receiver, std::int64_t receiver_score,
              std::span<const Chromosome> pop, Rng& rng, EvalLedger& ledger);

std::uint64_t receiver_seed(std::uint64_t run_seed, std::uint64_t generation, std::uint64_t receiver) noexcept;
std::uint64_t init_seed(std::uint64_t run_seed, std::uint64_t member) noexcept;

/// Offspring of parent `receiver` in generation `generation`, drawn from its own stream.
Offspring offspring_for(const MixingContext& ctx, std::span<const Chromosome> parents,
                        std::span<const std::int64_t> parent_scores, std::uint64_t run_seed,
                        std::uint64_t generation, std::size_t receiver, EvalLedger& ledger);

/// Uniform random binary population of size n for problem length ell.
Population random_population(std::size_t n, std::size_t ell, std::uint64_t run_seed);

bool has_converged(std::span<const Chromosome> pop);

/// Fraction of members whose alleles on `mask` equal `optimal_fragment`.
double measure_correct_proportion(std::span<const Chromosome> pop, const Mask& mask,
                                  std::span<const Allele> optimal_fragment);

/// Full run: random initialization (n init evaluations) then generations until
/// the population is unanimous or max_generations is reached.
RunResult run_gomea(const Problem& problem, const Fos& fos, const RunConfig& cfg);

}  // namespace omlab
