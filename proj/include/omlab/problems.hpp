#pragma once

/// @file problems.hpp
/// @brief Binary benchmark functions with evaluation counting.
///
/// All three benchmarks are additively decomposable over a disjoint block
/// structure (onemax uses single-gene blocks), which lets the mixing engine
/// re-score only the blocks a mask touches. The global optimum is the
/// all-ones string in every case.

#include "omlab/chromosome.hpp"
#include "omlab/fos.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace omlab {

enum class ProblemKind { onemax, royal_road, trap };

std::string_view to_string(ProblemKind kind) noexcept;
/// Accepts "onemax", "royal" / "royal_road", "trap".
ProblemKind parse_problem_kind(std::string_view name);

enum class EvalPhase { init, om };

/// Function-evaluation counts: initialization plus optimal-mixing evaluations.
struct EvalLedger {
    std::uint64_t init_evals = 0;
    std::uint64_t om_evals = 0;

    std::uint64_t total() const noexcept { return init_evals + om_evals; }
    void record(EvalPhase phase) noexcept { ++(phase == EvalPhase::init ? init_evals : om_evals); }

    EvalLedger& operator+=(const EvalLedger& other) noexcept {
        init_evals += other.init_evals;
        om_evals += other.om_evals;
        return *this;
    }
    friend bool operator==(const EvalLedger&, const EvalLedger&) = default;
};

double eval_onemax(const Chromosome& x);
/// Number of masks of `structure` whose positions are all 1.
double eval_royal_road(const Chromosome& x, const Fos& structure);
/// Sum of per-block trap values. Throws InvalidParameter for a block of size 1.
double eval_trap(const Chromosome& x, const Fos& structure);

/// Trap value of a block with `ones` ones out of `size`; size >= 2.
double trap_block_value(std::size_t ones, std::size_t size) noexcept;

class Problem {
public:
    static Problem onemax(std::size_t ell);
    /// `structure` must be disjoint.
    static Problem royal_road(Fos structure);
    /// `structure` must be disjoint with blocks of size >= 2.
    static Problem trap(Fos structure);
    /// Royal road / trap over the identity k-block structure; onemax ignores k.
    static Problem make(ProblemKind kind, std::size_t ell, std::size_t k);

    ProblemKind kind() const noexcept { return kind_; }
    std::size_t ell() const noexcept { return structure_.ell(); }
    std::size_t chi() const noexcept { return 2; }
    /// Block structure; single-gene blocks for onemax.
    const Fos& structure() const noexcept { return structure_; }
    std::size_t block_count() const noexcept { return structure_.size(); }
    std::size_t block_of(std::size_t gene) const noexcept { return block_of_[gene]; }

    /// Fitness in integer units of 1/score_scale(), so equal fitness compares equal.
    /// Trap blocks use a scale of 10 * lcm(block size - 1); onemax and royal road use 1.
    std::int64_t score_scale() const noexcept { return scale_; }
    std::int64_t block_score(std::size_t block, const Chromosome& x) const noexcept;
    double block_value(std::size_t block, const Chromosome& x) const noexcept;
    /// Uncounted fitness. Throws InvalidParameter on a length or alphabet mismatch.
    std::int64_t score(const Chromosome& x) const;
    double fitness(const Chromosome& x) const;
    double to_fitness(std::int64_t score) const noexcept {
        return static_cast<double>(score) / static_cast<double>(scale_);
    }

    Chromosome optimum() const { return Chromosome(ell(), 1); }
    /// ell for onemax, the block count otherwise.
    double optimum_value() const noexcept;

private:
    Problem(ProblemKind kind, Fos structure);

    ProblemKind kind_;
    Fos structure_;
    std::vector<std::size_t> block_of_;
    std::int64_t scale_ = 1;
};

/// Counted evaluation: returns p.fitness(x) and increments the phase's counter by one.
double evaluate(const Problem& p, const Chromosome& x, EvalLedger& ledger, EvalPhase phase);
/// Same, returning the integer score.
std::int64_t evaluate_score(const Problem& p, const Chromosome& x, EvalLedger& ledger, EvalPhase phase);

}  // namespace omlab
