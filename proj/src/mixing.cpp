#include "omlab/mixing.hpp"

#include "omlab/error.hpp"

#include <algorithm>
#include <limits>

namespace omlab {

MixingContext::MixingContext(const Problem& problem, const Fos& fos)
    : problem_(&problem), fos_(&fos), affected_(fos.size()) {
    require(fos.ell() == problem.ell(), "FOS length does not match problem length");
    for (std::size_t i = 0; i < fos.size(); ++i) {
        auto& blocks = affected_[i];
        for (std::size_t g : fos[i]) blocks.push_back(problem.block_of(g));
        std::sort(blocks.begin(), blocks.end());
        blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    }
}

std::int64_t MixingContext::partial_score(std::size_t mask, const Chromosome& x) const noexcept {
    std::int64_t sum = 0;
    for (std::size_t b : affected_[mask]) sum += problem_->block_score(b, x);
    return sum;
}

Offspring gom(const MixingContext& ctx, const Chromosome& receiver, std::int64_t receiver_score,
              std::span<const Chromosome> pop, Rng& rng, EvalLedger& ledger) {
    Offspring out{receiver, receiver_score};
    const Fos& fos = ctx.fos();
    std::vector<Allele> saved;
    for (std::size_t i = 0; i < fos.size(); ++i) {
        const Mask& mask = fos[i];
        const Chromosome& donor = pop[rng.below(pop.size())];
        const bool differs = std::any_of(mask.begin(), mask.end(),
                                         [&](std::size_t g) { return donor[g] != out.genes[g]; });
        if (!differs) continue;

        ledger.record(EvalPhase::om);
        const std::int64_t before = ctx.partial_score(i, out.genes);
        saved.clear();
        for (std::size_t g : mask) {
            saved.push_back(out.genes[g]);
            out.genes[g] = donor[g];
        }
        const std::int64_t after = ctx.partial_score(i, out.genes);
        if (after >= before) {
            out.score += after - before;
        } else {
            for (std::size_t j = 0; j < mask.size(); ++j) out.genes[mask[j]] = saved[j];
        }
    }
    return out;
}

std::uint64_t receiver_seed(std::uint64_t run_seed, std::uint64_t generation, std::uint64_t receiver) noexcept {
    return derive_seed({run_seed, generation, receiver});
}

std::uint64_t init_seed(std::uint64_t run_seed, std::uint64_t member) noexcept {
    return derive_seed({run_seed, std::numeric_limits<std::uint64_t>::max(), member});
}

Offspring offspring_for(const MixingContext& ctx, std::span<const Chromosome> parents,
                        std::span<const std::int64_t> parent_scores, std::uint64_t run_seed,
                        std::uint64_t generation, std::size_t receiver, EvalLedger& ledger) {
    Rng rng(receiver_seed(run_seed, generation, receiver));
    return gom(ctx, parents[receiver], parent_scores[receiver], parents, rng, ledger);
}

Population random_population(std::size_t n, std::size_t ell, std::uint64_t run_seed) {
    Population pop;
    pop.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(init_seed(run_seed, i));
        Chromosome x(ell);
        std::uint64_t bits = 0;
        for (std::size_t g = 0; g < ell; ++g) {
            if (g % 64 == 0) bits = rng();
            x[g] = static_cast<Allele>(bits & 1u);
            bits >>= 1;
        }
        pop.push_back(std::move(x));
    }
    return pop;
}

bool has_converged(std::span<const Chromosome> pop) {
    return std::all_of(pop.begin(), pop.end(), [&](const Chromosome& x) { return x == pop.front(); });
}

double measure_correct_proportion(std::span<const Chromosome> pop, const Mask& mask,
                                  std::span<const Allele> optimal_fragment) {
    require(optimal_fragment.size() == mask.size(), "optimal fragment length does not match mask size");
    if (pop.empty()) return 0.0;
    std::size_t correct = 0;
    for (const Chromosome& x : pop) {
        bool match = true;
        for (std::size_t j = 0; j < mask.size() && match; ++j) match = x[mask[j]] == optimal_fragment[j];
        correct += match;
    }
    return static_cast<double>(correct) / static_cast<double>(pop.size());
}

namespace {

std::vector<double> correct_proportions(std::span<const Chromosome> pop, const Fos& fos, const Chromosome& optimum) {
    std::vector<double> row;
    row.reserve(fos.size());
    std::vector<Allele> fragment;
    for (const Mask& mask : fos) {
        fragment.clear();
        for (std::size_t g : mask) fragment.push_back(optimum[g]);
        row.push_back(measure_correct_proportion(pop, mask, fragment));
    }
    return row;
}

}  // namespace

RunResult run_gomea(const Problem& problem, const Fos& fos, const RunConfig& cfg) {
    require(cfg.n >= 1, "population size must be at least 1");
    require(cfg.max_generations >= 1, "max_generations must be at least 1");
    const MixingContext ctx(problem, fos);
    const Chromosome optimum = problem.optimum();

    RunResult result;
    Population parents = random_population(cfg.n, problem.ell(), cfg.seed);
    std::vector<std::int64_t> scores(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) scores[i] = evaluate_score(problem, parents[i], result.ledger, EvalPhase::init);
    if (cfg.record_trajectory) result.trajectory.push_back(correct_proportions(parents, fos, optimum));

    Population offspring(cfg.n);
    std::vector<std::int64_t> offspring_scores(cfg.n);
    std::size_t generation = 0;
    while (!has_converged(parents) && generation < cfg.max_generations) {
        for (std::size_t i = 0; i < cfg.n; ++i) {
            Offspring o = offspring_for(ctx, parents, scores, cfg.seed, generation, i, result.ledger);
            offspring[i] = std::move(o.genes);
            offspring_scores[i] = o.score;
        }
        std::swap(parents, offspring);
        std::swap(scores, offspring_scores);
        ++generation;
        if (cfg.record_trajectory) result.trajectory.push_back(correct_proportions(parents, fos, optimum));
    }

    result.generations = generation;
    const bool converged = has_converged(parents);
    result.halt = converged ? HaltReason::converged : HaltReason::generation_cap;
    if (converged) result.converged_to = parents.front();
    result.success = std::any_of(parents.begin(), parents.end(), [&](const Chromosome& x) { return x == optimum; });
    for (const Chromosome& x : parents) result.best_fitness = std::max(result.best_fitness, problem.fitness(x));
    return result;
}

}  // namespace omlab
