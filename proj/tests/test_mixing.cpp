#include "omlab/fos.hpp"
#include "omlab/mixing.hpp"
#include "omlab/problems.hpp"
#include "omlab/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace omlab;

namespace {

oracle::Blocks blocks_of(const Fos& fos) {
    oracle::Blocks out;
    for (const Mask& m : fos) out.emplace_back(m.begin(), m.end());
    return out;
}

Population random_pop(std::size_t n, std::size_t ell, Rng& rng) {
    Population pop(n, Chromosome(ell));
    for (auto& x : pop)
        for (std::size_t g = 0; g < ell; ++g) x[g] = static_cast<Allele>(rng.below(2));
    return pop;
}

}  // namespace

TEST_CASE("gom agrees with the step-by-step oracle") {
    Rng meta(99);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t k = 2 + meta.below(4);
        const std::size_t ell = k * (1 + meta.below(6));
        const auto kind = static_cast<ProblemKind>(meta.below(3));
        const Problem problem = Problem::make(kind, ell, k);
        const Fos fos = meta.below(2) ? make_homogeneous_fos(ell, k)
                                      : concat_fos(std::vector<Fos>{make_homogeneous_fos(ell, k),
                                                                    make_homogeneous_fos(ell, 1)});
        const MixingContext ctx(problem, fos);
        const Population pop = random_pop(1 + meta.below(12), ell, meta);
        const std::size_t receiver = meta.below(pop.size());
        const std::uint64_t seed = meta();

        EvalLedger ledger;
        Rng a(seed);
        const Offspring got = gom(ctx, pop[receiver], problem.score(pop[receiver]), pop, a, ledger);
        Rng b(seed);
        const auto want = oracle::reference_gom(kind, blocks_of(problem.structure()), blocks_of(fos), pop[receiver], pop, b);
        CHECK(got.genes == want.offspring);
        CHECK(ledger.om_evals == want.evaluations);
        CHECK(ledger.init_evals == 0);
        CHECK(got.score == problem.score(got.genes));
        CHECK(got.score >= problem.score(pop[receiver]));
    }
}

TEST_CASE("gom with only the receiver as donor is the identity") {
    const Problem p = Problem::make(ProblemKind::trap, 10, 5);
    const Fos fos = make_homogeneous_fos(10, 5);
    const MixingContext ctx(p, fos);
    const Population pop{Chromosome::from_string("0110100101")};
    EvalLedger ledger;
    Rng rng(1);
    const auto out = gom(ctx, pop[0], p.score(pop[0]), pop, rng, ledger);
    CHECK(out.genes == pop[0]);
    CHECK(ledger.om_evals == 0);
}

TEST_CASE("a correct set is never replaced") {
    const Problem p = Problem::make(ProblemKind::trap, 10, 5);
    const Fos fos = make_homogeneous_fos(10, 5);
    const MixingContext ctx(p, fos);
    Rng rng(7);
    for (int rep = 0; rep < 200; ++rep) {
        Population pop = random_pop(8, 10, rng);
        for (std::size_t g = 0; g < 5; ++g) pop[0][g] = 1;
        EvalLedger ledger;
        const auto out = gom(ctx, pop[0], p.score(pop[0]), pop, rng, ledger);
        for (std::size_t g = 0; g < 5; ++g) CHECK(out.genes[g] == 1);
    }
}

TEST_CASE("receiver streams make offspring independent of processing order") {
    const Problem p = Problem::make(ProblemKind::royal_road, 20, 4);
    const Fos fos = make_homogeneous_fos(20, 4);
    const MixingContext ctx(p, fos);
    Rng rng(5);
    const Population parents = random_pop(16, 20, rng);
    std::vector<std::int64_t> fit;
    for (const auto& x : parents) fit.push_back(p.score(x));

    std::vector<std::size_t> order(16);
    std::iota(order.begin(), order.end(), 0);
    Population forward(16), shuffled(16);
    EvalLedger l1, l2;
    for (std::size_t i : order) forward[i] = offspring_for(ctx, parents, fit, 42, 3, i, l1).genes;
    std::reverse(order.begin(), order.end());
    std::swap(order[2], order[9]);
    for (std::size_t i : order) shuffled[i] = offspring_for(ctx, parents, fit, 42, 3, i, l2).genes;
    CHECK(forward == shuffled);
    CHECK(l1 == l2);
}

TEST_CASE("full run agrees with a run rebuilt from the oracle") {
    Rng meta(2024);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t k = 2 + meta.below(3);
        const std::size_t ell = k * (2 + meta.below(4));
        const auto kind = static_cast<ProblemKind>(meta.below(3));
        const Problem problem = Problem::make(kind, ell, k);
        const Fos fos = make_homogeneous_fos(ell, k);
        RunConfig cfg;
        cfg.n = 4 + meta.below(30);
        cfg.seed = meta();
        const RunResult got = run_gomea(problem, fos, cfg);

        const auto blocks = blocks_of(problem.structure());
        const auto masks = blocks_of(fos);
        Population pop = random_population(cfg.n, ell, cfg.seed);
        std::uint64_t om = 0;
        std::size_t generation = 0;
        auto unanimous = [&] {
            return std::all_of(pop.begin(), pop.end(), [&](const Chromosome& x) { return x == pop.front(); });
        };
        while (!unanimous() && generation < cfg.max_generations) {
            Population next;
            for (std::size_t i = 0; i < cfg.n; ++i) {
                Rng rng(receiver_seed(cfg.seed, generation, i));
                auto o = oracle::reference_gom(kind, blocks, masks, pop[i], pop, rng);
                om += o.evaluations;
                next.push_back(o.offspring);
            }
            pop = std::move(next);
            ++generation;
        }
        CHECK(got.generations == generation);
        CHECK(got.ledger.init_evals == cfg.n);
        CHECK(got.ledger.om_evals == om);
        CHECK(got.success == std::any_of(pop.begin(), pop.end(), [&](const Chromosome& x) { return x == problem.optimum(); }));
        if (got.success) CHECK(got.best_fitness == problem.optimum_value());
    }
}

TEST_CASE("single member population converges immediately") {
    RunConfig cfg;
    cfg.n = 1;
    cfg.seed = 8;
    const auto r = run_gomea(Problem::onemax(6), make_homogeneous_fos(6, 1), cfg);
    CHECK(r.generations == 0);
    CHECK(r.ledger.total() == 1);
    CHECK(r.halt == HaltReason::converged);
    CHECK(r.success == (random_population(1, 6, 8)[0] == Chromosome(6, 1)));
}

TEST_CASE("generation cap is reported") {
    RunConfig cfg;
    cfg.n = 200;
    cfg.seed = 1;
    cfg.max_generations = 1;
    const auto r = run_gomea(Problem::onemax(40), make_homogeneous_fos(40, 1), cfg);
    CHECK(r.halt == HaltReason::generation_cap);
    CHECK_FALSE(r.success);
    CHECK(r.generations == 1);
}

TEST_CASE("runs are reproducible") {
    RunConfig cfg;
    cfg.n = 60;
    cfg.seed = 77;
    cfg.record_trajectory = true;
    const Problem p = Problem::make(ProblemKind::trap, 30, 3);
    const Fos fos = make_homogeneous_fos(30, 3);
    const auto a = run_gomea(p, fos, cfg);
    const auto b = run_gomea(p, fos, cfg);
    CHECK(a.ledger == b.ledger);
    CHECK(a.generations == b.generations);
    CHECK(a.trajectory == b.trajectory);
}

TEST_CASE("trajectory is non-decreasing for structure-matching masks") {
    Rng meta(4);
    for (int rep = 0; rep < 30; ++rep) {
        RunConfig cfg;
        cfg.n = 20 + meta.below(80);
        cfg.seed = meta();
        cfg.record_trajectory = true;
        const Problem p = Problem::make(ProblemKind::trap, 20, 4);
        const auto r = run_gomea(p, make_homogeneous_fos(20, 4), cfg);
        REQUIRE(r.trajectory.size() == r.generations + 1);
        for (std::size_t g = 1; g < r.trajectory.size(); ++g)
            for (std::size_t i = 0; i < 5; ++i) CHECK(r.trajectory[g][i] >= r.trajectory[g - 1][i]);
        if (r.success) {
            for (double v : r.trajectory.back()) CHECK(v == 1.0);
        }
    }
}

TEST_CASE("correct proportion and convergence helpers") {
    const Population pop{Chromosome::from_string("1100"), Chromosome::from_string("1111"),
                         Chromosome::from_string("0111")};
    const std::vector<Allele> ones{1, 1};
    CHECK(measure_correct_proportion(pop, Mask({0, 1}), ones) == doctest::Approx(2.0 / 3.0));
    CHECK(measure_correct_proportion(pop, Mask({2, 3}), ones) == doctest::Approx(2.0 / 3.0));
    CHECK_FALSE(has_converged(pop));
    CHECK(has_converged(Population(3, Chromosome::from_string("0101"))));
}

TEST_CASE("initial population is uniform") {
    const Population pop = random_population(2000, 50, 123);
    double ones = 0;
    for (const auto& x : pop)
        for (std::size_t g = 0; g < 50; ++g) ones += x[g];
    CHECK(ones / 100000.0 == doctest::Approx(0.5).epsilon(0.01));
}
