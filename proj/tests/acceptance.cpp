// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
// Usage: omlab_acceptance [criterion numbers...]   (default: all)

#include "omlab/experiments.hpp"
#include "omlab/fos.hpp"
#include "omlab/mixing.hpp"
#include "omlab/problems.hpp"
#include "omlab/rng.hpp"
#include "omlab/theory.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace omlab;
using namespace omlab::experiments;

namespace {

constexpr std::uint64_t kSeed = 20240601;

std::size_t jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

// 1. Empirical success rate vs the supply model, onemax with 5-bit masks.
Verdict supply_model() {
    SweepSpec spec;
    spec.kind = SweepKind::success_rate;
    spec.problem = ProblemKind::onemax;
    spec.ell = 500;
    spec.k = 5;
    spec.fos = "f_k";
    spec.grid = {150, 200, 250, 300, 400};
    spec.repeats = 1000;
    spec.base_seed = kSeed;
    spec.jobs = jobs();
    Verdict v;
    double worst = 0.0;
    for (const auto& row : sweep_success_rate(spec)) {
        const double model = oracle::supply_probability(5, 100, static_cast<double>(row.n));
        v.require(std::abs(row.theory - model) < 1e-12, "library model disagrees with oracle at n=" + std::to_string(row.n));
        worst = std::max(worst, std::abs(row.success_rate - model));
        std::printf("  n=%zu empirical=%.3f model=%.4f\n", row.n, row.success_rate, model);
    }
    v.require(worst <= 0.03, "max error too large");
    v.detail = fmt("max |empirical - model| = %.4f (limit 0.03)", worst) + (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

// 2. Population-size formula.
Verdict population_formula() {
    const auto r = theory::required_population({2, 5, 100, 0.1});
    const double p = theory::success_probability(5, 100, 2, 216);
    Verdict v;
    v.require(std::abs(r.n - 215.9) <= 0.1, "n out of range");
    v.require(r.ceiling == 216, "ceiling != 216");
    v.require(p >= 0.899 && p <= 0.901, "success probability at 216 out of range");
    v.require(std::abs(p - oracle::supply_probability(5, 100, 216)) < 1e-12, "disagrees with oracle");
    v.detail = fmt("n = %.4f, ceiling = %.0f, success(216) = %.5f", r.n, static_cast<double>(r.ceiling), p) +
               (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

std::vector<ConvTimeRow> conv_sweep(std::size_t ell, std::vector<std::size_t> grid) {
    SweepSpec spec;
    spec.kind = SweepKind::conv_time;
    spec.problem = ProblemKind::onemax;
    spec.ell = ell;
    spec.k = 5;
    spec.fos = "f_k";
    spec.grid = std::move(grid);
    spec.repeats = 100;
    spec.base_seed = kSeed;
    spec.jobs = jobs();
    return sweep_conv_time(spec);
}

// 3. Single mask of size 5.
Verdict single_mask_convergence() {
    Verdict v;
    double last_gap = std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (const auto& row : conv_sweep(5, {200, 800, 3200, 12800})) {
        const double t_l = oracle::single_mask_t_lower(static_cast<double>(row.n), 2, 5);
        const double gap = row.mean_generations - t_l;
        std::printf("  n=%zu runs=%zu mean=%.3f t_L=%.4f gap=%.3f\n", row.n, row.repeats, row.mean_generations, t_l, gap);
        v.require(std::abs(row.theory_t_lower - t_l) < 1e-12, "library bound disagrees with oracle");
        v.require(gap >= 0.0, "mean below bound at n=" + std::to_string(row.n));
        v.require(gap <= last_gap, "gap increases at n=" + std::to_string(row.n));
        worst = std::max(worst, gap);
        last_gap = gap;
    }
    v.require(worst <= 1.5, "gap above 1.5");
    v.detail = fmt("max gap = %.3f (limit 1.5)", worst) + (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

// 4. Multiple masks, l = 100.
Verdict multi_mask_convergence() {
    Verdict v;
    double worst = 0.0;
    std::vector<double> bound;
    for (const auto& row : conv_sweep(100, {200, 400, 800, 3200, 12800})) {
        const double x1 = oracle::expected_min_binomial(row.n, 1.0 / 32, 20);
        const double t_l = std::log2(std::log(1.0 / static_cast<double>(row.n)) /
                                     std::log(1.0 - x1 / static_cast<double>(row.n)));
        const double gap = row.mean_generations - t_l;
        std::printf("  n=%zu runs=%zu mean=%.3f t_L=%.4f gap=%.3f\n", row.n, row.repeats, row.mean_generations, t_l, gap);
        v.require(std::abs(row.theory_t_lower - t_l) < 1e-9, "library bound disagrees with oracle");
        v.require(gap >= 0.0, "mean below bound at n=" + std::to_string(row.n));
        worst = std::max(worst, gap);
        bound.push_back(t_l);
    }
    const auto lowest = std::min_element(bound.begin(), bound.end()) - bound.begin();
    const bool dips_then_rises = lowest > 0 && lowest < static_cast<long>(bound.size()) - 1;
    v.require(worst <= 2.0, "gap above 2");
    v.require(dips_then_rises, "bound is monotone in n");
    v.detail = fmt("max gap = %.3f (limit 2), bound minimum at grid index %.0f", worst, static_cast<double>(lowest)) +
               (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

// 5. Evaluation counts against the bounds, m = 100, n = 2000.
Verdict nfe_bounds() {
    SweepSpec spec;
    spec.kind = SweepKind::nfe;
    spec.m = 100;
    spec.n = 2000;
    spec.grid_param = GridParam::k;
    spec.grid = {2, 3, 4, 5};
    spec.repeats = 50;
    spec.base_seed = kSeed;
    spec.jobs = jobs();
    Verdict v;
    std::map<std::size_t, std::map<ProblemKind, double>> mean;
    double royal_err = 0.0;
    for (const auto& row : sweep_nfe(spec)) {
        const double lower = 2000.0 * (1.0 + 100.0 * theory::nfe_L(2, row.k));
        const double upper = 2000.0 * (1.0 + 100.0 * theory::nfe_U(2, row.k));
        std::printf("  %s k=%zu mean=%.0f bounds=[%.0f, %.0f]\n", std::string(to_string(row.problem)).c_str(), row.k,
                    row.mean_nfe, lower, upper);
        v.require(row.repeats == 50, "not every run succeeded");
        v.require(row.mean_nfe >= lower && row.mean_nfe <= 1.03 * upper,
                  std::string(to_string(row.problem)) + " outside bounds at k=" + std::to_string(row.k));
        mean[row.k][row.problem] = row.mean_nfe;
        if (row.problem == ProblemKind::royal_road) royal_err = std::max(royal_err, std::abs(row.mean_nfe - upper) / upper);
    }
    for (const auto& [k, by] : mean) {
        v.require(by.at(ProblemKind::trap) <= by.at(ProblemKind::onemax) &&
                      by.at(ProblemKind::onemax) <= by.at(ProblemKind::royal_road),
                  "ordering broken at k=" + std::to_string(k));
    }
    v.require(royal_err <= 0.05, "royal road upper-bound error above 5%");
    v.detail = fmt("royal road max relative error to upper bound = %.4f (limit 0.05)", royal_err) +
               (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

// 6. Reverse-growth table.
Verdict reverse_growth_table() {
    const int expected[4][4] = {{75, 25, 0, 25}, {69, 25, 6, 31}, {66, 23, 11, 34}, {64, 22, 14, 36}};
    Verdict v;
    std::string row_text;
    for (std::size_t k = 2; k <= 5; ++k) {
        const auto rg = theory::reverse_growth(k);
        const auto brute = oracle::enumerate_reverse_growth(k);
        const double got[4] = {rg.p_gt, rg.p_eq, rg.p_lt, rg.p_rg};
        for (int c = 0; c < 4; ++c)
            v.require(std::lround(100.0 * got[c]) == expected[k - 2][c], "rounding mismatch at k=" + std::to_string(k));
        v.require(rg.p_gt == brute.gt && rg.p_eq == brute.eq && rg.p_lt == brute.lt &&
                      rg.p_rg == brute.eq + brute.lt,
                  "enumeration mismatch at k=" + std::to_string(k));
        row_text += fmt("%.0f%% ", std::round(100.0 * rg.p_rg));
    }
    v.detail = "p_rg = " + row_text + (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

// 7. Two-layer ratio fit on onemax.
Verdict two_layer() {
    TwoLayerSpec spec;
    spec.ell_grid = {40, 80, 160};
    spec.k_list = {2, 3, 4, 5};
    spec.bisections = 1000;
    spec.bisection.repeats = 10;
    spec.bisection.base_seed = kSeed;
    spec.bisection.jobs = jobs();
    const auto result = two_layer_ratio_fit(spec);
    for (const auto& row : result.rows)
        std::printf("  k=%zu ell=%zu n_min=%.3f base=%.3f rel_err=%.4f\n", row.k, row.ell, row.n_min_emp,
                    row.n_base_theory, row.rel_err);
    Verdict v;
    double worst = 0.0;
    double last = 0.0;
    std::string cs;
    for (const auto& fit : result.fits) {
        cs += fmt("c_%.0f=%.4f ", static_cast<double>(fit.k), fit.c_k);
        worst = std::max(worst, fit.max_rel_err);
        if (fit.k < 2) continue;
        v.require(fit.c_k > last, "c_k not strictly increasing at k=" + std::to_string(fit.k));
        last = fit.c_k;
    }
    v.require(worst <= 0.10, "fit error above 10%");
    v.detail = cs + fmt("max relative error = %.4f (limit 0.10)", worst) + (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

// 8. Property suite.
Verdict properties() {
    Verdict v;
    std::string notes;

    // (a) closed form vs recurrence.
    double worst = 0.0;
    for (double chi : {2.0, 3.0, 4.0})
        for (std::size_t k = 1; k <= 6; ++k) {
            double p = std::pow(chi, -static_cast<double>(k));
            for (int t = 0; t <= 20; ++t) {
                worst = std::max(worst, std::abs(theory::growth_closed_form(chi, k, t) - p));
                p = theory::growth_recurrence_step(p);
            }
        }
    v.require(worst <= 1e-12, "(a) closed form differs from recurrence");
    notes += fmt("(a) max diff %.1e", worst);

    // (b) monotonicity of optimal mixing, plus (d) ledger recount.
    Rng meta(kSeed);
    std::size_t violations = 0, ledger_mismatches = 0;
    for (int c = 0; c < 10000; ++c) {
        const std::size_t k = 2 + meta.below(4);
        const std::size_t ell = k * (1 + meta.below(8));
        const auto kind = static_cast<ProblemKind>(meta.below(3));
        const Problem problem = Problem::make(kind, ell, k);
        Fos fos = make_homogeneous_fos(ell, k);
        switch (meta.below(3)) {
            case 0: break;
            case 1: fos = concat_fos(std::vector<Fos>{fos, make_homogeneous_fos(ell, 1)}); break;
            default: {
                std::vector<std::size_t> perm(ell);
                for (std::size_t i = 0; i < ell; ++i) perm[i] = i;
                for (std::size_t i = ell; i > 1; --i) std::swap(perm[i - 1], perm[meta.below(i)]);
                fos = make_homogeneous_fos(ell, k, Permutation(perm));
            }
        }
        const MixingContext ctx(problem, fos);
        Population pop(1 + meta.below(10), Chromosome(ell));
        for (auto& x : pop)
            for (std::size_t g = 0; g < ell; ++g) x[g] = static_cast<Allele>(meta.below(2));
        const std::size_t r = meta.below(pop.size());
        const std::uint64_t seed = meta();
        EvalLedger ledger;
        Rng rng(seed);
        const std::int64_t before = problem.score(pop[r]);
        const Offspring out = gom(ctx, pop[r], before, pop, rng, ledger);
        if (problem.score(out.genes) < before || out.score != problem.score(out.genes)) ++violations;

        oracle::Blocks blocks, masks;
        for (const Mask& m : problem.structure()) blocks.emplace_back(m.begin(), m.end());
        for (const Mask& m : fos) masks.emplace_back(m.begin(), m.end());
        Rng replay(seed);
        const auto ref = oracle::reference_gom(kind, blocks, masks, pop[r], pop, replay);
        if (ref.evaluations != ledger.om_evals || ref.offspring != out.genes) ++ledger_mismatches;
    }
    v.require(violations == 0, "(b) fitness decreased");
    v.require(ledger_mismatches == 0, "(d) ledger differs from recount");
    notes += "; (b) " + std::to_string(violations) + " decreases in 10000 cases";
    notes += "; (d) " + std::to_string(ledger_mismatches) + " ledger mismatches";

    // (d) continued: whole runs, recounted step by step.
    std::size_t run_mismatches = 0;
    for (int c = 0; c < 60; ++c) {
        const std::size_t k = 2 + meta.below(3);
        const std::size_t ell = k * (2 + meta.below(5));
        const auto kind = static_cast<ProblemKind>(meta.below(3));
        const Problem problem = Problem::make(kind, ell, k);
        const Fos fos = make_homogeneous_fos(ell, k);
        RunConfig cfg;
        cfg.n = 4 + meta.below(40);
        cfg.seed = meta();
        const RunResult got = run_gomea(problem, fos, cfg);
        oracle::Blocks blocks, masks;
        for (const Mask& m : problem.structure()) blocks.emplace_back(m.begin(), m.end());
        for (const Mask& m : fos) masks.emplace_back(m.begin(), m.end());
        Population pop = random_population(cfg.n, ell, cfg.seed);
        std::uint64_t om = 0;
        for (std::size_t g = 0; g < got.generations; ++g) {
            Population next;
            for (std::size_t i = 0; i < cfg.n; ++i) {
                Rng rng(receiver_seed(cfg.seed, g, i));
                auto o = oracle::reference_gom(kind, blocks, masks, pop[i], pop, rng);
                om += o.evaluations;
                next.push_back(std::move(o.offspring));
            }
            pop = std::move(next);
        }
        if (om != got.ledger.om_evals || got.ledger.init_evals != cfg.n) ++run_mismatches;
    }
    v.require(run_mismatches == 0, "(d) run ledger differs from recount");

    // (c) success iff initial supply, structure-matching disjoint masks.
    std::size_t counterexamples = 0, successes = 0;
    for (int c = 0; c < 500; ++c) {
        const std::size_t k = 2 + meta.below(4);
        const std::size_t ell = k * (3 + meta.below(8));
        const auto kind = static_cast<ProblemKind>(meta.below(3));
        const Problem problem = Problem::make(kind, ell, k);
        const Fos fos = make_homogeneous_fos(ell, k);
        RunConfig cfg;
        cfg.n = 2 + meta.below(std::size_t{1} << (k + 2));
        cfg.seed = meta();
        const Population init = random_population(cfg.n, ell, cfg.seed);
        bool supplied = true;
        for (const Mask& m : fos) {
            const bool present = std::any_of(init.begin(), init.end(), [&](const Chromosome& x) {
                return std::all_of(m.begin(), m.end(), [&](std::size_t g) { return x[g] == 1; });
            });
            supplied = supplied && present;
        }
        const RunResult r = run_gomea(problem, fos, cfg);
        if (r.success != supplied) ++counterexamples;
        successes += r.success;
    }
    v.require(counterexamples == 0, "(c) supply/success counterexample");
    v.require(successes > 0 && successes < 500, "(c) outcome not mixed");
    notes += "; (c) " + std::to_string(counterexamples) + " counterexamples, " + std::to_string(successes) +
             "/500 successes";

    // (e) U >= L with equality exactly when chi^k = 2.
    std::size_t bad = 0;
    for (double chi : {2.0, 3.0, 4.0})
        for (std::size_t k = 1; k <= 20; ++k) {
            const double u = theory::nfe_U(chi, k), l = theory::nfe_L(chi, k);
            const bool equal = std::abs(u - l) < 1e-12;
            const bool two = std::pow(chi, static_cast<double>(k)) == 2.0;
            if (u < l - 1e-12 || equal != two) ++bad;
        }
    v.require(bad == 0, "(e) U/L relation broken");

    // (f) sweep bit-reproducibility under 1 vs 8 workers.
    SweepSpec spec;
    spec.kind = SweepKind::nfe;
    spec.m = 20;
    spec.n = 200;
    spec.grid_param = GridParam::k;
    spec.grid = {1, 2, 3, 4, 5};
    spec.repeats = 20;
    spec.base_seed = kSeed;
    std::ostringstream one, eight;
    spec.jobs = 1;
    write_csv(one, sweep_nfe(spec));
    spec.jobs = 8;
    write_csv(eight, sweep_nfe(spec));
    v.require(one.str() == eight.str(), "(f) output depends on worker count");
    notes += std::string("; (e) ") + (bad == 0 ? "holds" : "fails") + "; (f) " +
             (one.str() == eight.str() ? "identical" : "different");

    v.detail = notes + (v.detail.empty() ? "" : "; " + v.detail);
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"supply model", supply_model},
        {"population-size formula", population_formula},
        {"single-mask convergence bound", single_mask_convergence},
        {"multi-mask convergence bound", multi_mask_convergence},
        {"evaluation bounds and problem ordering", nfe_bounds},
        {"reverse-growth table", reverse_growth_table},
        {"two-layer ratio fit", two_layer},
        {"property suite", properties},
    };
    std::set<std::size_t> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::stoul(argv[i]));

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (!selected.empty() && !selected.count(i + 1)) continue;
        const auto start = std::chrono::steady_clock::now();
        const Verdict v = criteria[i].second();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %zu (%s): %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    v.detail.c_str(), secs);
        std::fflush(stdout);
        failures += !v.pass;
    }
    return failures == 0 ? 0 : 1;
}
