#include "omlab/experiments.hpp"

#include "omlab/error.hpp"
#include "omlab/rng.hpp"
#include "omlab/theory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace omlab::experiments {

std::string_view to_string(SweepKind kind) noexcept {
    switch (kind) {
    case SweepKind::success_rate: return "success-rate";
    case SweepKind::conv_time: return "conv-time";
    case SweepKind::nfe: return "nfe";
    case SweepKind::trajectory: return "trajectory";
    case SweepKind::two_layer: return "two-layer";
    }
    return "?";
}

std::string_view to_string(GridParam param) noexcept {
    switch (param) {
    case GridParam::n: return "n";
    case GridParam::ell: return "ell";
    case GridParam::k: return "k";
    }
    return "?";
}

GridParam parse_grid_param(std::string_view name) {
    if (name == "n") return GridParam::n;
    if (name == "ell") return GridParam::ell;
    if (name == "k") return GridParam::k;
    throw InvalidParameter("unknown grid parameter '" + std::string(name) + "' (expected n, ell or k)");
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
            }
        }
    };
    std::vector<std::jthread> threads;
    threads.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(worker);
    threads.clear();
    if (failure) std::rethrow_exception(failure);
}

namespace {

std::uint64_t run_seed(std::uint64_t base_seed, SweepKind kind, std::uint64_t grid_value, std::uint64_t repeat) {
    return derive_seed({base_seed, static_cast<std::uint64_t>(kind) + 1, grid_value, repeat});
}

struct Moments {
    std::size_t count = 0;
    double mean = 0.0;
    double stderr_mean = 0.0;
};

Moments moments(const std::vector<double>& values) {
    Moments out;
    out.count = values.size();
    if (values.empty()) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.stderr_mean = std::sqrt(ss / static_cast<double>(values.size() - 1) / static_cast<double>(values.size()));
    }
    return out;
}

void require_spec(const SweepSpec& spec) {
    require(!spec.grid.empty(), "sweep grid must not be empty");
    require(spec.repeats >= 1, "sweep repeats must be >= 1");
}

/// R runs of one configuration, results in repeat order.
std::vector<RunResult> run_repeats(const Problem& problem, const Fos& fos, std::size_t n, const SweepSpec& spec,
                                   std::uint64_t grid_value, bool trajectory = false) {
    std::vector<RunResult> results(spec.repeats);
    parallel_for(spec.repeats, spec.jobs, [&](std::size_t r) {
        RunConfig cfg;
        cfg.n = n;
        cfg.max_generations = spec.max_generations;
        cfg.seed = run_seed(spec.base_seed, spec.kind, grid_value, r);
        cfg.record_trajectory = trajectory;
        results[r] = run_gomea(problem, fos, cfg);
    });
    return results;
}

}  // namespace

std::vector<SuccessRateRow> sweep_success_rate(const SweepSpec& spec) {
    require_spec(spec);
    const Problem problem = Problem::make(spec.problem, spec.ell, spec.k);
    const Fos fos = fos_from_name(spec.fos, spec.ell, spec.k);
    const std::vector<std::size_t> sizes = fos.mask_sizes();
    std::vector<SuccessRateRow> rows;
    for (std::size_t n : spec.grid) {
        const auto results = run_repeats(problem, fos, n, spec, n);
        const auto successes = std::count_if(results.begin(), results.end(), [](const RunResult& r) { return r.success; });
        rows.push_back({n, spec.repeats, static_cast<double>(successes) / static_cast<double>(spec.repeats),
                        theory::success_probability(sizes, 2.0, static_cast<double>(n))});
    }
    return rows;
}

std::vector<ConvTimeRow> sweep_conv_time(const SweepSpec& spec) {
    require_spec(spec);
    require(spec.grid_param == GridParam::n || spec.grid_param == GridParam::ell,
            "conv-time grid must be over n or ell");
    std::vector<ConvTimeRow> rows;
    for (std::size_t value : spec.grid) {
        const std::size_t ell = spec.grid_param == GridParam::ell ? value : spec.ell;
        const std::size_t n = spec.grid_param == GridParam::n ? value : spec.n;
        require(ell % spec.k == 0, "conv-time needs k to divide ell");
        const Problem problem = Problem::make(spec.problem, ell, spec.k);
        const Fos fos = fos_from_name(spec.fos, ell, spec.k);
        const auto results = run_repeats(problem, fos, n, spec, value);

        std::vector<double> generations;
        for (const RunResult& r : results)
            if (r.success) generations.push_back(static_cast<double>(r.generations));
        const Moments stats = moments(generations);

        const std::size_t m = ell / spec.k;
        const double bound = m == 1 ? theory::conv_lower_bound_single(static_cast<double>(n), 2.0, spec.k)
                                    : theory::conv_lower_bound_multi(n, 2.0, spec.k, m).t_lower;
        rows.push_back({spec.grid_param, value, n, stats.count, stats.mean, stats.stderr_mean, bound});
    }
    return rows;
}

std::vector<NfeRow> sweep_nfe(const SweepSpec& spec) {
    require_spec(spec);
    require(spec.grid_param == GridParam::k || spec.grid_param == GridParam::n, "nfe grid must be over k or n");
    require(spec.m >= 1, "nfe sweep needs m >= 1");
    std::vector<NfeRow> rows;
    for (std::size_t value : spec.grid) {
        const std::size_t k = spec.grid_param == GridParam::k ? value : spec.k;
        const std::size_t n = spec.grid_param == GridParam::n ? value : spec.n;
        const std::size_t ell = spec.m * k;
        const Fos fos = make_homogeneous_fos(ell, k);
        const theory::NfeModel bounds = theory::nfe_bounds(static_cast<double>(n), spec.m, 2.0, k);
        for (ProblemKind kind : spec.problems) {
            if (kind == ProblemKind::trap && k == 1) continue;
            const Problem problem = Problem::make(kind, ell, k);
            // The same seeds for every problem: identical initial populations.
            const auto results = run_repeats(problem, fos, n, spec, value);
            std::vector<double> nfe;
            for (const RunResult& r : results)
                if (r.success || spec.include_failures) nfe.push_back(static_cast<double>(r.ledger.total()));
            const Moments stats = moments(nfe);
            rows.push_back({kind, k, spec.m, n, stats.count, stats.mean, stats.stderr_mean, bounds.lower_total,
                            bounds.upper_total});
        }
    }
    return rows;
}

std::vector<TrajectoryRow> record_growth_trajectory(const SweepSpec& spec) {
    require_spec(spec);
    const Problem problem = Problem::make(spec.problem, spec.ell, spec.k);
    const Fos fos = fos_from_name(spec.fos, spec.ell, spec.k);
    std::vector<TrajectoryRow> rows;
    for (std::size_t n : spec.grid) {
        const auto results = run_repeats(problem, fos, n, spec, n, true);
        std::size_t length = 0;
        for (const RunResult& r : results) length = std::max(length, r.trajectory.size());
        // Runs that halted early hold their final proportion.
        std::vector<double> sum(length, 0.0);
        for (const RunResult& r : results) {
            for (std::size_t g = 0; g < length; ++g) {
                const auto& row = r.trajectory[std::min(g, r.trajectory.size() - 1)];
                double mean = 0.0;
                for (double p : row) mean += p;
                sum[g] += mean / static_cast<double>(row.size());
            }
        }
        for (std::size_t g = 0; g < length; ++g)
            rows.push_back({n, g, sum[g] / static_cast<double>(results.size())});
    }
    return rows;
}

BisectionResult bisect(const std::function<bool(std::size_t)>& passes, const BisectionConfig& cfg) {
    require(cfg.repeats >= 1 && cfg.n_floor >= 1, "bisection needs repeats >= 1 and n_floor >= 1");
    require(cfg.growth > 1.0, "bisection growth factor must exceed 1");
    require(cfg.resolution >= 0.0, "bisection resolution must be non-negative");
    BisectionResult out;
    auto probe = [&](std::size_t n) {
        const bool ok = passes(n);
        out.probes.push_back({n, ok});
        return ok;
    };

    std::size_t low = 0;
    std::size_t high = cfg.n_floor;
    while (!probe(high)) {
        low = high;
        high = std::max(high + 1, static_cast<std::size_t>(std::ceil(static_cast<double>(high) * cfg.growth)));
        if (high > cfg.n_cap)
            throw BisectionGaveUp("bisection gave up: no passing population size up to " + std::to_string(cfg.n_cap));
    }
    if (low != 0) {
        while (high - low > 1 && static_cast<double>(high) > static_cast<double>(low) * (1.0 + cfg.resolution)) {
            const std::size_t mid = low + (high - low) / 2;
            if (probe(mid))
                high = mid;
            else
                low = mid;
        }
    }
    out.n_min = high;
    return out;
}

BisectionResult bisect_min_population(const Problem& problem, const Fos& fos, const BisectionConfig& cfg) {
    const std::size_t needed = cfg.min_successes == 0 ? cfg.repeats : cfg.min_successes;
    require(needed <= cfg.repeats, "min_successes exceeds repeats");
    auto passes = [&](std::size_t n) {
        std::vector<char> success(cfg.repeats, 0);
        parallel_for(cfg.repeats, cfg.jobs, [&](std::size_t r) {
            RunConfig run;
            run.n = n;
            run.max_generations = cfg.max_generations;
            run.seed = derive_seed({cfg.base_seed, n, r});
            success[r] = run_gomea(problem, fos, run).success;
        });
        return static_cast<std::size_t>(std::count(success.begin(), success.end(), 1)) >= needed;
    };
    return bisect(passes, cfg);
}

double fit_ratio(std::span<const double> empirical, std::span<const double> base) {
    require(empirical.size() == base.size() && !base.empty(), "fit_ratio needs equal-length non-empty series");
    double cross = 0.0;
    double square = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        cross += empirical[i] * base[i];
        square += base[i] * base[i];
    }
    return cross / square;
}

TwoLayerResult two_layer_ratio_fit(const TwoLayerSpec& spec) {
    require(!spec.ell_grid.empty(), "two-layer ell grid must not be empty");
    require(spec.bisections >= 1, "two-layer needs at least one bisection per point");
    std::vector<std::size_t> ks{1};
    for (std::size_t k : spec.k_list) {
        require(k >= 1, "two-layer mask sizes must be >= 1");
        if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
    }

    TwoLayerResult out;
    for (std::size_t k : ks) {
        std::vector<TwoLayerRow> rows;
        for (std::size_t requested : spec.ell_grid) {
            const std::size_t ell = requested - requested % k;
            require(ell >= k, "two-layer ell must be at least k");
            const Problem problem = Problem::onemax(ell);
            const Fos single = make_homogeneous_fos(ell, 1);
            const Fos fos = k == 1 ? single : concat_fos(std::vector<Fos>{make_homogeneous_fos(ell, k), single});
            // Seeds do not depend on k: every FOS sees the same initial populations.
            std::vector<std::size_t> n_min(spec.bisections);
            parallel_for(spec.bisections, spec.bisection.jobs, [&](std::size_t b) {
                BisectionConfig cfg = spec.bisection;
                cfg.base_seed = derive_seed({spec.bisection.base_seed, ell, b});
                cfg.jobs = 1;
                n_min[b] = bisect_min_population(problem, fos, cfg).n_min;
            });
            double total = 0.0;
            for (std::size_t value : n_min) total += static_cast<double>(value);
            TwoLayerRow row;
            row.k = k;
            row.ell = ell;
            row.n_min_emp = total / static_cast<double>(spec.bisections);
            row.n_base_theory = theory::required_population({2.0, 1, ell, spec.alpha}).n;
            rows.push_back(row);
        }
        std::vector<double> empirical;
        std::vector<double> base;
        for (const auto& row : rows) {
            empirical.push_back(row.n_min_emp);
            base.push_back(row.n_base_theory);
        }
        RatioFit fit{k, fit_ratio(empirical, base), 0.0};
        for (auto& row : rows) {
            row.c_k = fit.c_k;
            row.rel_err = std::abs(fit.c_k * row.n_base_theory - row.n_min_emp) / row.n_min_emp;
            fit.max_rel_err = std::max(fit.max_rel_err, row.rel_err);
        }
        out.fits.push_back(fit);
        out.rows.insert(out.rows.end(), rows.begin(), rows.end());
    }
    return out;
}

std::string format_number(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.10g", value);
    return buffer;
}

void write_csv(std::ostream& out, const std::vector<SuccessRateRow>& rows) {
    out << "n,repeats,success_rate,theory_eq4\n";
    for (const auto& r : rows)
        out << r.n << ',' << r.repeats << ',' << format_number(r.success_rate) << ',' << format_number(r.theory) << '\n';
}

void write_csv(std::ostream& out, const std::vector<ConvTimeRow>& rows) {
    out << "grid_param,grid_value,n,repeats,mean_generations,stderr,theory_tL\n";
    for (const auto& r : rows)
        out << to_string(r.grid_param) << ',' << r.grid_value << ',' << r.n << ',' << r.repeats << ','
            << format_number(r.mean_generations) << ',' << format_number(r.stderr_generations) << ','
            << format_number(r.theory_t_lower) << '\n';
}

void write_csv(std::ostream& out, const std::vector<NfeRow>& rows) {
    out << "problem,k,m,n,repeats,mean_nfe,stderr,bound_lower,bound_upper\n";
    for (const auto& r : rows)
        out << to_string(r.problem) << ',' << r.k << ',' << r.m << ',' << r.n << ',' << r.repeats << ','
            << format_number(r.mean_nfe) << ',' << format_number(r.stderr_nfe) << ','
            << format_number(r.bound_lower) << ',' << format_number(r.bound_upper) << '\n';
}

void write_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows) {
    out << "n,generation,mean_p\n";
    for (const auto& r : rows) out << r.n << ',' << r.generation << ',' << format_number(r.mean_p) << '\n';
}

void write_csv(std::ostream& out, const std::vector<TwoLayerRow>& rows) {
    out << "k,ell,n_min_emp,n_base_theory,c_k,rel_err\n";
    for (const auto& r : rows)
        out << r.k << ',' << r.ell << ',' << format_number(r.n_min_emp) << ',' << format_number(r.n_base_theory)
            << ',' << format_number(r.c_k) << ',' << format_number(r.rel_err) << '\n';
}

}  // namespace omlab::experiments
