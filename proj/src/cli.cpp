#include "omlab/cli.hpp"

#include "omlab/error.hpp"
#include "omlab/experiments.hpp"
#include "omlab/fos.hpp"
#include "omlab/mixing.hpp"
#include "omlab/problems.hpp"
#include "omlab/theory.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

namespace omlab::cli {

namespace {

using experiments::format_number;
using nlohmann::json;

/// Malformed config or input files; reported with exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::size_t default_jobs() {
    if (const char* env = std::getenv("OMLAB_JOBS")) {
        try {
            const long value = std::stol(env);
            if (value >= 1) return static_cast<std::size_t>(value);
        } catch (const std::exception&) {
        }
        throw ConfigError("OMLAB_JOBS must be a positive integer, got '" + std::string(env) + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

struct ProblemOptions {
    std::string problem = "onemax";
    std::size_t ell = 0;
    std::size_t k = 1;
    std::string fos = "f_k";
    std::string fos_file;
};

struct CommonOptions {
    std::optional<std::uint64_t> seed;
    std::string out;
    bool header = false;
};

struct RunOptions {
    ProblemOptions problem;
    std::size_t n = 0;
    std::size_t max_gens = 512;
    std::string trajectory_out;
};

struct TheoryOptions {
    double chi = 2.0;
    std::size_t k = 1;
    std::size_t m = 1;
    double n = 0.0;
    double alpha = 0.1;
    double s = 1.0;
    double p0 = 0.5;
};

struct SweepOptions {
    ProblemOptions problem;
    std::vector<std::string> problems{"onemax", "royal", "trap"};
    std::string grid_param;
    std::vector<std::size_t> grid;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t repeats = 10;
    std::size_t jobs = 0;
    std::size_t max_gens = 512;
    bool include_failures = false;
    // two-layer
    std::vector<std::size_t> ell_grid;
    std::vector<std::size_t> k_list;
    std::size_t bisections = 1;
};

struct BisectOptions {
    ProblemOptions problem;
    std::size_t repeats = 10;
    std::size_t min_successes = 0;
    std::size_t n_floor = 2;
    double growth = 2.0;
    double resolution = 0.05;
    std::size_t n_cap = std::size_t{1} << 20;
    std::size_t jobs = 0;
    std::size_t max_gens = 512;
};

void add_problem_options(CLI::App* app, ProblemOptions& p, bool with_fos = true) {
    app->add_option("--problem", p.problem, "Benchmark: onemax, royal or trap")->capture_default_str();
    app->add_option("--ell", p.ell, "Chromosome length")->required();
    app->add_option("--k", p.k, "Block size of royal/trap and of the f_k shorthand")->capture_default_str();
    if (with_fos) {
        app->add_option("--fos", p.fos, "FOS shorthand: f_k, f_k,1 or f_<sizes>")->capture_default_str();
        app->add_option("--fos-file", p.fos_file, "FOS text file (one 1-based mask per line); overrides --fos");
    }
}

void add_common_options(CLI::App* app, CommonOptions& c, bool with_seed = true) {
    if (with_seed) app->add_option("--seed", c.seed, "64-bit seed; drawn at random and reported when absent");
    app->add_option("--out", c.out, "Write CSV here instead of standard output");
    app->add_flag("--header", c.header, "Print the CSV header line");
}

Fos resolve_fos(const ProblemOptions& p) {
    if (!p.fos_file.empty()) return read_fos_file(p.fos_file, p.ell);
    return fos_from_name(p.fos, p.ell, p.k);
}

// ---------------------------------------------------------------------------
// --config / --dump-config

struct ConfigArgs {
    std::vector<std::string> args;
    std::string config_path;
    bool dump = false;
};

ConfigArgs strip_config_flags(const std::vector<std::string>& args) {
    ConfigArgs out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--dump-config") {
            out.dump = true;
        } else if (a == "--config") {
            if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config requires a path");
            out.config_path = args[++i];
        } else if (a.rfind("--config=", 0) == 0) {
            out.config_path = a.substr(9);
        } else {
            out.args.push_back(a);
        }
    }
    return out;
}

bool flag_present(const std::vector<std::string>& args, const std::string& name) {
    const std::string flag = "--" + name;
    for (const auto& a : args)
        if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
}

std::string json_scalar(const json& value, const std::string& key) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_unsigned()) return std::to_string(value.get<std::uint64_t>());
    if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
    if (value.is_number_float()) return format_number(value.get<double>());
    throw ConfigError("config key '" + key + "' must hold a string, number, boolean or list");
}

/// Inserts "--key value" tokens for config keys not given on the command line,
/// directly after the subcommand names so command-line flags take precedence.
std::vector<std::string> merge_config(const std::vector<std::string>& args, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json config;
    try {
        in >> config;
    } catch (const json::exception& e) {
        throw ConfigError("malformed JSON in '" + path + "': " + e.what());
    }
    if (!config.is_object()) throw ConfigError("config file '" + path + "' must hold a JSON object");

    std::vector<std::string> extra;
    for (const auto& [key, value] : config.items()) {
        if (flag_present(args, key)) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) extra.push_back("--" + key);
        } else if (value.is_array()) {
            if (value.empty()) continue;
            extra.push_back("--" + key);
            for (const auto& item : value) extra.push_back(json_scalar(item, key));
        } else {
            extra.push_back("--" + key);
            extra.push_back(json_scalar(value, key));
        }
    }
    std::size_t split = 0;
    while (split < args.size() && args[split].rfind("-", 0) != 0) ++split;
    std::vector<std::string> merged(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(split));
    merged.insert(merged.end(), extra.begin(), extra.end());
    merged.insert(merged.end(), args.begin() + static_cast<std::ptrdiff_t>(split), args.end());
    return merged;
}

json dump_options(const CLI::App* app) {
    json out = json::object();
    for (const CLI::Option* opt : app->get_options()) {
        if (opt->get_lnames().empty()) continue;
        const std::string name = opt->get_lnames().front();
        if (name == "help") continue;
        if (opt->get_type_size() == 0) {
            if (opt->count() > 0) out[name] = true;
            continue;
        }
        if (opt->count() > 0) {
            const auto& results = opt->results();
            if (opt->get_expected_max() > 1) {
                out[name] = results;
            } else {
                out[name] = results.back();
            }
        } else if (!opt->get_default_str().empty()) {
            out[name] = opt->get_default_str();
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file '" + path + "'");
        }
        stream_ = path.empty() ? &fallback : &file_;
    }
    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

void print_row(std::ostream& out, bool header, const std::string& columns, const std::string& row) {
    if (header) out << columns << '\n';
    out << row << '\n';
}

}  // namespace

int parse_and_dispatch(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal-mixing EA laboratory: GOMEA runs, convergence models and experiment sweeps", "omlab"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    CommonOptions common;

    // run
    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Single GOMEA run; prints success,generations,nfe");
    add_problem_options(run_cmd, run.problem);
    run_cmd->add_option("--n", run.n, "Population size")->required()->check(CLI::PositiveNumber);
    run_cmd->add_option("--max-gens", run.max_gens, "Generation cap")->capture_default_str()->check(CLI::PositiveNumber);
    run_cmd->add_option("--trajectory-out", run.trajectory_out, "CSV of per-generation, per-mask correct proportions");
    add_common_options(run_cmd, common);

    // theory
    TheoryOptions th;
    auto* theory_cmd = app.add_subcommand("theory", "Closed-form models; each prints one CSV row");
    theory_cmd->require_subcommand(1);
    auto* pop_size = theory_cmd->add_subcommand("pop-size", "Required population for a tolerated failure rate");
    pop_size->add_option("--chi", th.chi, "Alphabet size")->capture_default_str();
    pop_size->add_option("--k", th.k, "Mask size")->required();
    pop_size->add_option("--m", th.m, "Number of masks")->required();
    pop_size->add_option("--alpha", th.alpha, "Tolerated failure rate")->capture_default_str();
    auto* conv_time = theory_cmd->add_subcommand("conv-time", "Convergence-time lower bound");
    conv_time->add_option("--n", th.n, "Population size")->required();
    conv_time->add_option("--chi", th.chi, "Alphabet size")->capture_default_str();
    conv_time->add_option("--k", th.k, "Mask size")->required();
    conv_time->add_option("--m", th.m, "Number of masks")->capture_default_str();
    auto* nfe_bounds = theory_cmd->add_subcommand("nfe-bounds", "Bounds on the number of evaluations");
    nfe_bounds->add_option("--n", th.n, "Population size")->required();
    nfe_bounds->add_option("--m", th.m, "Number of masks")->required();
    nfe_bounds->add_option("--chi", th.chi, "Alphabet size")->capture_default_str();
    nfe_bounds->add_option("--k", th.k, "Mask size")->required();
    auto* reverse = theory_cmd->add_subcommand("reverse-growth", "Reverse-growth probability table row");
    reverse->add_option("--k", th.k, "Mask size (>= 2)")->required();
    auto* cross = theory_cmd->add_subcommand("cross-competition", "Population bound from cross competition");
    cross->add_option("--s", th.s, "Selection pressure")->required();
    cross->add_option("--p0", th.p0, "Per-generation preservation probability of a correct bit")->required();
    cross->add_option("--alpha", th.alpha, "Failure threshold")->required();
    for (auto* sub : {pop_size, conv_time, nfe_bounds, reverse, cross}) add_common_options(sub, common, false);

    // sweep
    SweepOptions sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "Experiment sweeps; CSV with header");
    sweep_cmd->require_subcommand(1);
    auto add_sweep_common = [&](CLI::App* sub) {
        sub->add_option("--repeats", sw.repeats, "Runs per grid point")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--jobs", sw.jobs, "Worker threads (default: OMLAB_JOBS or hardware threads)");
        sub->add_option("--max-gens", sw.max_gens, "Generation cap per run")->capture_default_str();
        add_common_options(sub, common);
    };
    auto add_grid = [&](CLI::App* sub, const std::string& help) {
        sub->add_option("--grid", sw.grid, help)->required()->delimiter(',');
    };
    auto* sw_success = sweep_cmd->add_subcommand("success-rate", "Empirical success rate vs supply model");
    add_problem_options(sw_success, sw.problem);
    add_grid(sw_success, "Population sizes");
    add_sweep_common(sw_success);
    auto* sw_conv = sweep_cmd->add_subcommand("conv-time", "Generations to convergence vs lower bound");
    sw_conv->add_option("--problem", sw.problem.problem, "Benchmark")->capture_default_str();
    sw_conv->add_option("--ell", sw.problem.ell, "Chromosome length (grid over n)");
    sw_conv->add_option("--k", sw.problem.k, "Mask size")->required();
    sw_conv->add_option("--fos", sw.problem.fos, "FOS shorthand")->capture_default_str();
    sw_conv->add_option("--n", sw.n, "Population size (grid over ell)");
    sw_conv->add_option("--grid-param", sw.grid_param, "Swept parameter: n (default) or ell");
    add_grid(sw_conv, "Grid values");
    add_sweep_common(sw_conv);
    auto* sw_nfe = sweep_cmd->add_subcommand("nfe", "Mean evaluations vs bounds for several problems");
    sw_nfe->add_option("--problems", sw.problems, "Problems to run")->delimiter(',')->capture_default_str();
    sw_nfe->add_option("--m", sw.m, "Number of masks")->required();
    sw_nfe->add_option("--k", sw.problem.k, "Mask size (grid over n)");
    sw_nfe->add_option("--n", sw.n, "Population size (grid over k)");
    sw_nfe->add_option("--grid-param", sw.grid_param, "Swept parameter: k (default) or n");
    sw_nfe->add_flag("--include-failures", sw.include_failures, "Average over failed runs too");
    add_grid(sw_nfe, "Grid values");
    add_sweep_common(sw_nfe);
    auto* sw_traj = sweep_cmd->add_subcommand("trajectory", "Mean correct proportion per generation");
    add_problem_options(sw_traj, sw.problem);
    add_grid(sw_traj, "Population sizes");
    add_sweep_common(sw_traj);
    auto* sw_two = sweep_cmd->add_subcommand("two-layer", "F_{k,1} population ratio fit on onemax");
    sw_two->add_option("--ell-grid", sw.ell_grid, "Problem lengths")->required()->delimiter(',');
    sw_two->add_option("--k-list", sw.k_list, "First-layer mask sizes")->required()->delimiter(',');
    sw_two->add_option("--bisections", sw.bisections, "Bisections averaged per point")->capture_default_str();
    sw_two->add_option("--alpha", th.alpha, "Failure rate of the F_1 baseline curve")->capture_default_str();
    add_sweep_common(sw_two);

    // bisect
    BisectOptions bi;
    auto* bisect_cmd = app.add_subcommand("bisect", "Minimal population size by doubling + bisection");
    add_problem_options(bisect_cmd, bi.problem);
    bisect_cmd->add_option("--repeats", bi.repeats, "Runs per probe")->capture_default_str()->check(CLI::PositiveNumber);
    bisect_cmd->add_option("--min-successes", bi.min_successes, "Successes to pass a probe (0 = all)")->capture_default_str();
    bisect_cmd->add_option("--n-floor", bi.n_floor, "First probed size")->capture_default_str()->check(CLI::PositiveNumber);
    bisect_cmd->add_option("--growth", bi.growth, "Doubling factor")->capture_default_str();
    bisect_cmd->add_option("--resolution", bi.resolution, "Stop when high/low <= 1 + resolution")->capture_default_str();
    bisect_cmd->add_option("--n-cap", bi.n_cap, "Give up beyond this size")->capture_default_str();
    bisect_cmd->add_option("--jobs", bi.jobs, "Worker threads");
    bisect_cmd->add_option("--max-gens", bi.max_gens, "Generation cap per run")->capture_default_str();
    add_common_options(bisect_cmd, common);

    auto usage_error = [&](const std::string& message) {
        err << "error: " << message << '\n';
        const CLI::App* leaf = &app;
        for (bool descended = true; descended;) {
            descended = false;
            for (const CLI::App* sub : leaf->get_subcommands())
                if (sub->parsed()) {
                    leaf = sub;
                    descended = true;
                    break;
                }
        }
        err << leaf->help();
        return kExitUsage;
    };

    ConfigArgs cargs;
    try {
        cargs = strip_config_flags(raw_args);
        std::vector<std::string> args =
            cargs.config_path.empty() ? cargs.args : merge_config(cargs.args, cargs.config_path);
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return usage_error(e.what());
    } catch (const ConfigError& e) {
        return usage_error(e.what());
    }

    const CLI::App* leaf = &app;
    for (bool descended = true; descended;) {
        descended = false;
        for (const CLI::App* sub : leaf->get_subcommands())
            if (sub->parsed()) {
                leaf = sub;
                descended = true;
                break;
            }
    }

    try {
        const bool needs_seed = leaf == run_cmd || leaf == bisect_cmd || leaf->get_parent() == sweep_cmd;
        if (needs_seed && !common.seed) {
            common.seed = std::random_device{}() * 0x100000000ULL + std::random_device{}();
            err << "seed=" << *common.seed << '\n';
        }
        if (sw.jobs == 0) sw.jobs = default_jobs();
        if (bi.jobs == 0) bi.jobs = default_jobs();

        if (cargs.dump) {
            json dumped = dump_options(leaf);
            if (needs_seed) dumped["seed"] = std::to_string(*common.seed);
            out << dumped.dump(2) << '\n';
            return kExitOk;
        }

        Output output(common.out, out);
        std::ostream& os = output.stream();

        if (leaf == run_cmd) {
            const Problem problem = Problem::make(parse_problem_kind(run.problem.problem), run.problem.ell, run.problem.k);
            const Fos fos = resolve_fos(run.problem);
            RunConfig cfg;
            cfg.n = run.n;
            cfg.max_generations = run.max_gens;
            cfg.seed = *common.seed;
            cfg.record_trajectory = !run.trajectory_out.empty();
            const RunResult result = run_gomea(problem, fos, cfg);
            print_row(os, common.header, "success,generations,nfe",
                      std::to_string(result.success ? 1 : 0) + ',' + std::to_string(result.generations) + ',' +
                          std::to_string(result.ledger.total()));
            if (cfg.record_trajectory) {
                Output traj(run.trajectory_out, out);
                traj.stream() << "generation,mask_index,p_correct\n";
                for (std::size_t g = 0; g < result.trajectory.size(); ++g)
                    for (std::size_t i = 0; i < result.trajectory[g].size(); ++i)
                        traj.stream() << g << ',' << i + 1 << ',' << format_number(result.trajectory[g][i]) << '\n';
            }
        } else if (leaf == pop_size) {
            const auto req = theory::required_population({th.chi, th.k, th.m, th.alpha});
            print_row(os, common.header, "chi,k,m,alpha,n,n_ceil,p_success_at_ceil,goldberg_n",
                      format_number(th.chi) + ',' + std::to_string(th.k) + ',' + std::to_string(th.m) + ',' +
                          format_number(th.alpha) + ',' + format_number(req.n) + ',' + std::to_string(req.ceiling) +
                          ',' +
                          format_number(theory::success_probability(th.k, th.m, th.chi,
                                                                    static_cast<double>(req.ceiling))) +
                          ',' + format_number(theory::goldberg_supply_size(th.chi, th.k, th.m)));
        } else if (leaf == conv_time) {
            require(th.m >= 1, "m must be >= 1");
            std::string t_lower;
            std::string x1;
            std::string status = "ok";
            if (th.m == 1) {
                t_lower = format_number(theory::conv_lower_bound_single(th.n, th.chi, th.k));
                x1 = format_number(th.n * std::pow(th.chi, -static_cast<double>(th.k)));
            } else {
                require(th.n >= 2.0 && th.n == std::floor(th.n), "multi-mask bound needs an integer n >= 2");
                const auto bound = theory::conv_lower_bound_multi(static_cast<std::size_t>(th.n), th.chi, th.k, th.m);
                t_lower = format_number(bound.t_lower);
                x1 = format_number(bound.x1);
                if (bound.status == theory::BoundStatus::supply_starved) status = "supply_starved";
            }
            print_row(os, common.header, "n,chi,k,m,t_lower,x1,status",
                      format_number(th.n) + ',' + format_number(th.chi) + ',' + std::to_string(th.k) + ',' +
                          std::to_string(th.m) + ',' + t_lower + ',' + x1 + ',' + status);
        } else if (leaf == nfe_bounds) {
            const auto model = theory::nfe_bounds(th.n, th.m, th.chi, th.k);
            print_row(os, common.header, "n,m,chi,k,L,U,lower,upper",
                      format_number(th.n) + ',' + std::to_string(th.m) + ',' + format_number(th.chi) + ',' +
                          std::to_string(th.k) + ',' + format_number(model.l_of_k) + ',' +
                          format_number(model.u_of_k) + ',' + format_number(model.lower_total) + ',' +
                          format_number(model.upper_total));
        } else if (leaf == reverse) {
            const auto rg = theory::reverse_growth(th.k);
            print_row(os, common.header, "k,p_gt,p_eq,p_lt,p_rg",
                      std::to_string(rg.k) + ',' + format_number(rg.p_gt) + ',' + format_number(rg.p_eq) + ',' +
                          format_number(rg.p_lt) + ',' + format_number(rg.p_rg));
        } else if (leaf == cross) {
            const double bound = theory::cross_competition_min_pop({th.s, th.p0, th.alpha});
            print_row(os, common.header, "s,p0,alpha,n_bound",
                      format_number(th.s) + ',' + format_number(th.p0) + ',' + format_number(th.alpha) + ',' +
                          format_number(bound));
        } else if (leaf->get_parent() == sweep_cmd && leaf != sw_two) {
            experiments::SweepSpec spec;
            spec.problem = parse_problem_kind(sw.problem.problem);
            spec.problems.clear();
            for (const auto& name : sw.problems) spec.problems.push_back(parse_problem_kind(name));
            spec.ell = sw.problem.ell;
            spec.k = sw.problem.k;
            spec.n = sw.n;
            spec.m = sw.m;
            spec.fos = sw.problem.fos;
            if (!sw.grid_param.empty()) spec.grid_param = experiments::parse_grid_param(sw.grid_param);
            spec.grid = sw.grid;
            spec.repeats = sw.repeats;
            spec.base_seed = *common.seed;
            spec.jobs = sw.jobs;
            spec.max_generations = sw.max_gens;
            spec.include_failures = sw.include_failures;
            if (leaf == sw_success) {
                spec.kind = experiments::SweepKind::success_rate;
                experiments::write_csv(os, experiments::sweep_success_rate(spec));
            } else if (leaf == sw_conv) {
                spec.kind = experiments::SweepKind::conv_time;
                if (sw.grid_param.empty()) spec.grid_param = experiments::GridParam::n;
                experiments::write_csv(os, experiments::sweep_conv_time(spec));
            } else if (leaf == sw_nfe) {
                spec.kind = experiments::SweepKind::nfe;
                if (sw.grid_param.empty()) spec.grid_param = experiments::GridParam::k;
                experiments::write_csv(os, experiments::sweep_nfe(spec));
            } else {
                spec.kind = experiments::SweepKind::trajectory;
                experiments::write_csv(os, experiments::record_growth_trajectory(spec));
            }
        } else if (leaf == sw_two) {
            experiments::TwoLayerSpec spec;
            spec.ell_grid = sw.ell_grid;
            spec.k_list = sw.k_list;
            spec.bisections = sw.bisections;
            spec.alpha = th.alpha;
            spec.bisection.repeats = sw.repeats;
            spec.bisection.base_seed = *common.seed;
            spec.bisection.jobs = sw.jobs;
            spec.bisection.max_generations = sw.max_gens;
            experiments::write_csv(os, experiments::two_layer_ratio_fit(spec).rows);
        } else if (leaf == bisect_cmd) {
            const Problem problem = Problem::make(parse_problem_kind(bi.problem.problem), bi.problem.ell, bi.problem.k);
            const Fos fos = resolve_fos(bi.problem);
            experiments::BisectionConfig cfg;
            cfg.repeats = bi.repeats;
            cfg.min_successes = bi.min_successes;
            cfg.n_floor = bi.n_floor;
            cfg.growth = bi.growth;
            cfg.resolution = bi.resolution;
            cfg.n_cap = bi.n_cap;
            cfg.base_seed = *common.seed;
            cfg.jobs = bi.jobs;
            cfg.max_generations = bi.max_gens;
            const auto result = experiments::bisect_min_population(problem, fos, cfg);
            print_row(os, true, "n_min,probes", std::to_string(result.n_min) + ',' + std::to_string(result.probes.size()));
        }
    } catch (const InvalidParameter& e) {
        return usage_error(e.what());
    } catch (const ConfigError& e) {
        return usage_error(e.what());
    } catch (const experiments::BisectionGaveUp& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

int parse_and_dispatch(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return parse_and_dispatch(args, out, err);
}

}  // namespace omlab::cli
