// Command-line front end of the fairband experiment harness.

#include <cstdio>
#include <iostream>
#include <mutex>
#include <string>

#include <CLI11.hpp>

#include "fairband/fairband.hpp"
#include "fairband/wine_surrogate.hpp"

namespace
{

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Overrides
{
    std::string out;
    std::size_t seeds = 0;
    std::size_t stride = 0;
    std::size_t threads = 0;
    std::size_t horizon = 0;
    std::string wine_red;
    std::string wine_white;
    bool quiet = false;
};

void apply(fairband::ExperimentConfig& cfg, const Overrides& o)
{
    if (!o.out.empty())
        cfg.output_dir = o.out;
    if (o.seeds > 0)
        cfg.seeds = fairband::seed_range(cfg.seeds.empty() ? 1 : cfg.seeds.front(), o.seeds);
    if (o.stride > 0)
        cfg.stride = o.stride;
    if (o.threads > 0)
        cfg.threads = o.threads;
    if (o.horizon > 0)
        cfg.horizon = o.horizon;
    if (!o.wine_red.empty())
        cfg.env.wine_red = o.wine_red;
    if (!o.wine_white.empty())
        cfg.env.wine_white = o.wine_white;
}

void print_summary(const fairband::SuiteResult& res)
{
    std::printf("%-24s %5s %14s %12s %12s %12s\n", "policy", "runs", "regret_mean", "regret_sd", "unfair_mean",
                "unfair_sd");
    for (const auto& s : res.summaries)
        std::printf("%-24s %5zu %14.2f %12.2f %12.2f %12.2f\n", s.policy.c_str(), s.runs, s.regret_mean, s.regret_sd,
                    s.unfair_mean, s.unfair_sd);
}

int execute(fairband::ExperimentConfig cfg, const Overrides& o)
{
    apply(cfg, o);
    fairband::validate(cfg);
    fairband::SuiteOptions opt;
    std::mutex io;
    if (!o.quiet)
        opt.on_run = [&](const std::string& policy, std::uint64_t seed, const fairband::RunResult& r) {
            std::lock_guard lock(io);
            std::fprintf(stderr, "  %-24s seed %-6llu regret %10.2f unfair %8llu  (%.1fs)\n", policy.c_str(),
                         static_cast<unsigned long long>(seed), r.final_regret(),
                         static_cast<unsigned long long>(r.final_unfair()), r.wall_seconds);
        };
    const auto res = fairband::run_suite(cfg, opt);
    print_summary(res);
    std::printf("wrote %s/summary.csv\n", cfg.output_dir.c_str());
    return 0;
}

void add_common(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--seeds", o.seeds, "Number of runs (seeds first..first+N-1)")->check(CLI::PositiveNumber);
    cmd->add_option("--stride", o.stride, "Write every N-th round to trajectory CSVs")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", o.threads, "Worker threads (FAIRBAND_THREADS takes precedence)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--horizon", o.horizon, "Override the horizon T")->check(CLI::PositiveNumber);
    cmd->add_option("--wine-red", o.wine_red, "Path to winequality-red.csv");
    cmd->add_option("--wine-white", o.wine_white, "Path to winequality-white.csv");
    cmd->add_flag("-q,--quiet", o.quiet, "Suppress per-run progress");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fairness-aware contextual bandit experiments"};
    app.require_subcommand(1);

    Overrides run_o;
    std::string run_path;
    auto* run = app.add_subcommand("run", "Run an experiment config file");
    run->add_option("config", run_path, "Path to the INI config")->required();
    add_common(run, run_o);

    Overrides preset_o;
    std::string preset_name;
    bool print_only = false;
    auto* pre = app.add_subcommand("preset", "Run a built-in experiment");
    pre->add_option("name", preset_name, "Preset name (see list-presets)")->required();
    pre->add_flag("--print-config", print_only, "Print the resolved config and exit");
    add_common(pre, preset_o);

    auto* list = app.add_subcommand("list-presets", "List built-in experiments");

    std::string validate_path;
    auto* val = app.add_subcommand("validate", "Check a config file and print the resolved parameters");
    val->add_option("config", validate_path, "Path to the INI config")->required();

    std::string surrogate_dir;
    auto* sur = app.add_subcommand("wine-surrogate", "Write synthetic wine quality CSVs (no real data)");
    sur->add_option("dir", surrogate_dir, "Existing output directory")->required()->check(CLI::ExistingDirectory);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        std::cerr << app.help();
        return kExitUsage;
    }

    try
    {
        if (*list)
        {
            for (const auto& n : fairband::preset_names())
                std::cout << n << "\n";
            return 0;
        }
        if (*sur)
        {
            const auto p = fairband::write_wine_surrogate(surrogate_dir);
            std::cout << p.red << "\n" << p.white << "\n";
            return 0;
        }
        if (*val)
        {
            const auto cfg = fairband::parse_config(validate_path);
            std::cout << fairband::to_ini(cfg);
            return 0;
        }
        if (*run)
            return execute(fairband::parse_config(run_path), run_o);
        if (*pre)
        {
            auto cfg = fairband::preset(preset_name);
            if (print_only)
            {
                apply(cfg, preset_o);
                std::cout << fairband::to_ini(cfg);
                return 0;
            }
            return execute(std::move(cfg), preset_o);
        }
    }
    catch (const fairband::Error& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
