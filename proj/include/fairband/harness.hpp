#ifndef FAIRBAND_HARNESS_HPP
#define FAIRBAND_HARNESS_HPP

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "fairband/adversary.hpp"
#include "fairband/audit.hpp"
#include "fairband/config.hpp"
#include "fairband/core.hpp"
#include "fairband/environments.hpp"
#include "fairband/linear_policies.hpp"
#include "fairband/simulation.hpp"
#include "fairband/smooth_policies.hpp"
#include "fairband/wine.hpp"

namespace fairband
{

/// Environment of one trajectory. Wine worlds show smooth policies the
/// embedded view and every other policy the standardized features.
inline std::unique_ptr<Environment> make_environment(const EnvSpec& spec, PolicyType for_policy,
                                                     std::shared_ptr<const WineData> wine = nullptr)
{
    switch (spec.kind)
    {
    case EnvKind::Linear:
        return std::make_unique<LinearEnv>(spec.arms, spec.dim, spec.sigma);
    case EnvKind::Smooth:
        return std::make_unique<SmoothEnv>(spec.sigma);
    case EnvKind::Overlap:
        return std::make_unique<OverlapEnv>(spec.sigma);
    case EnvKind::Wine:
        if (!wine)
            throw Error("wine environment requested without loaded data");
        return std::make_unique<WineEnv>(std::move(wine), is_smooth(for_policy) ? WineView::Embedded
                                                                                 : WineView::Standardized,
                                         spec.sigma);
    }
    throw Error("unhandled environment kind");
}

/// Builds a policy for an environment. `attack_budget` is the resolved
/// corruption budget the robust policies are told about unless overridden.
inline std::unique_ptr<Policy> make_policy(const PolicySpec& s, const Environment& env, std::size_t T,
                                           double attack_budget)
{
    const std::size_t K = env.arms();
    const std::size_t d = env.dim();
    const double known_budget = s.budget >= 0.0 ? s.budget : std::max(0.0, attack_budget);
    switch (s.type)
    {
    case PolicyType::FairOls:
    case PolicyType::RobustFairOls: {
        FairOlsParams p;
        p.arms = K;
        p.dim = d;
        p.horizon = T;
        p.C_a = s.C_a;
        p.C_b = s.C_b;
        p.h = s.h;
        if (s.type == PolicyType::RobustFairOls)
            p = robust_fair_ols_params(p, known_budget, s.gamma_lin, s.kappa);
        return std::make_unique<FairOlsPolicy>(p);
    }
    case PolicyType::OlsBandit:
        return std::make_unique<OlsBanditPolicy>(OlsBanditParams{K, d, T, s.q, s.h});
    case PolicyType::Greedy:
        return std::make_unique<GreedyPolicy>(GreedyParams{K, d, T, s.warm_start});
    case PolicyType::LinUcb:
        return std::make_unique<LinUcbPolicy>(LinUcbParams{K, d, T, s.ridge, s.width_scale, s.width_offset});
    case PolicyType::Random:
        return std::make_unique<UniformRandomPolicy>(K);
    case PolicyType::FairSmooth:
    case PolicyType::RobustFairSmooth: {
        FairSmoothParams p;
        p.arms = K;
        p.domain = env.domain();
        p.mode = s.mode;
        p.delta_mult = s.delta_mult;
        auto& sc = p.schedule;
        sc.horizon = T;
        sc.beta = s.beta;
        sc.beta_prime = s.beta_prime;
        sc.dim = d;
        sc.robust = s.type == PolicyType::RobustFairSmooth;
        sc.budget = sc.robust ? known_budget : 0.0;
        sc.c0 = s.c0;
        sc.c1 = s.c1;
        sc.c2 = s.c2;
        sc.arms = K;
        sc.p_star = s.p_star;
        sc.c_k = s.c_k;
        return std::make_unique<FairSmoothPolicy>(std::move(p));
    }
    case PolicyType::SimplifiedSmooth:
        return std::make_unique<SimplifiedSmoothPolicy>(
            SimplifiedSmoothParams{K, env.domain(), s.ucb_c1, s.ucb_c2, s.bin_side});
    }
    throw Error("unhandled policy type");
}

/// Attack plan plus budget, with "auto" fields resolved. Windowed attacks end
/// where the attacked policy's first learning phase ends: the exploration
/// phase of Fair OLS or the first epoch of Fair Smooth.
struct ResolvedAttack
{
    AttackPlan plan;
    double budget = 0.0;
};

inline std::size_t first_phase_length(const Policy& policy)
{
    if (auto* f = dynamic_cast<const FairOlsPolicy*>(&policy))
        return f->exploration_len();
    if (auto* s = dynamic_cast<const FairSmoothPolicy*>(&policy))
        return s->plan().length(1);
    throw Error("t0 = auto needs a fair OLS or fair smooth policy, not " + std::string(policy.name()));
}

inline ResolvedAttack resolve_attack(const AttackSpec& spec, const Environment& env, const Policy& policy,
                                     std::size_t T)
{
    ResolvedAttack r;
    r.plan.kind = spec.kind;
    r.plan.vulnerable_arms = spec.arms;
    r.plan.target = spec.target;
    r.plan.region = spec.region;
    r.plan.fmax = spec.fmax < 0.0 ? env.sup_norm() : spec.fmax;
    if (spec.kind == AttackKind::ExplorationMask || spec.kind == AttackKind::CovertOverlap)
        r.plan.t0 = std::min(T, spec.t0 == 0 ? first_phase_length(policy) : spec.t0);
    r.budget = spec.budget;
    if (spec.budget_auto())
    {
        const double per_round =
            spec.kind == AttackKind::ExplorationMask ? 2.0 * r.plan.fmax + 1.0 : spec.region.depth;
        r.budget = static_cast<double>(r.plan.t0) * per_round;
    }
    return r;
}

/// Known budget handed to robust policies before the policy exists. Auto
/// budgets depend on the policy, so robust policies then see zero unless
/// their spec overrides it.
inline double nominal_budget(const AttackSpec& spec)
{
    return spec.kind == AttackKind::Null || spec.budget_auto() ? 0.0 : spec.budget;
}

struct TrajectoryResult
{
    std::string policy;
    RunResult run;
};

/// Runs one (policy, seed) trajectory of an experiment.
inline RunResult run_single(const ExperimentConfig& cfg, const PolicySpec& spec, std::uint64_t seed,
                            std::shared_ptr<const WineData> wine = nullptr)
{
    auto env = make_environment(cfg.env, spec.type, std::move(wine));
    auto policy = make_policy(spec, *env, cfg.horizon, nominal_budget(cfg.attack));
    static const AttackPlan null_plan{};
    if (!spec.attacked || cfg.attack.kind == AttackKind::Null)
        return simulate(*env, *policy, null_plan, 0.0, cfg.audit, seed, cfg.horizon);
    const ResolvedAttack atk = resolve_attack(cfg.attack, *env, *policy, cfg.horizon);
    return simulate(*env, *policy, atk.plan, atk.budget, cfg.audit, seed, cfg.horizon);
}

/// Worker count: FAIRBAND_THREADS, else the config, else the hardware.
inline std::size_t resolve_threads(std::size_t configured)
{
    if (const char* e = std::getenv("FAIRBAND_THREADS"); e && *e)
    {
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(e, e + std::char_traits<char>::length(e), v);
        if (ec != std::errc() || *ptr != '\0' || v == 0)
            throw Error("FAIRBAND_THREADS must be a positive integer");
        return v;
    }
    if (configured > 0)
        return configured;
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs `jobs` on a pool of workers pulling from a shared counter. The first
/// exception is rethrown after all workers stop.
inline void parallel_for(std::size_t jobs, std::size_t workers, const std::function<void(std::size_t)>& fn)
{
    workers = std::max<std::size_t>(1, std::min(workers, jobs));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;)
        {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs || failed.load())
                return;
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                failed = true;
            }
        }
    };
    if (workers == 1)
    {
        body();
    }
    else
    {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(body);
        for (auto& th : pool)
            th.join();
    }
    if (error)
        std::rethrow_exception(error);
}

struct SuiteOptions
{
    bool write_files = true;
    std::size_t threads = 0;
    /// called after each trajectory finishes, from worker threads
    std::function<void(const std::string&, std::uint64_t, const RunResult&)> on_run;
};

struct SuiteResult
{
    std::vector<SummaryStats> summaries;
    /// runs[p][s]: policy p, seed s, in config order
    std::vector<std::vector<RunResult>> runs;

    const SummaryStats& summary(const std::string& policy) const
    {
        for (const auto& s : summaries)
            if (s.policy == policy)
                return s;
        throw Error("no summary for policy " + policy);
    }
    const std::vector<RunResult>& runs_of(const std::string& policy) const
    {
        for (std::size_t i = 0; i < summaries.size(); ++i)
            if (summaries[i].policy == policy)
                return runs[i];
        throw Error("no runs for policy " + policy);
    }
};

namespace detail
{

inline void append_number(std::string& out, double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

inline void append_number(std::string& out, std::uint64_t v)
{
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

inline void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write " + path.string());
    out << text;
    if (!out)
        throw Error("failed writing " + path.string());
}

/// Summary statistics when only one run exists.
inline SummaryStats summarize(const std::vector<RunResult>& runs, const std::string& experiment,
                              const std::string& policy)
{
    if (runs.size() >= 2)
        return aggregate(runs, experiment, policy);
    SummaryStats s;
    s.experiment = experiment;
    s.policy = policy;
    s.runs = runs.size();
    if (!runs.empty())
    {
        const auto& r = runs.front();
        s.regret_mean = r.final_regret();
        s.unfair_mean = static_cast<double>(r.final_unfair());
        s.regret_curve = r.cum_regret;
        s.regret_halfwidth.assign(r.cum_regret.size(), 0.0);
        s.unfair_curve.assign(r.cum_unfair.begin(), r.cum_unfair.end());
        s.unfair_halfwidth.assign(r.cum_unfair.size(), 0.0);
    }
    return s;
}

} // namespace detail

inline std::string trajectory_csv(const RunResult& r, std::size_t stride)
{
    std::string out = "t,cum_regret,cum_unfair\n";
    const std::size_t T = r.cum_regret.size();
    for (std::size_t i = 0; i < T; ++i)
    {
        const std::size_t t = i + 1;
        if (t % stride != 0 && t != T)
            continue;
        detail::append_number(out, static_cast<std::uint64_t>(t));
        out += ',';
        detail::append_number(out, r.cum_regret[i]);
        out += ',';
        detail::append_number(out, r.cum_unfair[i]);
        out += '\n';
    }
    return out;
}

inline std::string curve_csv(const SummaryStats& s, std::size_t stride)
{
    std::string out = "t,regret_mean,regret_ci95,unfair_mean,unfair_ci95\n";
    const std::size_t T = s.regret_curve.size();
    for (std::size_t i = 0; i < T; ++i)
    {
        const std::size_t t = i + 1;
        if (t % stride != 0 && t != T)
            continue;
        detail::append_number(out, static_cast<std::uint64_t>(t));
        for (double v : {s.regret_curve[i], s.regret_halfwidth[i], s.unfair_curve[i], s.unfair_halfwidth[i]})
        {
            out += ',';
            detail::append_number(out, v);
        }
        out += '\n';
    }
    return out;
}

inline std::string summary_csv(const std::vector<SummaryStats>& rows)
{
    std::string out = "experiment,policy,runs,regret_mean,regret_sd,unfair_mean,unfair_sd\n";
    for (const auto& s : rows)
    {
        out += s.experiment + ',' + s.policy + ',';
        detail::append_number(out, static_cast<std::uint64_t>(s.runs));
        for (double v : {s.regret_mean, s.regret_sd, s.unfair_mean, s.unfair_sd})
        {
            out += ',';
            detail::append_number(out, v);
        }
        out += '\n';
    }
    return out;
}

inline std::shared_ptr<const WineData> load_wine_for(const ExperimentConfig& cfg)
{
    if (cfg.env.kind != EnvKind::Wine)
        return nullptr;
    return load_wine_csv({cfg.env.wine_red, cfg.env.wine_white});
}

/// Runs every (policy, seed) trajectory, aggregates per policy, and writes
/// <out>/<policy>_seed<seed>.csv, <out>/<policy>_curve.csv and <out>/summary.csv.
inline SuiteResult run_suite(const ExperimentConfig& cfg, const SuiteOptions& opt = {})
{
    validate(cfg);
    const auto wine = load_wine_for(cfg);
    const std::size_t P = cfg.policies.size();
    const std::size_t S = cfg.seeds.size();

    SuiteResult result;
    result.runs.assign(P, std::vector<RunResult>(S));
    parallel_for(P * S, resolve_threads(opt.threads ? opt.threads : cfg.threads), [&](std::size_t job) {
        const std::size_t p = job / S;
        const std::size_t s = job % S;
        result.runs[p][s] = run_single(cfg, cfg.policies[p], cfg.seeds[s], wine);
        if (opt.on_run)
            opt.on_run(cfg.policies[p].label, cfg.seeds[s], result.runs[p][s]);
    });

    for (std::size_t p = 0; p < P; ++p)
        result.summaries.push_back(detail::summarize(result.runs[p], cfg.id, cfg.policies[p].label));

    if (opt.write_files)
    {
        namespace fs = std::filesystem;
        const fs::path dir(cfg.output_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec)
            throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
        for (std::size_t p = 0; p < P; ++p)
        {
            const auto& label = cfg.policies[p].label;
            for (std::size_t s = 0; s < S; ++s)
                detail::write_file(dir / (label + "_seed" + std::to_string(cfg.seeds[s]) + ".csv"),
                                   trajectory_csv(result.runs[p][s], cfg.stride));
            detail::write_file(dir / (label + "_curve.csv"), curve_csv(result.summaries[p], cfg.stride));
        }
        detail::write_file(dir / "summary.csv", summary_csv(result.summaries));
    }
    return result;
}

} // namespace fairband

#endif
