#ifndef FAIRBAND_SIMULATION_HPP
#define FAIRBAND_SIMULATION_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fairband/adversary.hpp"
#include "fairband/audit.hpp"
#include "fairband/core.hpp"

namespace fairband
{

/// Everything one trajectory mutates, owned together.
struct Trajectory
{
    Environment& env;
    Policy& policy;
    const AttackPlan& attack;
    BudgetState budget;
    AuditConfig audit;
    RngStreams rng;
};

/// One interaction round. The ordering is fixed: context, distribution, arm,
/// means and noise, corruption, feedback to the policy, audit.
inline RoundRecord run_round(Trajectory& tr, std::size_t t)
{
    RoundRecord rec;
    rec.t = t;

    EnvDraw draw = tr.env.draw(tr.rng.context);
    rec.context = std::move(draw.context);
    rec.true_means = std::move(draw.means);

    rec.distribution = tr.policy.distribution(rec.context, t);
    if (auto why = rec.distribution.violation(tr.env.arms()); !why.empty())
        throw Error("policy " + std::string(tr.policy.name()) + " emitted an invalid distribution at round " +
                    std::to_string(t) + ": " + why);

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    rec.arm = rec.distribution.sample(unif(tr.rng.policy));

    std::normal_distribution<double> gauss(0.0, 1.0);
    rec.noise = tr.env.noise_sd() * gauss(tr.rng.noise);

    const double mean = rec.true_means[rec.arm];
    rec.corruption = corrupt(tr.attack, tr.budget, t, rec.context, rec.arm, mean);
    rec.observed = mean + rec.corruption + rec.noise;

    tr.policy.observe(rec.context, rec.arm, rec.observed, t);

    rec.unfair = unfair_flag(rec.distribution, rec.true_means, tr.audit);
    rec.regret_inc = regret_increment(rec.true_means, rec.arm);
    return rec;
}

inline void check_compatible(const Environment& env, const Policy& policy)
{
    if (env.arms() != policy.arms())
        throw Error("environment has " + std::to_string(env.arms()) + " arms but policy " +
                    std::string(policy.name()) + " expects " + std::to_string(policy.arms()));
    if (env.arms() < 2)
        throw Error("environment needs at least two arms");
}

/// Runs rounds 1..T, handing each record to `sink`, and returns the
/// cumulative metrics. Checks the budget constraint after the last round.
template <class Sink>
RunResult simulate(Environment& env, Policy& policy, const AttackPlan& attack, double budget,
                   const AuditConfig& audit, std::uint64_t seed, std::size_t T, Sink&& sink)
{
    if (T < 1)
        throw Error("horizon must be at least 1");
    check_compatible(env, policy);
    const auto start = std::chrono::steady_clock::now();
    Trajectory tr{env, policy, attack, BudgetState(budget), audit, RngStreams::from_seed(seed)};
    RunResult res;
    res.seed = seed;
    res.cum_regret.reserve(T);
    res.cum_unfair.reserve(T);
    double regret = 0.0;
    std::uint64_t unfair = 0;
    for (std::size_t t = 1; t <= T; ++t)
    {
        RoundRecord rec = run_round(tr, t);
        regret += rec.regret_inc;
        unfair += rec.unfair ? 1 : 0;
        res.cum_regret.push_back(regret);
        res.cum_unfair.push_back(unfair);
        sink(rec);
    }
    if (tr.budget.spent() > tr.budget.total())
        throw Error("corruption exceeded the budget");
    res.budget_spent = tr.budget.spent();
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

inline RunResult simulate(Environment& env, Policy& policy, const AttackPlan& attack, double budget,
                          const AuditConfig& audit, std::uint64_t seed, std::size_t T)
{
    return simulate(env, policy, attack, budget, audit, seed, T, [](const RoundRecord&) {});
}

/// Full per-round ledger of one trajectory.
inline std::vector<RoundRecord> run_trajectory(Environment& env, Policy& policy, const AttackPlan& attack,
                                               double budget, const AuditConfig& audit, std::uint64_t seed,
                                               std::size_t T)
{
    std::vector<RoundRecord> out;
    out.reserve(T);
    simulate(env, policy, attack, budget, audit, seed, T, [&](const RoundRecord& r) { out.push_back(r); });
    return out;
}

} // namespace fairband

#endif
