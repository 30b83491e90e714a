#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fairband/chaining.hpp"
#include "fairband/environments.hpp"
#include "fairband/simulation.hpp"
#include "fairband/smooth_policies.hpp"

using namespace fairband;

namespace
{

FairSmoothParams smooth_params(std::size_t T, bool robust = false, double C = 0.0)
{
    FairSmoothParams p;
    p.arms = 4;
    p.domain = Box::cube(2, -1.0, 1.0);
    p.schedule.horizon = T;
    p.schedule.dim = 2;
    p.schedule.robust = robust;
    p.schedule.budget = C;
    return p;
}

/// One finished benign run shared by the property tests below.
struct FinishedRun
{
    FairSmoothPolicy policy{smooth_params(5000)};
    std::vector<RoundRecord> records;

    FinishedRun()
    {
        SmoothEnv env;
        records = run_trajectory(env, policy, AttackPlan{}, 0.0, AuditConfig{}, 21, 5000);
    }
};

FinishedRun& finished()
{
    static FinishedRun run;
    return run;
}

} // namespace

TEST(FairSmooth, FirstEpochIsUniform)
{
    FairSmoothPolicy pol(smooth_params(5000));
    for (std::size_t t = 1; t <= pol.plan().length(1); t += 37)
        EXPECT_EQ(pol.distribution(Context{{0.1, -0.4}}, t).probs(), ActionDistribution::uniform(4).probs());
}

TEST(FairSmooth, DistributionIsUniformOverActiveSet)
{
    auto& run = finished();
    for (const auto& r : run.records)
    {
        const auto q = run.policy.plan().epoch_of(r.t);
        if (q == 1)
            continue;
        const auto active = run.policy.active_set(q, run.policy.lattice().cube_index(r.context));
        const auto expect = ActionDistribution::uniform_over(4, active);
        ASSERT_EQ(r.distribution.probs(), expect.probs()) << "t=" << r.t;
    }
    EXPECT_EQ(ActionDistribution::uniform_over(4, {1, 3}).probs(), (std::vector<double>{0.0, 0.5, 0.0, 0.5}));
}

TEST(FairSmooth, EliminationRuleIsChaining)
{
    // the refinement keeps the arms chained to the best estimate at 2 eps
    EXPECT_EQ(candidate_set(std::vector<double>{1.0, 0.2}, std::vector<std::size_t>{0, 1}, 0.3), (std::vector<std::size_t>{0}));
    EXPECT_EQ(candidate_set(std::vector<double>{0.9, 0.9, 0.9, 0.9}, std::vector<std::size_t>{0, 1, 2, 3}, 0.0),
              (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(FairSmooth, EpochLogsPartitionRounds)
{
    auto& run = finished();
    const auto& plan = run.policy.plan();
    for (std::size_t q = 1; q <= plan.epochs(); ++q)
    {
        std::size_t total = 0;
        for (std::size_t k = 0; k < 4; ++k)
        {
            std::size_t pulls = 0;
            for (const auto& r : run.records)
                if (plan.epoch_of(r.t) == q && r.arm == k)
                    ++pulls;
            EXPECT_EQ(run.policy.samples_in_epoch(q, k), pulls);
            total += pulls;
            if (pulls > 0)
            {
                EXPECT_DOUBLE_EQ(run.policy.epoch_bandwidth(q, k), bandwidth(pulls, 5.0, 2));
            }
        }
        EXPECT_EQ(total, plan.length(q));
    }
}

TEST(FairSmooth, ActiveSetsNestedNonEmptyAndLazyMatchesEager)
{
    auto& run = finished();
    const auto& plan = run.policy.plan();
    ASSERT_GE(plan.epochs(), 2U);
    std::set<std::uint64_t> cubes;
    for (const auto& r : run.records)
        cubes.insert(run.policy.lattice().cube_index(r.context));
    std::size_t checked = 0;
    for (auto cube : cubes)
    {
        std::vector<std::size_t> prev{0, 1, 2, 3};
        for (std::size_t q = 2; q <= plan.epochs(); ++q)
        {
            const auto lazy = run.policy.active_set(q, cube);
            const auto eager = run.policy.active_set_uncached(q, cube);
            ASSERT_EQ(lazy, eager);
            ASSERT_FALSE(lazy.empty());
            ASSERT_TRUE(std::includes(prev.begin(), prev.end(), lazy.begin(), lazy.end()));
            prev = lazy;
        }
        if (++checked == 300)
            break;
    }
}

TEST(FairSmooth, DominatedArmIsEliminated)
{
    auto& run = finished();
    // at a bump centre the owning arm beats every other by 1 - e^{-1}
    for (const auto& centre : SmoothEnv::kCenters)
    {
        const auto cube = run.policy.lattice().cube_index(Context{{centre[0], centre[1]}});
        EXPECT_EQ(run.policy.active_set(run.policy.plan().epochs(), cube).size(), 1U);
    }
}

TEST(FairSmooth, RobustWithZeroBudgetMatchesPlain)
{
    const std::size_t T = 5000;
    FairSmoothPolicy plain(smooth_params(T));
    FairSmoothPolicy robust(smooth_params(T, true, 0.0));
    const double floor = std::pow(static_cast<double>(T), -10.0 / 12.0);
    for (std::size_t q = 1; q <= plain.plan().epochs(); ++q)
        ASSERT_GE(plain.plan().tolerance(q), floor) << "floor active at q=" << q;
    ASSERT_EQ(plain.plan().lengths, robust.plan().lengths);
    SmoothEnv e1, e2;
    const auto a = run_trajectory(e1, plain, AttackPlan{}, 0.0, AuditConfig{}, 8, T);
    const auto b = run_trajectory(e2, robust, AttackPlan{}, 0.0, AuditConfig{}, 8, T);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        ASSERT_EQ(a[i].arm, b[i].arm);
        ASSERT_EQ(a[i].distribution.probs(), b[i].distribution.probs());
    }
}

TEST(FairSmooth, SingleEpochRegimeIsFair)
{
    FairSmoothPolicy pol(smooth_params(3000, true, 1e6));
    ASSERT_EQ(pol.plan().epochs(), 1U);
    SmoothEnv env;
    const auto r = simulate(env, pol, AttackPlan{}, 0.0, AuditConfig{}, 1, 3000);
    EXPECT_EQ(r.final_unfair(), 0U);
    const auto tight = error_tolerance(1, 3000, 5.0, 5.0, 2, true, 1e6, 3000, 0.3) -
                       error_tolerance(1, 3000, 5.0, 5.0, 2, true, 0.0, 3000, 0.3);
    EXPECT_GT(tight, 0.0);
}

TEST(FairSmooth, RejectsBadParameters)
{
    auto p = smooth_params(1000);
    p.arms = 1;
    EXPECT_THROW(FairSmoothPolicy{p}, Error);
    p = smooth_params(1000);
    p.domain = Box::cube(3, 0.0, 1.0);
    EXPECT_THROW(FairSmoothPolicy{p}, Error);
}

TEST(SimplifiedSmooth, UcbOverBins)
{
    SimplifiedSmoothPolicy pol(SimplifiedSmoothParams{3, Box::cube(2, -1.0, 1.0)});
    const Context x{{0.1, 0.1}};
    EXPECT_EQ(pol.distribution(x, 1).probs(), (std::vector<double>{1.0, 0.0, 0.0}));
    pol.observe(x, 0, 0.5, 1);
    EXPECT_EQ(pol.distribution(x, 2).probs(), (std::vector<double>{0.0, 1.0, 0.0}));
    pol.observe(x, 1, 0.5, 2);
    EXPECT_EQ(pol.distribution(x, 3)[2], 1.0);
    const std::vector<double> means{0.2, 0.8, 0.5};
    for (std::size_t t = 4; t < 3000; ++t)
        for (std::size_t k = 0; k < 3; ++k)
            pol.observe(x, k, means[k], t);
    EXPECT_EQ(pol.distribution(x, 3000).probs(), (std::vector<double>{0.0, 1.0, 0.0}));
    // a different bin is still unexplored
    EXPECT_EQ(pol.distribution(Context{{-0.9, -0.9}}, 3000)[0], 1.0);
    EXPECT_THROW(pol.bin_of(Context{{2.0, 0.0}}), Error);
}
