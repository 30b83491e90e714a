#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fairband/audit.hpp"

using namespace fairband;

TEST(UnfairFlag, Examples)
{
    EXPECT_TRUE(unfair_flag(ActionDistribution({1.0, 0.0}), {0.5, 0.9}, 0.0));
    EXPECT_FALSE(unfair_flag(ActionDistribution({0.5, 0.5}), {0.5, 0.9}, 0.0));
    EXPECT_FALSE(unfair_flag(ActionDistribution({1.0, 0.0}), {0.895, 0.9}, 0.01));
    EXPECT_FALSE(unfair_flag(ActionDistribution({0.0, 1.0}), {0.5, 0.9}, 0.0));
    EXPECT_THROW(unfair_flag(ActionDistribution({1.0}), {0.5, 0.9}, 0.0), Error);
    EXPECT_THROW(unfair_flag(ActionDistribution({1.0, 0.0}), {0.5, 0.9}, -1.0), Error);
}

TEST(UnfairFlag, TiesOnlyCountWhenConfigured)
{
    const ActionDistribution d({1.0, 0.0});
    EXPECT_FALSE(unfair_flag(d, {1.0, 1.0}, AuditConfig{0.0, false}));
    EXPECT_TRUE(unfair_flag(d, {1.0, 1.0}, AuditConfig{0.0, true}));
}

TEST(UnfairFlag, UniformIsNeverUnfair)
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (std::size_t K = 2; K <= 12; ++K)
        for (int i = 0; i < 50; ++i)
        {
            std::vector<double> m(K);
            for (auto& v : m)
                v = u(rng);
            EXPECT_FALSE(unfair_flag(ActionDistribution::uniform(K), m, AuditConfig{0.0, true}));
        }
}

TEST(UnfairFlag, MonotoneInTolerance)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i)
    {
        std::vector<double> p{u(rng), u(rng), u(rng)};
        const double s = p[0] + p[1] + p[2];
        for (auto& v : p)
            v /= s;
        const std::vector<double> m{u(rng), u(rng), u(rng)};
        const ActionDistribution d(p);
        bool prev = true;
        for (double tau : {0.0, 0.05, 0.1, 0.3, 1.0})
        {
            const bool f = unfair_flag(d, m, tau);
            EXPECT_FALSE(f && !prev);
            prev = f;
        }
    }
}

TEST(Regret, Increments)
{
    EXPECT_EQ(regret_increment({0.3, 0.7}, 1), 0.0);
    EXPECT_NEAR(regret_increment({0.3, 0.7}, 0), 0.4, 1e-15);
    EXPECT_EQ(regret_increment({0.5, 0.5, 0.5}, 2), 0.0);
    EXPECT_THROW(regret_increment({0.5}, 1), Error);
}

namespace
{

RunResult flat_run(double regret, std::uint64_t unfair, std::size_t T = 3)
{
    RunResult r;
    r.cum_regret.assign(T, 0.0);
    r.cum_unfair.assign(T, 0);
    r.cum_regret.back() = regret;
    r.cum_unfair.back() = unfair;
    return r;
}

} // namespace

TEST(Aggregate, TwoPointStatistics)
{
    const auto s = aggregate({flat_run(10.0, 1), flat_run(12.0, 3)}, "exp", "pol");
    EXPECT_DOUBLE_EQ(s.regret_mean, 11.0);
    EXPECT_DOUBLE_EQ(s.regret_sd, std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(s.unfair_mean, 2.0);
    EXPECT_DOUBLE_EQ(s.unfair_sd, std::sqrt(2.0));
    EXPECT_EQ(s.runs, 2U);
    EXPECT_EQ(s.experiment, "exp");
    EXPECT_DOUBLE_EQ(s.regret_curve.back(), 11.0);
    EXPECT_DOUBLE_EQ(s.regret_halfwidth.back(), 1.96 * std::sqrt(2.0) / std::sqrt(2.0));
}

TEST(Aggregate, IdenticalRunsHaveZeroSpread)
{
    const auto s = aggregate({flat_run(5.0, 2), flat_run(5.0, 2), flat_run(5.0, 2)});
    EXPECT_EQ(s.regret_sd, 0.0);
    EXPECT_EQ(s.unfair_sd, 0.0);
}

TEST(Aggregate, Errors)
{
    EXPECT_THROW(aggregate({flat_run(1.0, 0)}), Error);
    EXPECT_THROW(aggregate({flat_run(1.0, 0, 3), flat_run(1.0, 0, 4)}), Error);
}
