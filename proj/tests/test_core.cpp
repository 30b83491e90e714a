#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "fairband/core.hpp"

using namespace fairband;

TEST(ActionDistribution, Constructors)
{
    const auto pm = ActionDistribution::point_mass(3, 1);
    EXPECT_EQ(pm.probs(), (std::vector<double>{0.0, 1.0, 0.0}));
    const auto un = ActionDistribution::uniform(4);
    for (std::size_t i = 0; i < 4; ++i)
        EXPECT_DOUBLE_EQ(un[i], 0.25);
    const auto uo = ActionDistribution::uniform_over(4, {1, 3});
    EXPECT_EQ(uo.probs(), (std::vector<double>{0.0, 0.5, 0.0, 0.5}));
    EXPECT_THROW(ActionDistribution::uniform_over(4, {}), Error);
    EXPECT_THROW(ActionDistribution::point_mass(2, 2), std::out_of_range);
}

TEST(ActionDistribution, Violation)
{
    EXPECT_EQ(ActionDistribution::uniform(3).violation(3), "");
    EXPECT_NE(ActionDistribution::uniform(3).violation(4), "");
    EXPECT_NE(ActionDistribution({0.5, 0.6}).violation(2), "");
    EXPECT_NE(ActionDistribution({1.2, -0.2}).violation(2), "");
    EXPECT_NE(ActionDistribution({NAN, 1.0}).violation(2), "");
}

TEST(ActionDistribution, SampleIsInverseCdf)
{
    const ActionDistribution d({0.2, 0.0, 0.5, 0.3});
    EXPECT_EQ(d.sample(0.0), 0U);
    EXPECT_EQ(d.sample(0.19), 0U);
    EXPECT_EQ(d.sample(0.2), 2U);
    EXPECT_EQ(d.sample(0.69), 2U);
    EXPECT_EQ(d.sample(0.7), 3U);
    // rounding slack past the cumulative sum lands on the last supported arm
    EXPECT_EQ(ActionDistribution({0.5, 0.5, 0.0}).sample(0.9999999999999999), 1U);
}

TEST(ActionDistribution, ZeroProbabilityArmsAreNeverDrawn)
{
    const auto d = ActionDistribution::uniform_over(5, {0, 4});
    for (int i = 0; i < 1000; ++i)
    {
        const auto a = d.sample(i / 1000.0);
        EXPECT_TRUE(a == 0 || a == 4);
    }
}

TEST(Box, Contains)
{
    const auto b = Box::cube(2, -1.0, 1.0);
    EXPECT_TRUE(b.contains(Context{{-1.0, 1.0}}));
    EXPECT_FALSE(b.contains(Context{{-1.01, 0.0}}));
    EXPECT_FALSE(b.contains(Context{{0.0}}));
    EXPECT_FALSE(b.contains(Context{{NAN, 0.0}}));
}

TEST(RngStreams, DeterministicAndDistinct)
{
    auto a = RngStreams::from_seed(42);
    auto b = RngStreams::from_seed(42);
    EXPECT_EQ(a.context(), b.context());
    EXPECT_EQ(a.adversary(), b.adversary());
    auto c = RngStreams::from_seed(42);
    std::set<std::uint64_t> firsts{c.context(), c.noise(), c.policy(), c.adversary()};
    EXPECT_EQ(firsts.size(), 4U);
    auto d = RngStreams::from_seed(43);
    auto e = RngStreams::from_seed(42);
    EXPECT_NE(d.context(), e.context());
}
