#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fairband/environments.hpp"

using namespace fairband;

namespace
{

Context basis(std::size_t d, std::size_t j)
{
    Context x{std::vector<double>(d, 0.0)};
    x.coords[j] = 1.0;
    return x;
}

} // namespace

TEST(LinearEnv, CyclicWeights)
{
    const LinearEnv env(10, 10);
    EXPECT_DOUBLE_EQ(env.mean(0, basis(10, 0)), 2.0);
    EXPECT_DOUBLE_EQ(env.mean(0, basis(10, 9)), -1.0);
    EXPECT_DOUBLE_EQ(env.mean(0, basis(10, 1)), 1.0);
    const Context zero{std::vector<double>(10, 0.0)};
    for (std::size_t k = 0; k < 10; ++k)
        EXPECT_DOUBLE_EQ(env.mean(k, zero), 0.5 * std::sin(2.0 * M_PI * k / 10.0));
}

TEST(LinearEnv, TwoByTwoInstance)
{
    // with d = 2 the +1 and -1 neighbours coincide and cancel
    const LinearEnv env(2, 2);
    EXPECT_EQ(env.weights()[0], (std::vector<double>{2.0, 0.0}));
    EXPECT_EQ(env.weights()[1], (std::vector<double>{0.0, 2.0}));
    EXPECT_NEAR(env.biases()[1], 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(env.sup_norm(), 2.0 + std::abs(env.biases()[1]));
}

TEST(LinearEnv, MeanBoundedBySupNorm)
{
    LinearEnv env(10, 10);
    std::mt19937_64 rng(1);
    EXPECT_LE(env.sup_norm(), 4.5);
    for (int i = 0; i < 2000; ++i)
    {
        const auto draw = env.draw(rng);
        ASSERT_TRUE(env.domain().contains(draw.context));
        for (double m : draw.means)
            ASSERT_LE(std::abs(m), env.sup_norm() + 1e-12);
    }
    EXPECT_THROW(LinearEnv(1, 3), Error);
}

TEST(SmoothEnv, Bumps)
{
    const SmoothEnv env;
    EXPECT_DOUBLE_EQ(env.mean(0, Context{{0.5, 0.5}}), 1.0);
    for (std::size_t k = 0; k < 4; ++k)
        EXPECT_NEAR(env.mean(k, Context{{0.0, 0.0}}), 0.60653066, 1e-8);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i)
    {
        const double a = u(rng), b = u(rng);
        EXPECT_DOUBLE_EQ(env.mean(0, Context{{a, b}}), env.mean(1, Context{{-a, b}}));
    }
}

TEST(SmoothStep, ShapeAndSymmetry)
{
    EXPECT_EQ(smooth_step(-0.5), 0.0);
    EXPECT_EQ(smooth_step(0.0), 0.0);
    EXPECT_EQ(smooth_step(1.0), 1.0);
    EXPECT_DOUBLE_EQ(smooth_step(0.5), 0.5);
    double prev = 0.0;
    for (int i = 1; i < 100; ++i)
    {
        const double t = i / 100.0;
        // strictly increasing until the value rounds to 1 in double precision
        if (t <= 0.95)
        {
            EXPECT_GT(smooth_step(t), prev) << t;
        }
        EXPECT_GE(smooth_step(t), prev) << t;
        EXPECT_NEAR(smooth_step(t) + smooth_step(1.0 - t), 1.0, 1e-14);
        prev = smooth_step(t);
    }
}

TEST(OverlapEnv, SharedPlateau)
{
    const OverlapEnv env;
    const auto mid = env.means(0.5);
    EXPECT_EQ(mid[0], mid[1]);
    EXPECT_EQ(mid[0], 1.0);
    const auto left = env.means(0.0);
    EXPECT_DOUBLE_EQ(left[0], 1.0);
    EXPECT_DOUBLE_EQ(left[1], 0.2);
    const auto right = env.means(1.0);
    EXPECT_DOUBLE_EQ(right[0], 0.2);
    EXPECT_DOUBLE_EQ(right[1], 1.0);
}

TEST(OverlapEnv, TieSetHasMeasureAtLeastOneTenth)
{
    const OverlapEnv env;
    const int n = 10000;
    int ties = 0;
    for (int i = 0; i < n; ++i)
    {
        const auto m = env.means((i + 0.5) / n);
        if (m[0] == m[1])
            ++ties;
    }
    EXPECT_GE(static_cast<double>(ties) / n, 0.1);
}

TEST(OverlapEnv, MirrorSymmetryAndRange)
{
    const OverlapEnv env;
    for (int i = 0; i <= 1000; ++i)
    {
        const double x = i / 1000.0;
        const auto a = env.means(x);
        const auto b = env.means(1.0 - x);
        EXPECT_DOUBLE_EQ(a[0], b[1]);
        EXPECT_GE(a[0], 0.2);
        EXPECT_LE(a[0], 1.0);
    }
}

TEST(Environments, NoiseScaleIsReported)
{
    EXPECT_DOUBLE_EQ(LinearEnv(3, 3).noise_sd(), 0.05);
    EXPECT_DOUBLE_EQ(SmoothEnv(0.1).noise_sd(), 0.1);
    EXPECT_DOUBLE_EQ(OverlapEnv().noise_sd(), 0.05);
}
