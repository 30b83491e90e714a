#include <gtest/gtest.h>

#include "fairband/adversary.hpp"

using namespace fairband;

namespace
{

AttackPlan target_plan()
{
    AttackPlan p;
    p.kind = AttackKind::TargetValue;
    p.vulnerable_arms = {0, 2};
    p.target = -4.0;
    return p;
}

const Context kAny{{0.0}};

} // namespace

TEST(Corrupt, TargetValueChargesBudget)
{
    BudgetState b(200.0);
    EXPECT_DOUBLE_EQ(corrupt(target_plan(), b, 1, kAny, 0, 1.5), -5.5);
    EXPECT_DOUBLE_EQ(b.remaining(), 194.5);
    EXPECT_DOUBLE_EQ(b.spent(), 5.5);
}

TEST(Corrupt, InsufficientBudgetSkipsRound)
{
    BudgetState b(3.0);
    EXPECT_EQ(corrupt(target_plan(), b, 1, kAny, 0, 1.5), 0.0);
    EXPECT_EQ(b.remaining(), 3.0);
    // a cheaper corruption still fits afterwards
    EXPECT_DOUBLE_EQ(corrupt(target_plan(), b, 2, kAny, 2, -2.0), -2.0);
    EXPECT_DOUBLE_EQ(b.remaining(), 1.0);
}

TEST(Corrupt, NonVulnerableArmAndNullPlan)
{
    BudgetState b(200.0);
    EXPECT_EQ(corrupt(target_plan(), b, 1, kAny, 1, 1.5), 0.0);
    EXPECT_EQ(corrupt(AttackPlan{}, b, 1, kAny, 0, 1.5), 0.0);
    EXPECT_EQ(b.remaining(), 200.0);
}

TEST(Corrupt, BudgetInvariantUnderRandomCalls)
{
    BudgetState b(50.0);
    double emitted = 0.0;
    for (std::size_t t = 1; t <= 500; ++t)
    {
        const double mean = std::sin(static_cast<double>(t));
        emitted += std::abs(corrupt(target_plan(), b, t, kAny, t % 3, mean));
        ASSERT_GE(b.remaining(), 0.0);
        ASSERT_LE(b.remaining(), b.total());
    }
    EXPECT_NEAR(emitted, b.total() - b.remaining(), 1e-9);
    EXPECT_LE(emitted, 50.0);
    EXPECT_THROW(BudgetState(-1.0), Error);
}

TEST(ExplorationMask, ConstantShiftInsideWindow)
{
    AttackPlan p;
    p.kind = AttackKind::ExplorationMask;
    p.vulnerable_arms = {1};
    p.t0 = 10;
    p.fmax = 1.0;
    EXPECT_EQ(exploration_mask(p, 5, 1, 0.3, 1.0), -3.0);
    EXPECT_EQ(exploration_mask(p, 11, 1, 0.3, 1.0), 0.0);
    EXPECT_EQ(exploration_mask(p, 5, 0, 0.3, 1.0), 0.0);
    // t0 (2 fmax + 1) covers every round of the window
    BudgetState b(10.0 * 3.0);
    for (std::size_t t = 1; t <= 10; ++t)
        EXPECT_EQ(corrupt(p, b, t, kAny, 1, 0.0), -3.0);
    EXPECT_NEAR(b.remaining(), 0.0, 1e-12);
}

TEST(CovertSuppress, PlateauOnly)
{
    AttackPlan p;
    p.kind = AttackKind::CovertOverlap;
    p.vulnerable_arms = {0};
    p.t0 = 100;
    EXPECT_DOUBLE_EQ(covert_suppress(p, 1, Context{{0.5}}, 0, 1.0), -1.0);
    EXPECT_EQ(covert_suppress(p, 1, Context{{0.3}}, 0, 1.0), 0.0);
    EXPECT_EQ(covert_suppress(p, 1, Context{{0.41}}, 0, 1.0), 0.0);
    EXPECT_EQ(covert_suppress(p, 1, Context{{0.5}}, 1, 1.0), 0.0);
    EXPECT_EQ(covert_suppress(p, 101, Context{{0.5}}, 0, 1.0), 0.0);
    // feathered edge stays within [-1, 0]
    const double edge = covert_suppress(p, 1, Context{{0.43}}, 0, 1.0);
    EXPECT_LT(edge, 0.0);
    EXPECT_GT(edge, -1.0);
}

TEST(AttackKind, RoundTrip)
{
    for (auto k : {AttackKind::Null, AttackKind::TargetValue, AttackKind::ExplorationMask, AttackKind::CovertOverlap})
        EXPECT_EQ(parse_attack_kind(to_string(k)), k);
    EXPECT_THROW(parse_attack_kind("bogus"), Error);
    EXPECT_THROW(AttackPlan{}.target_arm(), Error);
}
