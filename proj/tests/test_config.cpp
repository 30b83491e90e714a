#include <gtest/gtest.h>

#include <filesystem>

#include "fairband/config.hpp"

using namespace fairband;

namespace
{

const std::string kMinimal = R"(
[experiment]
id = tiny
horizon = 300
runs = 3

[environment]
kind = linear
arms = 3
dim = 2

[policy:fair_ols]
C_a = 5

[policy:uniform]
type = random
)";

std::string error_of(const std::string& text)
{
    try
    {
        parse_config_string(text);
    }
    catch (const Error& e)
    {
        return e.what();
    }
    return {};
}

} // namespace

TEST(Config, ParsesMinimalFile)
{
    const auto c = parse_config_string(kMinimal);
    EXPECT_EQ(c.id, "tiny");
    EXPECT_EQ(c.horizon, 300U);
    EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{1, 2, 3}));
    EXPECT_EQ(c.env.arms, 3U);
    EXPECT_EQ(c.env.dim, 2U);
    EXPECT_DOUBLE_EQ(c.env.sigma, 0.05);
    EXPECT_EQ(c.attack.kind, AttackKind::Null);
    ASSERT_EQ(c.policies.size(), 2U);
    EXPECT_EQ(c.policies[0].type, PolicyType::FairOls);
    EXPECT_DOUBLE_EQ(c.policies[0].C_a, 5.0);
    EXPECT_DOUBLE_EQ(c.policies[0].C_b, 1.0);
    EXPECT_EQ(c.policies[1].type, PolicyType::Random);
    EXPECT_EQ(c.policies[1].label, "uniform");
}

TEST(Config, RoundTripsThroughIni)
{
    for (const auto& name : preset_names())
    {
        auto c = preset(name);
        c.env.wine_red = "red.csv";
        c.env.wine_white = "white.csv";
        const std::string once = to_ini(c);
        const auto back = parse_config_string(once, name);
        EXPECT_EQ(to_ini(back), once) << name;
    }
}

TEST(Config, RejectsUnknownAndDuplicateKeys)
{
    EXPECT_NE(error_of(kMinimal + "\n[policy:greedy]\nwarp = 3\n").find("unknown key 'warp'"), std::string::npos);
    EXPECT_NE(error_of(kMinimal + "\n[policy:greedy]\nwarm_start = 3\nwarm_start = 4\n"), "");
    EXPECT_NE(error_of(kMinimal + "\n[bogus]\nx = 1\n").find("unknown section"), std::string::npos);
    EXPECT_NE(error_of("[experiment]\nhorizon = 10\n").find("missing [environment]"), std::string::npos);
    EXPECT_NE(error_of(kMinimal + "\n[policy:x]\ntype = nope\n"), "");
}

TEST(Config, RejectsBadValues)
{
    auto with = [](const std::string& from, const std::string& to) {
        std::string t = kMinimal;
        t.replace(t.find(from), from.size(), to);
        return error_of(t);
    };
    EXPECT_NE(with("horizon = 300", "horizon = -3"), "");
    EXPECT_NE(with("horizon = 300", "horizon = abc"), "");
    EXPECT_NE(with("C_a = 5", "C_a = 0"), "");
    EXPECT_NE(with("kind = linear", "kind = smooth"), "");
    EXPECT_NE(error_of(kMinimal + "\n[attack]\nkind = target_value\narms = 7\nbudget = 10\n").find("out of range"),
              std::string::npos);
}

TEST(Config, SeedLists)
{
    std::string t = kMinimal;
    t.replace(t.find("runs = 3"), 8, "seeds = 4-6, 10");
    EXPECT_EQ(parse_config_string(t).seeds, (std::vector<std::uint64_t>{4, 5, 6, 10}));
    t = kMinimal;
    t.replace(t.find("runs = 3"), 8, "seeds = 1,1");
    EXPECT_NE(error_of(t), "");
}

TEST(Config, Presets)
{
    const auto lb = preset("linear-benign");
    EXPECT_EQ(lb.env.arms, 10U);
    EXPECT_EQ(lb.env.dim, 10U);
    EXPECT_EQ(lb.horizon, 5000U);
    EXPECT_EQ(lb.seeds.size(), 10U);
    const auto la = preset("linear-attack");
    EXPECT_EQ(la.horizon, 10000U);
    EXPECT_DOUBLE_EQ(la.attack.budget, 200.0);
    EXPECT_EQ(la.attack.arms.size(), 5U);
    EXPECT_DOUBLE_EQ(la.attack.target, -4.0);
    const auto sa = preset("smooth-attack");
    EXPECT_DOUBLE_EQ(sa.attack.target, -0.1);
    EXPECT_EQ(sa.attack.arms, (std::vector<std::size_t>{0, 1}));
    const auto wa = preset("wine-attack");
    EXPECT_EQ(wa.attack.arms, (std::vector<std::size_t>{0, 2}));
    EXPECT_DOUBLE_EQ(wa.attack.target, 0.0);
    EXPECT_DOUBLE_EQ(wa.audit.tau, 0.01);
    EXPECT_THROW(validate(wa), Error);
    EXPECT_THROW(preset("nope"), Error);
    for (const auto& n : preset_names())
        if (n.rfind("wine", 0) != 0)
        {
            EXPECT_NO_THROW(validate(preset(n))) << n;
        }
}

TEST(Config, MissingFile)
{
    EXPECT_THROW(parse_config("/nonexistent/dir/config.ini"), Error);
}

TEST(Config, ShippedConfigsParse)
{
    const std::filesystem::path dir = std::filesystem::path(__FILE__).parent_path().parent_path() / "configs";
    for (const auto& name : preset_names())
    {
        const auto c = parse_config((dir / (name + ".ini")).string());
        auto p = preset(name);
        p.env.wine_red = c.env.wine_red;
        p.env.wine_white = c.env.wine_white;
        EXPECT_EQ(to_ini(c), to_ini(p)) << name;
    }
}
