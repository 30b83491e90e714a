#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fairband/harness.hpp"

using namespace fairband;
namespace fs = std::filesystem;

namespace
{

ExperimentConfig tiny(const fs::path& out)
{
    auto c = parse_config_string(R"(
[experiment]
id = tiny
horizon = 400
runs = 3
stride = 7

[environment]
kind = linear
arms = 3
dim = 2

[attack]
kind = target_value
arms = 0
target = -2
budget = 20

[policy:fair_ols]
C_a = 5

[policy:robust_fair_ols]
C_a = 5

[policy:random]
)");
    c.output_dir = out.string();
    return c;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& tag)
{
    const auto d = fs::temp_directory_path() / ("fairband_harness_" + tag);
    fs::remove_all(d);
    return d;
}

} // namespace

TEST(Harness, WritesOneFilePerRunPlusCurvesAndSummary)
{
    const auto dir = scratch("files");
    const auto res = run_suite(tiny(dir), SuiteOptions{true, 1, {}});
    std::size_t n = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir))
        ++n;
    EXPECT_EQ(n, 3U * 3U + 3U + 1U);
    const auto summary = slurp(dir / "summary.csv");
    EXPECT_EQ(summary.substr(0, summary.find('\n')), "experiment,policy,runs,regret_mean,regret_sd,unfair_mean,unfair_sd");
    EXPECT_NE(summary.find("tiny,robust_fair_ols,3,"), std::string::npos);
    const auto traj = slurp(dir / "fair_ols_seed2.csv");
    EXPECT_EQ(traj.substr(0, traj.find('\n')), "t,cum_regret,cum_unfair");
    EXPECT_NE(traj.find("\n400,"), std::string::npos);
    EXPECT_EQ(res.summary("random").unfair_mean, 0.0);
    EXPECT_EQ(res.runs_of("fair_ols").size(), 3U);
    fs::remove_all(dir);
}

TEST(Harness, RerunsAreByteIdenticalAcrossThreadCounts)
{
    const auto a = scratch("a"), b = scratch("b");
    run_suite(tiny(a), SuiteOptions{true, 1, {}});
    run_suite(tiny(b), SuiteOptions{true, 3, {}});
    for (const auto& e : fs::directory_iterator(a))
        EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path().filename();
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST(Harness, RunSingleMatchesSuite)
{
    const auto cfg = tiny(scratch("single"));
    const auto res = run_suite(cfg, SuiteOptions{false, 1, {}});
    const auto r = run_single(cfg, cfg.policies[0], cfg.seeds[1]);
    EXPECT_EQ(r.cum_regret, res.runs[0][1].cum_regret);
    EXPECT_EQ(r.cum_unfair, res.runs[0][1].cum_unfair);
    EXPECT_LE(r.budget_spent, 20.0);
}

TEST(Harness, RobustPolicySeesNominalBudget)
{
    auto cfg = tiny(scratch("budget"));
    auto env = make_environment(cfg.env, PolicyType::RobustFairOls);
    auto pol = make_policy(cfg.policies[1], *env, cfg.horizon, nominal_budget(cfg.attack));
    const auto* f = dynamic_cast<FairOlsPolicy*>(pol.get());
    ASSERT_NE(f, nullptr);
    EXPECT_DOUBLE_EQ(f->params().budget, 20.0);
    EXPECT_EQ(f->exploration_len(), static_cast<std::size_t>(std::ceil(5.0 * std::log(400.0) + 4.0 * 20.0)));
}

TEST(Harness, AutoAttackResolvesAgainstPolicy)
{
    auto cfg = preset("linear-mask");
    auto env = make_environment(cfg.env, PolicyType::FairOls);
    auto pol = make_policy(cfg.policies[0], *env, cfg.horizon, 0.0);
    const auto atk = resolve_attack(cfg.attack, *env, *pol, cfg.horizon);
    const auto L = dynamic_cast<FairOlsPolicy&>(*pol).exploration_len();
    EXPECT_EQ(atk.plan.t0, L);
    EXPECT_DOUBLE_EQ(atk.plan.fmax, env->sup_norm());
    EXPECT_DOUBLE_EQ(atk.budget, static_cast<double>(L) * (2.0 * env->sup_norm() + 1.0));
    UniformRandomPolicy rnd(2);
    EXPECT_THROW(resolve_attack(cfg.attack, *env, rnd, cfg.horizon), Error);
}

TEST(Harness, PropagatesWorkerErrors)
{
    auto cfg = tiny(scratch("err"));
    cfg.env.kind = EnvKind::Wine;
    cfg.env.wine_red = "/nonexistent/red.csv";
    cfg.env.wine_white = "/nonexistent/white.csv";
    EXPECT_THROW(run_suite(cfg, SuiteOptions{false, 2, {}}), Error);
}
