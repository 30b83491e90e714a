#ifndef FAIRBAND_AUDIT_HPP
#define FAIRBAND_AUDIT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fairband/core.hpp"

namespace fairband
{

/// Probability margin below which two arms count as equally preferred.
inline constexpr double kPreferenceSlack = 1e-12;

struct AuditConfig
{
    /// reward gap the preferred arm must fall short by before a round is flagged
    double tau = 0.0;
    /// Flag preference between arms whose means are tied as well. Off by default:
    /// the preferred arm must be strictly worse by more than tau.
    bool ties_unfair = false;
};

/// True when some arm is strictly preferred over a better arm.
inline bool unfair_flag(const ActionDistribution& dist, const std::vector<double>& means, const AuditConfig& cfg)
{
    if (dist.size() != means.size())
        throw Error("unfair_flag: distribution and means differ in length");
    if (!(cfg.tau >= 0.0))
        throw Error("unfair_flag: tolerance must be nonnegative");
    const std::size_t K = means.size();
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = 0; j < K; ++j)
        {
            if (i == j || !(dist[i] > dist[j] + kPreferenceSlack))
                continue;
            const bool worse = cfg.ties_unfair ? means[i] <= means[j] - cfg.tau : means[i] < means[j] - cfg.tau;
            if (worse)
                return true;
        }
    return false;
}

inline bool unfair_flag(const ActionDistribution& dist, const std::vector<double>& means, double tau)
{
    return unfair_flag(dist, means, AuditConfig{tau, false});
}

inline double regret_increment(const std::vector<double>& means, std::size_t arm)
{
    if (arm >= means.size())
        throw Error("regret_increment: arm out of range");
    return *std::max_element(means.begin(), means.end()) - means[arm];
}

/// Cumulative metrics of one trajectory.
struct RunResult
{
    std::uint64_t seed = 0;
    std::vector<double> cum_regret;
    std::vector<std::uint64_t> cum_unfair;
    double budget_spent = 0.0;
    double wall_seconds = 0.0;

    double final_regret() const { return cum_regret.empty() ? 0.0 : cum_regret.back(); }
    std::uint64_t final_unfair() const { return cum_unfair.empty() ? 0 : cum_unfair.back(); }
};

struct SummaryStats
{
    std::string experiment;
    std::string policy;
    std::size_t runs = 0;
    double regret_mean = 0.0;
    double regret_sd = 0.0;
    double unfair_mean = 0.0;
    double unfair_sd = 0.0;
    /// per-round mean cumulative regret and its 95% normal half-width
    std::vector<double> regret_curve;
    std::vector<double> regret_halfwidth;
    std::vector<double> unfair_curve;
    std::vector<double> unfair_halfwidth;
};

namespace detail
{

struct MeanSd
{
    double mean = 0.0;
    double sd = 0.0;
};

inline MeanSd mean_sd(const std::vector<double>& v)
{
    MeanSd out;
    if (v.empty())
        return out;
    for (double x : v)
        out.mean += x;
    out.mean /= static_cast<double>(v.size());
    if (v.size() < 2)
        return out;
    double ss = 0.0;
    for (double x : v)
        ss += (x - out.mean) * (x - out.mean);
    out.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
    return out;
}

} // namespace detail

/// Sample mean and SD (n-1 denominator) of the final totals, plus per-round
/// mean curves with 1.96 SD / sqrt(n) half-widths. Runs are reduced in the
/// order given, so callers should sort by seed for order-independent output.
inline SummaryStats aggregate(const std::vector<RunResult>& runs, std::string experiment = {},
                              std::string policy = {})
{
    if (runs.size() < 2)
        throw Error("aggregate: need at least two runs");
    const std::size_t T = runs.front().cum_regret.size();
    for (const auto& r : runs)
        if (r.cum_regret.size() != T || r.cum_unfair.size() != T)
            throw Error("aggregate: mismatched horizons");

    SummaryStats s;
    s.experiment = std::move(experiment);
    s.policy = std::move(policy);
    s.runs = runs.size();
    std::vector<double> reg;
    std::vector<double> unf;
    for (const auto& r : runs)
    {
        reg.push_back(r.final_regret());
        unf.push_back(static_cast<double>(r.final_unfair()));
    }
    const auto rm = detail::mean_sd(reg);
    const auto um = detail::mean_sd(unf);
    s.regret_mean = rm.mean;
    s.regret_sd = rm.sd;
    s.unfair_mean = um.mean;
    s.unfair_sd = um.sd;

    const double z = 1.96 / std::sqrt(static_cast<double>(runs.size()));
    s.regret_curve.resize(T);
    s.regret_halfwidth.resize(T);
    s.unfair_curve.resize(T);
    s.unfair_halfwidth.resize(T);
    std::vector<double> col_r(runs.size());
    std::vector<double> col_u(runs.size());
    for (std::size_t t = 0; t < T; ++t)
    {
        for (std::size_t i = 0; i < runs.size(); ++i)
        {
            col_r[i] = runs[i].cum_regret[t];
            col_u[i] = static_cast<double>(runs[i].cum_unfair[t]);
        }
        const auto a = detail::mean_sd(col_r);
        const auto b = detail::mean_sd(col_u);
        s.regret_curve[t] = a.mean;
        s.regret_halfwidth[t] = z * a.sd;
        s.unfair_curve[t] = b.mean;
        s.unfair_halfwidth[t] = z * b.sd;
    }
    return s;
}

} // namespace fairband

#endif
