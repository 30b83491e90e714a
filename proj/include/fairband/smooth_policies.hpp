#ifndef FAIRBAND_SMOOTH_POLICIES_HPP
#define FAIRBAND_SMOOTH_POLICIES_HPP

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fairband/chaining.hpp"
#include "fairband/core.hpp"
#include "fairband/estimators.hpp"
#include "fairband/grid_epochs.hpp"

namespace fairband
{

struct FairSmoothParams
{
    std::size_t arms = 0;
    Box domain;
    ScheduleParams schedule;
    ScheduleMode mode = ScheduleMode::Simplified;
    /// multiplier on the grid spacing delta_A
    double delta_mult = 1.0;
};

/// Fair smooth bandit. Rounds are split into epochs; epoch 1 explores
/// uniformly, and in epoch q every grid cube plays uniformly over its active
/// set, obtained from the cube's previous active set by chaining local
/// polynomial estimates (previous-epoch samples only) at twice the previous
/// epoch's tolerance. Active sets are computed when a cube is first visited.
/// The robust variant is the same policy run on a corruption-scaled plan.
class FairSmoothPolicy : public Policy
{
public:
    using ArmMask = std::uint64_t;

    explicit FairSmoothPolicy(FairSmoothParams p)
        : p_(std::move(p)),
          plan_(make_epoch_plan(p_.schedule, p_.mode)),
          lattice_(checked_spacing(p_), p_.domain),
          basis_(holder_degree(p_.schedule.beta), p_.schedule.dim)
    {
        if (p_.arms < 2 || p_.arms > 64)
            throw Error("fair smooth: arm count must lie in [2, 64]");
        if (p_.domain.dim() != p_.schedule.dim)
            throw Error("fair smooth: domain dimension differs from the schedule dimension");
        logs_.assign(plan_.epochs(), std::vector<PointSamples>(p_.arms, PointSamples(p_.schedule.dim)));
        cache_.resize(plan_.epochs() + 1);
        full_ = p_.arms == 64 ? ~ArmMask{0} : (ArmMask{1} << p_.arms) - 1;
    }

    std::string_view name() const override { return p_.schedule.robust ? "robust_fair_smooth" : "fair_smooth"; }
    std::size_t arms() const override { return p_.arms; }
    const EpochPlan& plan() const { return plan_; }
    const GridLattice& lattice() const { return lattice_; }
    const FairSmoothParams& params() const { return p_; }

    /// Samples of arm k logged during epoch q (unit coordinates).
    const PointSamples& epoch_log(std::size_t q, std::size_t k) const { return logs_.at(q - 1).at(k); }

    std::size_t samples_in_epoch(std::size_t q, std::size_t k) const { return epoch_log(q, k).size(); }

    /// Bandwidth used with epoch q's samples of arm k.
    double epoch_bandwidth(std::size_t q, std::size_t k) const
    {
        return bandwidth(samples_in_epoch(q, k), p_.schedule.beta, p_.schedule.dim);
    }

    /// Active set of cube j in epoch q; requires epochs before q to be complete.
    std::vector<std::size_t> active_set(std::size_t q, std::uint64_t cube) { return mask_to_arms(active_mask(q, cube)); }

    /// Recomputes an active set without touching the cache.
    std::vector<std::size_t> active_set_uncached(std::size_t q, std::uint64_t cube) const
    {
        ArmMask m = full_;
        for (std::size_t r = 2; r <= q; ++r)
            m = refine(r, cube, m);
        return mask_to_arms(m);
    }

    /// Cubes whose active set for epoch q has been resolved.
    std::size_t cached_cubes(std::size_t q) const { return q < cache_.size() ? cache_[q].size() : 0; }

    /// Number of refinements skipped for lack of local support.
    std::size_t skipped_refinements() const { return skipped_; }

    ActionDistribution distribution(const Context& x, std::size_t t) override
    {
        const std::size_t q = plan_.epoch_of(t);
        if (q == 1)
            return ActionDistribution::uniform(p_.arms);
        return ActionDistribution::uniform_over(p_.arms, active_set(q, lattice_.cube_index(x)));
    }

    void observe(const Context& x, std::size_t arm, double reward, std::size_t t) override
    {
        const std::size_t q = plan_.epoch_of(t);
        logs_.at(q - 1).at(arm).add(lattice_.to_unit(x), reward);
    }

private:
    static double checked_spacing(const FairSmoothParams& p)
    {
        check_schedule(p.schedule);
        if (!(p.delta_mult > 0.0))
            throw Error("fair smooth: grid multiplier must be positive");
        return std::min(1.0, delta_a(p.schedule.horizon, p.schedule.beta, p.schedule.dim) * p.delta_mult);
    }

    std::vector<std::size_t> mask_to_arms(ArmMask m) const
    {
        std::vector<std::size_t> out;
        for (std::size_t k = 0; k < p_.arms; ++k)
            if (m >> k & 1U)
                out.push_back(k);
        return out;
    }

    ArmMask active_mask(std::size_t q, std::uint64_t cube)
    {
        if (q <= 1)
            return full_;
        auto& c = cache_[q];
        if (auto it = c.find(cube); it != c.end())
            return it->second;
        const ArmMask prev = active_mask(q - 1, cube);
        const ArmMask m = refine(q, cube, prev);
        c.emplace(cube, m);
        return m;
    }

    /// One elimination step at the start of epoch q.
    ArmMask refine(std::size_t q, std::uint64_t cube, ArmMask prev) const
    {
        if (std::popcount(prev) <= 1)
            return prev;
        const std::vector<double> g = lattice_.grid_point(cube);
        std::vector<double> est(p_.arms, 0.0);
        std::vector<std::size_t> subset;
        for (std::size_t k = 0; k < p_.arms; ++k)
        {
            if (!(prev >> k & 1U))
                continue;
            const PointSamples& s = logs_[q - 2][k];
            if (s.size() == 0)
            {
                ++skipped_;
                return prev;
            }
            const double h = bandwidth(s.size(), p_.schedule.beta, p_.schedule.dim);
            const LocalPolyFit fit = local_poly_fit(g, s, h, basis_);
            if (!fit.reliable())
            {
                ++skipped_;
                return prev;
            }
            est[k] = fit.value;
            subset.push_back(k);
        }
        ArmMask m = 0;
        for (auto k : candidate_set(est, subset, 2.0 * plan_.tolerance(q - 1)))
            m |= ArmMask{1} << k;
        return m;
    }

    FairSmoothParams p_;
    EpochPlan plan_;
    GridLattice lattice_;
    LocalPolyBasis basis_;
    // logs_[q-1][k]: epoch q samples of arm k
    std::vector<std::vector<PointSamples>> logs_;
    // cache_[q]: cube -> active mask during epoch q
    std::vector<std::unordered_map<std::uint64_t, ArmMask>> cache_;
    ArmMask full_ = 0;
    mutable std::size_t skipped_ = 0;
};

inline ActionDistribution smooth_distribution(FairSmoothPolicy& state, const Context& x, std::size_t t)
{
    return state.distribution(x, t);
}

struct SimplifiedSmoothParams
{
    std::size_t arms = 0;
    Box domain;
    double c1 = 0.5;
    double c2 = 1.0;
    double bin_side = 0.25;
};

/// Binned UCB baseline: fixed bins on the unit-mapped domain, per-(bin, arm)
/// running means, bonus c1 sqrt(c2 ln(t+1) / max(1, n)), infinite bonus for
/// unvisited pairs, lowest-index tie-break.
class SimplifiedSmoothPolicy : public Policy
{
public:
    explicit SimplifiedSmoothPolicy(SimplifiedSmoothParams p) : p_(std::move(p))
    {
        if (p_.arms < 2)
            throw Error("simplified smooth: need at least two arms");
        if (!(p_.bin_side > 0.0 && p_.bin_side <= 1.0))
            throw Error("simplified smooth: bin side must lie in (0, 1]");
        if (p_.domain.dim() == 0)
            throw Error("simplified smooth: empty domain");
        bins_per_dim_ = static_cast<std::size_t>(std::ceil(1.0 / p_.bin_side - 1e-12));
        std::size_t total = 1;
        for (std::size_t i = 0; i < p_.domain.dim(); ++i)
        {
            if (total > (std::size_t{1} << 24) / bins_per_dim_)
                throw Error("simplified smooth: too many bins");
            total *= bins_per_dim_;
        }
        sum_.assign(total * p_.arms, 0.0);
        count_.assign(total * p_.arms, 0);
    }

    std::string_view name() const override { return "simplified_smooth"; }
    std::size_t arms() const override { return p_.arms; }

    std::size_t bin_of(const Context& x) const
    {
        if (!p_.domain.contains(x))
            throw Error("simplified smooth: context outside the domain");
        std::size_t idx = 0;
        for (std::size_t i = 0; i < x.dim(); ++i)
        {
            const double u = (x[i] - p_.domain.lo[i]) / (p_.domain.hi[i] - p_.domain.lo[i]);
            auto j = static_cast<std::size_t>(u / p_.bin_side);
            idx = idx * bins_per_dim_ + std::min(j, bins_per_dim_ - 1);
        }
        return idx;
    }

    std::vector<double> indices(const Context& x, std::size_t t) const
    {
        const std::size_t b = bin_of(x);
        std::vector<double> v(p_.arms);
        const double lg = std::log(static_cast<double>(t) + 1.0);
        for (std::size_t k = 0; k < p_.arms; ++k)
        {
            const std::size_t n = count_[b * p_.arms + k];
            if (n == 0)
            {
                v[k] = std::numeric_limits<double>::infinity();
                continue;
            }
            const double nd = static_cast<double>(n);
            v[k] = sum_[b * p_.arms + k] / nd + p_.c1 * std::sqrt(p_.c2 * lg / std::max(1.0, nd));
        }
        return v;
    }

    ActionDistribution distribution(const Context& x, std::size_t t) override
    {
        const auto v = indices(x, t);
        std::size_t best = 0;
        for (std::size_t k = 1; k < v.size(); ++k)
            if (v[k] > v[best])
                best = k;
        return ActionDistribution::point_mass(p_.arms, best);
    }

    void observe(const Context& x, std::size_t arm, double reward, std::size_t) override
    {
        const std::size_t i = bin_of(x) * p_.arms + arm;
        sum_[i] += reward;
        ++count_[i];
    }

private:
    SimplifiedSmoothParams p_;
    std::size_t bins_per_dim_ = 1;
    std::vector<double> sum_;
    std::vector<std::size_t> count_;
};

} // namespace fairband

#endif
