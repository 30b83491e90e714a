#ifndef FAIRBAND_ADVERSARY_HPP
#define FAIRBAND_ADVERSARY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fairband/core.hpp"
#include "fairband/environments.hpp"

namespace fairband
{

enum class AttackKind
{
    Null,
    TargetValue,
    ExplorationMask,
    CovertOverlap
};

inline std::string to_string(AttackKind k)
{
    switch (k)
    {
    case AttackKind::Null:
        return "null";
    case AttackKind::TargetValue:
        return "target_value";
    case AttackKind::ExplorationMask:
        return "exploration_mask";
    case AttackKind::CovertOverlap:
        return "covert_overlap";
    }
    return "?";
}

inline AttackKind parse_attack_kind(const std::string& s)
{
    if (s == "null" || s == "none")
        return AttackKind::Null;
    if (s == "target_value")
        return AttackKind::TargetValue;
    if (s == "exploration_mask")
        return AttackKind::ExplorationMask;
    if (s == "covert_overlap")
        return AttackKind::CovertOverlap;
    throw Error("unknown attack kind '" + s + "'");
}

/// Interval on the first context coordinate where the covert attack bites,
/// with a smooth ramp of width `feather` just inside each end.
struct SuppressionRegion
{
    double lo = OverlapEnv::kPlateauLo + 0.02;
    double hi = OverlapEnv::kPlateauHi - 0.02;
    double feather = 0.02;
    double depth = 1.0;

    double weight(double x) const
    {
        if (feather <= 0.0)
            return x >= lo && x <= hi ? 1.0 : 0.0;
        return smooth_step((x - lo) / feather) * smooth_step((hi - x) / feather);
    }
};

struct AttackPlan
{
    AttackKind kind = AttackKind::Null;
    std::vector<std::size_t> vulnerable_arms;
    /// value the corrupted reward is pushed to (target_value)
    double target = 0.0;
    /// last attacked round for the windowed attacks; resolved from the policy when "auto"
    std::size_t t0 = 0;
    /// max_k sup |f_k| of the environment (exploration_mask)
    double fmax = 1.0;
    SuppressionRegion region;

    bool vulnerable(std::size_t arm) const
    {
        return std::find(vulnerable_arms.begin(), vulnerable_arms.end(), arm) != vulnerable_arms.end();
    }
    std::size_t target_arm() const
    {
        if (vulnerable_arms.empty())
            throw Error("attack plan has no target arm");
        return vulnerable_arms.front();
    }
};

/// Total corruption allowance C and what is left of it.
class BudgetState
{
public:
    BudgetState() = default;
    explicit BudgetState(double total) : total_(total), remaining_(total)
    {
        if (!(total >= 0.0) || !std::isfinite(total))
            throw Error("budget must be a finite nonnegative number");
    }

    double total() const { return total_; }
    double remaining() const { return remaining_; }
    double spent() const { return spent_; }

private:
    friend double corrupt(const AttackPlan&, BudgetState&, std::size_t, const Context&, std::size_t, double);

    double total_ = 0.0;
    double remaining_ = 0.0;
    double spent_ = 0.0;
};

/// Constant downward shift of the target arm's rewards during rounds 1..t0.
inline double exploration_mask(const AttackPlan& plan, std::size_t t, std::size_t arm, double /*true_mean*/,
                               double fmax)
{
    if (arm != plan.target_arm() || t > plan.t0)
        return 0.0;
    return -2.0 * fmax - 1.0;
}

/// Suppresses the target arm on the shared-optimum region during rounds 1..t0.
inline double covert_suppress(const AttackPlan& plan, std::size_t t, const Context& x, std::size_t arm,
                              double /*true_mean*/)
{
    if (arm != plan.target_arm() || t > plan.t0 || x.dim() == 0)
        return 0.0;
    const double w = plan.region.weight(x[0]);
    return w > 0.0 ? -plan.region.depth * w : 0.0;
}

/// Corruption for the round. The whole desired shift is applied and charged
/// if the remaining budget covers it; otherwise the round is left clean.
inline double corrupt(const AttackPlan& plan, BudgetState& budget, std::size_t t, const Context& x,
                      std::size_t arm, double true_mean)
{
    double c = 0.0;
    switch (plan.kind)
    {
    case AttackKind::Null:
        return 0.0;
    case AttackKind::TargetValue:
        if (plan.vulnerable(arm))
            c = plan.target - true_mean;
        break;
    case AttackKind::ExplorationMask:
        c = exploration_mask(plan, t, arm, true_mean, plan.fmax);
        break;
    case AttackKind::CovertOverlap:
        c = covert_suppress(plan, t, x, arm, true_mean);
        break;
    }
    const double cost = std::abs(c);
    if (cost == 0.0 || cost > budget.remaining_)
        return 0.0;
    budget.remaining_ -= cost;
    budget.spent_ += cost;
    return c;
}

} // namespace fairband

#endif
