#ifndef FAIRBAND_GRID_EPOCHS_HPP
#define FAIRBAND_GRID_EPOCHS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "fairband/core.hpp"

namespace fairband
{

/// Grid spacing T^{-beta/(2beta+d)} / ln T.
inline double delta_a(std::size_t T, double beta, std::size_t d)
{
    if (T < 3)
        throw Error("delta_a: horizon must be at least 3");
    if (!(beta > 1.0))
        throw Error("delta_a: smoothness must exceed 1");
    const double Td = static_cast<double>(T);
    return std::pow(Td, -beta / (2.0 * beta + static_cast<double>(d))) / std::log(Td);
}

/// Local polynomial degree: the largest integer strictly below beta.
inline std::size_t holder_degree(double beta)
{
    return static_cast<std::size_t>(std::ceil(beta) - 1.0);
}

/// Cell-centred lattice on [0,1]^d, reached from the context domain through an
/// affine map. Nearest-centre ties resolve toward the origin.
class GridLattice
{
public:
    GridLattice(double delta, Box domain) : delta_(delta), domain_(std::move(domain))
    {
        if (!(delta > 0.0 && delta <= 1.0))
            throw Error("GridLattice: spacing must lie in (0, 1]");
        if (domain_.dim() == 0 || domain_.lo.size() != domain_.hi.size())
            throw Error("GridLattice: malformed domain");
        for (std::size_t i = 0; i < domain_.dim(); ++i)
            if (!(domain_.hi[i] > domain_.lo[i]))
                throw Error("GridLattice: empty domain side");
        cells_ = static_cast<std::size_t>(std::ceil(1.0 / delta_));
        const double total = std::pow(static_cast<double>(cells_), static_cast<double>(domain_.dim()));
        if (total > 9.0e18)
            throw Error("GridLattice: too many cells");
    }

    std::size_t dim() const { return domain_.dim(); }
    double delta() const { return delta_; }
    std::size_t cells_per_dim() const { return cells_; }
    const Box& domain() const { return domain_; }

    /// Affine image of x in [0,1]^d.
    std::vector<double> to_unit(const Context& x) const
    {
        if (!domain_.contains(x))
            throw Error("GridLattice: context outside the domain");
        std::vector<double> u(dim());
        for (std::size_t i = 0; i < dim(); ++i)
            u[i] = (x[i] - domain_.lo[i]) / (domain_.hi[i] - domain_.lo[i]);
        return u;
    }

    /// Index of the nearest centre along one axis.
    std::size_t axis_cell(double u) const
    {
        // centres sit at (j + 1/2) delta; ceil(s - 1/2) rounds half down
        const double s = u / delta_ - 0.5;
        const double j = std::ceil(s - 0.5);
        if (j <= 0.0)
            return 0;
        return std::min(static_cast<std::size_t>(j), cells_ - 1);
    }

    std::uint64_t cube_index_unit(const std::vector<double>& u) const
    {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < u.size(); ++i)
            idx = idx * cells_ + axis_cell(u[i]);
        return idx;
    }

    std::uint64_t cube_index(const Context& x) const { return cube_index_unit(to_unit(x)); }

    /// Centre of a cube in unit coordinates.
    std::vector<double> grid_point(std::uint64_t index) const
    {
        std::vector<double> g(dim());
        for (std::size_t i = dim(); i-- > 0;)
        {
            const auto j = index % cells_;
            index /= cells_;
            g[i] = (2.0 * static_cast<double>(j) + 1.0) / 2.0 * delta_;
        }
        return g;
    }

private:
    double delta_;
    Box domain_;
    std::size_t cells_ = 1;
};

enum class ScheduleMode
{
    Theoretical,
    Simplified
};

/// Epoch lengths and per-epoch error tolerances. Epochs are 1-based in the
/// accessors; the final epoch is truncated so the lengths sum to T.
struct EpochPlan
{
    std::vector<std::size_t> lengths;
    std::vector<double> tolerances;
    ScheduleMode mode = ScheduleMode::Simplified;
    double robust_budget = 0.0;

    std::size_t epochs() const { return lengths.size(); }
    std::size_t length(std::size_t q) const { return lengths.at(q - 1); }
    double tolerance(std::size_t q) const { return tolerances.at(q - 1); }

    std::size_t start(std::size_t q) const
    {
        std::size_t s = 1;
        for (std::size_t i = 0; i + 1 < q; ++i)
            s += lengths.at(i);
        return s;
    }

    /// Epoch containing round t (1-based).
    std::size_t epoch_of(std::size_t t) const
    {
        std::size_t end = 0;
        for (std::size_t q = 0; q < lengths.size(); ++q)
        {
            end += lengths[q];
            if (t <= end)
                return q + 1;
        }
        throw Error("EpochPlan: round beyond the horizon");
    }
};

/// Parameters shared by the smooth-schedule formulas.
struct ScheduleParams
{
    std::size_t horizon = 0;
    double beta = 5.0;
    double beta_prime = 5.0;
    std::size_t dim = 2;
    bool robust = false;
    double budget = 0.0;
    /// simplified-schedule multiplier c0 (0.2 synthetic, 0.15 wine)
    double c0 = 0.2;
    /// robust epoch-length budget scale c1 (0.03 synthetic, 0.008 wine)
    double c1 = 0.03;
    /// robust tolerance inflation c2 (0.3 synthetic, 0.05 wine)
    double c2 = 0.3;
    // theoretical mode only
    std::size_t arms = 2;
    double p_star = 0.25;
    double c_k = 1.0;
};

inline void check_schedule(const ScheduleParams& p)
{
    if (p.horizon < 3)
        throw Error("schedule: horizon must be at least 3");
    if (!(p.beta > 1.0))
        throw Error("schedule: beta must exceed 1");
    if (!(p.beta_prime > 1.0 && p.beta_prime <= p.beta))
        throw Error("schedule: beta' must lie in (1, beta]");
    if (p.dim == 0)
        throw Error("schedule: dimension must be positive");
    if (!(p.budget >= 0.0))
        throw Error("schedule: budget must be nonnegative");
}

/// Epoch error tolerance. Plain: 2^-q (ln T)^{(b'-1-2b)/(2b'-2)}. Robust adds
/// the budget cap on 2^-q, the T^{-b/(2b+d)} floor, and c2 C |T_q|^{-2b/(2b+d)}.
inline double error_tolerance(std::size_t q, std::size_t T, double beta, double beta_prime, std::size_t d,
                              bool robust, double C, std::size_t epoch_len, double c2)
{
    if (q == 0)
        throw Error("error_tolerance: epochs are numbered from 1");
    const double logT = std::log(static_cast<double>(T));
    const double scale = std::pow(logT, (beta_prime - 1.0 - 2.0 * beta) / (2.0 * beta_prime - 2.0));
    const double halving = std::ldexp(1.0, -static_cast<int>(q));
    if (!robust)
        return halving * scale;
    const double dd = static_cast<double>(d);
    const double cap = C > 0.0 ? std::pow(C, -beta_prime / (2.0 * beta_prime - 1.0))
                               : std::numeric_limits<double>::infinity();
    const double floor = std::pow(static_cast<double>(T), -beta / (2.0 * beta + dd));
    const double base = std::max(std::min(halving, cap) * scale, floor);
    if (C <= 0.0)
        return base;
    if (epoch_len == 0)
        throw Error("error_tolerance: empty epoch");
    return base + c2 * C * std::pow(static_cast<double>(epoch_len), -2.0 * beta / (2.0 * beta + dd));
}

inline double error_tolerance(std::size_t q, const ScheduleParams& p, std::size_t epoch_len)
{
    return error_tolerance(q, p.horizon, p.beta, p.beta_prime, p.dim, p.robust, p.budget, epoch_len, p.c2);
}

/// Bandwidth N^{-1/(2beta+d)}.
inline double bandwidth(std::size_t N, double beta, std::size_t d)
{
    if (N == 0)
        throw Error("bandwidth: sample count must be positive");
    return std::pow(static_cast<double>(N), -1.0 / (2.0 * beta + static_cast<double>(d)));
}

namespace detail
{

template <class LengthFn>
EpochPlan build_plan(const ScheduleParams& p, ScheduleMode mode, LengthFn nominal)
{
    check_schedule(p);
    EpochPlan plan;
    plan.mode = mode;
    plan.robust_budget = p.robust ? p.budget : 0.0;
    std::size_t total = 0;
    for (std::size_t q = 1; total < p.horizon; ++q)
    {
        const double raw = nominal(q);
        std::size_t len = raw >= static_cast<double>(p.horizon) ? p.horizon : static_cast<std::size_t>(raw);
        len = std::max<std::size_t>(len, 1);
        len = std::min(len, p.horizon - total);
        plan.lengths.push_back(len);
        total += len;
    }
    for (std::size_t q = 1; q <= plan.lengths.size(); ++q)
        plan.tolerances.push_back(error_tolerance(q, p, plan.lengths[q - 1]));
    return plan;
}

inline double growth_factor(const ScheduleParams& p, std::size_t q, double budget_scale)
{
    const double four_q = std::pow(4.0, static_cast<double>(q));
    if (!p.robust || p.budget <= 0.0)
        return four_q;
    const double c_term = budget_scale * std::pow(p.budget, 2.0 * p.beta_prime / (2.0 * p.beta_prime - 1.0));
    return std::max(c_term, four_q);
}

} // namespace detail

/// Growth part of the simplified schedule, c0 g_q^{(2b+d)/(2b)} (ln T)^{(2b+d)/(b'-1)},
/// with g_q = 4^q, or (c1 C^{2b'/(2b'-1)} v 4^q) when robust.
inline double simplified_epoch_core(const ScheduleParams& p, std::size_t q)
{
    const double logT = std::log(static_cast<double>(p.horizon));
    const double dd = static_cast<double>(p.dim);
    const double expo = (2.0 * p.beta + dd) / (2.0 * p.beta);
    const double log_term = std::pow(logT, (2.0 * p.beta + dd) / (p.beta_prime - 1.0));
    return p.c0 * std::pow(detail::growth_factor(p, q, p.c1), expo) * log_term;
}

/// |T_q| = ceil(core_q + ln T), truncated at the horizon.
inline EpochPlan epoch_lengths_simplified(const ScheduleParams& p)
{
    if (!(p.c0 > 0.0 && p.c1 > 0.0))
        throw Error("schedule: c0 and c1 must be positive");
    const double logT = std::log(static_cast<double>(p.horizon));
    return detail::build_plan(p, ScheduleMode::Simplified,
                              [&](std::size_t q) { return std::ceil(simplified_epoch_core(p, q) + logT); });
}

/// Schedule of the analysis, with C_K and p* supplied by the caller.
inline EpochPlan epoch_lengths_theoretical(const ScheduleParams& p)
{
    if (!(p.p_star > 0.0 && p.c_k > 0.0))
        throw Error("schedule: p* and C_K must be positive");
    const double T = static_cast<double>(p.horizon);
    const double logT = std::log(T);
    const double dd = static_cast<double>(p.dim);
    const double K = static_cast<double>(p.arms);
    const double delta = delta_a(p.horizon, p.beta, p.dim);
    const double log_grid = std::log(T * std::pow(delta, -dd));
    const double expo = (2.0 * p.beta + dd) / (2.0 * p.beta);
    const double log_term = std::pow(logT, (2.0 * p.beta + dd) / (p.beta_prime - 1.0) - expo);
    return detail::build_plan(p, ScheduleMode::Theoretical, [&](std::size_t q) {
        const double g = detail::growth_factor(p, q, 1.0);
        return std::ceil(2.0 * K / p.p_star * std::pow(g * log_grid / p.c_k, expo) * log_term +
                         K * K / (2.0 * p.p_star * p.p_star) * logT);
    });
}

inline EpochPlan make_epoch_plan(const ScheduleParams& p, ScheduleMode mode)
{
    return mode == ScheduleMode::Simplified ? epoch_lengths_simplified(p) : epoch_lengths_theoretical(p);
}

} // namespace fairband

#endif
