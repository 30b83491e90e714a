#ifndef FAIRBAND_LINEAR_POLICIES_HPP
#define FAIRBAND_LINEAR_POLICIES_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Cholesky>

#include "fairband/chaining.hpp"
#include "fairband/core.hpp"
#include "fairband/estimators.hpp"

namespace fairband
{

namespace detail
{

inline void check_dims(std::size_t K, std::size_t d, std::size_t T)
{
    if (K < 2)
        throw Error("policy: need at least two arms");
    if (d < 1)
        throw Error("policy: context dimension must be positive");
    if (T < 1)
        throw Error("policy: horizon must be positive");
}

inline void check_context(const Context& x, std::size_t d)
{
    if (x.dim() != d)
        throw Error("policy: context has dimension " + std::to_string(x.dim()) + ", expected " + std::to_string(d));
}

/// Lowest index among the maxima.
inline std::size_t argmax_lowest(const std::vector<double>& v)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best])
            best = i;
    return best;
}

} // namespace detail

class UniformRandomPolicy : public Policy
{
public:
    explicit UniformRandomPolicy(std::size_t K) : K_(K)
    {
        if (K < 1)
            throw Error("policy: need at least one arm");
    }

    std::string_view name() const override { return "random"; }
    std::size_t arms() const override { return K_; }
    ActionDistribution distribution(const Context&, std::size_t) override { return ActionDistribution::uniform(K_); }
    void observe(const Context&, std::size_t, double, std::size_t) override {}

private:
    std::size_t K_;
};

inline ActionDistribution uniform_random_distribution(std::size_t K)
{
    if (K < 1)
        throw Error("uniform_random_distribution: need at least one arm");
    return ActionDistribution::uniform(K);
}

struct FairOlsParams
{
    std::size_t arms = 0;
    std::size_t dim = 0;
    std::size_t horizon = 0;
    double C_a = 20.0;
    double C_b = 1.0;
    double h = 1.2;
    // corruption-robust extension; all zero gives the plain algorithm
    bool robust = false;
    double budget = 0.0;
    double gamma_lin = 0.0;
    double kappa = 0.0;

    /// ceil(C_a ln T), plus gamma_lin C inside the ceiling when robust.
    std::size_t exploration_len() const
    {
        const double logT = std::log(static_cast<double>(horizon));
        double v = C_a * logT;
        if (robust)
            v += gamma_lin * budget;
        return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(v)));
    }

    /// C_b sqrt(ln T / t), with kappa C / t added under the root when robust.
    double threshold(std::size_t t) const
    {
        const double logT = std::log(static_cast<double>(horizon));
        const double td = static_cast<double>(t);
        double inner = logT / td;
        if (robust)
            inner += kappa * budget / td;
        return C_b * std::sqrt(inner);
    }
};

inline FairOlsParams robust_fair_ols_params(FairOlsParams base, double C, double gamma_lin, double kappa)
{
    if (!(C >= 0.0))
        throw Error("robust_fair_ols_params: budget must be nonnegative");
    base.robust = true;
    base.budget = C;
    base.gamma_lin = gamma_lin;
    base.kappa = kappa;
    return base;
}

/// Fair OLS bandit: a uniform exploration phase fixes initial estimates, arms
/// chained to the best initial prediction at scale h/2 form the candidate set,
/// and the round is played uniformly over the arms whose all-sample
/// predictions chain to the best one at the shrinking threshold.
class FairOlsPolicy : public Policy
{
public:
    explicit FairOlsPolicy(FairOlsParams p) : p_(p)
    {
        detail::check_dims(p_.arms, p_.dim, p_.horizon);
        if (!(p_.C_a > 0.0 && p_.C_b > 0.0 && p_.h > 0.0))
            throw Error("fair OLS: C_a, C_b and h must be positive");
        if (p_.robust && !(p_.budget >= 0.0 && p_.gamma_lin >= 0.0 && p_.kappa >= 0.0))
            throw Error("fair OLS: robust constants must be nonnegative");
        explore_len_ = p_.exploration_len();
        initial_.assign(p_.arms, GramAccumulator(p_.dim + 1));
        all_.assign(p_.arms, GramAccumulator(p_.dim + 1));
    }

    std::string_view name() const override { return p_.robust ? "robust_fair_ols" : "fair_ols"; }
    std::size_t arms() const override { return p_.arms; }
    const FairOlsParams& params() const { return p_; }
    std::size_t exploration_len() const { return explore_len_; }
    const GramAccumulator& all_samples(std::size_t k) const { return all_.at(k); }
    const GramAccumulator& initial_samples(std::size_t k) const { return initial_.at(k); }

    /// Frozen exploration-phase coefficients; empty until exploration ends.
    const std::vector<Vector>& initial_coefficients() const { return beta0_; }

    ActionDistribution distribution(const Context& x, std::size_t t) override
    {
        detail::check_context(x, p_.dim);
        if (t <= explore_len_)
            return ActionDistribution::uniform(p_.arms);
        freeze();
        const Vector z = augment(x);
        std::vector<double> v(p_.arms);
        for (std::size_t k = 0; k < p_.arms; ++k)
            v[k] = beta0_[k].dot(z);
        const auto khat = chain_component_of_max(v, p_.h / 2.0);
        if (khat.size() == 1)
            return ActionDistribution::point_mass(p_.arms, khat.front());
        for (auto k : khat)
            v[k] = all_[k].predict(z);
        return ActionDistribution::uniform_over(p_.arms, candidate_set(v, khat, p_.threshold(t)));
    }

    void observe(const Context& x, std::size_t arm, double reward, std::size_t t) override
    {
        const Vector z = augment(x);
        all_.at(arm).add(z, reward);
        if (t <= explore_len_)
            initial_.at(arm).add(z, reward);
        if (t == explore_len_)
            freeze();
    }

private:
    void freeze()
    {
        if (!beta0_.empty())
            return;
        for (const auto& acc : initial_)
            beta0_.push_back(acc.coefficients());
    }

    FairOlsParams p_;
    std::size_t explore_len_ = 1;
    std::vector<GramAccumulator> initial_;
    std::vector<GramAccumulator> all_;
    std::vector<Vector> beta0_;
};

/// Shorthand for the distribution of an already-constructed Fair OLS state.
inline ActionDistribution fair_ols_distribution(FairOlsPolicy& state, const Context& x, std::size_t t)
{
    return state.distribution(x, t);
}

struct LinUcbParams
{
    std::size_t arms = 0;
    std::size_t dim = 0;
    std::size_t horizon = 0;
    double ridge = 0.01;
    double width_scale = 0.05;
    double width_offset = 0.2;
};

/// Ridge-regression UCB on z = (1, x):
/// UCB_k = mu_k + sqrt(z' A_k^{-1} z) (a sqrt(d ln(T (1 + 4t/lambda))) + b),
/// A_k = lambda I + sum z z'. Point mass on the lowest-index maximiser.
class LinUcbPolicy : public Policy
{
public:
    explicit LinUcbPolicy(LinUcbParams p) : p_(p)
    {
        detail::check_dims(p_.arms, p_.dim, p_.horizon);
        if (!(p_.ridge > 0.0))
            throw Error("UCB: ridge must be positive");
        const auto n = static_cast<Eigen::Index>(p_.dim + 1);
        arms_.resize(p_.arms);
        for (auto& a : arms_)
        {
            a.A = p_.ridge * Matrix::Identity(n, n);
            a.b = Vector::Zero(n);
            a.llt.compute(a.A);
        }
    }

    std::string_view name() const override { return "lin_ucb"; }
    std::size_t arms() const override { return p_.arms; }

    double width_multiplier(std::size_t t) const
    {
        const double T = static_cast<double>(p_.horizon);
        const double d = static_cast<double>(p_.dim);
        return p_.width_scale * std::sqrt(d * std::log(T * (1.0 + 4.0 * static_cast<double>(t) / p_.ridge))) +
               p_.width_offset;
    }

    /// (mean, width) of one arm at z.
    std::pair<double, double> bound_terms(std::size_t k, const Vector& z) const
    {
        const auto& a = arms_.at(k);
        const Vector Ainv_z = a.llt.solve(z);
        return {Ainv_z.dot(a.b), std::sqrt(std::max(0.0, z.dot(Ainv_z)))};
    }

    std::vector<double> ucb(const Context& x, std::size_t t) const
    {
        const Vector z = augment(x);
        const double m = width_multiplier(t);
        std::vector<double> u(p_.arms);
        for (std::size_t k = 0; k < p_.arms; ++k)
        {
            const auto [mu, w] = bound_terms(k, z);
            u[k] = mu + w * m;
        }
        return u;
    }

    ActionDistribution distribution(const Context& x, std::size_t t) override
    {
        detail::check_context(x, p_.dim);
        return ActionDistribution::point_mass(p_.arms, detail::argmax_lowest(ucb(x, t)));
    }

    void observe(const Context& x, std::size_t arm, double reward, std::size_t) override
    {
        auto& a = arms_.at(arm);
        const Vector z = augment(x);
        a.A.selfadjointView<Eigen::Lower>().rankUpdate(z);
        a.A.triangularView<Eigen::StrictlyUpper>() = a.A.transpose();
        a.b.noalias() += reward * z;
        a.llt.compute(a.A);
        ++a.pulls;
    }

    std::size_t pulls(std::size_t k) const { return arms_.at(k).pulls; }

private:
    struct ArmState
    {
        Matrix A;
        Vector b;
        Eigen::LLT<Matrix> llt;
        std::size_t pulls = 0;
    };

    LinUcbParams p_;
    std::vector<ArmState> arms_;
};

struct OlsBanditParams
{
    std::size_t arms = 0;
    std::size_t dim = 0;
    std::size_t horizon = 0;
    std::size_t q = 2;
    double h = 1.2;
};

/// Forced-sampling rounds of arm i: (2^n - 1) K q + j for n >= 0 and
/// j in [q i + 1, q (i + 1)], clipped to [1, T].
inline std::vector<std::size_t> forced_times(std::size_t arm, std::size_t K, std::size_t q, std::size_t T)
{
    std::vector<std::size_t> out;
    for (std::size_t n = 0;; ++n)
    {
        const std::size_t base = ((std::size_t{1} << n) - 1) * K * q;
        if (base + q * arm + 1 > T)
            break;
        for (std::size_t j = q * arm + 1; j <= q * (arm + 1) && base + j <= T; ++j)
            out.push_back(base + j);
        if (n > 60)
            break;
    }
    return out;
}

/// Forced-sampling OLS bandit: scheduled rounds pull their arm; otherwise arms
/// within h/2 of the best forced-sample prediction survive and the best
/// all-sample prediction among them is played.
class OlsBanditPolicy : public Policy
{
public:
    explicit OlsBanditPolicy(OlsBanditParams p) : p_(p)
    {
        detail::check_dims(p_.arms, p_.dim, p_.horizon);
        if (p_.q < 1 || !(p_.h > 0.0))
            throw Error("OLS bandit: q must be positive and h positive");
        forced_.assign(p_.horizon + 1, kNone);
        for (std::size_t k = 0; k < p_.arms; ++k)
            for (auto t : forced_times(k, p_.arms, p_.q, p_.horizon))
            {
                if (forced_[t] != kNone)
                    throw Error("OLS bandit: overlapping forced schedules");
                forced_[t] = k;
            }
        forced_acc_.assign(p_.arms, GramAccumulator(p_.dim + 1));
        all_acc_.assign(p_.arms, GramAccumulator(p_.dim + 1));
    }

    std::string_view name() const override { return "ols_bandit"; }
    std::size_t arms() const override { return p_.arms; }

    /// Arm forced at round t, if any.
    std::optional<std::size_t> forced_arm(std::size_t t) const
    {
        if (t < forced_.size() && forced_[t] != kNone)
            return forced_[t];
        return std::nullopt;
    }

    ActionDistribution distribution(const Context& x, std::size_t t) override
    {
        detail::check_context(x, p_.dim);
        if (auto f = forced_arm(t))
            return ActionDistribution::point_mass(p_.arms, *f);
        const Vector z = augment(x);
        std::vector<double> pf(p_.arms);
        for (std::size_t k = 0; k < p_.arms; ++k)
            pf[k] = forced_acc_[k].predict(z);
        const double best = *std::max_element(pf.begin(), pf.end());
        std::size_t pick = p_.arms;
        double pick_val = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < p_.arms; ++k)
        {
            if (pf[k] < best - p_.h / 2.0)
                continue;
            const double v = all_acc_[k].predict(z);
            if (pick == p_.arms || v > pick_val)
            {
                pick = k;
                pick_val = v;
            }
        }
        return ActionDistribution::point_mass(p_.arms, pick);
    }

    void observe(const Context& x, std::size_t arm, double reward, std::size_t t) override
    {
        const Vector z = augment(x);
        all_acc_.at(arm).add(z, reward);
        if (auto f = forced_arm(t); f && *f == arm)
            forced_acc_[arm].add(z, reward);
    }

private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
    OlsBanditParams p_;
    std::vector<std::size_t> forced_;
    std::vector<GramAccumulator> forced_acc_;
    std::vector<GramAccumulator> all_acc_;
};

struct GreedyParams
{
    std::size_t arms = 0;
    std::size_t dim = 0;
    std::size_t horizon = 0;
    /// round-robin pulls per arm before going greedy; 0 selects d + 2
    std::size_t warm_start = 0;
};

class GreedyPolicy : public Policy
{
public:
    explicit GreedyPolicy(GreedyParams p) : p_(p)
    {
        detail::check_dims(p_.arms, p_.dim, p_.horizon);
        if (p_.warm_start == 0)
            p_.warm_start = p_.dim + 2;
        acc_.assign(p_.arms, GramAccumulator(p_.dim + 1));
    }

    std::string_view name() const override { return "greedy"; }
    std::size_t arms() const override { return p_.arms; }
    std::size_t warm_start() const { return p_.warm_start; }

    std::vector<double> predictions(const Context& x) const
    {
        const Vector z = augment(x);
        std::vector<double> v(p_.arms);
        for (std::size_t k = 0; k < p_.arms; ++k)
            v[k] = acc_[k].predict(z);
        return v;
    }

    ActionDistribution distribution(const Context& x, std::size_t t) override
    {
        detail::check_context(x, p_.dim);
        if (t <= p_.arms * p_.warm_start)
            return ActionDistribution::point_mass(p_.arms, (t - 1) % p_.arms);
        return ActionDistribution::point_mass(p_.arms, detail::argmax_lowest(predictions(x)));
    }

    void observe(const Context& x, std::size_t arm, double reward, std::size_t) override
    {
        acc_.at(arm).add(augment(x), reward);
    }

private:
    GreedyParams p_;
    std::vector<GramAccumulator> acc_;
};

} // namespace fairband

#endif
