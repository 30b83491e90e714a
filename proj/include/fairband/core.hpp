#ifndef FAIRBAND_CORE_HPP
#define FAIRBAND_CORE_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fairband
{

/// Base error type for every failure raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

using Rng = std::mt19937_64;

/// A d-dimensional covariate vector observed at the start of a round.
struct Context
{
    std::vector<double> coords;

    std::size_t dim() const { return coords.size(); }
    double operator[](std::size_t i) const { return coords[i]; }
};

/// Axis-aligned box describing the support of the context distribution.
struct Box
{
    std::vector<double> lo;
    std::vector<double> hi;

    static Box cube(std::size_t d, double lo, double hi)
    {
        return Box{std::vector<double>(d, lo), std::vector<double>(d, hi)};
    }

    std::size_t dim() const { return lo.size(); }

    bool contains(const Context& x) const
    {
        if (x.dim() != dim())
            return false;
        for (std::size_t i = 0; i < dim(); ++i)
            if (!(x[i] >= lo[i] && x[i] <= hi[i]))
                return false;
        return true;
    }
};

/// Probability vector over the K arms. Every policy exposes one per round
/// before the arm is drawn, so the auditor sees exactly what was sampled from.
class ActionDistribution
{
public:
    ActionDistribution() = default;
    explicit ActionDistribution(std::vector<double> probs) : probs_(std::move(probs)) {}

    static ActionDistribution point_mass(std::size_t arms, std::size_t arm)
    {
        std::vector<double> p(arms, 0.0);
        p.at(arm) = 1.0;
        return ActionDistribution(std::move(p));
    }

    static ActionDistribution uniform(std::size_t arms)
    {
        return ActionDistribution(std::vector<double>(arms, 1.0 / static_cast<double>(arms)));
    }

    /// Uniform over `support`; zero elsewhere.
    static ActionDistribution uniform_over(std::size_t arms, const std::vector<std::size_t>& support)
    {
        if (support.empty())
            throw Error("uniform_over: empty support");
        std::vector<double> p(arms, 0.0);
        const double w = 1.0 / static_cast<double>(support.size());
        for (auto a : support)
            p.at(a) = w;
        return ActionDistribution(std::move(p));
    }

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    const std::vector<double>& probs() const { return probs_; }

    /// Empty string when valid, otherwise a description of the violation.
    std::string violation(std::size_t expected_arms) const
    {
        if (probs_.size() != expected_arms)
            return "distribution has " + std::to_string(probs_.size()) + " entries, expected " +
                   std::to_string(expected_arms);
        double sum = 0.0;
        for (std::size_t i = 0; i < probs_.size(); ++i)
        {
            if (!std::isfinite(probs_[i]) || probs_[i] < 0.0)
            {
                std::ostringstream os;
                os << "probability of arm " << i << " is " << probs_[i];
                return os.str();
            }
            sum += probs_[i];
        }
        if (std::abs(sum - 1.0) > 1e-9)
        {
            std::ostringstream os;
            os.precision(17);
            os << "probabilities sum to " << sum;
            return os.str();
        }
        return {};
    }

    /// Inverse-CDF draw from a single uniform variate in [0, 1).
    std::size_t sample(double u) const
    {
        double acc = 0.0;
        std::size_t last_positive = 0;
        for (std::size_t i = 0; i < probs_.size(); ++i)
        {
            if (probs_[i] <= 0.0)
                continue;
            last_positive = i;
            acc += probs_[i];
            if (u < acc)
                return i;
        }
        return last_positive;
    }

private:
    std::vector<double> probs_;
};

/// Full ledger of one interaction round.
struct RoundRecord
{
    std::size_t t = 0;
    Context context;
    ActionDistribution distribution;
    std::size_t arm = 0;
    std::vector<double> true_means;
    double noise = 0.0;
    double corruption = 0.0;
    double observed = 0.0;
    double regret_inc = 0.0;
    bool unfair = false;
};

/// Admissible policy. `distribution` must be a deterministic function of the
/// policy's state and the arguments; `observe` is the only channel through
/// which feedback reaches it, and it carries the corrupted reward alone.
class Policy
{
public:
    virtual ~Policy() = default;

    virtual std::string_view name() const = 0;
    virtual std::size_t arms() const = 0;
    virtual ActionDistribution distribution(const Context& x, std::size_t t) = 0;
    virtual void observe(const Context& x, std::size_t arm, double reward, std::size_t t) = 0;
};

/// One round's draw from an environment: the context and the expected reward
/// of every arm at that context.
struct EnvDraw
{
    Context context;
    std::vector<double> means;
};

/// Reward-generating world. Instances are owned by a single trajectory; any
/// per-run state (e.g. a record permutation) lives inside.
class Environment
{
public:
    virtual ~Environment() = default;

    virtual std::size_t arms() const = 0;
    virtual std::size_t dim() const = 0;
    virtual Box domain() const = 0;
    virtual double noise_sd() const = 0;
    /// max_k sup_x |f_k(x)|
    virtual double sup_norm() const = 0;
    virtual EnvDraw draw(Rng& context_rng) = 0;
};

inline std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// The four independent per-trajectory random streams.
struct RngStreams
{
    Rng context;
    Rng noise;
    Rng policy;
    Rng adversary;

    static RngStreams from_seed(std::uint64_t seed)
    {
        std::uint64_t s = seed;
        RngStreams r;
        r.context.seed(splitmix64(s));
        r.noise.seed(splitmix64(s));
        r.policy.seed(splitmix64(s));
        r.adversary.seed(splitmix64(s));
        return r;
    }
};

} // namespace fairband

#endif
