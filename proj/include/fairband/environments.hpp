#ifndef FAIRBAND_ENVIRONMENTS_HPP
#define FAIRBAND_ENVIRONMENTS_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <random>
#include <vector>

#include "fairband/core.hpp"

namespace fairband
{

/// C-infinity clamp: 0 for t <= 0, 1 for t >= 1, strictly increasing between.
inline double smooth_step(double t)
{
    auto psi = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
    if (t <= 0.0)
        return 0.0;
    if (t >= 1.0)
        return 1.0;
    const double a = psi(t);
    return a / (a + psi(1.0 - t));
}

namespace detail
{

inline Context uniform_context(Rng& rng, std::size_t d, double lo, double hi)
{
    std::uniform_real_distribution<double> u(lo, hi);
    Context x;
    x.coords.resize(d);
    for (auto& c : x.coords)
        c = u(rng);
    return x;
}

} // namespace detail

/// Linear world: f_k(x) = w_k^T x + b_k with the cyclic local-advantage weights
/// W[k][j] = 2 [j == k] + [j == k+1] - [j == k-1] (mod d), b_k = 0.5 sin(2 pi k / K),
/// contexts uniform on [-1,1]^d.
class LinearEnv : public Environment
{
public:
    LinearEnv(std::size_t arms, std::size_t dim, double sigma = 0.05) : K_(arms), d_(dim), sigma_(sigma)
    {
        if (arms < 2 || dim < 1)
            throw Error("LinearEnv: need K >= 2 and d >= 1");
        W_.assign(K_, std::vector<double>(d_, 0.0));
        b_.resize(K_);
        const auto dd = static_cast<long>(d_);
        for (std::size_t k = 0; k < K_; ++k)
        {
            const auto kk = static_cast<long>(k);
            W_[k][static_cast<std::size_t>(kk % dd)] += 2.0;
            W_[k][static_cast<std::size_t>((kk + 1) % dd)] += 1.0;
            W_[k][static_cast<std::size_t>(((kk - 1) % dd + dd) % dd)] -= 1.0;
            b_[k] = 0.5 * std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(K_));
        }
    }

    std::size_t arms() const override { return K_; }
    std::size_t dim() const override { return d_; }
    Box domain() const override { return Box::cube(d_, -1.0, 1.0); }
    double noise_sd() const override { return sigma_; }

    double sup_norm() const override
    {
        double m = 0.0;
        for (std::size_t k = 0; k < K_; ++k)
        {
            double s = std::abs(b_[k]);
            for (double w : W_[k])
                s += std::abs(w);
            m = std::max(m, s);
        }
        return m;
    }

    double mean(std::size_t k, const Context& x) const
    {
        double v = b_.at(k);
        for (std::size_t j = 0; j < d_; ++j)
            v += W_[k][j] * x[j];
        return v;
    }

    const std::vector<std::vector<double>>& weights() const { return W_; }
    const std::vector<double>& biases() const { return b_; }

    EnvDraw draw(Rng& rng) override
    {
        EnvDraw out{detail::uniform_context(rng, d_, -1.0, 1.0), std::vector<double>(K_)};
        for (std::size_t k = 0; k < K_; ++k)
            out.means[k] = mean(k, out.context);
        return out;
    }

private:
    std::size_t K_;
    std::size_t d_;
    double sigma_;
    std::vector<std::vector<double>> W_;
    std::vector<double> b_;
};

inline double linear_mean(const LinearEnv& env, std::size_t k, const Context& x)
{
    return env.mean(k, x);
}

/// Four Gaussian bumps f_k(x) = exp(-|x - mu_k|^2) on [-1,1]^2.
class SmoothEnv : public Environment
{
public:
    static constexpr std::array<std::array<double, 2>, 4> kCenters{
        {{0.5, 0.5}, {-0.5, 0.5}, {-0.5, -0.5}, {0.5, -0.5}}};

    explicit SmoothEnv(double sigma = 0.05) : sigma_(sigma) {}

    std::size_t arms() const override { return 4; }
    std::size_t dim() const override { return 2; }
    Box domain() const override { return Box::cube(2, -1.0, 1.0); }
    double noise_sd() const override { return sigma_; }
    double sup_norm() const override { return 1.0; }

    double mean(std::size_t k, const Context& x) const
    {
        const auto& mu = kCenters.at(k);
        const double a = x[0] - mu[0];
        const double b = x[1] - mu[1];
        return std::exp(-(a * a + b * b));
    }

    EnvDraw draw(Rng& rng) override
    {
        EnvDraw out{detail::uniform_context(rng, 2, -1.0, 1.0), std::vector<double>(4)};
        for (std::size_t k = 0; k < 4; ++k)
            out.means[k] = mean(k, out.context);
        return out;
    }

private:
    double sigma_;
};

inline double smooth_mean(const SmoothEnv& env, std::size_t k, const Context& x)
{
    return env.mean(k, x);
}

/// Two arms on [0,1] whose optimal regions share the plateau [0.4, 0.6]:
/// arm 0 equals 1 on [0, 0.6] and ramps smoothly down to 0.2 at 0.7; arm 1 is
/// its mirror image.
class OverlapEnv : public Environment
{
public:
    static constexpr double kPlateauLo = 0.4;
    static constexpr double kPlateauHi = 0.6;
    static constexpr double kRamp = 0.4;

    explicit OverlapEnv(double sigma = 0.05) : sigma_(sigma) {}

    std::size_t arms() const override { return 2; }
    std::size_t dim() const override { return 1; }
    Box domain() const override { return Box::cube(1, 0.0, 1.0); }
    double noise_sd() const override { return sigma_; }
    double sup_norm() const override { return 1.0; }

    static double left_arm(double x) { return 0.2 + 0.8 * (1.0 - smooth_step((x - kPlateauHi) / kRamp)); }

    std::array<double, 2> means(double x) const { return {left_arm(x), left_arm(1.0 - x)}; }

    EnvDraw draw(Rng& rng) override
    {
        EnvDraw out{detail::uniform_context(rng, 1, 0.0, 1.0), {}};
        const auto m = means(out.context[0]);
        out.means.assign(m.begin(), m.end());
        return out;
    }

private:
    double sigma_;
};

inline std::array<double, 2> overlap_means(const OverlapEnv& env, double x)
{
    return env.means(x);
}

} // namespace fairband

#endif
