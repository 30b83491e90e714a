#ifndef FAIRBAND_ESTIMATORS_HPP
#define FAIRBAND_ESTIMATORS_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fairband/core.hpp"

namespace fairband
{

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Relative pivot threshold of the rank-revealing factorizations.
inline constexpr double kRankTolerance = 1e-10;

/// z = (1, x)
inline Vector augment(const Context& x)
{
    Vector z(x.dim() + 1);
    z[0] = 1.0;
    for (std::size_t i = 0; i < x.dim(); ++i)
        z[static_cast<Eigen::Index>(i) + 1] = x[i];
    return z;
}

struct RegressionSample
{
    Vector z;
    double y = 0.0;
};

/// Least squares on a dense design. Rank-deficient designs get the
/// minimum-norm solution.
inline Vector ols_fit(const Matrix& Z, const Vector& Y)
{
    if (Z.rows() == 0)
        throw Error("ols_fit: no data");
    if (Z.rows() != Y.size())
        throw Error("ols_fit: design and response sizes differ");
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
    cod.setThreshold(kRankTolerance);
    cod.compute(Z);
    return cod.solve(Y);
}

inline Vector ols_fit(std::span<const RegressionSample> samples)
{
    if (samples.empty())
        throw Error("ols_fit: no data");
    const auto p = samples.front().z.size();
    Matrix Z(static_cast<Eigen::Index>(samples.size()), p);
    Vector Y(static_cast<Eigen::Index>(samples.size()));
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        if (samples[i].z.size() != p)
            throw Error("ols_fit: inconsistent sample dimensions");
        Z.row(static_cast<Eigen::Index>(i)) = samples[i].z.transpose();
        Y[static_cast<Eigen::Index>(i)] = samples[i].y;
    }
    return ols_fit(Z, Y);
}

inline double predict(const Vector& beta, const Vector& z)
{
    if (beta.size() != z.size())
        throw Error("predict: dimension mismatch");
    return beta.dot(z);
}

/// Running Gram matrix and moment vector of a growing regression sample,
/// maintained through rank-1 updates.
class GramAccumulator
{
public:
    GramAccumulator() = default;
    explicit GramAccumulator(std::size_t p)
        : gram_(Matrix::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p))),
          moment_(Vector::Zero(static_cast<Eigen::Index>(p)))
    {
    }

    void add(const Vector& z, double y)
    {
        gram_.selfadjointView<Eigen::Lower>().rankUpdate(z);
        moment_.noalias() += y * z;
        ++count_;
        dirty_ = true;
    }

    std::size_t count() const { return count_; }
    std::size_t dim() const { return static_cast<std::size_t>(moment_.size()); }

    Matrix gram() const
    {
        Matrix g = gram_.selfadjointView<Eigen::Lower>();
        return g;
    }
    const Vector& moment() const { return moment_; }

    /// Minimum-norm solution of the normal equations. Zero when empty.
    const Vector& coefficients() const
    {
        if (dirty_)
        {
            if (count_ == 0)
            {
                beta_ = Vector::Zero(moment_.size());
            }
            else
            {
                Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
                cod.setThreshold(kRankTolerance);
                cod.compute(gram());
                beta_ = cod.solve(moment_);
            }
            dirty_ = false;
        }
        return beta_;
    }

    double predict(const Vector& z) const { return coefficients().dot(z); }

private:
    Matrix gram_;
    Vector moment_;
    std::size_t count_ = 0;
    mutable Vector beta_;
    mutable bool dirty_ = true;
};

/// |{r in Z_+^d : |r| <= l}| = C(l+d, d)
inline std::size_t monomial_count(std::size_t l, std::size_t d)
{
    if (d == 0)
        throw Error("monomial_count: dimension must be positive");
    // C(l+d, d) computed incrementally; each partial product is an exact binomial.
    std::size_t c = 1;
    for (std::size_t i = 1; i <= d; ++i)
        c = c * (l + i) / i;
    return c;
}

/// Multi-indices with |r| <= l in graded order; the zero index comes first.
inline std::vector<std::vector<unsigned>> multi_indices(std::size_t l, std::size_t d)
{
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> r(d, 0);
    for (std::size_t total = 0; total <= l; ++total)
    {
        // enumerate compositions of `total` into d nonnegative parts
        auto rec = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
            if (pos + 1 == d)
            {
                r[pos] = static_cast<unsigned>(left);
                out.push_back(r);
                return;
            }
            for (std::size_t v = left + 1; v-- > 0;)
            {
                r[pos] = static_cast<unsigned>(v);
                self(self, pos + 1, left - v);
            }
        };
        rec(rec, 0, total);
    }
    return out;
}

/// Samples of one arm stored row-major: x_i occupies xs[i*d .. i*d+d).
struct PointSamples
{
    std::size_t d = 0;
    std::vector<double> xs;
    std::vector<double> ys;

    explicit PointSamples(std::size_t dim = 0) : d(dim) {}

    std::size_t size() const { return ys.size(); }
    void add(std::span<const double> x, double y)
    {
        xs.insert(xs.end(), x.begin(), x.end());
        ys.push_back(y);
    }
    std::span<const double> x(std::size_t i) const { return {xs.data() + i * d, d}; }
};

struct LocalPolyFit
{
    std::vector<double> center;
    std::size_t degree = 0;
    double bandwidth = 0.0;
    double value = std::numeric_limits<double>::quiet_NaN();
    std::size_t support_count = 0;
    std::size_t basis_size = 0;

    /// Enough samples in the ball to identify every polynomial coefficient.
    bool reliable() const { return support_count >= basis_size && std::isfinite(value); }
};

/// Polynomial basis cached per (degree, dimension).
class LocalPolyBasis
{
public:
    LocalPolyBasis(std::size_t degree, std::size_t d) : degree_(degree), d_(d), indices_(multi_indices(degree, d)) {}

    std::size_t degree() const { return degree_; }
    std::size_t dim() const { return d_; }
    std::size_t size() const { return indices_.size(); }

    void evaluate(std::span<const double> u, double* out) const
    {
        // powers[j][p] = u_j^p
        double powers[16][16];
        for (std::size_t j = 0; j < d_; ++j)
        {
            powers[j][0] = 1.0;
            for (std::size_t p = 1; p <= degree_; ++p)
                powers[j][p] = powers[j][p - 1] * u[j];
        }
        for (std::size_t m = 0; m < indices_.size(); ++m)
        {
            double v = 1.0;
            for (std::size_t j = 0; j < d_; ++j)
                v *= powers[j][indices_[m][j]];
            out[m] = v;
        }
    }

private:
    std::size_t degree_;
    std::size_t d_;
    std::vector<std::vector<unsigned>> indices_;
};

/// Indicator-kernel local polynomial regression: fits a degree-l polynomial in
/// (x - x0) to the samples inside the closed ball B(x0, h) and returns its value
/// at x0. Fits with fewer samples than basis functions are returned unreliable
/// without solving.
inline LocalPolyFit local_poly_fit(std::span<const double> x0, const PointSamples& samples, double h,
                                        const LocalPolyBasis& basis)
{
    if (!(h > 0.0))
        throw Error("local polynomial: bandwidth must be positive");
    const std::size_t d = x0.size();
    if (samples.size() > 0 && samples.d != d)
        throw Error("local polynomial: dimension mismatch");
    if (basis.dim() != d || d > 16 || basis.degree() >= 16)
        throw Error("local polynomial: unsupported basis");

    LocalPolyFit fit;
    fit.center.assign(x0.begin(), x0.end());
    fit.degree = basis.degree();
    fit.bandwidth = h;
    fit.basis_size = basis.size();

    const double h2 = h * h;
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        const double* xi = samples.xs.data() + i * d;
        double r2 = 0.0;
        for (std::size_t j = 0; j < d; ++j)
        {
            const double diff = xi[j] - x0[j];
            r2 += diff * diff;
        }
        if (r2 <= h2)
            inside.push_back(i);
    }
    fit.support_count = inside.size();
    if (inside.size() < basis.size())
        return fit;

    const auto n = static_cast<Eigen::Index>(inside.size());
    const auto m = static_cast<Eigen::Index>(basis.size());
    Matrix A(n, m);
    Vector y(n);
    std::vector<double> u(d);
    std::vector<double> row(basis.size());
    for (Eigen::Index r = 0; r < n; ++r)
    {
        const std::size_t i = inside[static_cast<std::size_t>(r)];
        const double* xi = samples.xs.data() + i * d;
        // scaling by h leaves the intercept unchanged and keeps the design well conditioned
        for (std::size_t j = 0; j < d; ++j)
            u[j] = (xi[j] - x0[j]) / h;
        basis.evaluate(u, row.data());
        for (Eigen::Index c = 0; c < m; ++c)
            A(r, c) = row[static_cast<std::size_t>(c)];
        y[r] = samples.ys[i];
    }
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
    cod.setThreshold(kRankTolerance);
    cod.compute(A);
    const Vector theta = cod.solve(y);
    fit.value = theta[0];
    return fit;
}

/// Value of the local fit at x0; throws when the ball cannot identify the
/// polynomial.
inline double local_poly_estimate(std::span<const double> x0, const PointSamples& samples, double h,
                                  std::size_t degree)
{
    const LocalPolyFit fit = local_poly_fit(x0, samples, h, LocalPolyBasis(degree, x0.size()));
    if (!fit.reliable())
        throw Error("insufficient support: " + std::to_string(fit.support_count) + " samples within h, " +
                    std::to_string(fit.basis_size) + " needed");
    return fit.value;
}

} // namespace fairband

#endif
