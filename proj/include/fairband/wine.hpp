#ifndef FAIRBAND_WINE_HPP
#define FAIRBAND_WINE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fairband/core.hpp"

namespace fairband
{

inline constexpr std::size_t kWineFeatures = 11;

struct WineRecord
{
    std::vector<double> features;
    int quality = 0;
};

/// Agent reward curves over quality: agent 1 is 2/(1+e^{-(q-6)}), agent 3 is
/// 2/(1+e^{q-6}), agent 2 is their product.
inline double wine_agent_reward(int agent, double quality)
{
    const double y1 = 2.0 / (1.0 + std::exp(-(quality - 6.0)));
    const double y3 = 2.0 / (1.0 + std::exp(quality - 6.0));
    switch (agent)
    {
    case 1:
        return y1;
    case 2:
        return y1 * y3;
    case 3:
        return y3;
    default:
        throw Error("wine_agent_reward: agent must be 1, 2 or 3");
    }
}

namespace detail
{

inline std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, sep))
        out.push_back(cell);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

inline double parse_number(std::string s, const std::string& where)
{
    s.erase(std::remove(s.begin(), s.end(), '"'), s.end());
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(s, &used);
    }
    catch (const std::exception&)
    {
        throw Error(where + ": malformed number '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v))
        throw Error(where + ": malformed number '" + s + "'");
    return v;
}

} // namespace detail

/// Reads one UCI winequality file: semicolon-delimited, header row, eleven
/// feature columns then the integer quality.
inline std::vector<WineRecord> read_wine_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open wine file " + path);
    std::vector<WineRecord> out;
    std::string line;
    std::size_t line_no = 0;
    bool header = true;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = detail::split(line, ';');
        const std::string where = path + ":" + std::to_string(line_no);
        if (cells.size() != kWineFeatures + 1)
            throw Error(where + ": expected " + std::to_string(kWineFeatures + 1) + " columns, found " +
                        std::to_string(cells.size()));
        if (header)
        {
            header = false;
            continue;
        }
        WineRecord r;
        r.features.reserve(kWineFeatures);
        for (std::size_t j = 0; j < kWineFeatures; ++j)
            r.features.push_back(detail::parse_number(cells[j], where));
        const double q = detail::parse_number(cells[kWineFeatures], where);
        if (q != std::floor(q) || q < 0.0 || q > 10.0)
            throw Error(where + ": quality must be an integer in [0, 10]");
        r.quality = static_cast<int>(q);
        out.push_back(std::move(r));
    }
    return out;
}

/// Merged wine dataset with z-scored features.
struct WineData
{
    std::vector<WineRecord> records;
    std::vector<std::vector<double>> zscored;
    std::vector<double> column_mean;
    std::vector<double> column_sd;
    /// 3-d embedding of every record, mapped into [0,1]^3
    std::vector<std::vector<double>> embedded;
};

/// Column-wise z-score (population SD) of the merged records.
inline void zscore_columns(WineData& data)
{
    const std::size_t n = data.records.size();
    data.column_mean.assign(kWineFeatures, 0.0);
    data.column_sd.assign(kWineFeatures, 0.0);
    for (const auto& r : data.records)
        for (std::size_t j = 0; j < kWineFeatures; ++j)
            data.column_mean[j] += r.features[j];
    for (auto& m : data.column_mean)
        m /= static_cast<double>(n);
    for (const auto& r : data.records)
        for (std::size_t j = 0; j < kWineFeatures; ++j)
        {
            const double c = r.features[j] - data.column_mean[j];
            data.column_sd[j] += c * c;
        }
    for (std::size_t j = 0; j < kWineFeatures; ++j)
    {
        data.column_sd[j] = std::sqrt(data.column_sd[j] / static_cast<double>(n));
        if (!(data.column_sd[j] > 0.0))
            throw Error("wine column " + std::to_string(j) + " is constant");
    }
    data.zscored.assign(n, std::vector<double>(kWineFeatures));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < kWineFeatures; ++j)
            data.zscored[i][j] = (data.records[i].features[j] - data.column_mean[j]) / data.column_sd[j];
}

/// Linear embedding by principal components. Columns of `components` are
/// orthonormal loadings ordered by decreasing variance; each is signed so its
/// largest-magnitude loading is positive.
struct PcaEmbedding
{
    Eigen::MatrixXd components;
    Eigen::VectorXd eigenvalues;

    Eigen::VectorXd project(const std::vector<double>& x) const
    {
        const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
        return components.transpose() * v;
    }
};

inline PcaEmbedding embed_features(const std::vector<std::vector<double>>& rows, std::size_t out_dim = 3)
{
    if (rows.empty())
        throw Error("embed_features: no records");
    const auto p = static_cast<Eigen::Index>(rows.front().size());
    if (out_dim == 0 || static_cast<Eigen::Index>(out_dim) > p)
        throw Error("embed_features: invalid output dimension");
    if (rows.size() < out_dim)
        throw Error("embed_features: fewer records than output dimensions");
    Eigen::MatrixXd X(static_cast<Eigen::Index>(rows.size()), p);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (Eigen::Index j = 0; j < p; ++j)
            X(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    const Eigen::RowVectorXd mu = X.colwise().mean();
    X.rowwise() -= mu;
    const Eigen::MatrixXd cov = (X.transpose() * X) / static_cast<double>(rows.size());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.info() != Eigen::Success)
        throw Error("embed_features: eigen-decomposition failed");
    const auto k = static_cast<Eigen::Index>(out_dim);
    PcaEmbedding e;
    e.components.resize(p, k);
    e.eigenvalues.resize(k);
    const double top = es.eigenvalues()(p - 1);
    for (Eigen::Index c = 0; c < k; ++c)
    {
        const Eigen::Index src = p - 1 - c;
        const double lambda = es.eigenvalues()(src);
        if (!(lambda > 1e-12 * std::max(top, 1e-300)) || !(top > 0.0))
            throw Error("embed_features: degenerate covariance");
        Eigen::VectorXd v = es.eigenvectors().col(src);
        Eigen::Index arg = 0;
        v.cwiseAbs().maxCoeff(&arg);
        if (v(arg) < 0.0)
            v = -v;
        e.components.col(c) = v;
        e.eigenvalues(c) = lambda;
    }
    return e;
}

/// Merges the given files, z-scores the features and builds the 3-d embedding.
inline std::shared_ptr<const WineData> make_wine_data(std::vector<WineRecord> records)
{
    if (records.empty())
        throw Error("empty dataset");
    auto data = std::make_shared<WineData>();
    data->records = std::move(records);
    zscore_columns(*data);
    const auto pca = embed_features(data->zscored, 3);
    const std::size_t n = data->records.size();
    std::vector<Eigen::VectorXd> proj(n);
    Eigen::Vector3d lo = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
    Eigen::Vector3d hi = -lo;
    for (std::size_t i = 0; i < n; ++i)
    {
        proj[i] = pca.project(data->zscored[i]);
        lo = lo.cwiseMin(proj[i]);
        hi = hi.cwiseMax(proj[i]);
    }
    data->embedded.assign(n, std::vector<double>(3));
    for (std::size_t i = 0; i < n; ++i)
        for (int j = 0; j < 3; ++j)
            data->embedded[i][static_cast<std::size_t>(j)] = std::clamp((proj[i](j) - lo(j)) / (hi(j) - lo(j)), 0.0, 1.0);
    return data;
}

inline std::shared_ptr<const WineData> load_wine_csv(const std::vector<std::string>& paths)
{
    std::vector<WineRecord> all;
    for (const auto& p : paths)
    {
        auto part = read_wine_file(p);
        all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return make_wine_data(std::move(all));
}

enum class WineView
{
    Standardized, ///< 11 z-scored features, for linear policies
    Embedded      ///< 3-d principal-component embedding in [0,1]^3, for smooth policies
};

/// Wine brokerage world: three agents, contexts cycling through a seeded
/// permutation of the records, expected rewards given by the agent curves at
/// the record's quality. Rewards are deterministic given the record.
class WineEnv : public Environment
{
public:
    WineEnv(std::shared_ptr<const WineData> data, WineView view, double sigma = 0.0)
        : data_(std::move(data)), view_(view), sigma_(sigma)
    {
        if (!data_ || data_->records.empty())
            throw Error("WineEnv: empty dataset");
    }

    std::size_t arms() const override { return 3; }
    std::size_t dim() const override { return view_ == WineView::Embedded ? 3 : kWineFeatures; }
    double noise_sd() const override { return sigma_; }
    double sup_norm() const override { return 2.0; }

    Box domain() const override
    {
        if (view_ == WineView::Embedded)
            return Box::cube(3, 0.0, 1.0);
        Box b = Box::cube(kWineFeatures, std::numeric_limits<double>::infinity(),
                          -std::numeric_limits<double>::infinity());
        for (const auto& z : data_->zscored)
            for (std::size_t j = 0; j < kWineFeatures; ++j)
            {
                b.lo[j] = std::min(b.lo[j], z[j]);
                b.hi[j] = std::max(b.hi[j], z[j]);
            }
        return b;
    }

    /// Record shown at the next draw.
    std::size_t next_record() const { return order_.empty() ? 0 : order_[cursor_ % order_.size()]; }

    EnvDraw draw(Rng& rng) override
    {
        if (order_.empty())
        {
            order_.resize(data_->records.size());
            std::iota(order_.begin(), order_.end(), std::size_t{0});
            // Fisher-Yates with an explicit index draw keeps the permutation platform independent
            for (std::size_t i = order_.size(); i > 1; --i)
            {
                const std::size_t j = static_cast<std::size_t>(rng() % i);
                std::swap(order_[i - 1], order_[j]);
            }
        }
        const std::size_t rec = order_[cursor_ % order_.size()];
        ++cursor_;
        EnvDraw out;
        out.context.coords = view_ == WineView::Embedded ? data_->embedded[rec] : data_->zscored[rec];
        const double q = data_->records[rec].quality;
        out.means = {wine_agent_reward(1, q), wine_agent_reward(2, q), wine_agent_reward(3, q)};
        return out;
    }

private:
    std::shared_ptr<const WineData> data_;
    WineView view_;
    double sigma_;
    std::vector<std::size_t> order_;
    std::size_t cursor_ = 0;
};

} // namespace fairband

#endif
