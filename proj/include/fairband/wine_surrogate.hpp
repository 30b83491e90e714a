#ifndef FAIRBAND_WINE_SURROGATE_HPP
#define FAIRBAND_WINE_SURROGATE_HPP

// Synthetic stand-in for the UCI wine quality files, for machines without the
// real data. Row counts and quality histograms follow the published files;
// features are drawn around per-column means with a linear dependence on
// quality, so the structure is plausible but the values are not real wines.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <random>
#include <string>

#include "fairband/core.hpp"

namespace fairband
{

namespace detail
{

struct SurrogateColumn
{
    const char* name;
    double mean;
    double sd;
    // change in column mean per quality point
    double slope;
    int decimals;
};

inline constexpr std::array<SurrogateColumn, 11> kRedColumns{{
    {"fixed acidity", 8.32, 1.74, 0.20, 1},
    {"volatile acidity", 0.53, 0.18, -0.09, 3},
    {"citric acid", 0.27, 0.19, 0.05, 2},
    {"residual sugar", 2.54, 1.41, 0.02, 1},
    {"chlorides", 0.087, 0.047, -0.006, 3},
    {"free sulfur dioxide", 15.9, 10.5, -0.6, 0},
    {"total sulfur dioxide", 46.5, 32.9, -6.0, 0},
    {"density", 0.9967, 0.0019, -0.0003, 5},
    {"pH", 3.31, 0.15, -0.01, 2},
    {"sulphates", 0.66, 0.17, 0.05, 2},
    {"alcohol", 10.42, 1.07, 0.55, 1},
}};

inline constexpr std::array<SurrogateColumn, 11> kWhiteColumns{{
    {"fixed acidity", 6.85, 0.84, -0.09, 1},
    {"volatile acidity", 0.28, 0.10, -0.02, 3},
    {"citric acid", 0.33, 0.12, 0.00, 2},
    {"residual sugar", 6.39, 5.07, -0.40, 1},
    {"chlorides", 0.046, 0.022, -0.004, 3},
    {"free sulfur dioxide", 35.3, 17.0, 0.2, 0},
    {"total sulfur dioxide", 138.4, 42.5, -7.0, 0},
    {"density", 0.9940, 0.0030, -0.0009, 5},
    {"pH", 3.19, 0.15, 0.02, 2},
    {"sulphates", 0.49, 0.11, 0.01, 2},
    {"alcohol", 10.51, 1.23, 0.66, 1},
}};

// (quality, count) pairs of the published files
inline constexpr std::array<std::array<int, 2>, 6> kRedQualities{{{3, 10}, {4, 53}, {5, 681}, {6, 638}, {7, 199}, {8, 18}}};
inline constexpr std::array<std::array<int, 2>, 7> kWhiteQualities{
    {{3, 20}, {4, 163}, {5, 1457}, {6, 2198}, {7, 880}, {8, 175}, {9, 5}}};

template <class Columns, class Qualities>
void write_surrogate(const std::string& path, const Columns& cols, const Qualities& qualities, double centre,
                     std::mt19937_64& rng)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write " + path);
    for (std::size_t j = 0; j < cols.size(); ++j)
        out << '"' << cols[j].name << "\";";
    out << "\"quality\"\n";
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (const auto& [quality, count] : qualities)
        for (int i = 0; i < count; ++i)
        {
            for (const auto& c : cols)
            {
                const double resid_sd = std::sqrt(std::max(0.0, c.sd * c.sd - c.slope * c.slope * 0.6));
                double v = c.mean + c.slope * (quality - centre) + resid_sd * gauss(rng);
                v = std::max(v, c.mean * 0.05);
                const double scale = std::pow(10.0, c.decimals);
                out << std::round(v * scale) / scale << ';';
            }
            out << quality << '\n';
        }
}

} // namespace detail

struct SurrogatePaths
{
    std::string red;
    std::string white;
};

/// Writes winequality-red.csv and winequality-white.csv surrogates into `dir`.
inline SurrogatePaths write_wine_surrogate(const std::string& dir, std::uint64_t seed = 6497)
{
    std::mt19937_64 rng(seed);
    SurrogatePaths p{dir + "/winequality-red.csv", dir + "/winequality-white.csv"};
    detail::write_surrogate(p.red, detail::kRedColumns, detail::kRedQualities, 5.64, rng);
    detail::write_surrogate(p.white, detail::kWhiteColumns, detail::kWhiteQualities, 5.88, rng);
    return p;
}

} // namespace fairband

#endif
