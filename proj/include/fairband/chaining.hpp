#ifndef FAIRBAND_CHAINING_HPP
#define FAIRBAND_CHAINING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "fairband/core.hpp"

namespace fairband
{

/// |u - v| <= eps, boundary inclusive.
inline bool eps_linked(double u, double v, double eps)
{
    return std::abs(u - v) <= eps;
}

namespace detail
{

// On the real line the transitive closure of eps_linked splits exactly at
// consecutive gaps larger than eps, so the component of the maximum is the
// prefix of the descending order that ends at the first such gap.
inline std::vector<std::size_t> component_of_max(std::span<const double> values, std::vector<std::size_t> idx,
                                                 double eps)
{
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    std::size_t cut = 1;
    while (cut < idx.size() && eps_linked(values[idx[cut - 1]], values[idx[cut]], eps))
        ++cut;
    idx.resize(cut);
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace detail

/// Indices whose values are eps-chained to the maximum value. Sorted ascending.
inline std::vector<std::size_t> chain_component_of_max(std::span<const double> values, double eps)
{
    if (values.empty())
        throw Error("chain_component_of_max: empty value set");
    if (!(eps >= 0.0))
        throw Error("chain_component_of_max: eps must be nonnegative");
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return detail::component_of_max(values, std::move(idx), eps);
}

/// Chain component of the maximum computed over `values` restricted to `subset`.
inline std::vector<std::size_t> candidate_set(std::span<const double> values, std::span<const std::size_t> subset,
                                              double eps)
{
    if (subset.empty())
        throw Error("candidate_set: empty subset");
    if (!(eps >= 0.0))
        throw Error("candidate_set: eps must be nonnegative");
    for (auto i : subset)
        if (i >= values.size())
            throw Error("candidate_set: subset index out of range");
    return detail::component_of_max(values, std::vector<std::size_t>(subset.begin(), subset.end()), eps);
}

} // namespace fairband

#endif
