#ifndef DDL_TESTS_ORACLES_HPP
#define DDL_TESTS_ORACLES_HPP

// Brute-force reference computations used only by tests. None of these call the
// sort/tail-sum routines they are meant to check.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "ddl/ddl.hpp"

namespace ddl::oracle
{

/// Minimum sum over all k-element subsets of v, by subset enumeration.
inline Count min_subset_sum(const IntVector& v, std::size_t k)
{
    Count best = std::numeric_limits<Count>::max();
    const std::size_t n = v.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != k)
            continue;
        Count s = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i))
                s += v[i];
        best = std::min(best, s);
    }
    return best;
}

/// Weak majorization straight from the subset form: for every k, the k smallest
/// entries of p sum to at least the k smallest entries of d.
inline bool weakly_majorizes(const IntVector& d, const IntVector& p)
{
    for (std::size_t k = 1; k <= d.size(); ++k)
        if (min_subset_sum(d, k) > min_subset_sum(p, k))
            return false;
    return true;
}

/// Smallest total purchase a >= 0 (each entry <= bound) with d weakly majorized by
/// p + a, by exhaustive enumeration of the box.
inline Count min_purchase(const IntVector& p, const IntVector& d, Count bound)
{
    IntVector a(p.size(), 0);
    Count best = std::numeric_limits<Count>::max();
    std::function<void(std::size_t, Count)> rec = [&](std::size_t t, Count spent) {
        if (spent >= best)
            return;
        if (t == p.size())
        {
            IntVector q = p;
            for (std::size_t s = 0; s < q.size(); ++s)
                q[s] += a[s];
            if (weakly_majorizes(d, q))
                best = spent;
            return;
        }
        for (Count v = 0; v <= bound; ++v)
        {
            a[t] = v;
            rec(t + 1, spent + v);
        }
        a[t] = 0;
    };
    rec(0, 0);
    return best;
}

/// Runtime purchase at the newest slot, minimizing a_t subject to every subset
/// constraint that contains the newest slot (explicit subset enumeration).
inline Count runtime_step(const IntVector& revealed, const IntVector& d_desc)
{
    const std::size_t t = revealed.size() - 1;
    const std::size_t horizon = d_desc.size();
    Count need = 0;
    for (std::uint32_t mask = 0; mask < (1u << t); ++mask)
    {
        Count supply = revealed[t];
        std::size_t k = 1;
        for (std::size_t s = 0; s < t; ++s)
            if (mask & (1u << s))
            {
                supply += revealed[s];
                ++k;
            }
        Count demand = 0;
        for (std::size_t j = horizon - k; j < horizon; ++j)
            demand += d_desc[j];
        need = std::max(need, demand - supply);
    }
    return need;
}

/// Maximum welfare over every multiset of N durations in {0..T}; the cheapest
/// purchase for a profile is the energy that max flow cannot deliver from r.
inline Rational welfare_optimum(const IntVector& r, Count population, const UtilitySpec& u, const Rational& c_da)
{
    const std::size_t horizon = r.size();
    IntVector h(static_cast<std::size_t>(population), 0);
    Rational best(0);
    bool first = true;
    std::function<void(std::size_t, Count)> rec = [&](std::size_t i, Count min_duration) {
        if (i == h.size())
        {
            Rational utility(0);
            Count energy = 0;
            for (Count hi : h)
            {
                utility += u(static_cast<std::size_t>(hi));
                energy += hi;
            }
            const Count bought = energy - max_servable_energy(r, h);
            const Rational value = utility - c_da * bought;
            if (first || value > best)
            {
                best = value;
                first = false;
            }
            return;
        }
        for (Count v = min_duration; v <= static_cast<Count>(horizon); ++v)
        {
            h[i] = v;
            rec(i + 1, v);
        }
    };
    rec(0, 0);
    return best;
}

/// Spot price from the individual bids: the (r_t + 1)-th highest bid capped at
/// c_rt, or 0 when free supply covers every consumer.
inline Rational spot_price(Count free_supply, const IntVector& holdings, const UtilitySpec& u, const Rational& c_rt)
{
    if (static_cast<Count>(holdings.size()) <= free_supply)
        return Rational(0);
    std::vector<Rational> bids;
    for (Count held : holdings)
        bids.push_back(u(static_cast<std::size_t>(held) + 1) - u(static_cast<std::size_t>(held)));
    std::sort(bids.begin(), bids.end(), std::greater<>{});
    return std::min(c_rt, bids[static_cast<std::size_t>(free_supply)]);
}

/// Whether some A_t in [0, min(m, p_t)] delivers exactly E, by enumeration.
inline bool rate_feasible(const IntVector& p, Count energy, Count max_rate)
{
    std::function<bool(std::size_t, Count)> rec = [&](std::size_t t, Count left) {
        if (t == p.size())
            return left == 0;
        const Count cap = std::min(max_rate, p[t]);
        for (Count v = 0; v <= std::min(cap, left); ++v)
            if (rec(t + 1, left - v))
                return true;
        return false;
    };
    return rec(0, energy);
}

// Random instance helpers.

inline IntVector random_vector(std::mt19937_64& rng, std::size_t length, Count max_entry)
{
    std::uniform_int_distribution<Count> entry(0, max_entry);
    IntVector v(length);
    for (Count& x : v)
        x = entry(rng);
    return v;
}

inline DemandProfile random_profile(std::mt19937_64& rng, std::size_t horizon, std::size_t max_loads)
{
    std::uniform_int_distribution<std::size_t> count(0, max_loads);
    std::uniform_int_distribution<Count> duration(0, static_cast<Count>(horizon));
    IntVector h(count(rng));
    for (Count& x : h)
        x = duration(rng);
    return DemandProfile(std::move(h), horizon);
}

/// Utility table with random non-negative increments sorted to match the curvature.
inline UtilitySpec random_utility(std::mt19937_64& rng, std::size_t horizon, Curvature curvature, Count max_step)
{
    std::uniform_int_distribution<Count> step(0, max_step);
    std::vector<Count> increments(horizon);
    for (Count& x : increments)
        x = step(rng);
    if (curvature == Curvature::ConvexIncrements)
        std::sort(increments.begin(), increments.end());
    else
        std::sort(increments.begin(), increments.end(), std::greater<>{});
    std::vector<Rational> values{Rational(0)};
    for (Count x : increments)
        values.push_back(values.back() + x);
    return UtilitySpec(std::move(values), curvature);
}

/// Price p/q with q in {1, 2, 3}.
inline Rational random_price(std::mt19937_64& rng, Count max_numerator)
{
    std::uniform_int_distribution<Count> num(0, max_numerator);
    std::uniform_int_distribution<Count> den(1, 3);
    return Rational(num(rng), den(rng));
}

} // namespace ddl::oracle

#endif // DDL_TESTS_ORACLES_HPP
