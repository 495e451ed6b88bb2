#ifndef DDL_MAJORIZATION_HPP
#define DDL_MAJORIZATION_HPP

// Integer-vector majorization primitives.
//
// The order used throughout is the reversed (tail-sum) convention: d is weakly
// majorized by p when every tail sum of d (sorted non-increasing) is at most the
// matching tail sum of p. Under that convention "d below p" reads as "demand
// fits in supply". All slot indices are 0-based.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddl/errors.hpp"
#include "ddl/types.hpp"

namespace ddl
{

/// One unit moved from the larger coordinate `from` to the smaller coordinate `to`.
/// Indices refer to the non-increasing vector the transfer is applied to.
struct RhTransfer
{
    std::size_t from = 0;
    std::size_t to = 0;

    friend bool operator==(const RhTransfer&, const RhTransfer&) = default;
};

namespace detail
{

inline void require_non_negative(std::span<const Count> v, const char* what)
{
    for (Count x : v)
        if (x < 0)
            throw InvalidInput(std::string(what) + ": entries must be non-negative");
}

inline void require_same_length(std::span<const Count> a, std::span<const Count> b, const char* what)
{
    if (a.size() != b.size())
        throw InvalidInput(std::string(what) + ": length mismatch (" + std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()) + ")");
}

} // namespace detail

/// Non-increasing rearrangement.
inline IntVector sort_desc(std::span<const Count> v)
{
    IntVector out(v.begin(), v.end());
    std::sort(out.begin(), out.end(), std::greater<>{});
    return out;
}

/// tails[t] = sum_{s >= t} v[s], computed in one backward pass.
inline IntVector tail_sums(std::span<const Count> v)
{
    IntVector tails(v.size(), 0);
    Count running = 0;
    for (std::size_t t = v.size(); t-- > 0;)
    {
        running += v[t];
        tails[t] = running;
    }
    return tails;
}

inline Count total(std::span<const Count> v)
{
    Count s = 0;
    for (Count x : v)
        s += x;
    return s;
}

/// First tail index where sorted d exceeds sorted p, or nullopt when d is weakly
/// majorized by p.
inline std::optional<std::size_t> first_violated_tail(std::span<const Count> d, std::span<const Count> p)
{
    detail::require_same_length(d, p, "first_violated_tail");
    detail::require_non_negative(d, "first_violated_tail");
    detail::require_non_negative(p, "first_violated_tail");
    const IntVector td = tail_sums(sort_desc(d));
    const IntVector tp = tail_sums(sort_desc(p));
    for (std::size_t t = 0; t < td.size(); ++t)
        if (td[t] > tp[t])
            return t;
    return std::nullopt;
}

/// True iff for every t, sum_{s>=t} d_desc[s] <= sum_{s>=t} p_desc[s].
inline bool weakly_majorizes(std::span<const Count> d, std::span<const Count> p)
{
    return !first_violated_tail(d, p).has_value();
}

/// Weak majorization plus equal totals.
inline bool majorizes(std::span<const Count> d, std::span<const Count> p)
{
    return weakly_majorizes(d, p) && total(d) == total(p);
}

/// Moves one unit from v[from] to v[to] and returns the non-increasing rearrangement.
/// Requires v[from] > v[to].
inline IntVector rh_transfer(std::span<const Count> v, std::size_t from, std::size_t to)
{
    detail::require_non_negative(v, "rh_transfer");
    if (from >= v.size() || to >= v.size())
        throw InvalidInput("rh_transfer: index out of range");
    if (v[from] <= v[to])
        throw InvalidInput("rh_transfer: requires v[from] > v[to]");
    IntVector out(v.begin(), v.end());
    --out[from];
    ++out[to];
    return sort_desc(out);
}

/// Sequence of unit Robin-Hood transfers turning sort_desc(a) into sort_desc(b).
///
/// Requires majorizes(a, b). Each step takes the first index t where the running
/// vector differs from b and the first later index s with running[t] - running[s] > 1,
/// moves one unit from t to s and re-sorts. Transfers are expressed against the
/// running sorted vector.
inline std::vector<RhTransfer> rh_chain(std::span<const Count> a, std::span<const Count> b)
{
    detail::require_same_length(a, b, "rh_chain");
    if (!majorizes(a, b))
        throw InvalidInput("rh_chain: first vector is not majorized by the second");

    IntVector cur = sort_desc(a);
    const IntVector target = sort_desc(b);
    std::vector<RhTransfer> chain;
    while (cur != target)
    {
        std::size_t t = 0;
        while (cur[t] == target[t])
            ++t;
        std::size_t s = t + 1;
        while (s < cur.size() && cur[t] - cur[s] <= 1)
            ++s;
        if (s == cur.size())
            throw Error("rh_chain: no admissible transfer (internal invariant broken)");
        chain.push_back({t, s});
        cur = rh_transfer(cur, t, s);
    }
    return chain;
}

/// Replays a transfer chain starting from sort_desc(a).
inline IntVector replay_chain(std::span<const Count> a, std::span<const RhTransfer> chain)
{
    IntVector cur = sort_desc(a);
    for (const RhTransfer& step : chain)
        cur = rh_transfer(cur, step.from, step.to);
    return cur;
}

} // namespace ddl

#endif // DDL_MAJORIZATION_HPP
