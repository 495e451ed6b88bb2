#ifndef DDL_PROCUREMENT_HPP
#define DDL_PROCUREMENT_HPP

// Minimum-cost supplemental power for an inadequate supply profile.
//
// The minimum number of extra kW-slots needed to make p adequate for d is
//   shortfall(p, d) = max_t ( sum_{s>=t} (d_s - p_desc[s]) )^+
// and it is achieved both with the whole profile known up front and with the
// profile revealed one slot at a time.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ddl/adequacy.hpp"
#include "ddl/demand.hpp"
#include "ddl/errors.hpp"
#include "ddl/majorization.hpp"
#include "ddl/types.hpp"

namespace ddl
{

struct PurchasePlan
{
    IntVector purchases;
    Rational unit_price;
    Rational total_cost;
};

struct RuntimePurchase
{
    PurchasePlan plan;
    Allocation allocation;
};

namespace detail
{

inline void require_price(const Rational& c, const char* what)
{
    if (c < Rational(0))
        throw InvalidInput(std::string(what) + ": negative price");
}

inline PurchasePlan make_plan(IntVector purchases, const Rational& c)
{
    const Count units = total(purchases);
    return {std::move(purchases), c, c * units};
}

} // namespace detail

/// Minimal number of extra kW-slots making p adequate for d.
inline Count shortfall(std::span<const Count> p, std::span<const Count> d)
{
    detail::require_same_length(d, p, "shortfall");
    detail::require_non_negative(p, "shortfall");
    detail::require_non_negative(d, "shortfall");
    const IntVector td = tail_sums(sort_desc(d));
    const IntVector tp = tail_sums(sort_desc(p));
    Count worst = 0;
    for (std::size_t t = 0; t < td.size(); ++t)
        worst = std::max(worst, td[t] - tp[t]);
    return worst;
}

inline Rational optimal_supplement_cost(std::span<const Count> p, const DurationVector& d, const Rational& c)
{
    detail::require_price(c, "optimal_supplement_cost");
    return c * shortfall(p, d.counts());
}

/// Supplemental purchase with the whole supply profile known in advance.
///
/// Buys one unit at a time, each time in the latest slot whose increment lowers
/// the shortfall. Such a slot always exists while the shortfall is positive (it is
/// any slot shared by every maximizing tail set), so the plan buys exactly
/// shortfall(p, d) units.
inline PurchasePlan oracle_purchase(std::span<const Count> p, const DurationVector& d, const Rational& c)
{
    detail::require_price(c, "oracle_purchase");
    IntVector supply(p.begin(), p.end());
    IntVector purchases(p.size(), 0);
    Count gap = shortfall(supply, d.counts());
    while (gap > 0)
    {
        bool bought = false;
        for (std::size_t t = supply.size(); t-- > 0;)
        {
            ++supply[t];
            const Count next = shortfall(supply, d.counts());
            if (next < gap)
            {
                ++purchases[t];
                gap = next;
                bought = true;
                break;
            }
            --supply[t];
        }
        if (!bought)
            throw Error("oracle_purchase: no improving slot (internal invariant broken)");
    }
    return detail::make_plan(std::move(purchases), c);
}

/// Purchase needed at slot `revealed.size() - 1` given the augmented supply of the
/// earlier slots (`revealed` holds those values followed by the raw supply of the
/// current slot).
///
/// The augmented prefix must weakly majorize the shortest `revealed.size()`
/// durations. Only subsets that include the current slot can be newly violated;
/// for subset size k the binding subset pairs the current slot with the k-1
/// smallest earlier values.
inline Count runtime_step(std::span<const Count> revealed, std::span<const Count> d)
{
    const std::size_t t = revealed.size() - 1;
    const std::size_t horizon = d.size();
    IntVector earlier(revealed.begin(), revealed.begin() + static_cast<std::ptrdiff_t>(t));
    std::sort(earlier.begin(), earlier.end());
    const IntVector d_desc = sort_desc(d);

    Count need = 0;
    Count smallest_demand = 0;  // sum of the k smallest durations
    Count smallest_earlier = 0; // sum of the k-1 smallest earlier values
    for (std::size_t k = 1; k <= t + 1; ++k)
    {
        smallest_demand += d_desc[horizon - k];
        if (k >= 2)
            smallest_earlier += earlier[k - 2];
        need = std::max(need, smallest_demand - smallest_earlier - revealed[t]);
    }
    return need;
}

/// Slot-by-slot purchase policy: a_t depends only on p_1..p_t and earlier
/// purchases. The final supply is allocated with LLF.
inline RuntimePurchase runtime_purchase(const DurationVector& d, std::span<const Count> stream,
                                        const Rational& c = Rational(1))
{
    detail::require_price(c, "runtime_purchase");
    detail::require_same_length(d.counts(), stream, "runtime_purchase");
    detail::require_non_negative(stream, "runtime_purchase");

    IntVector augmented;
    IntVector purchases;
    augmented.reserve(stream.size());
    for (std::size_t t = 0; t < stream.size(); ++t)
    {
        augmented.push_back(stream[t]);
        const Count a = runtime_step(augmented, d.counts());
        augmented.back() += a;
        purchases.push_back(a);
    }
    Allocation alloc = llf_allocate(augmented, demand_profile(d));
    return {detail::make_plan(std::move(purchases), c), std::move(alloc)};
}

} // namespace ddl

#endif // DDL_PROCUREMENT_HPP
