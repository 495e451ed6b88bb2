#ifndef DDL_RATE_HPP
#define DDL_RATE_HPP

// Rate-constrained energy services (E, m): E kW-slots delivered at no more than
// m kW per slot. With E = k*m + r (0 <= r < m) such a service is interchangeable
// with r unit-rate loads of duration k+1 and m-r loads of duration k.

#include <algorithm>
#include <cstddef>
#include <numeric>
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

struct RateSpec
{
    Count energy = 0;
    Count max_rate = 1;
    std::size_t horizon = 0;

    void validate() const
    {
        if (energy < 0 || max_rate < 0)
            throw InvalidInput("RateSpec: energy and max_rate must be non-negative");
        if (energy > max_rate * static_cast<Count>(horizon))
            throw Infeasible("RateSpec: energy " + std::to_string(energy) + " exceeds max_rate * horizon = " +
                             std::to_string(max_rate * static_cast<Count>(horizon)));
    }
};

/// Unit-rate equivalent of a rate-constrained service, durations non-increasing.
inline DemandProfile decompose(const RateSpec& spec)
{
    spec.validate();
    if (spec.max_rate == 0)
        return DemandProfile({}, spec.horizon);
    const Count k = spec.energy / spec.max_rate;
    const Count r = spec.energy % spec.max_rate;
    IntVector durations(static_cast<std::size_t>(spec.max_rate), k);
    std::fill(durations.begin(), durations.begin() + r, k + 1);
    return DemandProfile(std::move(durations), spec.horizon);
}

/// A_t = sum over sub-loads of their binary rows. Rows must match decompose(spec).
inline IntVector compose_allocation(const Allocation& unit_rows, const RateSpec& spec)
{
    const DemandProfile parts = decompose(spec);
    if (unit_rows.loads() != parts.size() || (unit_rows.loads() > 0 && unit_rows.slots() != spec.horizon))
        throw InvalidInput("compose_allocation: expected " + std::to_string(parts.size()) + " rows of length " +
                           std::to_string(spec.horizon));
    IntVector combined(spec.horizon, 0);
    for (std::size_t n = 0; n < unit_rows.loads(); ++n)
    {
        if (unit_rows.row_sum(n) != parts[n])
            throw InvalidInput("compose_allocation: row " + std::to_string(n) + " sums to " +
                               std::to_string(unit_rows.row_sum(n)) + ", expected " + std::to_string(parts[n]));
        for (std::size_t t = 0; t < spec.horizon; ++t)
            combined[t] += unit_rows.at(n, t) ? 1 : 0;
    }
    return combined;
}

/// Peels a rate allocation into binary unit rows: each row takes the slots with the
/// largest remaining amount (earliest slot on ties), k+1 of them for the first r
/// rows and k for the rest.
inline Allocation split_allocation(std::span<const Count> combined, const RateSpec& spec)
{
    spec.validate();
    if (combined.size() != spec.horizon)
        throw InvalidInput("split_allocation: allocation length does not match horizon");
    for (Count a : combined)
        if (a < 0 || a > spec.max_rate)
            throw InvalidInput("split_allocation: every slot must lie in [0, max_rate]");
    if (total(combined) != spec.energy)
        throw InvalidInput("split_allocation: allocation does not deliver the requested energy");

    const DemandProfile parts = decompose(spec);
    Allocation rows(parts.size(), spec.horizon);
    IntVector left(combined.begin(), combined.end());
    std::vector<std::size_t> order(spec.horizon);
    for (std::size_t n = 0; n < parts.size(); ++n)
    {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return left[a] > left[b]; });
        for (Count k = 0; k < parts[n]; ++k)
        {
            const std::size_t t = order[static_cast<std::size_t>(k)];
            if (left[t] == 0)
                throw Error("split_allocation: ran out of energy (internal invariant broken)");
            rows.set(n, t, true);
            --left[t];
        }
    }
    return rows;
}

} // namespace ddl

#endif // DDL_RATE_HPP
