#ifndef DDL_ADEQUACY_HPP
#define DDL_ADEQUACY_HPP

// Adequacy tests, Least-Laxity-First allocation and allocation checks.
//
// A supply profile p is adequate for a demand profile h when some binary N x T
// allocation gives every load exactly h_i slots and never uses more than p_t in
// slot t. It is exactly adequate when every slot's supply is used in full.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "ddl/demand.hpp"
#include "ddl/errors.hpp"
#include "ddl/flow.hpp"
#include "ddl/majorization.hpp"
#include "ddl/types.hpp"

namespace ddl
{

/// Dense row-major binary N x T assignment of slots to loads.
class Allocation
{
  public:
    Allocation() = default;
    Allocation(std::size_t loads, std::size_t slots) : loads_(loads), slots_(slots), cells_(loads * slots, 0) {}

    [[nodiscard]] std::size_t loads() const noexcept { return loads_; }
    [[nodiscard]] std::size_t slots() const noexcept { return slots_; }

    [[nodiscard]] bool at(std::size_t load, std::size_t slot) const { return cells_[load * slots_ + slot] != 0; }
    void set(std::size_t load, std::size_t slot, bool on) { cells_[load * slots_ + slot] = on ? 1 : 0; }

    [[nodiscard]] std::span<const std::uint8_t> row(std::size_t load) const
    {
        return {cells_.data() + load * slots_, slots_};
    }

    [[nodiscard]] Count row_sum(std::size_t load) const
    {
        const auto r = row(load);
        return std::accumulate(r.begin(), r.end(), Count{0});
    }

    [[nodiscard]] Count column_sum(std::size_t slot) const
    {
        Count s = 0;
        for (std::size_t i = 0; i < loads_; ++i)
            s += cells_[i * slots_ + slot];
        return s;
    }

    [[nodiscard]] IntVector column_sums() const
    {
        IntVector out(slots_, 0);
        for (std::size_t t = 0; t < slots_; ++t)
            out[t] = column_sum(t);
        return out;
    }

    friend bool operator==(const Allocation&, const Allocation&) = default;

  private:
    std::size_t loads_ = 0;
    std::size_t slots_ = 0;
    std::vector<std::uint8_t> cells_;
};

inline bool is_exactly_adequate(std::span<const Count> p, const DurationVector& d)
{
    return majorizes(d.counts(), p);
}

inline bool is_adequate(std::span<const Count> p, const DurationVector& d)
{
    return weakly_majorizes(d.counts(), p);
}

/// Least-Laxity-First allocation.
///
/// At slot t every load with unmet demand has laxity (T - t) - remaining_i, the
/// slack it can still afford to skip. The p_t unmet loads of smallest laxity are
/// served, ties going to the lower load index. Power beyond the number of unmet
/// loads is left unassigned.
///
/// Throws InadequateSupply when p is not adequate for h.
inline Allocation llf_allocate(std::span<const Count> p, const DemandProfile& h)
{
    const std::size_t horizon = h.horizon();
    if (p.size() != horizon)
        throw InvalidInput("llf_allocate: supply length " + std::to_string(p.size()) + " does not match horizon " +
                           std::to_string(horizon));
    const DurationVector d = duration_vector(h);
    if (auto bad = first_violated_tail(d.counts(), p))
        throw InadequateSupply(*bad, "llf_allocate: supply is not adequate, tail sum from slot " +
                                         std::to_string(*bad + 1) + " is short");

    const std::size_t n = h.size();
    Allocation alloc(n, horizon);
    IntVector remaining = h.durations();
    std::vector<std::size_t> order(n);

    for (std::size_t t = 0; t < horizon; ++t)
    {
        order.clear();
        for (std::size_t i = 0; i < n; ++i)
        {
            if (remaining[i] == 0)
                continue;
            const Count laxity = static_cast<Count>(horizon - t) - remaining[i];
            if (laxity < 0)
                throw Infeasible("llf_allocate: load " + std::to_string(i) + " has negative laxity at slot " +
                                 std::to_string(t));
            order.push_back(i);
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return remaining[a] > remaining[b]; // larger remaining demand == smaller laxity
        });
        const std::size_t served = std::min(order.size(), static_cast<std::size_t>(p[t]));
        for (std::size_t k = 0; k < served; ++k)
        {
            alloc.set(order[k], t, true);
            --remaining[order[k]];
        }
    }

    for (std::size_t i = 0; i < n; ++i)
        if (remaining[i] != 0)
            throw Infeasible("llf_allocate: load " + std::to_string(i) + " left unserved");
    return alloc;
}

/// Checks row sums equal h and column sums do not exceed p. With `exact`, column
/// sums must equal p.
inline bool verify_allocation(const Allocation& a, std::span<const Count> p, const DemandProfile& h,
                              bool exact = false)
{
    if (a.loads() != h.size() || a.slots() != p.size() || a.slots() != h.horizon())
        return false;
    for (std::size_t i = 0; i < a.loads(); ++i)
        if (a.row_sum(i) != h[i])
            return false;
    for (std::size_t t = 0; t < a.slots(); ++t)
    {
        const Count used = a.column_sum(t);
        if (used > p[t] || (exact && used != p[t]))
            return false;
    }
    return true;
}

/// Maximum energy deliverable to h from p: max flow through
/// source -> load (h_i) -> slot (1 per pair) -> sink (p_t).
inline Count max_servable_energy(std::span<const Count> p, std::span<const Count> durations)
{
    const std::size_t n = durations.size();
    const std::size_t horizon = p.size();
    const std::size_t source = n + horizon;
    const std::size_t sink = source + 1;
    MaxFlow graph(sink + 1);
    for (std::size_t i = 0; i < n; ++i)
    {
        graph.add_edge(source, i, durations[i]);
        for (std::size_t t = 0; t < horizon; ++t)
            graph.add_edge(i, n + t, 1);
    }
    for (std::size_t t = 0; t < horizon; ++t)
        graph.add_edge(n + t, sink, p[t]);
    return graph.run(source, sink);
}

/// Adequacy decided by bipartite max flow, independent of the majorization test.
inline bool flow_adequacy_oracle(std::span<const Count> p, const DemandProfile& h)
{
    return max_servable_energy(p, h.durations()) == h.energy();
}

/// Number of service interruptions for one load: maximal runs of served slots minus one.
inline Count interruptions(const Allocation& a, std::size_t load)
{
    Count runs = 0;
    bool prev = false;
    for (std::size_t t = 0; t < a.slots(); ++t)
    {
        const bool on = a.at(load, t);
        if (on && !prev)
            ++runs;
        prev = on;
    }
    return runs > 0 ? runs - 1 : 0;
}

/// Count of local minima of a chronological profile, treating a constant run as a
/// single point and missing neighbours at the ends as larger.
inline Count local_minima(std::span<const Count> q)
{
    Count minima = 0;
    std::size_t i = 0;
    while (i < q.size())
    {
        std::size_t j = i;
        while (j + 1 < q.size() && q[j + 1] == q[i])
            ++j;
        const bool left_higher = i == 0 || q[i - 1] > q[i];
        const bool right_higher = j + 1 == q.size() || q[j + 1] > q[i];
        if (left_higher && right_higher)
            ++minima;
        i = j + 1;
    }
    return minima;
}

} // namespace ddl

#endif // DDL_ADEQUACY_HPP
