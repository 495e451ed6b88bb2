#ifndef DDL_DEMAND_HPP
#define DDL_DEMAND_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>

#include "ddl/errors.hpp"
#include "ddl/majorization.hpp"
#include "ddl/types.hpp"

namespace ddl
{

/// Per-load service durations h_i over a horizon of T slots. Each load needs 1 kW
/// in any h_i of the T slots. Zero-duration loads are allowed.
class DemandProfile
{
  public:
    DemandProfile() = default;

    DemandProfile(IntVector durations, std::size_t horizon)
        : durations_(std::move(durations)), horizon_(horizon)
    {
        for (Count h : durations_)
            if (h < 0 || h > static_cast<Count>(horizon_))
                throw InvalidInput("DemandProfile: duration " + std::to_string(h) + " outside [0, " +
                                   std::to_string(horizon_) + "]");
    }

    [[nodiscard]] const IntVector& durations() const noexcept { return durations_; }
    [[nodiscard]] std::size_t horizon() const noexcept { return horizon_; }
    [[nodiscard]] std::size_t size() const noexcept { return durations_.size(); }
    [[nodiscard]] Count operator[](std::size_t i) const { return durations_[i]; }
    [[nodiscard]] Count energy() const { return total(durations_); }

    friend bool operator==(const DemandProfile&, const DemandProfile&) = default;

  private:
    IntVector durations_;
    std::size_t horizon_ = 0;
};

/// d_t = number of loads needing at least t+1 slots (0-based t). Non-increasing,
/// with d_0 bounded by the population N.
class DurationVector
{
  public:
    DurationVector() = default;

    DurationVector(IntVector counts, Count population) : counts_(std::move(counts)), population_(population)
    {
        if (population_ < 0)
            throw InvalidInput("DurationVector: negative population");
        for (std::size_t t = 0; t < counts_.size(); ++t)
        {
            if (counts_[t] < 0)
                throw InvalidInput("DurationVector: negative count");
            if (t + 1 < counts_.size() && counts_[t] < counts_[t + 1])
                throw InvalidInput("DurationVector: counts must be non-increasing");
        }
        if (!counts_.empty() && counts_.front() > population_)
            throw InvalidInput("DurationVector: d_1 exceeds population");
    }

    /// Population defaults to d_1 (no zero-duration loads).
    explicit DurationVector(IntVector counts)
        : DurationVector(counts, counts.empty() ? 0 : counts.front())
    {
    }

    [[nodiscard]] const IntVector& counts() const noexcept { return counts_; }
    [[nodiscard]] Count population() const noexcept { return population_; }
    [[nodiscard]] std::size_t horizon() const noexcept { return counts_.size(); }
    [[nodiscard]] Count operator[](std::size_t t) const { return counts_[t]; }
    [[nodiscard]] Count energy() const { return total(counts_); }

    friend bool operator==(const DurationVector&, const DurationVector&) = default;

  private:
    IntVector counts_;
    Count population_ = 0;
};

inline DurationVector duration_vector(const DemandProfile& h)
{
    // Histogram of durations, then a suffix count.
    IntVector at_least(h.horizon() + 1, 0);
    for (Count hi : h.durations())
        ++at_least[static_cast<std::size_t>(hi)];
    IntVector d(h.horizon(), 0);
    Count running = 0;
    for (std::size_t t = h.horizon(); t >= 1; --t)
    {
        running += at_least[t];
        d[t - 1] = running;
    }
    return DurationVector(std::move(d), static_cast<Count>(h.size()));
}

/// Inverse of duration_vector. Durations are emitted non-increasing; N - d_1 loads
/// receive duration 0.
inline DemandProfile demand_profile(const DurationVector& d)
{
    const std::size_t horizon = d.horizon();
    IntVector h;
    h.reserve(static_cast<std::size_t>(d.population()));
    for (std::size_t t = horizon; t >= 1; --t)
    {
        const Count next = t < horizon ? d[t] : 0;
        for (Count k = 0; k < d[t - 1] - next; ++k)
            h.push_back(static_cast<Count>(t));
    }
    const Count served = horizon == 0 ? 0 : d[0];
    h.insert(h.end(), static_cast<std::size_t>(d.population() - served), 0);
    return DemandProfile(std::move(h), horizon);
}

} // namespace ddl

#endif // DDL_DEMAND_HPP
