#ifndef DDL_DAYAHEAD_HPP
#define DDL_DAYAHEAD_HPP

// Two-stage supplier problem: buy y ahead of time at c_da, observe the renewable
// realization r, then cover the remaining shortfall at c_rt with the optimal
// real-time policy. The expected cost is
//   J(y) = c_da * sum(y) + c_rt * E[ shortfall(r + y, d) ].

#include <algorithm>
#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ddl/demand.hpp"
#include "ddl/errors.hpp"
#include "ddl/majorization.hpp"
#include "ddl/procurement.hpp"
#include "ddl/types.hpp"

namespace ddl
{

struct Scenario
{
    SupplyProfile supply;
    Rational probability;
};

/// Finite-support distribution over renewable supply vectors.
class ScenarioDistribution
{
  public:
    ScenarioDistribution() = default;

    ScenarioDistribution(std::vector<Scenario> scenarios, std::size_t horizon)
        : scenarios_(std::move(scenarios)), horizon_(horizon)
    {
        if (scenarios_.empty())
            throw InvalidInput("ScenarioDistribution: no scenarios");
        Rational mass(0);
        for (const Scenario& s : scenarios_)
        {
            if (s.supply.size() != horizon_)
                throw InvalidInput("ScenarioDistribution: scenario length does not match horizon");
            detail::require_non_negative(s.supply, "ScenarioDistribution");
            if (s.probability <= Rational(0))
                throw InvalidInput("ScenarioDistribution: probabilities must be positive");
            mass += s.probability;
        }
        if (mass != Rational(1))
            throw InvalidInput("ScenarioDistribution: probabilities sum to " + to_string(mass) + ", expected 1");
    }

    /// Single deterministic realization.
    static ScenarioDistribution certain(SupplyProfile r)
    {
        const std::size_t horizon = r.size();
        return ScenarioDistribution({{std::move(r), Rational(1)}}, horizon);
    }

    [[nodiscard]] const std::vector<Scenario>& scenarios() const noexcept { return scenarios_; }
    [[nodiscard]] std::size_t horizon() const noexcept { return horizon_; }

  private:
    std::vector<Scenario> scenarios_;
    std::size_t horizon_ = 0;
};

struct TwoStagePrices
{
    Rational day_ahead;
    Rational real_time;

    void validate() const
    {
        if (day_ahead < Rational(0) || real_time < Rational(0))
            throw InvalidInput("TwoStagePrices: prices must be non-negative");
    }
};

struct DayAheadResult
{
    IntVector purchase;
    Rational cost;
    Count cap = 0;
    bool touches_cap = false; // some y_t equals the search cap
    bool exhaustive = true;   // false when the lattice descent fallback was used
};

inline Rational expected_cost(std::span<const Count> y, const DurationVector& d, const ScenarioDistribution& dist,
                              const TwoStagePrices& prices)
{
    prices.validate();
    detail::require_same_length(y, d.counts(), "expected_cost");
    if (dist.horizon() != y.size())
        throw InvalidInput("expected_cost: distribution horizon does not match");
    detail::require_non_negative(y, "expected_cost");

    Rational recourse(0);
    IntVector combined(y.size());
    for (const Scenario& s : dist.scenarios())
    {
        for (std::size_t t = 0; t < y.size(); ++t)
            combined[t] = s.supply[t] + y[t];
        recourse += s.probability * shortfall(combined, d.counts());
    }
    return prices.day_ahead * total(y) + prices.real_time * recourse;
}

namespace detail
{

inline bool next_in_box(IntVector& y, Count cap)
{
    for (std::size_t t = y.size(); t-- > 0;)
    {
        if (y[t] < cap)
        {
            ++y[t];
            return true;
        }
        y[t] = 0;
    }
    return false;
}

} // namespace detail

/// Largest box (cap+1)^T searched exhaustively before falling back to descent.
inline constexpr double kExhaustiveLimit = 2.0e6;

/// Integer minimizer of J over [0, cap]^T. Ties resolve to the lexicographically
/// smallest vector. cap < 0 selects the default cap d_1.
///
/// Boxes up to kExhaustiveLimit points are enumerated. Larger ones use integer
/// coordinate descent from y = 0, which is a heuristic and is flagged as such.
inline DayAheadResult minimize_dayahead(const DurationVector& d, const ScenarioDistribution& dist,
                                        const TwoStagePrices& prices, Count cap = -1)
{
    if (dist.scenarios().empty())
        throw InvalidInput("minimize_dayahead: empty distribution");
    prices.validate();
    const std::size_t horizon = d.horizon();
    if (cap < 0)
        cap = horizon == 0 ? 0 : d[0];

    DayAheadResult best;
    best.cap = cap;
    IntVector y(horizon, 0);
    best.purchase = y;
    best.cost = expected_cost(y, d, dist, prices);

    double points = 1.0;
    for (std::size_t t = 0; t < horizon; ++t)
        points *= static_cast<double>(cap + 1);

    if (points <= kExhaustiveLimit)
    {
        while (detail::next_in_box(y, cap))
        {
            const Rational cost = expected_cost(y, d, dist, prices);
            if (cost < best.cost) // lexicographic order of enumeration keeps the smallest tie
            {
                best.cost = cost;
                best.purchase = y;
            }
        }
    }
    else
    {
        best.exhaustive = false;
        bool improved = true;
        while (improved)
        {
            improved = false;
            for (std::size_t t = 0; t < horizon; ++t)
            {
                for (Count step : {Count{-1}, Count{1}})
                {
                    const Count v = best.purchase[t] + step;
                    if (v < 0 || v > cap)
                        continue;
                    IntVector candidate = best.purchase;
                    candidate[t] = v;
                    const Rational cost = expected_cost(candidate, d, dist, prices);
                    if (cost < best.cost)
                    {
                        best.cost = cost;
                        best.purchase = std::move(candidate);
                        improved = true;
                    }
                }
            }
        }
    }
    best.touches_cap = cap > 0 && std::find(best.purchase.begin(), best.purchase.end(), cap) != best.purchase.end();
    return best;
}

/// J evaluated over real-valued purchases; convex in y.
inline double relaxed_cost(std::span<const double> y, const DurationVector& d, const ScenarioDistribution& dist,
                           const TwoStagePrices& prices)
{
    const std::size_t horizon = d.horizon();
    if (y.size() != horizon || dist.horizon() != horizon)
        throw InvalidInput("relaxed_cost: length mismatch");

    std::vector<double> demand_tail(horizon + 1, 0.0);
    const IntVector d_desc = sort_desc(d.counts());
    for (std::size_t t = horizon; t-- > 0;)
        demand_tail[t] = demand_tail[t + 1] + static_cast<double>(d_desc[t]);

    double recourse = 0.0;
    std::vector<double> combined(horizon);
    for (const Scenario& s : dist.scenarios())
    {
        for (std::size_t t = 0; t < horizon; ++t)
            combined[t] = static_cast<double>(s.supply[t]) + y[t];
        std::sort(combined.begin(), combined.end(), std::greater<>{});
        double worst = 0.0;
        double supply_tail = 0.0;
        for (std::size_t t = horizon; t-- > 0;)
        {
            supply_tail += combined[t];
            worst = std::max(worst, demand_tail[t] - supply_tail);
        }
        recourse += to_double(s.probability) * worst;
    }
    double bought = 0.0;
    for (double v : y)
        bought += v;
    return to_double(prices.day_ahead) * bought + to_double(prices.real_time) * recourse;
}

inline constexpr double kConvexityTolerance = 1e-9;

/// Samples y1, y2 in [0, cap]^T and lambda in [0, 1] and checks
/// J(lambda y1 + (1 - lambda) y2) <= lambda J(y1) + (1 - lambda) J(y2) + 1e-9.
inline bool convexity_probe(const DurationVector& d, const ScenarioDistribution& dist, const TwoStagePrices& prices,
                            double cap, std::size_t trials, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> coord(0.0, cap);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t horizon = d.horizon();
    std::vector<double> y1(horizon), y2(horizon), mix(horizon);
    for (std::size_t trial = 0; trial < trials; ++trial)
    {
        const double lambda = unit(rng);
        for (std::size_t t = 0; t < horizon; ++t)
        {
            y1[t] = coord(rng);
            y2[t] = coord(rng);
            mix[t] = lambda * y1[t] + (1.0 - lambda) * y2[t];
        }
        const double lhs = relaxed_cost(mix, d, dist, prices);
        const double rhs =
            lambda * relaxed_cost(y1, d, dist, prices) + (1.0 - lambda) * relaxed_cost(y2, d, dist, prices);
        if (lhs > rhs + kConvexityTolerance)
            return false;
    }
    return true;
}

} // namespace ddl

#endif // DDL_DAYAHEAD_HPP
