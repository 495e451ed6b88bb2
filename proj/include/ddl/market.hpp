#ifndef DDL_MARKET_HPP
#define DDL_MARKET_HPP

// Forward and spot markets for duration-differentiated services.
//
// N identical consumers value h slots of 1 kW at U(h). The supplier owns free
// renewable power r and buys extra energy at c_da per kW-slot ahead of time (c_rt
// in the spot market). Welfare is total consumer utility minus purchase cost.
//
// The concave-case threshold k* is the LARGEST k with U(k) - U(k-1) >= c_da: the
// duration every consumer is extended to when increments decrease. Reading it as
// the smallest such k would pin k* to 1 whenever it exists.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ddl/adequacy.hpp"
#include "ddl/demand.hpp"
#include "ddl/errors.hpp"
#include "ddl/majorization.hpp"
#include "ddl/procurement.hpp"
#include "ddl/types.hpp"

namespace ddl
{

enum class Curvature
{
    ConvexIncrements,  // U(h) - U(h-1) non-decreasing
    ConcaveIncrements, // U(h) - U(h-1) non-increasing
};

inline const char* to_string(Curvature c)
{
    return c == Curvature::ConvexIncrements ? "convex" : "concave";
}

/// Utility table U(0..T) with U(0) = 0 and non-negative increments matching the curvature.
class UtilitySpec
{
  public:
    UtilitySpec() = default;

    UtilitySpec(std::vector<Rational> values, Curvature curvature) : values_(std::move(values)), curvature_(curvature)
    {
        if (values_.size() < 2)
            throw InvalidInput("UtilitySpec: need U(0..T) with T >= 1");
        if (values_[0] != Rational(0))
            throw InvalidInput("UtilitySpec: U(0) must be 0");
        for (std::size_t h = 1; h < values_.size(); ++h)
        {
            if (increment(h) < Rational(0))
                throw InvalidInput("UtilitySpec: utility increments must be non-negative");
            if (h >= 2)
            {
                const bool convex_ok = increment(h) >= increment(h - 1);
                const bool concave_ok = increment(h) <= increment(h - 1);
                if (curvature_ == Curvature::ConvexIncrements ? !convex_ok : !concave_ok)
                    throw InvalidInput(std::string("UtilitySpec: increments are not ") + ddl::to_string(curvature_));
            }
        }
    }

    [[nodiscard]] std::size_t horizon() const noexcept { return values_.size() - 1; }
    [[nodiscard]] Curvature curvature() const noexcept { return curvature_; }
    [[nodiscard]] const std::vector<Rational>& values() const noexcept { return values_; }
    [[nodiscard]] const Rational& operator()(std::size_t h) const { return values_.at(h); }

    /// U(h) - U(h-1), for h >= 1.
    [[nodiscard]] Rational increment(std::size_t h) const { return values_.at(h) - values_.at(h - 1); }

  private:
    std::vector<Rational> values_{Rational(0), Rational(0)};
    Curvature curvature_ = Curvature::ConvexIncrements;
};

/// pi(0..T); pi(0) = 0.
using PriceMenu = std::vector<Rational>;

struct WelfareOptimum
{
    std::size_t k_star = 0;
    DurationVector demand;
    DemandProfile profile;
    IntVector purchase;
    Rational welfare;
};

struct EquilibriumOutcome
{
    Curvature curvature = Curvature::ConvexIncrements;
    std::size_t k_star = 0;
    PriceMenu prices;
    IntVector production; // production[t-1] = services of duration t
    DemandProfile demand;
    IntVector dayahead_purchase;
};

struct EquilibriumCheck
{
    bool consumer_surplus = false;
    bool profit = false;
    bool clearing = false;
    bool exhaustive = false; // profit checked over every bundle rather than unit perturbations

    [[nodiscard]] bool holds() const noexcept { return consumer_surplus && profit && clearing; }
};

struct SpotSlot
{
    Rational price;
    Count free_supply = 0;
    Count sold = 0;
    Count bought = 0;      // real-time purchases by the supplier
    IntVector histogram;   // histogram[j] = consumers holding j kW-slots before this slot
};

struct SpotTrace
{
    std::vector<SpotSlot> slots;
    Allocation purchases;              // consumer x slot
    IntVector holdings;                // final kW-slots per consumer
    std::vector<Rational> utilities;   // U(holdings_i)
    std::vector<Rational> payments;
    Rational consumer_surplus;
    Rational supplier_profit;
    Rational welfare;
};

struct EfficiencyGap
{
    Rational forward;
    Rational spot;
    Rational gap;
};

namespace detail
{

inline void require_market_horizon(std::span<const Count> r, const UtilitySpec& u, const char* what)
{
    if (r.size() != u.horizon())
        throw InvalidInput(std::string(what) + ": supply length does not match utility horizon");
    require_non_negative(r, what);
}

inline Rational price_of(const PriceMenu& prices, Count h)
{
    return h == 0 ? Rational(0) : prices.at(static_cast<std::size_t>(h));
}

inline DurationVector durations_from_production(std::span<const Count> production, Count population)
{
    IntVector d(production.size(), 0);
    Count running = 0;
    for (std::size_t t = production.size(); t-- > 0;)
    {
        running += production[t];
        d[t] = running;
    }
    return DurationVector(std::move(d), std::max(population, running));
}

inline DemandProfile profile_from_production(std::span<const Count> production, Count population)
{
    return demand_profile(durations_from_production(production, population));
}

/// Visits every n >= 0 with sum(n) <= budget.
inline void for_each_bundle(std::size_t slots, Count budget, const std::function<void(const IntVector&)>& visit)
{
    IntVector n(slots, 0);
    std::function<void(std::size_t, Count)> rec = [&](std::size_t t, Count left) {
        if (t == slots)
        {
            visit(n);
            return;
        }
        for (Count v = 0; v <= left; ++v)
        {
            n[t] = v;
            rec(t + 1, left - v);
        }
        n[t] = 0;
    };
    rec(0, budget);
}

} // namespace detail

/// Total consumer utility minus day-ahead purchase cost. Throws Infeasible when
/// r + y is not adequate for h.
inline Rational welfare(const DemandProfile& h, std::span<const Count> y, std::span<const Count> r,
                        const UtilitySpec& u, const Rational& c_da)
{
    detail::require_same_length(y, r, "welfare");
    detail::require_non_negative(y, "welfare");
    detail::require_market_horizon(r, u, "welfare");
    if (h.horizon() != r.size())
        throw InvalidInput("welfare: demand horizon does not match");
    IntVector supply(r.begin(), r.end());
    for (std::size_t t = 0; t < supply.size(); ++t)
        supply[t] += y[t];
    if (!is_adequate(supply, duration_vector(h)))
        throw Infeasible("welfare: r + y is not adequate for the demand profile");
    Rational utility(0);
    for (Count hi : h.durations())
        utility += u(static_cast<std::size_t>(hi));
    return utility - c_da * total(y);
}

/// Threshold k* of the welfare optimum (see the header note for the concave case).
inline std::size_t welfare_threshold(const UtilitySpec& u, const Rational& c_da)
{
    const std::size_t horizon = u.horizon();
    if (u.curvature() == Curvature::ConvexIncrements)
    {
        for (std::size_t k = 0; k < horizon; ++k)
            if ((u(horizon) - u(k)) / static_cast<std::int64_t>(horizon - k) >= c_da)
                return k;
        return horizon;
    }
    for (std::size_t k = horizon; k >= 1; --k)
        if (u.increment(k) >= c_da)
            return k;
    return 0;
}

/// Welfare-maximizing demand-duration vector, purchase and welfare.
///
/// Convex increments: with k* the smallest k whose average remaining increment
/// (U(T) - U(k)) / (T - k) covers c_da, durations follow the sorted free supply
/// below k* and every consumer reaching k* is extended to T. Requires N >= r_1.
///
/// Concave increments: every consumer gets k* slots, or with k* = 0 the free
/// energy is spread as single slots. Requires N >= sum(r).
inline WelfareOptimum social_welfare_optimum(std::span<const Count> r, Count population, const UtilitySpec& u,
                                             const Rational& c_da)
{
    detail::require_market_horizon(r, u, "social_welfare_optimum");
    if (c_da < Rational(0))
        throw InvalidInput("social_welfare_optimum: negative price");
    const std::size_t horizon = r.size();
    const IntVector r_desc = sort_desc(r);
    const std::size_t k_star = welfare_threshold(u, c_da);

    IntVector d(horizon, 0);
    if (u.curvature() == Curvature::ConvexIncrements)
    {
        if (population < r_desc[0])
            throw InvalidInput("social_welfare_optimum: convex case needs N >= max r_t");
        for (std::size_t t = 0; t < horizon; ++t)
            d[t] = k_star == 0 ? population : r_desc[std::min(t, k_star - 1)];
    }
    else
    {
        const Count free_energy = total(r);
        if (population < free_energy)
            throw InvalidInput("social_welfare_optimum: concave case needs N >= sum r_t");
        if (k_star == 0)
            d[0] = free_energy;
        else
            std::fill(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(k_star), population);
    }

    WelfareOptimum out;
    out.k_star = k_star;
    out.demand = DurationVector(d, population);
    out.profile = demand_profile(out.demand);
    out.purchase = oracle_purchase(r, out.demand, Rational(1)).purchases;
    out.welfare = welfare(out.profile, out.purchase, r, u, c_da);
    return out;
}

/// Efficient competitive equilibrium: prices, production, consumption and the
/// supplier's day-ahead purchase.
inline EquilibriumOutcome equilibrium(std::span<const Count> r, Count population, const UtilitySpec& u,
                                      const Rational& c_da)
{
    // Validates the same preconditions and gives k*.
    const WelfareOptimum optimum = social_welfare_optimum(r, population, u, c_da);
    const std::size_t horizon = r.size();
    const IntVector r_desc = sort_desc(r);
    const std::size_t k_star = optimum.k_star;

    EquilibriumOutcome out;
    out.curvature = u.curvature();
    out.k_star = k_star;
    out.prices.assign(horizon + 1, Rational(0));
    out.production.assign(horizon, 0);

    if (u.curvature() == Curvature::ConvexIncrements)
    {
        for (std::size_t h = 1; h <= horizon; ++h)
            out.prices[h] = u(h);
        if (k_star == 0)
            out.production[horizon - 1] = population;
        else
        {
            for (std::size_t t = 1; t < k_star; ++t)
                out.production[t - 1] = r_desc[t - 1] - r_desc[t];
            out.production[horizon - 1] = r_desc[k_star - 1];
        }
    }
    else
    {
        const Rational unit = std::min(c_da, u(1));
        for (std::size_t h = 1; h <= horizon; ++h)
            out.prices[h] = unit * static_cast<std::int64_t>(h);
        if (k_star == 0)
            out.production[0] = total(r);
        else
            out.production[k_star - 1] = population;
    }

    out.demand = detail::profile_from_production(out.production, population);
    out.dayahead_purchase =
        oracle_purchase(r, detail::durations_from_production(out.production, population), Rational(1)).purchases;
    return out;
}

/// Largest bundle space checked exhaustively in the profit test.
inline constexpr std::size_t kExhaustiveProfitSlots = 6;
inline constexpr Count kExhaustiveProfitConsumers = 20;

/// Checks consumer surplus maximization, supplier profit maximization and market
/// clearing. The supplier chooses a bundle n (at most N services in total) and
/// buys the cheapest y making r + y adequate for it.
inline EquilibriumCheck check_equilibrium(const EquilibriumOutcome& out, std::span<const Count> r,
                                          const UtilitySpec& u, const Rational& c_da)
{
    EquilibriumCheck check;
    const std::size_t horizon = r.size();
    if (u.horizon() != horizon || out.production.size() != horizon || out.prices.size() != horizon + 1 ||
        out.dayahead_purchase.size() != horizon || out.demand.horizon() != horizon)
        return check;
    const Count population = static_cast<Count>(out.demand.size());

    // (i) every consumer's choice maximizes U(h) - pi(h).
    Rational best_surplus(0);
    for (std::size_t h = 1; h <= horizon; ++h)
        best_surplus = std::max(best_surplus, u(h) - out.prices[h]);
    check.consumer_surplus = std::all_of(out.demand.durations().begin(), out.demand.durations().end(), [&](Count h) {
        return u(static_cast<std::size_t>(h)) - detail::price_of(out.prices, h) == best_surplus;
    });

    // (iii) production matches consumption for every duration.
    IntVector consumed(horizon, 0);
    for (Count h : out.demand.durations())
        if (h > 0)
            ++consumed[static_cast<std::size_t>(h) - 1];
    check.clearing = consumed == out.production;

    // (ii) the bundle and purchase maximize profit.
    auto revenue = [&](std::span<const Count> n) {
        Rational sum(0);
        for (std::size_t t = 0; t < horizon; ++t)
            sum += out.prices[t + 1] * n[t];
        return sum;
    };
    auto best_profit_for = [&](std::span<const Count> n) {
        const DurationVector d = detail::durations_from_production(n, total(n));
        return revenue(n) - c_da * shortfall(r, d.counts());
    };

    const Count produced = total(out.production);
    if (std::any_of(out.production.begin(), out.production.end(), [](Count n) { return n < 0; }) ||
        produced > population)
        return check;
    IntVector supply(r.begin(), r.end());
    for (std::size_t t = 0; t < horizon; ++t)
        supply[t] += out.dayahead_purchase[t];
    if (!is_adequate(supply, detail::durations_from_production(out.production, produced)))
        return check;
    const Rational claimed = revenue(out.production) - c_da * total(out.dayahead_purchase);

    bool dominated = false;
    if (horizon <= kExhaustiveProfitSlots && population <= kExhaustiveProfitConsumers)
    {
        check.exhaustive = true;
        detail::for_each_bundle(horizon, population, [&](const IntVector& n) {
            if (!dominated && best_profit_for(n) > claimed)
                dominated = true;
        });
    }
    else
    {
        IntVector n = out.production;
        for (std::size_t t = 0; t < horizon && !dominated; ++t)
        {
            for (Count step : {Count{-1}, Count{1}})
            {
                n[t] += step;
                if (n[t] >= 0 && total(n) <= population && best_profit_for(n) > claimed)
                    dominated = true;
                n[t] -= step;
            }
        }
        dominated = dominated || best_profit_for(out.production) > claimed;
    }
    check.profit = !dominated;
    return check;
}

inline bool verify_equilibrium(const EquilibriumOutcome& out, std::span<const Count> r, const UtilitySpec& u,
                               const Rational& c_da)
{
    return check_equilibrium(out, r, u, c_da).holds();
}

/// Myopic spot price at 0-based slot `slot` given free supply r_t and the holdings
/// histogram x (x[j] consumers hold j kW-slots, size slot + 1).
///
/// A consumer holding j slots bids U(j+1) - U(j). The price is the bid of the
/// marginal unserved consumer, capped at c_rt, and 0 once r_t covers everyone.
inline Rational spot_price(std::size_t slot, Count free_supply, std::span<const Count> histogram,
                           const UtilitySpec& u, const Rational& c_rt)
{
    if (histogram.size() != slot + 1 || slot >= u.horizon())
        throw InvalidInput("spot_price: histogram must have one entry per holding level 0..slot");
    detail::require_non_negative(histogram, "spot_price");
    if (free_supply < 0 || c_rt < Rational(0))
        throw InvalidInput("spot_price: negative supply or price");
    const Count population = total(histogram);
    if (population <= free_supply)
        return Rational(0);

    // Walk holding levels from the highest bidder down.
    Count cumulative = 0;
    if (u.curvature() == Curvature::ConvexIncrements)
    {
        for (std::size_t j = slot + 1; j-- > 0;)
        {
            cumulative += histogram[j];
            if (free_supply < cumulative)
                return std::min(c_rt, u.increment(j + 1));
        }
    }
    else
    {
        for (std::size_t j = 0; j <= slot; ++j)
        {
            cumulative += histogram[j];
            if (free_supply < cumulative)
                return std::min(c_rt, u.increment(j + 1));
        }
    }
    throw Error("spot_price: histogram walk did not terminate");
}

/// Spot-price overload that checks the histogram against a stated population.
inline Rational spot_price(std::size_t slot, Count free_supply, std::span<const Count> histogram, Count population,
                           const UtilitySpec& u, const Rational& c_rt)
{
    if (total(histogram) != population)
        throw InvalidInput("spot_price: histogram does not sum to the number of consumers");
    return spot_price(slot, free_supply, histogram, u, c_rt);
}

/// Runs T sequential myopic spot markets.
///
/// Consumers whose bid is at least the price want one unit (ties buy). Below c_rt
/// only free power is sold, highest bids first and then lower consumer index. At
/// price c_rt the supplier buys whatever free power does not cover.
inline SpotTrace spot_simulate(std::span<const Count> r, Count population, const UtilitySpec& u,
                               const Rational& c_rt)
{
    detail::require_market_horizon(r, u, "spot_simulate");
    if (population < 0 || c_rt < Rational(0))
        throw InvalidInput("spot_simulate: negative population or price");
    const std::size_t horizon = r.size();
    const auto n = static_cast<std::size_t>(population);

    SpotTrace trace;
    trace.purchases = Allocation(n, horizon);
    trace.holdings.assign(n, 0);
    trace.payments.assign(n, Rational(0));
    Rational purchase_cost(0);
    Rational revenue(0);

    std::vector<std::size_t> bidders;
    for (std::size_t t = 0; t < horizon; ++t)
    {
        SpotSlot slot;
        slot.free_supply = r[t];
        slot.histogram.assign(t + 1, 0);
        for (Count held : trace.holdings)
            ++slot.histogram[static_cast<std::size_t>(held)];
        slot.price = spot_price(t, r[t], slot.histogram, u, c_rt);

        bidders.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (u.increment(static_cast<std::size_t>(trace.holdings[i]) + 1) >= slot.price)
                bidders.push_back(i);
        std::stable_sort(bidders.begin(), bidders.end(), [&](std::size_t a, std::size_t b) {
            return u.increment(static_cast<std::size_t>(trace.holdings[a]) + 1) >
                   u.increment(static_cast<std::size_t>(trace.holdings[b]) + 1);
        });

        const auto wanted = static_cast<Count>(bidders.size());
        if (slot.price == c_rt)
        {
            slot.sold = wanted;
            slot.bought = std::max<Count>(0, wanted - r[t]);
        }
        else
        {
            slot.sold = std::min(wanted, r[t]);
        }
        for (Count k = 0; k < slot.sold; ++k)
        {
            const std::size_t i = bidders[static_cast<std::size_t>(k)];
            trace.purchases.set(i, t, true);
            ++trace.holdings[i];
            trace.payments[i] += slot.price;
        }
        revenue += slot.price * slot.sold;
        purchase_cost += c_rt * slot.bought;
        trace.slots.push_back(std::move(slot));
    }

    trace.utilities.reserve(n);
    Rational utility(0);
    Rational paid(0);
    for (std::size_t i = 0; i < n; ++i)
    {
        trace.utilities.push_back(u(static_cast<std::size_t>(trace.holdings[i])));
        utility += trace.utilities.back();
        paid += trace.payments[i];
    }
    trace.consumer_surplus = utility - paid;
    trace.supplier_profit = revenue - purchase_cost;
    trace.welfare = utility - purchase_cost;
    return trace;
}

/// Forward-market welfare minus spot-market welfare with c_da = c_rt = price.
inline EfficiencyGap efficiency_gap(std::span<const Count> r, Count population, const UtilitySpec& u,
                                    const Rational& price)
{
    EfficiencyGap out;
    out.forward = social_welfare_optimum(r, population, u, price).welfare;
    out.spot = spot_simulate(r, population, u, price).welfare;
    out.gap = out.forward - out.spot;
    return out;
}

} // namespace ddl

#endif // DDL_MARKET_HPP
