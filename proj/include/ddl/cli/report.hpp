#ifndef DDL_CLI_REPORT_HPP
#define DDL_CLI_REPORT_HPP

// One builder per subcommand. Each returns the JSON body, a flat table for
// --format csv, and the series written by --emit-plot-data.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ddl/cli/scenario.hpp"
#include "ddl/ddl.hpp"

namespace ddl::cli
{

struct Table
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] bool empty() const noexcept { return header.empty(); }
};

struct Report
{
    Json body = Json::object();
    Table table;
    Table plot;
};

/// Integral values become JSON numbers, the rest "p/q" strings.
inline Json to_json(const Rational& q)
{
    if (q.denominator() == 1)
        return q.numerator();
    return to_string(q);
}

inline Json to_json(const std::vector<Rational>& v)
{
    Json out = Json::array();
    for (const Rational& q : v)
        out.push_back(to_json(q));
    return out;
}

inline Json to_json(const Allocation& a)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.loads(); ++i)
    {
        Json row = Json::array();
        for (std::uint8_t cell : a.row(i))
            row.push_back(static_cast<int>(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace detail
{

inline std::string str(Count v) { return std::to_string(v); }
inline std::string str(const Rational& q) { return to_string(q); }

/// Duration curves: sorted demand-duration and supply-duration vectors with tail sums.
inline Table duration_curves(const IntVector& d, const IntVector& p)
{
    const IntVector p_desc = sort_desc(p);
    const IntVector d_tail = tail_sums(d);
    const IntVector p_tail = tail_sums(p_desc);
    Table t{{"t", "demand_duration", "supply_duration", "demand_tail", "supply_tail"}, {}};
    for (std::size_t s = 0; s < d.size(); ++s)
        t.rows.push_back({str(static_cast<Count>(s + 1)), str(d[s]), str(p_desc[s]), str(d_tail[s]), str(p_tail[s])});
    return t;
}

inline Table per_slot(const std::vector<std::pair<std::string, IntVector>>& columns)
{
    Table t;
    t.header.push_back("t");
    for (const auto& [name, values] : columns)
        t.header.push_back(name);
    const std::size_t n = columns.empty() ? 0 : columns.front().second.size();
    for (std::size_t s = 0; s < n; ++s)
    {
        std::vector<std::string> row{str(static_cast<Count>(s + 1))};
        for (const auto& col : columns)
            row.push_back(str(col.second[s]));
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline IntVector subtract(const IntVector& a, const IntVector& b)
{
    IntVector out(a.size());
    for (std::size_t t = 0; t < a.size(); ++t)
        out[t] = a[t] - b[t];
    return out;
}

inline IntVector add(const IntVector& a, const IntVector& b)
{
    IntVector out(a.size());
    for (std::size_t t = 0; t < a.size(); ++t)
        out[t] = a[t] + b[t];
    return out;
}

inline Json largest_k_note()
{
    return "concave utilities: k* is the largest k with U(k) - U(k-1) >= c_da";
}

} // namespace detail

inline Report report_adequacy(const ScenarioFile& s, std::uint64_t)
{
    const DemandProfile h = s.unit_profile();
    const SupplyProfile& p = s.require_supply();
    const DurationVector d = duration_vector(h);
    const auto violated = first_violated_tail(d.counts(), p);

    Report r;
    r.body["adequate"] = !violated.has_value();
    r.body["exact"] = is_exactly_adequate(p, d);
    r.body["first_violated_tail"] = violated ? Json(*violated + 1) : Json(nullptr);
    r.body["demand_duration"] = d.counts();
    r.body["supply_duration"] = sort_desc(p);
    r.body["demand_energy"] = d.energy();
    r.body["supply_energy"] = total(p);
    r.table = detail::duration_curves(d.counts(), p);
    r.plot = r.table;
    return r;
}

inline Report report_allocate(const ScenarioFile& s, std::uint64_t)
{
    const DemandProfile h = s.unit_profile();
    const SupplyProfile& p = s.require_supply();
    const Allocation a = llf_allocate(p, h);

    Report r;
    r.body["durations"] = h.durations();
    r.body["allocation"] = to_json(a);
    r.body["verified"] = verify_allocation(a, p, h);
    const IntVector used = a.column_sums();
    r.body["served"] = used;
    r.body["surplus"] = detail::subtract(p, used);
    Json gaps = Json::array();
    for (std::size_t i = 0; i < a.loads(); ++i)
        gaps.push_back(interruptions(a, i));
    r.body["interruptions"] = gaps;
    r.body["supply_local_minima"] = local_minima(p);

    // Rate-limited loads occupy the trailing unit rows, in file order.
    Json rated = Json::array();
    std::size_t next = 0;
    for (const LoadEntry& e : s.require_loads())
        if (std::holds_alternative<Count>(e))
            ++next;
    for (const LoadEntry& e : s.require_loads())
    {
        const RateSpec* spec = std::get_if<RateSpec>(&e);
        if (!spec)
            continue;
        const std::size_t rows = decompose(*spec).size();
        Allocation part(rows, p.size());
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t t = 0; t < p.size(); ++t)
                part.set(i, t, a.at(next + i, t));
        next += rows;
        rated.push_back({{"energy", spec->energy},
                         {"max_rate", spec->max_rate},
                         {"unit_rows", rows},
                         {"power", compose_allocation(part, *spec)}});
    }
    r.body["rate_loads"] = rated;

    r.table.header = {"load", "duration"};
    for (std::size_t t = 0; t < p.size(); ++t)
        r.table.header.push_back("slot_" + std::to_string(t + 1));
    r.table.header.push_back("interruptions");
    for (std::size_t i = 0; i < a.loads(); ++i)
    {
        std::vector<std::string> row{std::to_string(i + 1), detail::str(h[i])};
        for (std::uint8_t cell : a.row(i))
            row.push_back(cell ? "1" : "0");
        row.push_back(detail::str(interruptions(a, i)));
        r.table.rows.push_back(std::move(row));
    }
    r.plot = detail::per_slot({{"supply", p}, {"served", used}});
    return r;
}

inline Report report_procure(const ScenarioFile& s, std::uint64_t)
{
    const DemandProfile h = s.unit_profile();
    const DurationVector d = duration_vector(h);
    const SupplyProfile& p = s.require_supply();
    const Rational& c = s.require_real_time();

    const Rational closed = optimal_supplement_cost(p, d, c);
    const PurchasePlan oracle = oracle_purchase(p, d, c);
    const RuntimePurchase runtime = runtime_purchase(d, p, c);

    Report r;
    r.body["price"] = to_json(c);
    r.body["shortfall"] = shortfall(p, d.counts());
    r.body["closed_form_cost"] = to_json(closed);
    r.body["oracle"] = {{"purchases", oracle.purchases}, {"cost", to_json(oracle.total_cost)}};
    r.body["runtime"] = {{"purchases", runtime.plan.purchases},
                         {"cost", to_json(runtime.plan.total_cost)},
                         {"allocation", to_json(runtime.allocation)}};
    r.body["costs_agree"] = closed == oracle.total_cost && closed == runtime.plan.total_cost;
    r.table = detail::per_slot({{"supply", p}, {"oracle", oracle.purchases}, {"runtime", runtime.plan.purchases}});
    r.plot = detail::duration_curves(d.counts(), detail::add(p, runtime.plan.purchases));
    return r;
}

/// Trials used by the convexity probe attached to dayahead reports.
inline constexpr std::size_t kReportProbeTrials = 200;

inline Report report_dayahead(const ScenarioFile& s, std::uint64_t seed)
{
    const DemandProfile h = s.unit_profile();
    const DurationVector d = duration_vector(h);
    const ScenarioDistribution dist = s.distribution();
    const TwoStagePrices prices{s.require_day_ahead(), s.require_real_time()};
    const DayAheadResult best = minimize_dayahead(d, dist, prices, s.y_cap.value_or(-1));

    std::mt19937_64 rng(seed);
    const bool convex = convexity_probe(d, dist, prices, static_cast<double>(std::max<Count>(best.cap, 1)),
                                        kReportProbeTrials, rng);

    Report r;
    r.body["purchase"] = best.purchase;
    r.body["expected_cost"] = to_json(best.cost);
    r.body["cost_without_purchase"] = to_json(expected_cost(IntVector(d.horizon(), 0), d, dist, prices));
    r.body["cap"] = best.cap;
    r.body["touches_cap"] = best.touches_cap;
    r.body["exhaustive"] = best.exhaustive;
    r.body["convexity_probe"] = {{"trials", kReportProbeTrials}, {"tolerance", kConvexityTolerance}, {"passed", convex}};
    r.table = detail::per_slot({{"purchase", best.purchase}});
    r.plot = r.table;
    return r;
}

inline Report report_welfare(const ScenarioFile& s, std::uint64_t)
{
    const SupplyProfile& free = s.require_supply();
    const UtilitySpec& u = s.require_utility();
    const Rational& c = s.require_day_ahead();
    const WelfareOptimum opt = social_welfare_optimum(free, s.require_consumers(), u, c);

    Report r;
    r.body["curvature"] = to_string(u.curvature());
    r.body["k_star"] = opt.k_star;
    r.body["demand_duration"] = opt.demand.counts();
    r.body["durations"] = opt.profile.durations();
    r.body["purchase"] = opt.purchase;
    r.body["welfare"] = to_json(opt.welfare);
    if (u.curvature() == Curvature::ConcaveIncrements)
        r.body["notes"] = Json::array({detail::largest_k_note()});
    r.table = detail::per_slot({{"free_supply_sorted", sort_desc(free)},
                                {"demand_duration", opt.demand.counts()},
                                {"purchase", opt.purchase}});
    r.plot = detail::duration_curves(opt.demand.counts(), detail::add(free, opt.purchase));
    return r;
}

inline Report report_equilibrium(const ScenarioFile& s, std::uint64_t)
{
    const SupplyProfile& free = s.require_supply();
    const UtilitySpec& u = s.require_utility();
    const Rational& c = s.require_day_ahead();
    const EquilibriumOutcome eq = equilibrium(free, s.require_consumers(), u, c);
    const EquilibriumCheck check = check_equilibrium(eq, free, u, c);

    Report r;
    r.body["curvature"] = to_string(eq.curvature);
    r.body["k_star"] = eq.k_star;
    r.body["prices"] = to_json(eq.prices);
    r.body["production"] = eq.production;
    r.body["durations"] = eq.demand.durations();
    r.body["dayahead_purchase"] = eq.dayahead_purchase;
    r.body["welfare"] = to_json(welfare(eq.demand, eq.dayahead_purchase, free, u, c));
    r.body["verification"] = {{"consumer_surplus", check.consumer_surplus},
                              {"profit", check.profit},
                              {"clearing", check.clearing},
                              {"profit_search", check.exhaustive ? "exhaustive" : "unit_perturbation"},
                              {"holds", check.holds()}};
    if (u.curvature() == Curvature::ConcaveIncrements)
        r.body["notes"] = Json::array({detail::largest_k_note()});

    r.table.header = {"duration", "price", "utility", "production"};
    for (std::size_t k = 1; k <= u.horizon(); ++k)
        r.table.rows.push_back(
            {std::to_string(k), detail::str(eq.prices[k]), detail::str(u(k)), detail::str(eq.production[k - 1])});
    r.plot = r.table;
    return r;
}

inline Report report_spot(const ScenarioFile& s, std::uint64_t)
{
    const SupplyProfile& free = s.require_supply();
    const UtilitySpec& u = s.require_utility();
    const SpotTrace trace = spot_simulate(free, s.require_consumers(), u, s.require_real_time());

    Report r;
    Json slots = Json::array();
    r.table.header = {"t", "price", "free_supply", "sold", "bought"};
    for (std::size_t t = 0; t < trace.slots.size(); ++t)
    {
        const SpotSlot& slot = trace.slots[t];
        slots.push_back({{"slot", t + 1},
                         {"price", to_json(slot.price)},
                         {"free_supply", slot.free_supply},
                         {"sold", slot.sold},
                         {"bought", slot.bought}});
        r.table.rows.push_back({std::to_string(t + 1), detail::str(slot.price), detail::str(slot.free_supply),
                                detail::str(slot.sold), detail::str(slot.bought)});
    }
    r.body["slots"] = slots;
    r.body["holdings"] = trace.holdings;
    r.body["payments"] = to_json(trace.payments);
    r.body["consumer_surplus"] = to_json(trace.consumer_surplus);
    r.body["supplier_profit"] = to_json(trace.supplier_profit);
    r.body["welfare"] = to_json(trace.welfare);
    r.plot = r.table;
    return r;
}

inline Report report_compare(const ScenarioFile& s, std::uint64_t)
{
    const auto& da = s.day_ahead_price;
    const auto& rt = s.real_time_price;
    if (!da && !rt)
        throw InvalidInput("scenario: missing required field \"prices.day_ahead\"");
    if (da && rt && *da != *rt)
        throw InvalidInput("compare: day_ahead and real_time prices must be equal");
    const Rational price = da ? *da : *rt;
    const EfficiencyGap gap = efficiency_gap(s.require_supply(), s.require_consumers(), s.require_utility(), price);

    Report r;
    r.body["price"] = to_json(price);
    r.body["forward"] = to_json(gap.forward);
    r.body["spot"] = to_json(gap.spot);
    r.body["gap"] = to_json(gap.gap);
    r.table = {{"forward", "spot", "gap"}, {{detail::str(gap.forward), detail::str(gap.spot), detail::str(gap.gap)}}};
    r.plot = r.table;
    return r;
}

inline Report report_decompose(const ScenarioFile& s, std::uint64_t)
{
    const std::size_t horizon = s.require_horizon();
    Report r;
    Json loads = Json::array();
    r.table.header = {"load", "energy", "max_rate", "unit_durations"};
    std::size_t index = 0;
    for (const LoadEntry& e : s.require_loads())
    {
        ++index;
        RateSpec spec = std::holds_alternative<Count>(e) ? RateSpec{std::get<Count>(e), 1, horizon}
                                                         : std::get<RateSpec>(e);
        const DemandProfile parts = decompose(spec);
        loads.push_back({{"energy", spec.energy}, {"max_rate", spec.max_rate}, {"unit_durations", parts.durations()}});
        std::string joined;
        for (Count v : parts.durations())
            joined += (joined.empty() ? "" : " ") + std::to_string(v);
        r.table.rows.push_back(
            {std::to_string(index), detail::str(spec.energy), detail::str(spec.max_rate), joined});
    }
    const DemandProfile unit = s.unit_profile();
    r.body["loads"] = loads;
    r.body["unit_profile"] = unit.durations();
    r.body["demand_duration"] = duration_vector(unit).counts();
    if (s.supply)
    {
        r.body["adequate"] = is_adequate(*s.supply, duration_vector(unit));
        r.plot = detail::duration_curves(duration_vector(unit).counts(), *s.supply);
    }
    return r;
}

using ReportBuilder = std::function<Report(const ScenarioFile&, std::uint64_t)>;

inline const std::map<std::string, ReportBuilder>& builders()
{
    static const std::map<std::string, ReportBuilder> table{
        {"adequacy", report_adequacy}, {"allocate", report_allocate},       {"procure", report_procure},
        {"dayahead", report_dayahead}, {"welfare", report_welfare},         {"equilibrium", report_equilibrium},
        {"spot", report_spot},         {"compare", report_compare},         {"decompose", report_decompose},
    };
    return table;
}

} // namespace ddl::cli

#endif // DDL_CLI_REPORT_HPP
