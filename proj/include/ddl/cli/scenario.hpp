#ifndef DDL_CLI_SCENARIO_HPP
#define DDL_CLI_SCENARIO_HPP

// JSON scenario files. Every field is optional at parse time; each subcommand
// asks for the fields it needs through the require_* accessors.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ddl/dayahead.hpp"
#include "ddl/demand.hpp"
#include "ddl/errors.hpp"
#include "ddl/market.hpp"
#include "ddl/rate.hpp"
#include "ddl/types.hpp"

namespace ddl::cli
{

using Json = nlohmann::json;

/// A load is either a unit-rate duration or a rate-limited energy request.
using LoadEntry = std::variant<Count, RateSpec>;

struct ScenarioFile
{
    std::optional<std::size_t> horizon;
    std::optional<std::vector<LoadEntry>> loads;
    std::optional<SupplyProfile> supply;
    std::optional<std::vector<Scenario>> scenarios;
    std::optional<Rational> day_ahead_price;
    std::optional<Rational> real_time_price;
    std::optional<UtilitySpec> utility;
    std::optional<Count> consumers;
    std::optional<std::uint64_t> seed;
    std::optional<Count> y_cap;

    [[nodiscard]] std::size_t require_horizon() const;
    [[nodiscard]] const std::vector<LoadEntry>& require_loads() const;
    [[nodiscard]] const SupplyProfile& require_supply() const;
    [[nodiscard]] const Rational& require_day_ahead() const;
    [[nodiscard]] const Rational& require_real_time() const;
    [[nodiscard]] const UtilitySpec& require_utility() const;
    [[nodiscard]] Count require_consumers() const;

    /// Unit-rate demand profile. Rate-limited loads are expanded into their unit
    /// equivalents after the plain durations, in file order.
    [[nodiscard]] DemandProfile unit_profile() const;

    /// "scenarios" when present, otherwise the certain distribution on "supply".
    [[nodiscard]] ScenarioDistribution distribution() const;
};

namespace detail
{

inline Rational parse_decimal(const std::string& text, const std::string& field)
{
    // [-]digits[.digits], exact.
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+'))
        negative = text[pos++] == '-';
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool digits = false;
    bool fraction = false;
    for (; pos < text.size(); ++pos)
    {
        const char ch = text[pos];
        if (ch == '.' && !fraction)
        {
            fraction = true;
            continue;
        }
        if (ch < '0' || ch > '9' || num > (INT64_MAX - 9) / 10 || den > INT64_MAX / 10)
            throw InvalidInput(field + ": cannot read \"" + text + "\" as an exact number");
        num = num * 10 + (ch - '0');
        if (fraction)
            den *= 10;
        digits = true;
    }
    if (!digits)
        throw InvalidInput(field + ": cannot read \"" + text + "\" as an exact number");
    return Rational(negative ? -num : num, den);
}

/// Integer, "p/q" or decimal string, or a JSON number. Floating-point numbers go
/// through their shortest round-trip decimal form, so 10.5 and 0.1 are exact.
inline Rational parse_rational(const Json& j, const std::string& field)
{
    if (j.is_number_integer())
        return Rational(j.get<std::int64_t>());
    if (j.is_number_float())
    {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, j.get<double>());
        const std::string text(buf, res.ptr);
        if (text.find_first_of("eE") != std::string::npos)
            throw InvalidInput(field + ": exponent notation is not accepted, use \"p/q\"");
        return parse_decimal(text, field);
    }
    if (j.is_string())
    {
        const std::string text = j.get<std::string>();
        const std::size_t slash = text.find('/');
        if (slash == std::string::npos)
            return parse_decimal(text, field);
        const Rational p = parse_decimal(text.substr(0, slash), field);
        const Rational q = parse_decimal(text.substr(slash + 1), field);
        if (q == Rational(0))
            throw InvalidInput(field + ": zero denominator");
        return p / q;
    }
    throw InvalidInput(field + ": expected a number or a \"p/q\" string");
}

inline Count parse_count(const Json& j, const std::string& field)
{
    if (!j.is_number_integer())
        throw InvalidInput(field + ": expected an integer");
    const auto v = j.get<std::int64_t>();
    if (v < 0)
        throw InvalidInput(field + ": must be non-negative");
    return v;
}

inline IntVector parse_counts(const Json& j, const std::string& field)
{
    if (!j.is_array())
        throw InvalidInput(field + ": expected an array of integers");
    IntVector out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_count(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

inline void require_horizon_match(std::size_t size, std::size_t horizon, const std::string& field)
{
    if (size != horizon)
        throw InvalidInput(field + ": length " + std::to_string(size) + " does not match horizon " +
                           std::to_string(horizon));
}

template <class T>
const T& require(const std::optional<T>& v, const char* field)
{
    if (!v)
        throw InvalidInput(std::string("scenario: missing required field \"") + field + "\"");
    return *v;
}

} // namespace detail

inline ScenarioFile parse_scenario(const Json& root)
{
    using namespace detail;
    if (!root.is_object())
        throw InvalidInput("scenario: top level must be an object");

    static const char* const known[] = {"horizon", "loads",     "supply",  "scenarios", "prices",
                                        "utility", "consumers", "seed",    "y_cap",     "description"};
    for (const auto& item : root.items())
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return item.key() == k; }) ==
            std::end(known))
            throw InvalidInput("scenario: unknown field \"" + item.key() + "\"");

    ScenarioFile s;
    if (root.contains("horizon"))
    {
        s.horizon = static_cast<std::size_t>(parse_count(root["horizon"], "horizon"));
        if (*s.horizon == 0)
            throw InvalidInput("horizon: must be at least 1");
    }
    const auto horizon_for = [&](const char* field) -> std::size_t {
        if (!s.horizon)
            throw InvalidInput(std::string(field) + ": requires \"horizon\"");
        return *s.horizon;
    };

    if (root.contains("loads"))
    {
        const Json& loads = root["loads"];
        if (!loads.is_array())
            throw InvalidInput("loads: expected an array");
        const std::size_t horizon = horizon_for("loads");
        std::vector<LoadEntry> entries;
        for (std::size_t i = 0; i < loads.size(); ++i)
        {
            const std::string field = "loads[" + std::to_string(i) + "]";
            const Json& item = loads[i];
            if (item.is_object())
            {
                if (!item.contains("energy") || !item.contains("max_rate") || item.size() != 2)
                    throw InvalidInput(field + ": rate-limited load needs exactly \"energy\" and \"max_rate\"");
                RateSpec spec{parse_count(item["energy"], field + ".energy"),
                              parse_count(item["max_rate"], field + ".max_rate"), horizon};
                entries.emplace_back(spec);
            }
            else
            {
                const Count h = parse_count(item, field);
                if (h > static_cast<Count>(horizon))
                    throw InvalidInput(field + ": duration exceeds horizon");
                entries.emplace_back(h);
            }
        }
        s.loads = std::move(entries);
    }

    if (root.contains("supply"))
    {
        s.supply = parse_counts(root["supply"], "supply");
        require_horizon_match(s.supply->size(), horizon_for("supply"), "supply");
    }

    if (root.contains("scenarios"))
    {
        const Json& list = root["scenarios"];
        if (!list.is_array())
            throw InvalidInput("scenarios: expected an array");
        const std::size_t horizon = horizon_for("scenarios");
        std::vector<Scenario> out;
        for (std::size_t i = 0; i < list.size(); ++i)
        {
            const std::string field = "scenarios[" + std::to_string(i) + "]";
            const Json& item = list[i];
            if (!item.is_object() || !item.contains("supply") || !item.contains("probability"))
                throw InvalidInput(field + ": needs \"supply\" and \"probability\"");
            Scenario sc{parse_counts(item["supply"], field + ".supply"),
                        parse_rational(item["probability"], field + ".probability")};
            require_horizon_match(sc.supply.size(), horizon, field + ".supply");
            out.push_back(std::move(sc));
        }
        // Validates masses now rather than at first use.
        (void)ScenarioDistribution(out, horizon);
        s.scenarios = std::move(out);
    }

    if (root.contains("prices"))
    {
        const Json& prices = root["prices"];
        if (!prices.is_object())
            throw InvalidInput("prices: expected an object");
        for (const auto& item : prices.items())
            if (item.key() != "day_ahead" && item.key() != "real_time")
                throw InvalidInput("prices: unknown field \"" + item.key() + "\"");
        if (prices.contains("day_ahead"))
            s.day_ahead_price = parse_rational(prices["day_ahead"], "prices.day_ahead");
        if (prices.contains("real_time"))
            s.real_time_price = parse_rational(prices["real_time"], "prices.real_time");
        for (const auto* p : {&s.day_ahead_price, &s.real_time_price})
            if (*p && **p < Rational(0))
                throw InvalidInput("prices: must be non-negative");
    }

    if (root.contains("utility"))
    {
        const Json& u = root["utility"];
        if (!u.is_object() || !u.contains("values") || !u.contains("curvature") || !u["values"].is_array())
            throw InvalidInput("utility: needs \"values\" (array) and \"curvature\"");
        std::vector<Rational> values;
        for (std::size_t i = 0; i < u["values"].size(); ++i)
            values.push_back(parse_rational(u["values"][i], "utility.values[" + std::to_string(i) + "]"));
        require_horizon_match(values.size(), horizon_for("utility") + 1, "utility.values");
        const Json& c = u["curvature"];
        Curvature curvature;
        if (c == "convex")
            curvature = Curvature::ConvexIncrements;
        else if (c == "concave")
            curvature = Curvature::ConcaveIncrements;
        else
            throw InvalidInput("utility.curvature: expected \"convex\" or \"concave\"");
        s.utility = UtilitySpec(std::move(values), curvature);
    }

    if (root.contains("consumers"))
        s.consumers = parse_count(root["consumers"], "consumers");
    if (root.contains("seed"))
    {
        if (!root["seed"].is_number_unsigned())
            throw InvalidInput("seed: expected a non-negative integer");
        s.seed = root["seed"].get<std::uint64_t>();
    }
    if (root.contains("y_cap"))
        s.y_cap = parse_count(root["y_cap"], "y_cap");
    if (root.contains("description") && !root["description"].is_string())
        throw InvalidInput("description: expected a string");
    return s;
}

inline ScenarioFile parse_scenario_text(const std::string& text)
{
    Json root;
    try
    {
        root = Json::parse(text);
    }
    catch (const Json::parse_error& e)
    {
        throw InvalidInput(std::string("scenario: malformed JSON: ") + e.what());
    }
    return parse_scenario(root);
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidInput("scenario: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::size_t ScenarioFile::require_horizon() const { return detail::require(horizon, "horizon"); }
inline const std::vector<LoadEntry>& ScenarioFile::require_loads() const { return detail::require(loads, "loads"); }
inline const SupplyProfile& ScenarioFile::require_supply() const { return detail::require(supply, "supply"); }
inline const Rational& ScenarioFile::require_day_ahead() const
{
    return detail::require(day_ahead_price, "prices.day_ahead");
}
inline const Rational& ScenarioFile::require_real_time() const
{
    return detail::require(real_time_price, "prices.real_time");
}
inline const UtilitySpec& ScenarioFile::require_utility() const { return detail::require(utility, "utility"); }
inline Count ScenarioFile::require_consumers() const { return detail::require(consumers, "consumers"); }

inline DemandProfile ScenarioFile::unit_profile() const
{
    const std::size_t T = require_horizon();
    IntVector durations;
    std::vector<RateSpec> rated;
    for (const LoadEntry& e : require_loads())
    {
        if (const Count* h = std::get_if<Count>(&e))
            durations.push_back(*h);
        else
            rated.push_back(std::get<RateSpec>(e));
    }
    for (const RateSpec& spec : rated)
    {
        const DemandProfile parts = decompose(spec);
        durations.insert(durations.end(), parts.durations().begin(), parts.durations().end());
    }
    return DemandProfile(std::move(durations), T);
}

inline ScenarioDistribution ScenarioFile::distribution() const
{
    if (scenarios)
        return ScenarioDistribution(*scenarios, require_horizon());
    if (supply)
        return ScenarioDistribution::certain(*supply);
    throw InvalidInput("scenario: missing required field \"scenarios\" (or \"supply\")");
}

} // namespace ddl::cli

#endif // DDL_CLI_SCENARIO_HPP
