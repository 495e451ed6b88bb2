#ifndef DDL_CLI_RUN_HPP
#define DDL_CLI_RUN_HPP

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "ddl/cli/report.hpp"
#include "ddl/cli/scenario.hpp"
#include "ddl/version.hpp"

namespace ddl::cli
{

enum class ExitCode : int
{
    Ok = 0,
    InvalidInput = 1,
    Infeasible = 2,
};

enum class Format
{
    Json,
    Csv,
};

struct Options
{
    std::string command;
    std::optional<std::uint64_t> seed;
    Format format = Format::Json;
    std::optional<std::string> plot_path;
};

struct Outcome
{
    ExitCode code = ExitCode::Ok;
    std::string output;            // what goes to standard output
    std::optional<std::string> plot; // CSV body for --emit-plot-data
};

inline std::string sha256_hex(const std::string& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw Error("sha256: digest failed");
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i)
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return hex.str();
}

inline std::string to_csv(const Table& t)
{
    std::string out;
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out += (i ? "," : "") + cells[i];
        out += '\n';
    };
    line(t.header);
    for (const auto& row : t.rows)
        line(row);
    return out;
}

namespace detail
{

inline Json error_object(const std::string& command, const char* kind, const std::string& message)
{
    return {{"command", command}, {"version", kVersion}, {"error", {{"kind", kind}, {"message", message}}}};
}

inline std::string render(const Json& j) { return j.dump(2) + "\n"; }

} // namespace detail

/// Runs one subcommand on the raw scenario text. Never throws for bad input;
/// validation and infeasibility come back as exit codes with an error object.
inline Outcome execute(const Options& opts, const std::string& scenario_text)
{
    Outcome out;
    try
    {
        const auto& table = builders();
        const auto builder = table.find(opts.command);
        if (builder == table.end())
            throw InvalidInput("unknown subcommand \"" + opts.command + "\"");

        const ScenarioFile scenario = parse_scenario_text(scenario_text);
        const std::uint64_t seed = opts.seed.value_or(scenario.seed.value_or(0));
        Report report = builder->second(scenario, seed);

        report.body["command"] = opts.command;
        report.body["version"] = kVersion;
        report.body["input_digest"] = "sha256:" + sha256_hex(scenario_text);
        report.body["seed"] = seed;

        out.output = opts.format == Format::Csv ? to_csv(report.table) : detail::render(report.body);
        if (!report.plot.empty())
            out.plot = to_csv(report.plot);
    }
    catch (const InadequateSupply& e)
    {
        Json err = detail::error_object(opts.command, "inadequate_supply", e.what());
        err["error"]["first_violated_tail"] = e.tail_index() + 1;
        out.code = ExitCode::Infeasible;
        out.output = detail::render(err);
    }
    catch (const Infeasible& e)
    {
        out.code = ExitCode::Infeasible;
        out.output = detail::render(detail::error_object(opts.command, "infeasible", e.what()));
    }
    catch (const InvalidInput& e)
    {
        out.code = ExitCode::InvalidInput;
        out.output = detail::render(detail::error_object(opts.command, "invalid_input", e.what()));
    }
    catch (const Json::exception& e)
    {
        out.code = ExitCode::InvalidInput;
        out.output = detail::render(detail::error_object(opts.command, "invalid_input", e.what()));
    }
    return out;
}

/// Full command line: parses flags, reads the scenario, writes the report and
/// the optional plot file. Returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Scheduling and market analysis for duration-differentiated loads", "ddl"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string scenario_path;
    std::string plot_path;
    std::uint64_t seed = 0;
    std::string format = "json";

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
        sub->add_option("--emit-plot-data", plot_path, "Write CSV series for plotting to this path");
        sub->add_option("--seed", seed, "Seed for randomized diagnostics (overrides the scenario seed)");
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    };
    const std::map<std::string, std::string> descriptions{
        {"adequacy", "Adequacy verdict and first violated tail"},
        {"allocate", "Least-laxity-first allocation matrix"},
        {"procure", "Optimal real-time purchases: closed form, oracle and causal plans"},
        {"dayahead", "Day-ahead purchase minimizing expected two-stage cost"},
        {"welfare", "Social-welfare optimal demand and purchase"},
        {"equilibrium", "Competitive equilibrium prices and production with verification"},
        {"spot", "Slot-by-slot spot market trace"},
        {"compare", "Forward versus spot welfare"},
        {"decompose", "Unit-rate equivalents of rate-limited loads"},
    };
    for (const auto& [name, text] : descriptions)
        add_common(app.add_subcommand(name, text));

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForVersion& e)
    {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError& e)
    {
        out << detail::render(detail::error_object("", "invalid_input", e.what()));
        return static_cast<int>(ExitCode::InvalidInput);
    }

    Options opts;
    opts.command = app.get_subcommands().front()->get_name();
    if (app.get_subcommands().front()->count("--seed"))
        opts.seed = seed;
    opts.format = format == "csv" ? Format::Csv : Format::Json;

    std::string text;
    try
    {
        text = read_file(scenario_path);
    }
    catch (const InvalidInput& e)
    {
        out << detail::render(detail::error_object(opts.command, "invalid_input", e.what()));
        return static_cast<int>(ExitCode::InvalidInput);
    }

    const Outcome result = execute(opts, text);
    out << result.output;
    if (result.code == ExitCode::Ok && !plot_path.empty())
    {
        std::ofstream plot(plot_path, std::ios::binary);
        if (!plot || !(plot << result.plot.value_or("")))
        {
            err << "ddl: cannot write plot data to " << plot_path << "\n";
            return static_cast<int>(ExitCode::InvalidInput);
        }
    }
    return static_cast<int>(result.code);
}

} // namespace ddl::cli

#endif // DDL_CLI_RUN_HPP
