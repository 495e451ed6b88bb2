#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "ddl/cli/run.hpp"

using namespace ddl;
using namespace ddl::cli;

namespace
{

const std::filesystem::path kScenarios = DDL_SCENARIO_DIR;

struct Golden
{
    std::string command;
    std::string scenario;
    int exit_code;
};

std::vector<Golden> load_manifest()
{
    std::ifstream in(kScenarios / "paper" / "goldens.txt");
    std::vector<Golden> out;
    std::string line;
    while (std::getline(in, line))
    {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream fields(line);
        Golden g;
        fields >> g.command >> g.scenario >> g.exit_code;
        out.push_back(g);
    }
    return out;
}

Outcome run_text(const std::string& command, const std::string& text)
{
    Options opts;
    opts.command = command;
    return execute(opts, text);
}

struct Invocation
{
    int code;
    std::string out;
};

Invocation invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "ddl");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str()};
}

} // namespace

TEST(Goldens, EveryScenarioReproducesItsReport)
{
    const auto manifest = load_manifest();
    ASSERT_GE(manifest.size(), 10u);
    for (const Golden& g : manifest)
    {
        const auto dir = kScenarios / "paper";
        const Outcome out = run_text(g.command, read_file((dir / (g.scenario + ".json")).string()));
        EXPECT_EQ(static_cast<int>(out.code), g.exit_code) << g.command << " " << g.scenario;
        EXPECT_EQ(out.output, read_file((dir / "expected" / (g.scenario + "." + g.command + ".json")).string()))
            << g.command << " " << g.scenario;
    }
}

TEST(Goldens, KeyValues)
{
    const auto dir = kScenarios / "paper";
    const Json adequacy = Json::parse(run_text("adequacy", read_file((dir / "five_loads_adequate.json").string())).output);
    EXPECT_EQ(adequacy["adequate"], true);
    EXPECT_EQ(adequacy["exact"], true);

    const Json gap = Json::parse(run_text("compare", read_file((dir / "spot_gap_convex.json").string())).output);
    EXPECT_EQ(gap["forward"], 2);
    EXPECT_EQ(gap["spot"], 0);
    EXPECT_EQ(gap["gap"], 2);

    const Json empty = Json::parse(run_text("allocate", read_file((dir / "empty_loads.json").string())).output);
    EXPECT_TRUE(empty["allocation"].empty());
}

TEST(Run, DeterministicAcrossRuns)
{
    const std::string path = (kScenarios / "paper" / "dayahead_toy.json").string();
    const Invocation a = invoke({"dayahead", "--scenario", path, "--seed", "11"});
    const Invocation b = invoke({"dayahead", "--scenario", path, "--seed", "11"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(Json::parse(a.out)["seed"], 11);
}

TEST(Run, CsvAndPlotData)
{
    const std::string path = (kScenarios / "paper" / "five_loads_adequate.json").string();
    const Invocation csv = invoke({"adequacy", "--scenario", path, "--format", "csv"});
    EXPECT_EQ(csv.code, 0);
    EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "t,demand_duration,supply_duration,demand_tail,supply_tail");

    const auto plot = std::filesystem::temp_directory_path() / "ddl_cli_test_plot.csv";
    std::filesystem::remove(plot);
    EXPECT_EQ(invoke({"procure", "--scenario", path, "--emit-plot-data", plot.string()}).code, 0);
    const std::string series = read_file(plot.string());
    EXPECT_EQ(std::count(series.begin(), series.end(), '\n'), 7);
    std::filesystem::remove(plot);
}

TEST(Run, ExitCodes)
{
    EXPECT_EQ(invoke({"adequacy", "--scenario", "/nonexistent/scenario.json"}).code, 1);
    EXPECT_EQ(invoke({"adequacy"}).code, 1);
    EXPECT_EQ(invoke({"frobnicate", "--scenario", "x.json"}).code, 1);
    const std::string path = (kScenarios / "paper" / "five_loads_adequate.json").string();
    EXPECT_EQ(invoke({"adequacy", "--scenario", path, "--format", "xml"}).code, 1);
    EXPECT_EQ(invoke({"--help"}).code, 0);

    const Invocation infeasible =
        invoke({"decompose", "--scenario", (kScenarios / "paper" / "rate_infeasible.json").string()});
    EXPECT_EQ(infeasible.code, 2);
    EXPECT_EQ(Json::parse(infeasible.out)["error"]["kind"], "infeasible");
}

TEST(Execute, ValidationErrorsAreObjects)
{
    const auto expect_invalid = [](const std::string& command, const std::string& text) {
        const Outcome out = run_text(command, text);
        EXPECT_EQ(out.code, ExitCode::InvalidInput) << text;
        const Json err = Json::parse(out.output);
        EXPECT_EQ(err["error"]["kind"], "invalid_input") << text;
        EXPECT_TRUE(err["error"]["message"].is_string());
    };
    expect_invalid("adequacy", "{not json");
    expect_invalid("adequacy", R"({"horizon": 2, "loads": [1]})");
    expect_invalid("adequacy", R"({"horizon": 2, "loads": [3], "supply": [1, 1]})");
    expect_invalid("adequacy", R"({"horizon": 2, "loads": [1], "supply": [1]})");
    expect_invalid("adequacy", R"({"horizon": 2, "loads": [1], "supply": [1, -1]})");
    expect_invalid("adequacy", R"({"horizon": 2, "loads": [1], "supply": [1, 1], "colour": 3})");
    expect_invalid("dayahead", R"({"horizon": 1, "loads": [1], "prices": {"day_ahead": 1, "real_time": 2},
                                   "scenarios": [{"supply": [1], "probability": "1/3"}]})");
    expect_invalid("welfare", R"({"horizon": 1, "supply": [1], "consumers": 2, "prices": {"day_ahead": 1},
                                  "utility": {"values": [0, 3], "curvature": "spiky"}})");
    expect_invalid("compare", R"({"horizon": 1, "supply": [1], "consumers": 2, "prices": {"day_ahead": 1, "real_time": 2},
                                  "utility": {"values": [0, 3], "curvature": "convex"}})");
    expect_invalid("procure", R"({"horizon": 1, "loads": [1], "supply": [0], "prices": {"real_time": "1/0"}})");
}

TEST(Execute, InadequateAllocationReportsTail)
{
    const Outcome out = run_text("allocate", R"({"horizon": 2, "loads": [2, 2], "supply": [3, 1]})");
    EXPECT_EQ(out.code, ExitCode::Infeasible);
    EXPECT_EQ(Json::parse(out.output)["error"]["first_violated_tail"], 2);
}

TEST(Scenario, ExactPrices)
{
    EXPECT_EQ(cli::detail::parse_rational(Json::parse("10.5"), "x"), Rational(21, 2));
    EXPECT_EQ(cli::detail::parse_rational(Json::parse("0.1"), "x"), Rational(1, 10));
    EXPECT_EQ(cli::detail::parse_rational(Json("21/2"), "x"), Rational(21, 2));
    EXPECT_EQ(cli::detail::parse_rational(Json("2.5/5"), "x"), Rational(1, 2));
    EXPECT_EQ(cli::detail::parse_rational(Json(7), "x"), Rational(7));
    EXPECT_THROW(cli::detail::parse_rational(Json("abc"), "x"), InvalidInput);
    EXPECT_THROW(cli::detail::parse_rational(Json::parse("1e30"), "x"), InvalidInput);
}

TEST(Scenario, RateLoadsExpandAfterPlainDurations)
{
    const ScenarioFile s =
        parse_scenario_text(R"({"horizon": 6, "loads": [{"energy": 7, "max_rate": 3}, 4], "supply": [1,1,1,1,1,1]})");
    EXPECT_EQ(s.unit_profile().durations(), (IntVector{4, 3, 2, 2}));
}

TEST(Sha256, KnownVector)
{
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
