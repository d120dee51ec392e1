#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "heilbronn/cli.hpp"
#include "heilbronn/experiments.hpp"
#include "heilbronn/io.hpp"

using namespace heilbronn;
using Json = nlohmann::ordered_json;

namespace {

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
    const Invocation r = run(std::move(args));
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    return Json::parse(r.out);
}

std::string data(const std::string& name) { return (std::filesystem::path(HEILBRONN_TEST_DATA) / name).string(); }

std::string temp(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("heilbronn_test_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

// Checks the record against the schema's required keys, property types and command enum.
void expect_schema(const Json& record) {
    const Json schema = Json::parse(slurp(HEILBRONN_SCHEMA));
    for (const auto& key : schema["required"]) EXPECT_TRUE(record.contains(key.get<std::string>())) << key;
    for (const auto& [key, value] : record.items()) EXPECT_TRUE(schema["properties"].contains(key)) << key;
    const auto& commands = schema["properties"]["command"]["enum"];
    EXPECT_NE(std::find(commands.begin(), commands.end(), record["command"]), commands.end());
    EXPECT_EQ(record["version"], schema["properties"]["version"]["const"]);
    EXPECT_TRUE(record["seed"].is_null() || record["seed"].is_number_unsigned());
    EXPECT_TRUE(record["params"].is_object());
    EXPECT_TRUE(record["results"].is_object());
    EXPECT_TRUE(record["timing_ms"].is_number());
    EXPECT_GE(record["timing_ms"].get<double>(), 0.0);
}

}  // namespace

TEST(Cli, MinTriangleCorners) {
    const Json j = run_json({"min-triangle", "--file", data("corners4.txt")});
    expect_schema(j);
    EXPECT_EQ(j["command"], "min-triangle");
    EXPECT_TRUE(j["seed"].is_null());
    EXPECT_EQ(j["results"]["area"], 0.5);
    EXPECT_EQ(j["results"]["n"], 4);
    const Json fast = run_json({"min-triangle", "--file", data("corners4.txt"), "--mode", "fast"});
    EXPECT_EQ(fast["results"]["area"], 0.5);
}

TEST(Cli, MinTriangleGrid) {
    const Json j = run_json({"min-triangle", "--grid", data("grid8_collinear.txt")});
    EXPECT_EQ(j["results"]["twice_area"], 0);
}

TEST(Cli, SampleIsSeededAndReproducible) {
    const Json a = run_json({"sample", "--n", "5", "--seed", "77"});
    const Json b = run_json({"sample", "--n", "5", "--seed", "77"});
    expect_schema(a);
    EXPECT_EQ(a["seed"], 77);
    EXPECT_EQ(a["results"], b["results"]);
    const PointSet pts = sample_unit_square(5, 77, 0);
    EXPECT_EQ(a["results"]["points"][3][0].get<double>(), pts[3].x);

    const std::string path = temp("sample.txt");
    run_json({"sample", "--n", "6", "--K", "64", "--seed", "78", "--out", path});
    EXPECT_EQ(slurp(path).rfind("# seed=78\n", 0), 0u);
    EXPECT_EQ(load_grid(path), sample_grid_arrangement(64, 6, 78, 0));
    std::filesystem::remove(path);
}

TEST(Cli, MissingSeedIsUsageError) {
    const Invocation r = run({"sample", "--n", "5"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("--seed"), std::string::npos);
}

TEST(Cli, UnknownSubcommand) {
    const Invocation r = run({"frobnicate"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("min-triangle"), std::string::npos);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(run({}).code, cli::kExitUsage);
}

TEST(Cli, HelpExitsZero) {
    const Invocation r = run({"--help"});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_NE(r.out.find("witness"), std::string::npos);
}

TEST(Cli, DataErrorExitCode) {
    const std::string path = temp("bad_grid.txt");
    std::ofstream(path) << "grid 4 2\n1 1\n1 1\n";
    const Invocation r = run({"min-triangle", "--grid", path});
    EXPECT_EQ(r.code, cli::kExitData);
    EXPECT_NE(r.err.find("line 3"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, ScanCsvAndJson) {
    const Invocation csv = run({"--jobs", "2", "scan", "--ns", "6,8,10", "--trials", "200", "--format", "csv", "--seed", "5"});
    ASSERT_EQ(csv.code, cli::kExitOk) << csv.err;
    std::istringstream lines(csv.out);
    std::string header, row;
    std::getline(lines, header);
    EXPECT_EQ(header, "n,trials,mean,stderr,lo95,hi95,seed");
    std::size_t rows = 0;
    while (std::getline(lines, row)) {
        if (row.empty() || row[0] == '#') continue;
        ++rows;
        EXPECT_EQ(row.substr(row.rfind(',') + 1), "5");
    }
    EXPECT_EQ(rows, 3u);

    const Json j = run_json({"scan", "--ns", "6,8,10", "--trials", "200", "--seed", "5"});
    expect_schema(j);
    EXPECT_EQ(j["seed"], 5);
    EXPECT_TRUE(j["results"].contains("fit"));
    // Same seed, different job count: same numbers.
    const Json one = run_json({"--jobs", "1", "scan", "--ns", "6,8,10", "--trials", "200", "--seed", "5"});
    EXPECT_EQ(one["results"], j["results"]);
}

TEST(Cli, WitnessRoundTripIsByteIdentical) {
    const std::string grid = data("grid8_collinear.txt");
    const std::string hw = temp("w.hw1"), back = temp("w_back.txt");
    const Json enc = run_json({"witness", "collinear", "encode", "--grid", grid, "--out", hw});
    expect_schema(enc);
    EXPECT_EQ(enc["results"]["kind"], "collinear");
    run_json({"witness", "collinear", "decode", "--in", hw, "--out", back});
    EXPECT_EQ(slurp(back), slurp(grid));
    // The smallest triangle here is degenerate, so no small-triangle witness exists.
    EXPECT_EQ(run({"witness", "small_triangle", "encode", "--grid", grid}).code, cli::kExitData);
    // Kind mismatch between file and command line.
    EXPECT_EQ(run({"witness", "rowline", "decode", "--in", hw}).code, cli::kExitData);
    EXPECT_EQ(run({"witness", "collinear", "decode"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"witness", "hexagon", "encode", "--grid", grid}).code, cli::kExitUsage);
    std::filesystem::remove(hw);
    std::filesystem::remove(back);
}

TEST(Cli, WitnessInapplicableIsDataError) {
    // The Erdos set has no collinear triple.
    const std::string grid = temp("erdos.txt");
    run_json({"construct-erdos", "--p", "7", "--out", grid});
    EXPECT_EQ(run({"witness", "collinear", "encode", "--grid", grid}).code, cli::kExitData);
    const std::string hw = temp("erdos.hw1"), back = temp("erdos_back.txt");
    run_json({"witness", "small_triangle", "encode", "--grid", grid, "--triple", "0,1,2", "--out", hw});
    run_json({"witness", "small_triangle", "decode", "--in", hw, "--out", back});
    EXPECT_EQ(load_grid(back), load_grid(grid));
    std::filesystem::remove(hw);
    std::filesystem::remove(back);
    std::filesystem::remove(grid);
}

TEST(Cli, RankUnrankRoundTrip) {
    const Json r = run_json({"rank", "--grid", data("grid8_collinear.txt")});
    expect_schema(r);
    const std::string index = r["results"]["index"].get<std::string>();
    const std::string out = temp("unranked.txt");
    run_json({"unrank", "--K", "8", "--n", "4", "--index", index, "--out", out});
    EXPECT_EQ(load_grid(out), load_grid(data("grid8_collinear.txt")));
    EXPECT_EQ(run({"unrank", "--K", "8", "--n", "4", "--index", "99999999999"}).code, cli::kExitData);
    std::filesystem::remove(out);
}

TEST(Cli, OtherCommandsProduceRecords) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"tail", "--n", "8", "--t", "0.001", "--trials", "100", "--seed", "1"},
             {"construct-erdos", "--p", "11"},
             {"optimize", "--n", "4", "--restarts", "2", "--steps", "2000", "--seed", "2"},
             {"stats-degenerate", "--K", "16", "--n", "6", "--trials", "100", "--seed", "3"},
             {"analyze", "--file", data("corners4.txt"), "--baseline-trials", "100", "--seed", "4"},
             {"bound", "--delta", "10", "--n", "1000"}}) {
        const Json j = run_json(args);
        expect_schema(j);
        EXPECT_EQ(j["command"], args[0]);
    }
    EXPECT_EQ(run({"optimize", "--n", "17", "--seed", "1"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"construct-erdos", "--p", "9"}).code, cli::kExitData);
}
