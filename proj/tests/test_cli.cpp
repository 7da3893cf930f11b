#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bsmls/cli.hpp"

using namespace bsmls;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "bsmls");
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::string temp_file(const std::string& name, const std::string& contents) {
    const auto path = (std::filesystem::path(BSMLS_TEST_DATA_DIR) / name).string();
    std::ofstream(path, std::ios::binary) << contents;
    return path;
}

}  // namespace

TEST(CliTest, VerifyCurvePasses) {
    const auto r = run({"verify-curve", "xi0-curve", "--tol", "1e-10"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_NE(r.out.find("passed: true"), std::string::npos);
    EXPECT_NE(r.out.find("shift: 2"), std::string::npos);
}

TEST(CliTest, VerifySurfacePasses) {
    const auto r = run({"verify-surface", "--dataset", "xi0-surface", "--samples", "20"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
}

TEST(CliTest, VerificationFailureExitCode) {
    // |L(f) - gamma_2| is about 1e-16, so a zero tolerance fails on at least one sample
    const auto r = run({"verify-curve", "xi0-curve", "--r", "5", "--tol", "0"});
    EXPECT_EQ(r.code, cli::kExitVerificationFailed) << r.out;
    EXPECT_NE(r.out.find("passed: false"), std::string::npos);
}

TEST(CliTest, RankDeficientVerifyMin) {
    const auto r = run({"verify-min", "xi0-curve", "--weight", "cardinal", "--r", "2", "--degree", "2"});
    EXPECT_EQ(r.code, cli::kExitNumeric);
    EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST(CliTest, VerifyMinPasses) {
    const auto r = run({"verify-min", "--weight", "exp", "--alpha", "0.8", "--samples", "5"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.out << r.err;
}

TEST(CliTest, DatasetRows) {
    const auto r = run({"dataset", "xi0-curve", "--format", "csv"});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(line_count(r.out), 11u);
    EXPECT_EQ(r.out.substr(0, 2), "0,");
    EXPECT_EQ(line_count(run({"dataset", "xi0-surface"}).out), 121u);
}

TEST(CliTest, CorruptedCsvIsDataError) {
    const auto path = temp_file("corrupt.csv", "0,1.0\n1,oops\n2,3\n");
    const auto r = run({"curve", "--input", path});
    EXPECT_EQ(r.code, cli::kExitData);
    EXPECT_NE(r.err.find("corrupt.csv:2:"), std::string::npos) << r.err;
    const auto gap = temp_file("gap.csv", "0,1.0\n2,3\n");
    EXPECT_EQ(run({"verify-curve", "--input", gap}).code, cli::kExitData);
}

TEST(CliTest, UsageErrors) {
    EXPECT_EQ(run({}).code, cli::kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"curve", "--r", "many"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"curve", "--format", "png"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"curve", "--samples", "1"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"curve", "--domain", "5:1"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"mls", "--weight", "gauss"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"interp", "--delta", "0"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"curve", "--r", "20"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"dataset", "xi7"}).code, cli::kExitData);
    EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(CliTest, SamplingCommands) {
    EXPECT_EQ(line_count(run({"knots", "--n", "5", "--r", "3"}).out), 9u);
    EXPECT_EQ(line_count(run({"basis", "--index", "2", "--samples", "11"}).out), 11u);
    EXPECT_EQ(line_count(run({"curve", "--samples", "17", "--domain", "3:11"}).out), 17u);
    EXPECT_EQ(line_count(run({"surface", "--samples", "4"}).out), 16u);
    EXPECT_EQ(line_count(run({"mls", "--weight", "shepard", "--degree", "1", "--samples", "9"}).out), 9u);
    const auto interp = run({"interp", "--delta", "0.1"});
    EXPECT_EQ(interp.code, cli::kExitOk);
    EXPECT_EQ(line_count(interp.out), 1000u);
}

TEST(CliTest, InterpReturnsNodalValues) {
    const auto data = parse_points_csv_text(run({"dataset", "xi0-curve"}).out);
    std::istringstream rows(run({"interp", "--samples", "1000"}).out);
    std::string line;
    int l = 0;
    while (std::getline(rows, line)) {
        ++l;
        if (l % 100 != 0) continue;
        const double value = std::stod(line.substr(line.find(',') + 1));
        EXPECT_NEAR(value, data.values[static_cast<std::size_t>(l / 100)], 1e-8) << line;
    }
    EXPECT_EQ(l, 1000);
}

TEST(CliTest, SvgOutputFile) {
    const auto path = (std::filesystem::path(BSMLS_TEST_DATA_DIR) / "curve.svg").string();
    const auto r = run({"curve", "--format", "svg", "--output", path});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    std::ifstream in(path);
    const std::string svg((std::istreambuf_iterator<char>(in)), {});
    EXPECT_NE(svg.find("viewBox=\"0 0 800 600\""), std::string::npos);
}

TEST(CliTest, Deterministic) {
    const std::vector<std::string> args{"curve", "--r", "3", "--samples", "257"};
    EXPECT_EQ(run(args).out, run(args).out);
}

TEST(CliTest, RoundTripThroughFile) {
    const auto path = (std::filesystem::path(BSMLS_TEST_DATA_DIR) / "xi0.csv").string();
    ASSERT_EQ(run({"dataset", "xi0-curve", "--output", path}).code, cli::kExitOk);
    const auto again = run({"dataset", "--input", path});
    EXPECT_EQ(again.out, run({"dataset", "xi0-curve"}).out);
    EXPECT_EQ(run({"verify-curve", "--input", path}).code, cli::kExitOk);
}
