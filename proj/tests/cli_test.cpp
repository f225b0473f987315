#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "gpsel/report.hpp"

using gpsel::test::problem_path;

namespace {

struct CliRun {
    int rc{-1};
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Unique per test so that tests may run in parallel.
std::string temp_path(const std::string& name) {
    return ::testing::TempDir() + "gpsel_cli_" + ::testing::UnitTest::GetInstance()->current_test_info()->name() + "_" + name;
}

CliRun run(const std::string& args) {
    const std::string out = temp_path("stdout"), err = temp_path("stderr");
    const std::string cmd = std::string("'") + GPSEL_CLI + "' " + args + " >'" + out + "' 2>'" + err + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = temp_path(name);
    std::ofstream(path) << text;
    return path;
}

double after(const std::string& text, const std::string& key) {
    const auto pos = text.find(key);
    if (pos == std::string::npos) return std::nan("");
    return std::stod(text.substr(pos + key.size()));
}

}  // namespace

TEST(Cli, SolveExampleOneText) {
    const CliRun r = run("solve " + problem_path("example1_case1"));
    ASSERT_EQ(r.rc, 0) << r.err;
    const double z = after(r.out, "Z = ");
    EXPECT_EQ(std::round(z * 1e4) / 1e4, 11.0110);
    EXPECT_NE(r.out.find("c = 1  (z = 01)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("p = -1  (z = 00)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("a = 1  (z = 01)"), std::string::npos) << r.out;
}

TEST(Cli, SolveExampleTwoCaseSix) {
    const CliRun r = run("solve " + problem_path("example2_case6") + " --format machine --no-timing");
    ASSERT_EQ(r.rc, 0) << r.err;
    const auto doc = gpsel::report_from_machine(r.out);
    ASSERT_TRUE(doc.z.has_value());
    EXPECT_EQ(std::round(*doc.z * 1e4) / 1e4, 50.6061);
    ASSERT_EQ(doc.chosen.size(), 3u);
    EXPECT_EQ(doc.chosen[0].value, 1.0);
    EXPECT_EQ(doc.chosen[1].value, -3.0);
    EXPECT_EQ(doc.chosen[2].value, 1.0);
}

TEST(Cli, AllAssignmentsTable) {
    const CliRun r = run("solve " + problem_path("example1_case1") + " --all-assignments --format machine --no-timing");
    ASSERT_EQ(r.rc, 0) << r.err;
    const auto doc = gpsel::report_from_machine(r.out);
    ASSERT_TRUE(doc.assignments.has_value());
    EXPECT_EQ(doc.assignments->size(), 27u);
}

TEST(Cli, MachineOutputIsByteStable) {
    for (const char* name : {"example1_case1", "example2_case6"}) {
        const std::string args = "solve " + problem_path(name) + " --format machine --no-timing --all-assignments";
        const CliRun a = run(args);
        const CliRun b = run(args + " --threads 4");
        ASSERT_EQ(a.rc, 0);
        EXPECT_EQ(a.out, b.out) << name;
        EXPECT_NE(a.out.find("\"timing_ms\": null"), std::string::npos);
    }
}

TEST(Cli, TimingIsReportedByDefault) {
    const CliRun r = run("solve " + problem_path("example1_fixed") + " --format machine");
    ASSERT_EQ(r.rc, 0);
    EXPECT_TRUE(gpsel::report_from_machine(r.out).timing_ms.has_value());
}

TEST(Cli, OracleAndSeed) {
    const CliRun r = run("solve " + problem_path("example1_case1") + " --oracle --seed 7 --format machine --no-timing");
    ASSERT_EQ(r.rc, 0) << r.err;
    const auto doc = gpsel::report_from_machine(r.out);
    ASSERT_TRUE(doc.oracle.has_value());
    ASSERT_TRUE(doc.oracle->relative_difference.has_value());
    EXPECT_LE(*doc.oracle->relative_difference, 1e-2);
}

TEST(Cli, DualOfFixedExample) {
    const CliRun r = run("dual " + problem_path("example1_fixed"));
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_NE(r.out.find("normality: w01 + w02 + w03 = 1"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("x1: -w01 + w03 + w11 = 0"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("x2: -3 w02 + w03 + w12 = 0"), std::string::npos) << r.out;
    EXPECT_NEAR(after(r.out, "\n  w01 = "), 0.4388, 1e-4);
}

TEST(Cli, DualWithAssignment) {
    const CliRun r = run("dual " + problem_path("example2_case1") + " --assign c=01 --assign p=01 --assign a=01 --no-timing");
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_NEAR(after(r.out, "\n  w21 = "), 0.3333285, 1e-3);
    EXPECT_NEAR(after(r.out, "\n  value = "), 50.60611, 1e-3);
}

TEST(Cli, DualSingleMonomialObjective) {
    const std::string path = write_temp("monomial.json", R"({"format": "gpsel-problem", "version": 1,
      "variables": ["x"], "objective": [{"coefficient": 1, "exponents": {"x": -1}}],
      "constraints": [{"terms": [{"coefficient": 1, "exponents": {"x": 1}}], "bound": 2}]})");
    const CliRun r = run("dual " + path);
    ASSERT_EQ(r.rc, 0) << r.err;
    EXPECT_NE(r.out.find("w01 = 1\n"), std::string::npos) << r.out;
}

TEST(Cli, InvalidAssignmentExitsThree) {
    const CliRun r = run("dual " + problem_path("example1_case1") + " --assign c=11 --assign p=00 --assign a=00");
    EXPECT_EQ(r.rc, 3);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("11"), std::string::npos);
    EXPECT_EQ(run("dual " + problem_path("example1_case1")).rc, 3);
    EXPECT_EQ(run("dual " + problem_path("example1_case1") + " --assign q=00").rc, 3);
}

TEST(Cli, EmptyFileExitsTwo) {
    const CliRun r = run("solve " + write_temp("empty.json", "") + " --format machine");
    EXPECT_EQ(r.rc, 2);
    EXPECT_TRUE(r.out.empty());
}

TEST(Cli, UndefinedSetExitsThree) {
    const std::string path = write_temp("undefined.json", R"({"format": "gpsel-problem", "version": 1,
      "variables": ["x"], "objective": [{"coefficient": "ghost", "exponents": {"x": 1}}, {"coefficient": 1, "exponents": {"x": -1}}]})");
    const CliRun r = run("solve " + path + " --format machine");
    EXPECT_EQ(r.rc, 3);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("ghost"), std::string::npos) << r.err;
}

TEST(Cli, InfeasibleExitsFour) {
    const std::string path = write_temp("infeasible.json", R"({"format": "gpsel-problem", "version": 1,
      "variables": ["x"], "objective": [{"coefficient": 1, "exponents": {"x": 1}}],
      "constraints": [{"terms": [{"coefficient": 2, "exponents": {"x": 1}}]},
                      {"terms": [{"coefficient": 1, "exponents": {"x": -1}}]}]})");
    const CliRun r = run("solve " + path + " --format machine --no-timing");
    EXPECT_EQ(r.rc, 4);
    EXPECT_EQ(gpsel::report_from_machine(r.out).status, "infeasible");
}

TEST(Cli, UnboundedExitsFour) {
    const std::string path = write_temp("unbounded.json", R"({"format": "gpsel-problem", "version": 1,
      "variables": ["x"], "objective": [{"coefficient": 1, "exponents": {"x": 1}}]})");
    EXPECT_EQ(run("solve " + path).rc, 4);
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run("solve " + problem_path("example1_case1") + " --format xml").rc, 2);
    EXPECT_EQ(run("frobnicate").rc, 2);
    EXPECT_EQ(run("").rc, 2);
    EXPECT_EQ(run("solve --help").rc, 0);
}

TEST(Cli, Validate) {
    const CliRun r = run("validate " + problem_path("example1_case1"));
    EXPECT_EQ(r.rc, 0);
    EXPECT_NE(r.out.find("27 combinations"), std::string::npos) << r.out;
}
