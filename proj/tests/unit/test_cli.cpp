// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Run {
    int code = 0;
    json report;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "rapm");
    std::ostringstream out, err;
    Run r;
    r.code = rapm::cli::run(args, out, err);
    r.report = json::parse(out.str(), nullptr, false);
    r.err = err.str();
    return r;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const std::string name = ::testing::UnitTest::GetInstance()->current_test_info()->name();
        dir_ = fs::temp_directory_path() / ("rapm_cli_" + name);
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write_config(const json& j, const std::string& name = "config.json") const {
        const fs::path p = dir_ / name;
        std::ofstream(p) << j.dump();
        return p.string();
    }
    [[nodiscard]] std::string out(const std::string& sub = "out") const { return (dir_ / sub).string(); }
    static std::string slurp(const fs::path& p) {
        std::ifstream in(p);
        return {std::istreambuf_iterator<char>(in), {}};
    }

    fs::path dir_;
};

TEST_F(CliTest, ParamsZeroCost) {
    const auto r = run({"params", "--cost", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.report["result"]["c_over_r_ok"].get<bool>());
    EXPECT_TRUE(r.report["result"]["cr_product_ok"].get<bool>());
    EXPECT_EQ(r.report["result"]["t_star"].get<double>(), 1.0);
}

TEST_F(CliTest, ParamsInadmissibleExitsNonzero) {
    const auto r = run({"params", "--cost", "1", "--risk-premium", "1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(r.report["result"]["cr_product_ok"].get<bool>());
}

TEST_F(CliTest, ParamsRepresentativeReport) {
    const auto cfg = write_config({{"params", {{"T", 1.0}, {"S", 100.0}, {"gamma", 0.01}}}});
    const auto r = run({"params", "--config", cfg, "--out", out()});
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(r.report["result"]["t_star"].get<double>(), 1.0 - 0.02 / (8.0 * 0.09), 1e-14);
    EXPECT_TRUE(r.report["result"].contains("optimal_time_lag"));
    EXPECT_TRUE(fs::exists(fs::path(out()) / "report.json"));
    EXPECT_EQ(r.report["config"]["model"]["sigma"].get<double>(), 0.3);
}

TEST_F(CliTest, UnknownConfigKeyRejected) {
    EXPECT_EQ(run({"params", "--config", write_config({{"modle", json::object()}})}).code, 1);
    EXPECT_EQ(run({"params", "--config", write_config({{"model", {{"vol", 0.2}}}})}).code, 1);
}

TEST_F(CliTest, SolveInvariantTrivialH2) {
    const auto cfg = write_config({{"family", {{"tag", "h2"}, {"phi", 0.0}, {"branch", 0}, {"c1", 1.0}, {"c2", 2.0}}}});
    const auto r = run({"solve-invariant", "--config", cfg, "--out", out()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LE(r.report["result"]["residual"]["max_abs"].get<double>(), 1e-13);
    for (const char* f : {"surface.csv", "family.json", "report.json"}) EXPECT_TRUE(fs::exists(fs::path(out()) / f));
}

TEST_F(CliTest, SolveInvariantSpecialWritesCurve) {
    const auto cfg = write_config({{"family", {{"tag", "special"}}}});
    const auto r = run({"solve-invariant", "--config", cfg, "--out", out()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(fs::path(out()) / "curve.csv"));
    EXPECT_TRUE(fs::exists(fs::path(out()) / "surface.csv"));
}

TEST_F(CliTest, SolveInvariantRejectsRightAngle) {
    const auto cfg = write_config({{"family", {{"tag", "h2"}, {"phi", 1.5707963267948966}}}});
    const auto r = run({"solve-invariant", "--config", cfg});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("pi/2"), std::string::npos);
}

TEST_F(CliTest, VerifyEmittedFamily) {
    const auto cfg = write_config({{"family", {{"tag", "h2"}, {"phi", 0.5}, {"branch", 0}, {"c1", 0.3}}}});
    ASSERT_EQ(run({"solve-invariant", "--config", cfg, "--out", out()}).code, 0);
    const auto r = run({"verify", "--family", (fs::path(out()) / "family.json").string(), "--out", out("v")});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const auto& c : r.report["result"]["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c.dump();
}

TEST_F(CliTest, SymmetryTable) {
    const auto r = run({"symmetry", "table", "--rate", "0.05"});
    ASSERT_EQ(r.code, 0);
    const auto& b = r.report["result"]["brackets"];
    EXPECT_EQ(b["[U1,U3]"].get<std::string>(), "0");
    EXPECT_NE(b["[U1,U2]"].get<std::string>(), "0");
    EXPECT_NE(b["[U2,U3]"].get<std::string>(), "0");
    EXPECT_EQ(b["[U3,U4]"].get<std::string>(), "0");
}

TEST_F(CliTest, SymmetryCatalogAndCheckFlow) {
    const auto c = run({"symmetry", "catalog"});
    ASSERT_EQ(c.code, 0);
    EXPECT_EQ(c.report["result"].size(), 12u);
    const auto cfg = write_config({{"family", {{"tag", "h2"}, {"phi", 0.5}, {"branch", 1}}},
                                   {"symmetry", {{"generator", "U1"}, {"lambda", 0.3}}}});
    const auto r = run({"symmetry", "check-flow", "--config", cfg});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.report["result"]["pass"].get<bool>());
}

TEST_F(CliTest, FdSolveZeroCostCall) {
    const auto cfg = write_config({{"grid", {{"n_S", 101}, {"n_t", 101}}}});
    const auto r = run({"fd-solve", "--config", cfg, "--cost", "0", "--out", out()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_LE(r.report["result"]["max_error_vs_oracle"].get<double>(), 5e-3);
    EXPECT_TRUE(fs::exists(fs::path(out()) / "fd_surface.csv"));
}

TEST_F(CliTest, FdSolveParabolicityLostExitsTwo) {
    const auto cfg = write_config({{"fd", {{"terminal", {{"type", "payoff"}, {"strike", 100.0}}}}},
                                   {"grid", {{"n_S", 101}, {"n_t", 11}}}});
    const auto r = run({"fd-solve", "--config", cfg});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.report["result"]["S"].get<double>(), 100.0);
}

TEST_F(CliTest, SimulateIsDeterministic) {
    const auto cfg = write_config({{"simulate", {{"n_paths", 200}, {"write_paths", true}}}});
    const auto a = run({"simulate", "--config", cfg, "--seed", "5", "--out", out("a")});
    const auto b = run({"simulate", "--config", cfg, "--seed", "5", "--out", out("b")});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.report, b.report);
    EXPECT_EQ(slurp(fs::path(out("a")) / "paths.csv"), slurp(fs::path(out("b")) / "paths.csv"));
    EXPECT_EQ(a.report["result"]["runs"].size(), 3u);
}

TEST_F(CliTest, SolveInvariantCsvIsByteIdentical) {
    const auto cfg = write_config({{"family", {{"tag", "h3"}, {"a", 1.0}, {"phi", 1.0471975511965976}}}});
    ASSERT_EQ(run({"solve-invariant", "--config", cfg, "--out", out("a")}).code, 0);
    ASSERT_EQ(run({"solve-invariant", "--config", cfg, "--out", out("b")}).code, 0);
    EXPECT_EQ(slurp(fs::path(out("a")) / "surface.csv"), slurp(fs::path(out("b")) / "surface.csv"));
}

TEST_F(CliTest, MissingSubcommandFails) { EXPECT_NE(run({}).code, 0); }

}  // namespace
