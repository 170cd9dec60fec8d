#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "json.hpp"

using namespace superfluid;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, LandauImpenetrableReport) {
    const auto r = run({"landau", "--rho", "1", "--coupling", "inf"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_NEAR(doc["v_c"].get<double>(), std::numbers::pi, 1e-9);
    EXPECT_NEAR(doc["v_s_slope"].get<double>(), std::numbers::pi, 1e-9);
    EXPECT_EQ(doc["c"], "inf");
    EXPECT_TRUE(doc["all_passed"].get<bool>());
}

TEST(Cli, LandauBoostQuery) {
    const auto r = run({"landau", "--rho", "1", "--coupling", "inf", "--v", "3.5"});
    ASSERT_EQ(r.code, 0);
    EXPECT_FALSE(nlohmann::json::parse(r.out)["boost"]["stable"].get<bool>());
}

TEST(Cli, EmptyGridIsUsageError) {
    EXPECT_EQ(run({"thermo", "--rho", ""}).code, 2);
    EXPECT_EQ(run({"thermo", "--rho", "1,,2"}).code, 2);
    EXPECT_EQ(run({"girardeau", "--rho", "abc"}).code, 2);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({"thermo", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"landau", "--branch", "phonon"}).code, 2);
    EXPECT_EQ(run({"instability", "--d", "2", "--v", "1"}).code, 2);
    EXPECT_EQ(run({"bethe"}).code, 2);
    EXPECT_EQ(run({"thermo", "--rho", "-1", "--coupling", "1"}).code, 2);
}

TEST(Cli, HelpExitsCleanly) {
    const auto r = run({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("instability"), std::string::npos);
}

TEST(Cli, InstabilityScalingFromThreeRadii) {
    const auto r = run({"instability", "--d", "1", "--v", "1", "--R", "20,40,80"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("R,T1,T2,T3,dE\n", 0), 0u);
    const auto pos = r.out.find("# p1=");
    ASSERT_NE(pos, std::string::npos);
    double p1 = 0, p2 = 0;
    ASSERT_EQ(std::sscanf(r.out.c_str() + pos, "# p1=%lf p2=%lf", &p1, &p2), 2);
    EXPECT_NEAR(p1, 1.0, 0.1);
    EXPECT_NEAR(p2, 0.0, 0.15);
}

TEST(Cli, ThermoGridIsDeterministicAcrossJobCounts) {
    const auto a = run({"thermo", "--rho", "0.5,1,2", "--coupling", "0,1,inf", "--jobs", "1"});
    const auto b = run({"thermo", "--rho", "0.5,1,2", "--coupling", "0,1,inf", "--jobs", "4"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("1,inf,inf,1.64493406685,3.2898681337,0.101321183642,closed_form"), std::string::npos);
    EXPECT_NE(a.out.find("finite_compressibility") == std::string::npos ? a.out.find(",0,0,0,inf,") : 0,
              std::string::npos);
}

TEST(Cli, BetheGroundAndDispersion) {
    const auto g = run({"bethe", "--n", "5", "--coupling", "1,inf", "--format", "json"});
    ASSERT_EQ(g.code, 0) << g.err;
    const auto doc = nlohmann::json::parse(g.out);
    ASSERT_EQ(doc.size(), 2u);
    EXPECT_LT(doc[0]["residual"].get<double>(), 1e-10);
    const auto d = run({"bethe", "--n", "7", "--coupling", "2", "--dispersion", "--branch", "hole"});
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_EQ(d.out.rfind("branch,rho,k,epsilon\nhole,1,0,0\n", 0), 0u);
}

TEST(Cli, GirardeauDispersionJson) {
    const auto r = run({"girardeau", "--dispersion", "--samples", "5", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc[0]["k"].size(), 5u);
}

TEST(Cli, VortexReportAndNumericalFailure) {
    const auto ok = run({"vortex", "--winding", "0", "--omega", "0.5", "--format", "json"});
    ASSERT_EQ(ok.code, 0) << ok.err;
    const auto doc = nlohmann::json::parse(ok.out);
    EXPECT_EQ(doc["winding"], 0);
    EXPECT_TRUE(doc["rotation_check"]["passed"].get<bool>());

    const auto w = run({"vortex", "--winding", "-2", "--format", "json"});
    ASSERT_EQ(w.code, 0);
    EXPECT_EQ(nlohmann::json::parse(w.out)["conjugate_winding"], 2);

    const auto bad = run({"vortex", "--winding", "3", "--ntheta", "8", "--format", "json"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("numerical_failure"), std::string::npos);
}

TEST(Cli, OutputFile) {
    const auto path = std::filesystem::temp_directory_path() / "superfluid_cli_test.csv";
    const auto r = run({"girardeau", "--rho", "1,2", "--out", path.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "rho,c,gamma,e,P,kappa0,method");
    std::filesystem::remove(path);
}

TEST(Cli, AcceptanceSingleCriterion) {
    const auto r = run({"acceptance", "--only", "1", "--quiet"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out.rfind("PASS  [1]", 0), 0u);
    EXPECT_EQ(run({"acceptance", "--only", "42"}).code, 2);
}

TEST(Cli, ParseGrid) {
    EXPECT_EQ(cli::parse_grid("1, 2.5,inf").size(), 3u);
    EXPECT_TRUE(std::isinf(cli::parse_grid("inf")[0]));
    EXPECT_THROW(cli::parse_grid(""), std::invalid_argument);
    EXPECT_THROW(cli::parse_grid("1e"), std::invalid_argument);
}
