#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "beamsweep/cli.hpp"

namespace bs  = beamsweep;
namespace cli = beamsweep::cli;
namespace fs  = std::filesystem;

namespace
{

class CliTest : public ::testing::Test
{
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("beamsweep_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        fig2_ = (fs::path(BEAMSWEEP_SOURCE_DIR) / "presets" / "fig2.cfg").string();
        fig3_ = (fs::path(BEAMSWEEP_SOURCE_DIR) / "presets" / "fig3.cfg").string();
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    static std::string read(const std::string& p)
    {
        std::ifstream in(p, std::ios::binary);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    static std::vector<std::string> lines(const std::string& text)
    {
        std::vector<std::string> out;
        std::istringstream in(text);
        for (std::string l; std::getline(in, l);)
            out.push_back(l);
        return out;
    }

    static std::vector<std::string> split(const std::string& row)
    {
        std::vector<std::string> out;
        std::istringstream in(row);
        for (std::string cell; std::getline(in, cell, ',');)
            out.push_back(cell);
        return out;
    }

    int run(cli::RunSpec spec)
    {
        std::ostringstream log;
        err_.str("");
        return cli::run(spec, log, err_);
    }

    static int shell(const std::string& args)
    {
        const std::string cmd = std::string(BEAMSWEEP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
        const int status      = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    }

    fs::path dir_;
    std::string fig2_;
    std::string fig3_;
    std::ostringstream err_;
};

}  // namespace

TEST_F(CliTest, SweepWritesFullCurve)
{
    ASSERT_EQ(run({.command = "sweep-m", .config_path = fig3_, .output_path = path("s.csv")}), cli::exit_ok);
    const auto rows = lines(read(path("s.csv")));
    ASSERT_EQ(rows.size(), 68u);
    EXPECT_EQ(rows[0], "m,l_sector,phi_w,alpha,beta,xi,kl_exact,pinsker_lb");
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        const auto cells = split(rows[i]);
        ASSERT_EQ(cells.size(), 8u);
        EXPECT_EQ(std::stol(cells[0]), static_cast<long>(i));
        const double alpha = std::stod(cells[3]);
        const double beta  = std::stod(cells[4]);
        const double xi    = std::stod(cells[5]);
        EXPECT_NEAR(xi, alpha + beta, 1e-15);
    }
}

TEST_F(CliTest, OptimizeAppendsSummary)
{
    ASSERT_EQ(run({.command = "optimize", .config_path = fig3_, .output_path = path("o.csv")}), cli::exit_ok);
    const auto rows = lines(read(path("o.csv")));
    ASSERT_EQ(rows.size(), 69u);
    EXPECT_EQ(rows.back().rfind("# m_star=31,xi_star=", 0), 0u) << rows.back();
}

TEST_F(CliTest, AnalyzeSingleRowAndDumpConfig)
{
    cli::RunSpec spec{.command = "analyze", .config_path = fig3_, .output_path = path("a.csv")};
    spec.sectors          = {4};
    spec.dump_config_path = path("echo.cfg");
    ASSERT_EQ(run(spec), cli::exit_ok);
    const auto rows = lines(read(path("a.csv")));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(split(rows[1])[0], "4");
    EXPECT_EQ(split(rows[0]).size(), split(rows[1]).size());

    const auto original = bs::parse_config(fig3_);
    EXPECT_EQ(bs::parse_config(path("echo.cfg")), original);
}

TEST_F(CliTest, AnalyzeRejectsOutOfRangeSectorCount)
{
    cli::RunSpec spec{.command = "analyze", .config_path = fig3_, .output_path = path("a.csv")};
    spec.sectors = {68};
    EXPECT_EQ(run(spec), cli::exit_invalid);
    EXPECT_FALSE(fs::exists(path("a.csv")));
}

TEST_F(CliTest, InvalidConfigExitsOne)
{
    std::ofstream(path("bad.cfg")) << "pa_dbm=10\ntheta_t=3\n";
    EXPECT_EQ(run({.command = "sweep-m", .config_path = path("bad.cfg"), .output_path = path("x.csv")}),
              cli::exit_invalid);
    cli::RunSpec spec{.command = "sweep-m", .config_path = fig3_, .output_path = path("x.csv")};
    spec.overrides = {"theta_t=3.0"};
    EXPECT_EQ(run(spec), cli::exit_invalid);
    EXPECT_NE(err_.str().find("theta_t"), std::string::npos);
    EXPECT_EQ(run({.command = "bogus"}), cli::exit_invalid);
}

TEST_F(CliTest, ValidatePointPasses)
{
    cli::RunSpec spec{.command = "validate", .output_path = path("v.csv")};
    spec.l_s       = 4.0;
    spec.phi_w     = 1.0;
    spec.mc_trials = 100'000;
    spec.seed      = 42;
    ASSERT_EQ(run(spec), cli::exit_ok);
    const auto rows = lines(read(path("v.csv")));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(split(rows[1]).back(), "1");
}

TEST_F(CliTest, ValidateConfigFloorsSamples)
{
    cli::RunSpec spec{.command = "validate", .config_path = fig3_, .output_path = path("v.csv")};
    spec.sectors   = {5, 8};
    spec.mc_trials = 20'000;
    ASSERT_EQ(run(spec), cli::exit_ok);
    const auto rows = lines(read(path("v.csv")));
    ASSERT_EQ(rows.size(), 3u);
    const auto five = split(rows[1]);
    EXPECT_EQ(five[0], "5");
    EXPECT_EQ(five[1], "6.4000000000000004");
    EXPECT_EQ(five[2], "6");

    spec.sectors = {40};  // 32 / 40 floors to zero samples
    EXPECT_EQ(run(spec), cli::exit_invalid);
}

TEST_F(CliTest, ValidateIsByteStable)
{
    cli::RunSpec spec{.command = "validate", .config_path = fig3_, .output_path = path("v1.csv")};
    spec.sectors   = {1, 3, 31};
    spec.mc_trials = 20'000;
    spec.seed      = 42;
    ASSERT_EQ(run(spec), cli::exit_ok);
    spec.output_path = path("v2.csv");
    spec.workers     = 3;
    ASSERT_EQ(run(spec), cli::exit_ok);
    EXPECT_EQ(read(path("v1.csv")), read(path("v2.csv")));
}

TEST_F(CliTest, ValidateReportsDisagreement)
{
    // One trial per hypothesis cannot resolve alpha = 0.25: p_hat is 0 or 1.
    cli::RunSpec spec{.command = "validate", .output_path = path("v.csv")};
    spec.l_s       = 1.0;
    spec.phi_w     = 1.0;
    spec.mc_trials = 1;
    spec.seed      = 1;
    EXPECT_EQ(run(spec), cli::exit_mc_failed);
    EXPECT_EQ(split(lines(read(path("v.csv")))[1]).back(), "0");
}

TEST_F(CliTest, ReproWritesOneFilePerCurve)
{
    cli::RunSpec spec{.command = "repro", .output_path = path("fig2")};
    spec.preset = "fig2";
    ASSERT_EQ(run(spec), cli::exit_ok);
    for (const char* name : {"fig2_noise_dbm_-50.csv", "fig2_noise_dbm_-60.csv"})
    {
        const auto rows = lines(read((dir_ / "fig2" / name).string()));
        EXPECT_EQ(rows.size(), 68u) << name;
    }

    spec.preset      = "fig3";
    spec.output_path = path("fig3");
    spec.values      = {"16", "32", "64"};
    ASSERT_EQ(run(spec), cli::exit_ok);
    EXPECT_EQ(std::distance(fs::directory_iterator(dir_ / "fig3"), fs::directory_iterator{}), 3);

    spec.preset = "fig9";
    EXPECT_EQ(run(spec), cli::exit_invalid);
}

TEST_F(CliTest, BinaryExitCodes)
{
    EXPECT_EQ(shell("sweep-m --config " + fig3_ + " --out " + path("b.csv")), 0);
    EXPECT_TRUE(fs::exists(path("b.csv")));
    EXPECT_EQ(shell("sweep-m --config " + fig3_ + " --out " + path("b.csv") + " --set theta_t=3"), 1);
    EXPECT_EQ(shell("sweep-m --config /nonexistent.cfg --out " + path("b.csv")), 1);
    EXPECT_EQ(shell("frobnicate"), 1);
    EXPECT_EQ(shell("validate --ls 1 --phi 1 --trials 1 --seed 1 --out " + path("v.csv")), 3);
    EXPECT_EQ(shell("validate --ls 4 --phi 1 --trials 100000 --seed 42 --out " + path("v.csv")), 0);
    EXPECT_EQ(shell("repro fig3 --out " + path("r") + " --values 32"), 0);
    EXPECT_TRUE(fs::exists(dir_ / "r" / "fig3_l_total_32.csv"));
    EXPECT_EQ(shell("analyze --config " + fig2_ + " --m 2 --out " + path("a.csv") + " --set l_total=32"), 0);
}
