#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "meyerlab/json_io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string cli = MEYERLAB_CLI;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

int run(const std::string& args, const fs::path& log) {
    const std::string cmd = cli + " " + args + " >" + log.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

class Cli : public ::testing::Test {
protected:
    fs::path dir;

    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / ("meyerlab_cli_" + std::string(info->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    fs::path write(const std::string& name, const std::string& text) {
        const auto p = dir / name;
        std::ofstream(p, std::ios::binary) << text;
        return p;
    }
    int run_in(const std::string& args) { return run(args, dir / "log.txt"); }
    std::string log() { return slurp(dir / "log.txt"); }
};

const std::string fib_config = R"({
  "scheme": "fibonacci",
  "window": {"boxes": [{"lo": ["-1/4-1/4√5"], "hi": ["1/4+1/4√5"]}]},
  "region": {"lo": [-400], "hi": [400]},
  "eps": "1/20",
  "delta_ladder": ["1/40", "1/80"],
  "eps_ladder": ["1/10", "1/20"],
  "eta_ladder": [0.1, 0.05],
  "seed": 3
})";

}  // namespace

TEST_F(Cli, GenWritesPointSetWithConfigHash) {
    const auto cfg = write("c.json", fib_config);
    ASSERT_EQ(run_in("gen --config " + cfg.string() + " --out " + (dir / "o").string()), 0) << log();
    const auto hash = meyerlab::fnv1a_hex(slurp(cfg));
    const auto tsv = slurp(dir / "o" / "pointset.tsv");
    EXPECT_NE(tsv.find("config=" + hash), std::string::npos);
    const auto summary = meyerlab::Json::parse(slurp(dir / "o" / "gen_summary.json"));
    EXPECT_EQ(summary["config_hash"], hash);
    EXPECT_EQ(summary["seed"], 3);
    EXPECT_TRUE(summary["nonsingular"]["pass"].get<bool>());
    EXPECT_GT(summary["points"].get<int>(), 500);
}

TEST_F(Cli, EveryCheckIsByteDeterministic) {
    const auto cfg = write("c.json", fib_config);
    for (const std::string which : {"meyer", "schlottmann", "additivity", "aa"}) {
        const auto a = dir / ("a_" + which), b = dir / ("b_" + which);
        ASSERT_EQ(run_in("check --which " + which + " --config " + cfg.string() + " --out " + a.string()), 0) << log();
        ASSERT_EQ(run_in("check --which " + which + " --config " + cfg.string() + " --out " + b.string()), 0) << log();
        std::size_t files = 0;
        for (const auto& e : fs::directory_iterator(a)) {
            EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << which << " " << e.path().filename();
            ++files;
        }
        EXPECT_GE(files, 1u);
        const auto j = meyerlab::Json::parse(slurp(a / ("check_" + which + ".json")));
        EXPECT_TRUE(j["pass"].get<bool>()) << which;
        EXPECT_EQ(j["config_hash"], meyerlab::fnv1a_hex(slurp(cfg)));
    }
    EXPECT_TRUE(fs::exists(dir / "a_aa" / "correlation.csv"));
    EXPECT_TRUE(fs::exists(dir / "a_aa" / "moduli.csv"));
    EXPECT_TRUE(fs::exists(dir / "a_additivity" / "psets.json"));
}

TEST_F(Cli, FileInputRunsIntrinsicMode) {
    const auto cfg = write("c.json", fib_config);
    ASSERT_EQ(run_in("gen --config " + cfg.string() + " --out " + dir.string()), 0) << log();
    ASSERT_EQ(run_in("check --which aa --config " + cfg.string() + " --input " + (dir / "pointset.tsv").string() +
                     " --out " + (dir / "i").string()),
              0)
        << log();
    const auto j = meyerlab::Json::parse(slurp(dir / "i" / "check_aa.json"));
    EXPECT_EQ(j["check"], "additivity");
    EXPECT_NE(j["notes"].dump().find("intrinsic"), std::string::npos);
    EXPECT_FALSE(fs::exists(dir / "i" / "correlation.csv"));
}

TEST_F(Cli, ConfigProblemsExitWithTwo) {
    const auto out = " --out " + (dir / "o").string();
    EXPECT_EQ(run_in("gen --config " + write("bad.json", "{").string() + out), 2);
    EXPECT_EQ(run_in("gen --config " + (dir / "missing.json").string() + out), 2);
    const auto singular = write("s.json", R"({"scheme": {"d": 1, "m": 1, "basis": [[1, 1], [1, 1]]},
        "window": {"boxes": [{"lo": [0], "hi": [1]}]}, "region": {"lo": [0], "hi": [10]}})");
    EXPECT_EQ(run_in("gen --config " + singular.string() + out), 2);
    EXPECT_NE(log().find("SingularBasis"), std::string::npos);
    const auto bad_window = write("w.json", R"({"scheme": "fibonacci",
        "window": {"boxes": [{"lo": [1], "hi": [0]}]}, "region": {"lo": [0], "hi": [10]}})");
    EXPECT_EQ(run_in("gen --config " + bad_window.string() + out), 2);
    const auto ladder = write("l.json", R"({"scheme": "integers", "region": {"lo": [0], "hi": [10]},
        "delta_ladder": [0.01, 0.02]})");
    EXPECT_EQ(run_in("gen --config " + ladder.string() + out), 2);
    const auto cfg = write("c.json", fib_config);
    EXPECT_EQ(run_in("check --which nope --config " + cfg.string() + out), 2);
    EXPECT_EQ(run_in("plot --kind nope --input " + cfg.string() + out), 2);
    EXPECT_EQ(run_in("frobnicate"), 2);
}

TEST_F(Cli, MathFailuresExitWithThree) {
    const auto one_point = write("p.json", R"({"scheme": "integers", "region": {"lo": [0], "hi": ["1/2"]}})");
    EXPECT_EQ(run_in("check --which meyer --config " + one_point.string() + " --out " + (dir / "o").string()), 3) << log();
    EXPECT_NE(log().find("TooFewPoints"), std::string::npos);
}

TEST_F(Cli, EmptyRegionWarnsButSucceeds) {
    const auto cfg = write("e.json", R"({"scheme": "fibonacci",
        "window": {"boxes": [{"lo": [0], "hi": [1]}]}, "region": {"lo": ["1/10"], "hi": ["2/10"]}})");
    EXPECT_EQ(run_in("gen --config " + cfg.string() + " --out " + dir.string()), 0);
    EXPECT_NE(log().find("warning"), std::string::npos);
}

TEST_F(Cli, PlotsAreWellFormedSvg) {
    const auto cfg = write("c.json", fib_config);
    const auto o = dir / "o";
    ASSERT_EQ(run_in("gen --config " + cfg.string() + " --out " + o.string()), 0);
    ASSERT_EQ(run_in("check --which additivity --config " + cfg.string() + " --out " + o.string()), 0);
    ASSERT_EQ(run_in("check --which aa --config " + cfg.string() + " --out " + o.string()), 0);
    const std::vector<std::pair<std::string, std::string>> plots{
        {"patch", "pointset.tsv"}, {"returns", "psets.json"}, {"moduli", "moduli.csv"}};
    for (const auto& [kind, input] : plots) {
        ASSERT_EQ(run_in("plot --kind " + kind + " --input " + (o / input).string() + " --config " + cfg.string() +
                         " --out " + o.string()),
                  0)
            << log();
        const auto svg = o / ("plot_" + kind + ".svg");
        const std::string check = "python3 -c \"import sys, xml.etree.ElementTree as E; E.parse(sys.argv[1])\" " + svg.string();
        EXPECT_EQ(std::system(check.c_str()), 0) << kind;
        EXPECT_NE(slurp(svg).find(meyerlab::fnv1a_hex(slurp(cfg))), std::string::npos);
    }
    const auto empty = write("empty.csv", "ladder,param,value\n");
    EXPECT_EQ(run_in("plot --kind moduli --input " + empty.string() + " --out " + o.string()), 0);
    EXPECT_NE(log().find("warning"), std::string::npos);
    EXPECT_NE(slurp(o / "plot_moduli.svg").find("<svg"), std::string::npos);
}
