#include "cli.hpp"

#include <bobtail/common/results.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <map>
#include <sys/wait.h>
#include <unistd.h>

namespace bobtail::cli {
namespace {

namespace fs = std::filesystem;

struct Run {
    int code;
    std::string out, err;
};

Run run_cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

/// Runs the real binary so process exit codes are checked end to end.
int run_binary(const std::string& args)
{
    const std::string cmd = std::string(BOBTAIL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("bobtail_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir / name;
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_binary("--help"), kOk);
    EXPECT_EQ(run_binary("blocktime --help"), kOk);
    EXPECT_EQ(run_binary(""), kUsage);
    EXPECT_EQ(run_binary("nonsense"), kUsage);
    EXPECT_EQ(run_binary("blocktime --bogus 1"), kUsage);
    EXPECT_EQ(run_binary("blocktime --trials abc"), kUsage);
    EXPECT_EQ(run_binary("blocktime --trials 0"), kUsage);
    EXPECT_EQ(run_binary("blocktime --format xml"), kUsage);
    EXPECT_EQ(run_binary("traffic --p 1.5 --trials 10 --seed 1"), kUsage);
    EXPECT_EQ(run_binary("moments --v 1e300 --k 2 --trials 10 --seed 1"), kNumeric); // v^2 overflows
    EXPECT_EQ(run_binary("blocktime --trials 100 --seed 1"), kOk);
}

TEST(Cli, CsvHeaderAndRoundTrip)
{
    const auto r = run_cli({"blocktime", "--trials", "3000", "--seed", "5", "--k", "1,3"});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_EQ(r.out.rfind("# config: ", 0), 0u);
    std::istringstream in(r.out);
    ConfigEcho cfg;
    const auto table = read_csv(in, &cfg);
    EXPECT_EQ(table.rows.size(), 2u);
    std::map<std::string, std::string> m(cfg.begin(), cfg.end());
    EXPECT_EQ(m["seed"], "5");
    EXPECT_EQ(m["trials"], "3000");
    EXPECT_EQ(m["k"], "1,3");
    EXPECT_EQ(m["command"], "blocktime");
}

TEST(Cli, OmittedSeedIsRecorded)
{
    const auto r = run_cli({"moments", "--trials", "50", "--k", "2"});
    ASSERT_EQ(r.code, kOk);
    std::istringstream in(r.out);
    ConfigEcho cfg;
    read_csv(in, &cfg);
    std::map<std::string, std::string> m(cfg.begin(), cfg.end());
    ASSERT_FALSE(m["seed"].empty());
    // Replaying with the recorded seed reproduces the output exactly.
    const auto again = run_cli({"moments", "--trials", "50", "--k", "2", "--seed", m["seed"]});
    EXPECT_EQ(again.out, r.out);
}

TEST(Cli, DeterministicAcrossJobs)
{
    const std::vector<std::string> base{"orphans", "--trials", "300", "--seed", "3", "--k", "1,4"};
    auto a = base, b = base;
    a.insert(a.end(), {"--jobs", "1"});
    b.insert(b.end(), {"--jobs", "4"});
    const auto ra = run_cli(a), rb = run_cli(b);
    ASSERT_EQ(ra.code, kOk);
    // Only the echoed jobs value may differ.
    auto strip = [](std::string s) { return s.substr(s.find('\n')); };
    EXPECT_EQ(strip(ra.out), strip(rb.out));
}

TEST(Cli, JsonFormat)
{
    const auto r = run_cli({"selfish", "--trials", "4", "--horizon", "100", "--seed", "2", "--format", "json"});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_EQ(r.out.front(), '{');
    EXPECT_NE(r.out.find("\"config\""), std::string::npos);
}

TEST(Cli, ConfigFileAndFlagPrecedence)
{
    const auto path = scratch("exp.cfg");
    {
        std::ofstream f(path);
        f << "# defaults\ntrials = 200\nseed=9\nk=2,5\n";
    }
    const auto r = run_cli({"moments", "--config", path.string(), "--seed", "11"});
    ASSERT_EQ(r.code, kOk) << r.err;
    std::istringstream in(r.out);
    ConfigEcho cfg;
    const auto table = read_csv(in, &cfg);
    std::map<std::string, std::string> m(cfg.begin(), cfg.end());
    EXPECT_EQ(m["trials"], "200");
    EXPECT_EQ(m["seed"], "11");
    EXPECT_EQ(table.rows.size(), 2u);

    {
        std::ofstream f(path);
        f << "no equals sign\n";
    }
    EXPECT_EQ(run_cli({"moments", "--config", path.string()}).code, kUsage);
    EXPECT_EQ(run_cli({"moments", "--config", "/nonexistent/x.cfg"}).code, kUsage);
}

TEST(Cli, OutputDirFromEnvironment)
{
    const auto dir = scratch("out");
    fs::create_directories(dir);
    ::setenv(kOutputDirEnv, dir.c_str(), 1);
    const auto r = run_cli({"dor", "--trials", "100", "--seed", "1"});
    ::unsetenv(kOutputDirEnv);
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto file = dir / "dor.csv";
    ASSERT_TRUE(fs::exists(file));
    EXPECT_NE(r.out.find("wrote"), std::string::npos);
    std::ifstream in(file);
    ConfigEcho cfg;
    EXPECT_FALSE(read_csv(in, &cfg).rows.empty());

    // An explicit --output beats the variable.
    ::setenv(kOutputDirEnv, dir.c_str(), 1);
    const auto explicit_file = scratch("explicit.json");
    EXPECT_EQ(run_cli({"dor", "--trials", "10", "--seed", "1", "--format", "json", "--output", explicit_file.string()}).code,
              kOk);
    ::unsetenv(kOutputDirEnv);
    EXPECT_TRUE(fs::exists(explicit_file));
    EXPECT_FALSE(fs::exists(dir / "dor.json"));
}

TEST(Cli, SelfcheckPasses)
{
    const auto r = run_cli({"selfcheck", "--seed", "3"});
    EXPECT_EQ(r.code, kOk) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

} // namespace
} // namespace bobtail::cli
