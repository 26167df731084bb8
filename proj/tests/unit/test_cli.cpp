#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "swimlab/records_io.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  const std::string cmd = std::string(SWIMLAB_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) r.out += buf;
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST(Cli, UnknownSubcommandIsUsageError) {
  const CliRun r = cli("swim");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("unknown subcommand 'swim'"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"error\""), std::string::npos) << r.out;
}

TEST(Cli, MissingRequiredOptionIsUsageError) {
  EXPECT_EQ(cli("laebt --v1 148").code, 2);
}

TEST(Cli, LaebtReportsRatio) {
  const CliRun r = cli("laebt --v1 148 --v2 169 --t1 5.0 --t2 7.2");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\"exceeds_prediction\": true"), std::string::npos) << r.out;
}

TEST(Cli, SimulateLabelsSequentialSecondMode) {
  const fs::path dir = oracle::temp_dir("cli-sim");
  const CliRun r = cli("-o " + dir.string() + " simulate --gait sequential --freq 8.05");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("Sequential f2"), std::string::npos) << r.out;
  for (const char* f : {"kinematics.csv", "envelope.csv", "thrust.csv", "strobes.csv", "metrics.json",
                        "metrics.csv", "log.csv", "config.json"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  const std::string metrics = swimlab::read_text((dir / "metrics.json").string());
  EXPECT_NE(metrics.find("Sequential f2"), std::string::npos);
}

TEST(Cli, AnalyzeReadsSynthesizedLog) {
  const fs::path sim = oracle::temp_dir("cli-sim2"), an = oracle::temp_dir("cli-an");
  ASSERT_EQ(cli("-o " + sim.string() + " simulate --gait in_phase --freq 2.05").code, 0);
  const CliRun r = cli("-o " + an.string() + " analyze " + (sim / "log.csv").string() +
                    " --freq 2.05 --gait in_phase");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(an / "metrics.json"));
  EXPECT_NE(r.out.find("In-phase f1"), std::string::npos) << r.out;
}

TEST(Cli, BadConfigIsValidationError) {
  const fs::path dir = oracle::temp_dir("cli-bad");
  std::ofstream(dir / "bad.json") << R"({"geometry": {"peduncle_fraction": 1.5}})";
  const CliRun r = cli("-o " + dir.string() + " simulate " + (dir / "bad.json").string());
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.code, 2);
  EXPECT_NE(r.out.find("peduncle"), std::string::npos) << r.out;
}

TEST(Cli, SpeedCommand) {
  const CliRun r = cli("speed --thrust 7.2");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("speed_bl_s"), std::string::npos);
}
