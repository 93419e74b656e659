#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spreadline/cli.hpp"
#include "spreadline/export.hpp"

namespace spreadline {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "spreadline");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("spreadline_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, FixturesThenLayoutFromFiles) {
  auto r = run({"fixtures", "--name", "farm", "--out-dir", dir_.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* f : {"events.csv", "attributes.csv", "schema.txt", "config.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / f)) << f;
  }
  r = run({"layout", "--events", path("events.csv"), "--attributes", path("attributes.csv"),
           "--schema", path("schema.txt"), "--config", path("config.json"), "--out-svg",
           path("out.svg"), "--out-scene", path("scene.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(slurp(dir_ / "out.svg").find("<svg"), std::string::npos);
  const auto doc = parse_scene(slurp(dir_ / "scene.json"));
  EXPECT_EQ(doc.scene.ego, "SI");
  EXPECT_EQ(doc.annotations.at("2023-03-13"), "outbreak");
}

TEST_F(CliTest, LayoutFlagsOverrideConfig) {
  const auto r = run({"layout", "--fixture", "six-farms", "--focus", "straight-line", "--stretch", "2=2",
                      "--annotate", "1=start", "--out-scene", path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = parse_scene(slurp(dir_ / "s.json"));
  EXPECT_EQ(doc.scene.focus, "straight-line");
  EXPECT_DOUBLE_EQ(doc.scene.column_x[1] - doc.scene.column_x[0], 240.0);
  EXPECT_EQ(doc.annotations.at("1"), "start");
}

TEST_F(CliTest, MetricsAndCompare) {
  auto r = run({"metrics", "--fixture", "six-farms"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("crossings"), std::string::npos);
  EXPECT_NE(r.out.find("egoCrossings  2"), std::string::npos);
  r = run({"compare-focus", "--fixture", "synthetic", "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("vertical-space"), std::string::npos);
  EXPECT_NE(r.out.find("straight-line"), std::string::npos);
}

TEST_F(CliTest, MissingEgoIsUsageError) {
  std::ofstream(path("e.csv")) << "time,source,target\n1,a,b\n";
  const auto r = run({"layout", "--events", path("e.csv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("ego"), std::string::npos);
}

TEST_F(CliTest, StageErrorsNameTheStage) {
  std::ofstream(path("e.csv")) << "time,source,target,weight\n1,a,b,-2\n";
  auto r = run({"metrics", "--events", path("e.csv"), "--ego", "a"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("ingest"), std::string::npos);

  std::ofstream(path("ok.csv")) << "time,source,target\n1,a,b\n";
  r = run({"metrics", "--events", path("ok.csv"), "--ego", "zz"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("config"), std::string::npos);
}

TEST_F(CliTest, BadArgumentsAreUsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"layout", "--fixture", "nope"}).code, 2);
  EXPECT_EQ(run({"layout", "--fixture", "six-farms", "--stretch", "2"}).code, 2);
  EXPECT_EQ(run({"layout", "--fixture", "six-farms", "--focus", "sideways"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, IdenticalRunsGiveIdenticalBytes) {
  for (const char* name : {"a", "b"}) {
    const auto r = run({"layout", "--fixture", "farm", "--out-svg", path((std::string(name) + ".svg").c_str()),
                        "--out-scene", path((std::string(name) + ".json").c_str())});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(slurp(dir_ / "a.svg"), slurp(dir_ / "b.svg"));
  EXPECT_EQ(slurp(dir_ / "a.json"), slurp(dir_ / "b.json"));
}

}  // namespace
}  // namespace spreadline
