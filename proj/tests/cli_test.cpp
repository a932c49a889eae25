#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cyclineq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cyclineq::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parse(const Outcome& o) { return nlohmann::json::parse(o.out); }

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cyclineq_cli_test_" + name);
}

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) { ::setenv(name, value, 1); }
  ~ScopedEnv() { ::unsetenv(name_); }

 private:
  const char* name_;
};

}  // namespace

TEST(Cli, ClassifyShift) {
  const auto o = run_cli({"classify", "--n", "6", "--sigma", "shift:2"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = parse(o);
  EXPECT_EQ(j["d_plus"], 2);
  EXPECT_EQ(j["d_minus"], 4);
}

TEST(Cli, ClassifyWithExponent) {
  const auto o = run_cli({"classify", "--sigma", "[2,1,3,4]", "--k", "-2.5"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = parse(o);
  EXPECT_EQ(j["holds"], false);
  EXPECT_FALSE(j["violations"].empty());
}

TEST(Cli, RefuteNesbitt) {
  const auto o = run_cli({"refute", "--ineq", "nesbitt"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NEAR(parse(o)["gap"].get<double>(), -0.0508931471288588, 1e-12);
}

TEST(Cli, RefuteMainAndNotRefutable) {
  const auto ok = run_cli({"refute", "--ineq", "main", "--sigma", "[2,1,3,4]", "--k", "2.5"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_LT(parse(ok)["gap"].get<double>(), 0);
  const auto bad = run_cli({"refute", "--ineq", "main", "--sigma", "[1,2,3]", "--k", "2"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(bad.out.empty());
  EXPECT_NE(bad.err.find("NotRefutable"), std::string::npos);
}

TEST(Cli, WitnessShiftByOne) {
  const auto o = run_cli({"witness", "--n", "3", "--sigma", "[2,3,1]", "--k", "1/1"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = parse(o);
  EXPECT_EQ(j["u"], 1);
  EXPECT_EQ(j["summands"], nlohmann::json::parse("[[3,0,0],[0,3,0],[0,0,3]]"));
  EXPECT_EQ(j["rounds"].size(), 3u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"classify", "--sigma", "[1,1,2]"}).code, 1);
  EXPECT_EQ(run_cli({"witness", "--sigma", "[2,1,3,4]", "--k", "5/2"}).code, 1);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"nonsense"}).code, 2);
  EXPECT_EQ(run_cli({"classify"}).code, 2);
  EXPECT_EQ(run_cli({"classify", "--sigma", "shift:2"}).code, 2);
  EXPECT_EQ(run_cli({"classify", "--sigma", "[1,2"}).code, 2);
  EXPECT_EQ(run_cli({"witness", "--sigma", "[1,2]", "--k", "0.5"}).code, 2);
  EXPECT_EQ(run_cli({"refute", "--ineq", "other"}).code, 2);
  EXPECT_EQ(run_cli({"classify", "--n", "3", "--sigma", "[1,2]"}).code, 2);
}

TEST(Cli, WitnessCheckOnly) {
  const auto path = temp_file("cert.json");
  const auto built = run_cli({"witness", "--sigma", "[3,1,2,4]", "--k", "3/1", "--out", path.string()});
  ASSERT_EQ(built.code, 0) << built.err;
  const auto ok = run_cli({"witness", "--sigma", "[3,1,2,4]", "--k", "3/1", "--check-only", path.string()});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(parse(ok)["valid"], true);

  auto cert = nlohmann::json::parse(built.out);
  cert["summands"][1][2] = cert["summands"][1][2].get<long long>() + 1;
  std::ofstream(path) << cert.dump();
  const auto bad = run_cli({"witness", "--sigma", "[3,1,2,4]", "--k", "3/1", "--check-only", path.string()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(parse(bad)["valid"], false);
  EXPECT_EQ(parse(bad)["diagnosis"], "BadColumnSum");
  std::filesystem::remove(path);

  EXPECT_EQ(run_cli({"witness", "--sigma", "[1,2]", "--k", "1/1", "--check-only", "/nonexistent/cert.json"}).code, 2);
}

TEST(Cli, ByteIdenticalOutput) {
  const std::vector<std::vector<std::string>> commands = {
      {"search", "--ineq", "main", "--sigma", "shift:2", "--n", "5", "--k", "1.5", "--restarts", "6"},
      {"search", "--ineq", "nesbitt", "--n", "3", "--k", "0.1", "--grid"},
      {"witness", "--sigma", "[2,3,1,5,4]", "--k", "9/2"},
      {"count", "--lucas-table", "10"},
  };
  for (const auto& cmd : commands) {
    const auto a = run_cli(cmd);
    const auto b = run_cli(cmd);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, CountWithOracle) {
  const auto o = run_cli({"count", "--n", "5", "--k", "2", "--oracle"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto j = parse(o);
  EXPECT_EQ(j["count"], "13");
  EXPECT_EQ(j["oracle"], "13");
  EXPECT_EQ(j["agree"], true);

  const auto csv = run_cli({"count", "--lucas-table", "4", "--csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out, "n,P_n_2,two_plus_lucas,match\n2,2,5,false\n3,6,6,true\n4,9,9,true\n");
}

TEST(Cli, Shapiro) {
  const auto fails = run_cli({"shapiro", "--n", "3", "--sigma", "shift:1", "--k", "2"});
  ASSERT_EQ(fails.code, 0) << fails.err;
  EXPECT_NE(fails.out.find("fails"), std::string::npos);
  const auto holds = run_cli({"shapiro", "--n", "3", "--sigma", "shift:1", "--k", "1"});
  ASSERT_EQ(holds.code, 0) << holds.err;
  EXPECT_NE(holds.out.find("holds"), std::string::npos);
}

TEST(Cli, Selftest) {
  const auto o = run_cli({"selftest", "--json"});
  ASSERT_EQ(o.code, 0) << o.out << o.err;
  const auto j = parse(o);
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["criteria"].size(), 8u);

  const auto mutated = run_cli({"selftest", "--json", "--inject-mutation"});
  EXPECT_EQ(mutated.code, 1);
  const auto m = parse(mutated);
  EXPECT_EQ(m["passed"], false);
  for (const auto& c : m["criteria"]) EXPECT_EQ(c["passed"].get<bool>(), c["id"] != 2) << c.dump();
}

TEST(Cli, ThreadsEnvironmentOverride) {
  const std::vector<std::string> cmd = {"search", "--ineq", "shapiro-exp", "--n", "5", "--k", "0.9", "--restarts", "6"};
  const auto single = run_cli(cmd);
  ASSERT_EQ(single.code, 0) << single.err;
  {
    ScopedEnv env("CYCLINEQ_THREADS", "3");
    EXPECT_EQ(run_cli(cmd).out, single.out);
  }
  {
    ScopedEnv env("CYCLINEQ_THREADS", "many");
    EXPECT_EQ(run_cli(cmd).code, 2);
  }
}
