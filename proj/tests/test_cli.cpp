#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(CUBICLAB_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  while (std::size_t k = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), k);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string form(const std::string& name) { return std::string(CUBICLAB_FORMS) + "/" + name; }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, CountAuxCsvRow) {
  const auto r = cli("count aux --form " + form("fermat3.form") + " --B 8");
  EXPECT_EQ(r.status, 0);
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "n,B,strictness,count");
  EXPECT_EQ(l[1], "3,8,strict,50653");
}

TEST(Cli, DavenportVerifyJson) {
  const auto r = cli("davenport verify --form " + form("random5.form") + " --b 3 --trials 200");
  EXPECT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["report"]["trials"], 200);
  EXPECT_TRUE(j["report"]["pass"].get<bool>());
}

TEST(Cli, CircleReportRows) {
  const auto r = cli("circle report --form " + form("mixed8.form") + " --P 8,16,32 --seed 42 --samples 1e5");
  EXPECT_EQ(r.status, 0);
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0].rfind("P,N,", 0), 0u);
  EXPECT_EQ(l[1].rfind("8,9901361,", 0), 0u);
  EXPECT_EQ(l[3].rfind("32,7725750593,", 0), 0u);
}

TEST(Cli, JsonDocumentsCarrySchema) {
  for (const std::string args : {"classify --B 4 --histogram", "trichotomy --B 4 --C 4", "davenport dichotomy --B 8 --C 8",
                                 "circle series --cutoff 13"}) {
    const auto r = cli(args + " --format json --form " + form("fermat3.form"));
    ASSERT_EQ(r.status, 0) << args;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema"], 1) << args;
    EXPECT_TRUE(j.contains("op")) << args;
  }
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("").status, 2);
  EXPECT_EQ(cli("count aux --form " + form("fermat3.form") + " --no-such-flag").status, 2);
  EXPECT_EQ(cli("count aux --form /nonexistent.form").status, 2);
  EXPECT_EQ(cli("circle report --form " + form("mixed8.form") + " --samples 0.5").status, 2);
  EXPECT_EQ(cli("circle report --form " + form("fermat3.form")).status, 1);  // needs n >= 4
  EXPECT_EQ(cli("davenport verify --form " + form("fermat3.form") + " --b 5").status, 1);
  EXPECT_EQ(cli("--help").status, 0);
}

TEST(Cli, ThreadsDoNotChangeOutput) {
  const std::string args = "circle integral --form " + form("mixed8.form") + " --samples 200000 --seed 7";
  const auto a = cli(args + " --threads 1"), b = cli(args + " --threads 3");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
}
