#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

Run crystack(const std::string &args) {
  const std::string cmd = std::string("\"") + CRYSTACK_PATH + "\" " + args + " 2>/dev/null";
  std::unique_ptr<FILE, int (*)(FILE *)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0)
    out.append(buf.data(), n);
  const int status = pclose(pipe.release());
  return {WEXITSTATUS(status), out};
}

nlohmann::json group(std::initializer_list<long> torsion) {
  return {{"free_rank", 0}, {"torsion", torsion}};
}

} // namespace

TEST(Cli, GroupHomologyOfKleinFour) {
  const auto r = crystack("group-homology --group 2,2 --max-degree 2 --json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["homology"]["2"], group({2}));
  EXPECT_EQ(j["homology"]["1"], group({2, 2}));
}

TEST(Cli, StableH2OfConstantZ4) {
  const auto r = crystack("stack-cohomology --constant-group 4 --p 2 --witt-length 3 --max-degree 2");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["stable"]["2"], group({4}));
  EXPECT_EQ(j["stable"]["1"], group({}));
  EXPECT_TRUE(j["all_pass"].get<bool>());
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(crystack("").code, 2);
  EXPECT_EQ(crystack("no-such-command").code, 2);
  EXPECT_EQ(crystack("group-homology --max-degree x").code, 2);
  EXPECT_EQ(crystack("--p 6 group-homology --group 2").code, 2);
  EXPECT_EQ(crystack("stack-cohomology --compare alpha_p --p 2").code, 2);
  EXPECT_EQ(crystack("witt --op mul --x [1]").code, 2);
  EXPECT_EQ(crystack("verify --suite nonsense").code, 2);
  EXPECT_EQ(crystack("--help").code, 0);
}

TEST(Cli, ConfigFileWithFlagsWinning) {
  {
    std::ofstream f("cli_config.json");
    f << R"({"group": [2, 4], "max-degree": 3, "format": "csv"})";
  }
  const auto csv = crystack("group-homology --config cli_config.json");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.rfind("table,degree,invariant_factor\n", 0), 0u);
  EXPECT_NE(csv.out.find("H,3,4\n"), std::string::npos);

  const auto json = crystack("group-homology --config cli_config.json --max-degree 1 --format json");
  ASSERT_EQ(json.code, 0);
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_EQ(j["max_degree"], 1);
  EXPECT_EQ(j["homology"]["1"], group({2, 4}));
}

TEST(Cli, OutputIsByteIdentical) {
  for (const char *args : {"specseq --genus 1 --p 2 -N 2 --max-degree 4",
                           "stack-cohomology --pdivisible 2 --p 2 -N 1 --max-degree 2",
                           "dieudonne --p 3 -N 4 --catalog 'W(1,2)'"}) {
    const auto a = crystack(args), b = crystack(args);
    ASSERT_EQ(a.code, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
    EXPECT_FALSE(a.out.empty());
  }
}

TEST(Cli, VerifySubsetWritesReport) {
  const auto r = crystack("verify --suite witt --report cli_report.json");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[PASS]  1"), std::string::npos);
  std::ifstream f("cli_report.json");
  const auto j = nlohmann::json::parse(f);
  EXPECT_TRUE(j["pass"].get<bool>());
  ASSERT_EQ(j["criteria"].size(), 1u);
  EXPECT_FALSE(j["criteria"][0]["reference"].get<std::string>().empty());
}
