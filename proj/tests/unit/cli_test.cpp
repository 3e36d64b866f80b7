#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "remgibbs/rem.hpp"

namespace remgibbs::cli {
namespace {

struct Outcome {
  int status = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "remgibbs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(ParseArgs, BetaForms) {
  std::ostringstream help;
  const char* a[] = {"remgibbs", "--cmd", "simulate", "--beta-over-betac", "2,3"};
  const auto cfg = parse_args(5, a, help);
  ASSERT_TRUE(cfg);
  ASSERT_EQ(cfg->betas.size(), 2u);
  EXPECT_NEAR(cfg->betas[1], 3.0 * beta_c(), 1e-15);
  const char* b[] = {"remgibbs", "--cmd", "simulate", "--beta", "2.5", "--N-range", "10:12"};
  const auto cfg2 = parse_args(7, b, help);
  EXPECT_EQ(cfg2->betas[0], 2.5);
  EXPECT_EQ(cfg2->Ns, (std::vector<int>{10, 11, 12}));
  const char* c[] = {"remgibbs", "--cmd", "verify"};
  EXPECT_NEAR(parse_args(3, c, help)->betas[0], 2.0 * beta_c(), 1e-15);
}

TEST(ParseArgs, Rejections) {
  EXPECT_EQ(invoke({"--cmd", "simulate", "--beta", "3", "--beta-over-betac", "2"}).status, 2);
  EXPECT_EQ(invoke({"--cmd", "bogus"}).status, 2);
  EXPECT_EQ(invoke({"--cmd", "verify", "--replicas", "0"}).status, 2);
  EXPECT_EQ(invoke({"--cmd", "simulate", "--N", "10", "--N-range", "1:3"}).status, 2);
}

TEST(ParseArgs, Help) {
  const Outcome o = invoke({"--help"});
  EXPECT_EQ(o.status, 0);
  EXPECT_NE(o.out.find("--beta-over-betac"), std::string::npos);
}

TEST(ParseArgs, SeedFromEnvironment) {
  std::ostringstream help;
  const char* a[] = {"remgibbs", "--cmd", "verify"};
  ::setenv("REMGIBBS_SEED", "777", 1);
  EXPECT_EQ(parse_args(3, a, help)->seed, 777u);
  const char* b[] = {"remgibbs", "--cmd", "verify", "--seed", "5"};
  EXPECT_EQ(parse_args(5, b, help)->seed, 5u);
  ::unsetenv("REMGIBBS_SEED");
  EXPECT_EQ(parse_args(3, a, help)->seed, 42u);
}

TEST(FreeEnergy, CriticalLimitColumn) {
  const Outcome o = invoke({"--cmd", "free-energy", "--N", "8", "--beta-over-betac", "1",
                            "--replicas", "3"});
  ASSERT_EQ(o.status, 0) << o.err;
  const auto l = lines(o.out);
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "# remgibbs-csv v1 free-energy");
  EXPECT_EQ(l[1], "N,beta,mean_FN,sd_FN,F_limit");
  EXPECT_NE(l[2].find(",-1.17741002252"), std::string::npos) << l[2];
}

TEST(FreeEnergy, Deterministic) {
  const std::vector<std::string> args{"--cmd", "free-energy", "--N", "10,12", "--replicas", "1",
                                      "--seed", "9"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(FreeEnergy, ResourceGuard) {
  const Outcome o = invoke({"--cmd", "free-energy", "--N", "26", "--replicas", "1"});
  EXPECT_EQ(o.status, 2);
  EXPECT_NE(o.err.find("26"), std::string::npos);
}

TEST(Verify, EmptySelection) {
  const Outcome o = invoke({"--cmd", "verify", "--checks", ""});
  EXPECT_EQ(o.status, 2);
  EXPECT_NE(o.err.find("no checks selected"), std::string::npos) << o.err;
  EXPECT_EQ(invoke({"--cmd", "verify", "--checks", "nope"}).status, 2);
}

TEST(Verify, Lemma21Row) {
  const Outcome o = invoke({"--cmd", "verify", "--checks", "lemma21", "--replicas", "2000"});
  ASSERT_EQ(o.status, 0) << o.err;
  const auto l = lines(o.out);
  EXPECT_EQ(l[1], "name,empirical,se,bound,holds,params");
  EXPECT_EQ(l[2].rfind("lemma21,", 0), 0u);
  EXPECT_NE(l[2].find(",0.0208136898101,true,n=1048576;delta=1"), std::string::npos) << l[2];
}

TEST(Verify, SubsetReproducesFullRun) {
  const Outcome sub =
      invoke({"--cmd", "verify", "--checks", "lemma22", "--replicas", "500", "--seed", "3"});
  const Outcome two = invoke(
      {"--cmd", "verify", "--checks", "lemma21,lemma22", "--replicas", "500", "--seed", "3"});
  const auto a = lines(sub.out);
  const auto b = lines(two.out);
  ASSERT_EQ(b.size(), a.size() + 2);
  EXPECT_EQ(a[2], b[4]);
  EXPECT_EQ(a[3], b[5]);
}

TEST(Verify, WorkerCountDoesNotChangeOutput) {
  const std::vector<std::string> base{"--cmd", "verify", "--checks", "lemma22,zeta_mean,prop22",
                                      "--replicas", "300"};
  auto one = base;
  one.insert(one.end(), {"--workers", "1"});
  auto three = base;
  three.insert(three.end(), {"--workers", "3"});
  EXPECT_EQ(invoke(one).out, invoke(three).out);
}

TEST(Verify, JsonFormat) {
  const Outcome o = invoke({"--cmd", "verify", "--checks", "bernstein", "--replicas", "100",
                            "--format", "json"});
  ASSERT_EQ(o.status, 0) << o.err;
  const auto j = nlohmann::json::parse(lines(o.out).at(0));
  EXPECT_EQ(j["name"], "bernstein");
  EXPECT_TRUE(j["holds"].get<bool>());
  EXPECT_EQ(j["params"]["p"], 0.3);
}

TEST(Simulate, RequiresFrozenPhase) {
  const Outcome o = invoke({"--cmd", "simulate", "--beta-over-betac", "0.9", "--replicas", "1"});
  EXPECT_EQ(o.status, 2);
  EXPECT_NE(o.err.find("beta"), std::string::npos) << o.err;
}

TEST(Simulate, JsonRecords) {
  const std::vector<std::string> args{"--cmd", "simulate", "--N", "40", "--schedule", "p3",
                                      "--replicas", "3", "--format", "json", "--seed", "11"};
  const Outcome o = invoke(args);
  ASSERT_EQ(o.status, 0) << o.err;
  const auto l = lines(o.out);
  ASSERT_EQ(l.size(), 3u);
  for (const auto& line : l) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j["N"], 40);
    EXPECT_EQ(j["kN"], 11);
    EXPECT_NEAR(j["beta_over_betac"].get<double>(), 2.0, 1e-15);
    double total = 0.0;
    for (double w : j["weights"]) total += w;
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_EQ(j["configs"].size(), 11u);
    EXPECT_EQ(j["configs"][0].get<std::string>().rfind("0x", 0), 0u);
    EXPECT_TRUE(j["summary"].contains("participation"));
  }
  EXPECT_EQ(o.out, invoke(args).out);
}

TEST(Compare, TvWithinBoundOnOmega) {
  const Outcome o = invoke({"--cmd", "compare", "--N", "14", "--replicas", "60"});
  ASSERT_EQ(o.status, 0) << o.err;
  const auto l = lines(o.out);
  ASSERT_EQ(l[0], "# remgibbs-csv v1 compare");
  int rows = 0;
  for (std::size_t i = 2; i < l.size(); ++i) {
    if (l[i][0] == '#') {
      EXPECT_EQ(l[i].rfind("# ks N=14", 0), 0u);
      continue;
    }
    std::vector<std::string> f;
    std::istringstream in(l[i]);
    for (std::string c; std::getline(in, c, ',');) f.push_back(c);
    ASSERT_EQ(f.size(), 11u);
    const double tv = std::stod(f[4]);
    const double bound = std::stod(f[5]);
    EXPECT_GE(tv, 0.0);
    EXPECT_LE(tv, 2.0);
    if (f[6] == "1") EXPECT_LE(tv, bound) << l[i];
    ++rows;
  }
  EXPECT_EQ(rows, 60);
}

TEST(Compare, ResourceGuard) {
  EXPECT_EQ(invoke({"--cmd", "compare", "--N", "23", "--replicas", "1"}).status, 2);
}

}  // namespace
}  // namespace remgibbs::cli
