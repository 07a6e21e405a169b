#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "eon/netgraph.hpp"
#include "eon/simcore.hpp"

namespace fs = std::filesystem;

namespace {

int eonsim(const std::string& args) {
  const std::string cmd = std::string(EONSIM_PATH) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("eonsim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, GenerateWritesGraphsAndStats) {
  ASSERT_EQ(eonsim("generate --vertices 20 --count 3 --seed 4 --omega 64 --out-dir " + dir_.string()), 0);
  for (const char* name : {"graph_000.txt", "graph_001.txt", "graph_002.txt", "stats.csv"}) {
    EXPECT_TRUE(fs::exists(dir_ / name)) << name;
  }
  const eon::Multigraph g = eon::load_graph(dir_ / "graph_001.txt");
  EXPECT_EQ(g.vertex_count(), 20);
  EXPECT_EQ(g.omega(), 64);
  EXPECT_TRUE(g.same_topology(eon::gabriel_generate(20, eon::kDefaultDensity, 5, 64).graph));
  const std::string stats = slurp(dir_ / "stats.csv");
  EXPECT_EQ(stats.rfind("quantity,min,average,max,variance\nnumber of edges,", 0), 0u);
}

TEST_F(CliTest, RunConfigAndStats) {
  ASSERT_EQ(eonsim("generate --vertices 15 --count 1 --out-dir " + dir_.string()), 0);
  const std::string graph = path("graph_000.txt");
  {
    std::ofstream cfg(path("run.cfg"));
    cfg << "# defaults\nomega = 32\ngamma = 3\nmu = 0.6\ndays = 50\nalgos = generic,filtered\n";
  }
  ASSERT_EQ(eonsim("run --config " + path("run.cfg") + " --graph " + graph + " --days 10 --seed 1 --out " +
                   path("a.csv")),
            0);
  ASSERT_EQ(eonsim("run --graph " + graph + " --omega 32 --gamma 3 --mu 0.6 --days 10 --algos " +
                   "generic,filtered --seed 1 --out " + path("b.csv")),
            0);
  std::ifstream a(path("a.csv")), b(path("b.csv"));
  const auto ra = eon::read_run_csv(a);
  const auto rb = eon::read_run_csv(b);
  ASSERT_FALSE(ra.empty());
  ASSERT_EQ(ra.size(), rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    EXPECT_EQ(ra[i].day, rb[i].day);
    EXPECT_EQ(ra[i].metrics.cost, rb[i].metrics.cost);
    EXPECT_LT(ra[i].day, 10.0);  // the flag beat the file's days = 50
  }

  ASSERT_EQ(eonsim("run --graph " + graph + " --omega 32 --gamma 3 --mu 0.6 --days 10 --seed 2 --out " +
                   path("c.csv")),
            0);
  ASSERT_EQ(eonsim("stats " + path("a.csv") + " " + path("c.csv") + " --out " + path("pop.csv")), 0);
  const std::string pop = slurp(path("pop.csv"));
  EXPECT_EQ(pop.rfind("metric,algo,sample_mean,sample_max,rse,ci95,samples,low_sample\n", 0), 0u);
  EXPECT_NE(pop.find("\ntime_us,generic,"), std::string::npos);
  EXPECT_NE(pop.find("\nwords,generic,"), std::string::npos);
}

TEST_F(CliTest, SweepWritesOneBlockPerGridPoint) {
  ASSERT_EQ(eonsim("sweep --vertices 12 --samples 2 --omega 16,32 --mu 0.2 --gamma 1,3 --days 5 "
                   "--out " + path("sweep.csv")),
            0);
  const std::string text = slurp(path("sweep.csv"));
  EXPECT_EQ(text.rfind("omega,mu,gamma,metric,algo,", 0), 0u);
  EXPECT_NE(text.find("\n16,0.2,1,time_us,generic,"), std::string::npos);
  EXPECT_NE(text.find("\n32,0.2,3,words,filtered,"), std::string::npos);
  EXPECT_EQ(text.find("omega,mu,gamma", 1), std::string::npos);  // header once
}

TEST_F(CliTest, VerifyAndErrors) {
  EXPECT_EQ(eonsim("verify --instances 50 --max-vertices 6 --max-omega 8 --seed 2"), 0);
  EXPECT_NE(eonsim("run --graph " + path("missing.txt")), 0);
  EXPECT_NE(eonsim("run"), 0);
  EXPECT_NE(eonsim("bogus"), 0);
  ASSERT_EQ(eonsim("generate --vertices 10 --out-dir " + dir_.string()), 0);
  EXPECT_NE(eonsim("run --graph " + path("graph_000.txt") + " --policy worst-fit --out " + path("x.csv")), 0);
  EXPECT_NE(eonsim("run --graph " + path("graph_000.txt") + " --algos yen --out " + path("x.csv")), 0);
  EXPECT_NE(eonsim("stats " + path("graph_000.txt") + " " + path("graph_000.txt")), 0);
}

}  // namespace
