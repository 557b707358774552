#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "eai/dataset.hpp"
#include "test_data.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("eai_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result run(const std::string& args) const {
    const auto out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    const std::string cmd = "cd '" + dir_.string() + "' && '" + EAI_CLI_PATH + "' " + args + " >'" +
                            out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  fs::path dir_;
};

TEST_F(Cli, GenSimWritesRequestedColumns) {
  const auto r = run("gen-sim --samples 500 --informative 15 --redundant 0 --noise 5 --seed 7 --out sim.csv");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("seed=7"), std::string::npos);
  const auto d = eai::load_csv((dir_ / "sim.csv").string(), "target", eai::Task::Classification);
  EXPECT_EQ(d.cols(), 20);
  EXPECT_EQ(d.rows(), 500);
  std::ifstream in(dir_ / "sim.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 20);
}

TEST_F(Cli, UsageErrorsExitOne) {
  for (const char* args :
       {"roar", "roar --bogus 1", "roar --data x.csv --target y --task regression --samples 100 --informative 2",
        "roar --samples abc --informative 2", "roar --samples 100 --informative 2 --mode permute",
        "roar --data x.csv --task regression", "", "fcp --samples 100 --informative 2 --method lime"}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 1) << args << "\n" << r.err;
    EXPECT_FALSE(r.err.empty()) << args;
  }
}

TEST_F(Cli, MissingFileExitsTwo) {
  const auto r = run("roar --data missing.csv --target y --task regression");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("missing.csv"), std::string::npos);
}

TEST_F(Cli, FcpSingleFeatureIsOne) {
  std::ofstream(dir_ / "one.csv") << "x,y\n1,2.1\n2,3.9\n3,6.2\n4,7.8\n";
  const auto r = run("fcp --data one.csv --target y --task regression");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("fcp=1.0000"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("msf=x"), std::string::npos);
}

TEST_F(Cli, FcpZeroSignalFails) {
  std::ofstream(dir_ / "flat.csv") << "a,b,y\n1,5,0\n1,5,1\n1,5,2\n1,5,3\n";
  const auto r = run("fcp --data flat.csv --target y --task regression");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("no informative feature"), std::string::npos) << r.err;
}

TEST_F(Cli, RoarWritesReproducibleOutputs) {
  const std::string args = "roar --samples 800 --informative 3 --redundant 1 --noise 2 --seed 11 --out run";
  const auto first = run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  EXPECT_NE(first.out.find("records=6"), std::string::npos) << first.out;
  EXPECT_NE(first.err.find("eai: config: roar --samples 800"), std::string::npos);
  const auto csv = slurp(dir_ / "run_campaign.csv");
  const auto txt = slurp(dir_ / "run_campaign.txt");
  const auto svg = slurp(dir_ / "run_trajectory.svg");
  EXPECT_EQ(csv.rfind("iteration,msf,accuracy,li,ui,within\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_NE(txt.find("# seed: 11"), std::string::npos);
  EXPECT_NE(txt.find("Iteration"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);

  const auto second = run(args);
  ASSERT_EQ(second.code, 0);
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(slurp(dir_ / "run_campaign.csv"), csv);
  EXPECT_EQ(slurp(dir_ / "run_campaign.txt"), txt);
  EXPECT_EQ(slurp(dir_ / "run_trajectory.svg"), svg);
}

TEST_F(Cli, PermuteFromCsvFile) {
  ASSERT_EQ(run("gen-sim --samples 400 --informative 2 --noise 2 --seed 3 --out d.csv").code, 0);
  const auto r = run("permute --data d.csv --target target --task classification --method perm --repeats 2 --out p");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("permute: records=4"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(dir_ / "p_campaign.csv"));
}

TEST_F(Cli, CorrWritesMatrix) {
  const auto r = run("corr --samples 300 --informative 2 --redundant 1 --noise 1 --seed 5 --out c");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = slurp(dir_ / "c_corr.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), ",X1,X2,X3,X4,target");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

TEST_F(Cli, WineExample) {
  const auto wine = testdata::wine_csv();
  if (!wine) GTEST_SKIP() << "white-wine CSV not available (set EAI_WINE_CSV)";
  const auto r = run("roar --data '" + *wine +
                     "' --target quality --task regression --features "
                     "fixed_acidity,volatile_acidity,citric_acid,residual_sugar,chlorides,"
                     "free_sulfur_dioxide,total_sulfur_dioxide,density,sulphates,alcohol --out wine");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("MSF[1]=alcohol"), std::string::npos) << r.out;
}

}  // namespace
