#include <gtest/gtest.h>

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(HEUN_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string config(const std::string& name) { return std::string(HEUN_CONFIG_DIR) + "/" + name; }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("heun_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(count_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }

 private:
  fs::path path_;
  static inline int count_ = 0;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

} // namespace

TEST(Cli, ClassifyListsSpecialAndRestricted) {
  const auto r = run("classify --config " + config("classify_special_restricted.json"));
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  const auto classes = j["classes"].get<std::vector<std::string>>();
  EXPECT_NE(std::find(classes.begin(), classes.end(), "special"), classes.end());
  EXPECT_NE(std::find(classes.begin(), classes.end(), "restricted_first"), classes.end());
  EXPECT_EQ(std::find(classes.begin(), classes.end(), "general"), classes.end());
  EXPECT_FALSE(j["branches"].empty());
}

TEST(Cli, ZeroStrengthPotentialIsZero) {
  const auto r = run("potential --config " + config("zero_strength.json"));
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "lambda_x,two_V_over_lambda2");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.find(',') + 1), "0") << line;
  }
  EXPECT_EQ(rows, 41);
}

TEST(Cli, PoschlTellerSpectrumToDirectory) {
  TempDir dir;
  const auto r = run("spectrum --config " + config("poschl_teller.json") + " --out " + dir.path().string());
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  const auto j = json::parse(slurp(dir.path() / "spectrum.json"));
  EXPECT_EQ(j["command"], "spectrum");
  ASSERT_EQ(j["levels"].size(), 2u);
  EXPECT_DOUBLE_EQ(j["levels"][0]["energy_formula"].get<double>(), -1.0);
  EXPECT_TRUE(j["levels"][1]["threshold"].get<bool>());
  EXPECT_LT(j["max_relative_deviation"].get<double>(), 1e-3);
  const auto csv = slurp(dir.path() / "spectrum.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,energy_formula,energy_numeric,numeric_estimate,relative_deviation,threshold");
}

TEST(Cli, OutputIsDeterministic) {
  const auto a = run("wavefunction --config " + config("general_half_one.json"));
  const auto b = run("wavefunction --config " + config("general_half_one.json"));
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "lambda_x,psi");
}

TEST(Cli, VerifyPassesAndFlagOverrides) {
  const auto ok = run("verify --config " + config("general_half_one.json"));
  ASSERT_EQ(ok.code, 0);
  const auto j = json::parse(ok.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_LT(j["residual"]["rms_richardson"].get<double>(), 1e-6);
  EXPECT_EQ(j["nterms"], 64);
  const auto strict = run("verify --config " + config("general_half_one.json") + " --tol 1e-30 --nterms 40");
  EXPECT_EQ(strict.code, 3);
  EXPECT_EQ(json::parse(strict.out)["nterms"], 40);
}

TEST(Cli, PolysFindWilsonBoundState) {
  TempDir dir;
  const auto r = run("polys --config " + config("wilson.json") + " --out " + dir.path().string());
  ASSERT_EQ(r.code, 0);
  const auto spec = slurp(dir.path() / "polys_spectrum.csv");
  std::istringstream in(spec);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "z_squared,drift,tolerance");
  std::getline(in, line);
  EXPECT_NEAR(std::stod(line.substr(0, line.find(','))), -0.36, 1e-2);
  EXPECT_TRUE(fs::exists(dir.path() / "polys.csv"));
}

TEST(Cli, MalformedConfigsAreUsageErrors) {
  TempDir dir;
  const auto unknown = dir.write("unknown.json", R"({"class": "general", "case": "1,1", "colour": 3})");
  auto r = run("potential --config " + unknown);
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
  const auto broken = dir.write("broken.json", R"({"class": "general", )");
  EXPECT_EQ(run("potential --config " + broken).code, 1);
  const auto type = dir.write("type.json", R"({"class": "general", "case": "1,1", "d": "two"})");
  EXPECT_EQ(run("potential --config " + type).code, 1);
  const auto version = dir.write("version.json", R"({"schema_version": 7})");
  EXPECT_EQ(run("classify --config " + version).code, 1);
  EXPECT_EQ(run("potential").code, 1);
  EXPECT_EQ(run("nonsense --config " + unknown).code, 1);
}

TEST(Cli, ConstraintFailureWritesNothing) {
  TempDir dir;
  // A = 5 breaks 4A/d <= (1-a)^2 for the general (1,1) row.
  const auto cfg = dir.write("bad.json", R"({"class": "general", "case": "1,1", "d": 2.0, "c": 1.5, "B": -1.0,
                                            "u": [3.0, 0.0, 0.0]})");
  const auto out = dir.path() / "out";
  const auto r = run("spectrum --config " + cfg + " --out " + out.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(fs::exists(out / "spectrum.csv"));
  EXPECT_FALSE(fs::exists(out / "spectrum.json"));
  // The same row still classifies (and reports the violated inequality).
  const auto c = run("classify --config " + cfg);
  ASSERT_EQ(c.code, 0);
  const auto j = json::parse(c.out);
  EXPECT_TRUE(j["classes"].empty());
  EXPECT_FALSE(j["notes"].empty());
}
