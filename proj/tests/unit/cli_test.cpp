#include "cli.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace rshell {
namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

double value_after(const std::string& text, const std::string& label) {
  const std::regex re(label + ": ([-+0-9.eE]+)");
  std::smatch m;
  if (!std::regex_search(text, m, re)) throw std::runtime_error("missing '" + label + "' in output:\n" + text);
  return std::stod(m[1].str());
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("rshell_cli_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

TEST(Cli, CheckMaterial) {
  const Outcome ok = run_cli({"check-material", "--config", testing::data_path("plate_stretch.toml")});
  EXPECT_EQ(ok.code, cli::kSuccess);
  EXPECT_NE(ok.out.find("pass: yes"), std::string::npos);
  EXPECT_GT(value_after(ok.out, "coercivity constant C0"), 0.0);

  const Outcome bad = run_cli({"check-material", "--config", testing::data_path("bad_poisson.toml")});
  EXPECT_EQ(bad.code, cli::kValidationFailure);
  EXPECT_NE(bad.out.find("violated: nu < 1/2"), std::string::npos) << bad.out;
}

TEST(Cli, GeometryInfoOnCylinder) {
  const Outcome r = run_cli({"geometry-info", "--config", testing::data_path("cylinder_rigid.toml")});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  EXPECT_NEAR(value_after(r.out, "lambda0"), 1.0, 1e-12);
  const std::regex re("gaussian curvature: min ([-+0-9.eE]+) max ([-+0-9.eE]+)");
  std::smatch m;
  ASSERT_TRUE(std::regex_search(r.out, m, re)) << r.out;
  EXPECT_NEAR(std::stod(m[1].str()), 0.0, 1e-8);
  EXPECT_NEAR(std::stod(m[2].str()), 0.0, 1e-8);
}

TEST(Cli, MinimizeRigidProblemAndReuseState) {
  const auto dir = scratch("rigid");
  const Outcome r = run_cli({"minimize", "--config", testing::data_path("cylinder_rigid.toml"), "--out", dir.string()});
  ASSERT_EQ(r.code, cli::kSuccess) << r.out << r.err;
  EXPECT_LE(value_after(r.out, "final energy"), 1e-10);
  for (const char* f : {"nodes.csv", "strains.csv", "report.json"}) EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;

  const std::string state = (dir / "nodes.csv").string();
  const Outcome e = run_cli({"energy", "--config", testing::data_path("cylinder_rigid.toml"), "--state", state});
  ASSERT_EQ(e.code, cli::kSuccess) << e.err;
  EXPECT_NEAR(value_after(e.out, "total functional I"), value_after(r.out, "final energy"), 1e-12);

  const auto rdir = scratch("recon");
  const Outcome c = run_cli({"reconstruct", "--config", testing::data_path("cylinder_rigid.toml"), "--state", state,
                             "--out", rdir.string()});
  ASSERT_EQ(c.code, cli::kSuccess) << c.err;
  EXPECT_EQ(value_after(c.out, "points"), 3.0 * 81.0);
  EXPECT_TRUE(std::filesystem::exists(rdir / "reconstruction.csv"));
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(rdir);
}

TEST(Cli, MinimizeVtkAndOverrides) {
  const auto dir = scratch("vtk");
  const Outcome r = run_cli({"minimize", "--config", testing::data_path("plate_stretch.toml"), "--out", dir.string(),
                             "--format", "vtk", "--threads", "2", "--seed", "3"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  EXPECT_NEAR(value_after(r.out, "final energy"), 1e-5, 1e-12);
  EXPECT_TRUE(std::filesystem::exists(dir / "result.vtk"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, ErrorExitCodes) {
  const Outcome unknown = run_cli({"minimize", "--config", testing::data_path("unknown_key.toml")});
  EXPECT_EQ(unknown.code, cli::kConfigError);
  EXPECT_NE(unknown.err.find("unknown_key.toml:4:"), std::string::npos) << unknown.err;

  const Outcome nodir = run_cli({"energy", "--config", testing::data_path("no_dirichlet.toml")});
  EXPECT_EQ(nodir.code, cli::kConfigError);

  const Outcome invalid = run_cli({"minimize", "--config", testing::data_path("bad_poisson.toml")});
  EXPECT_EQ(invalid.code, cli::kValidationFailure);
  EXPECT_NE(invalid.err.find("nu < 1/2"), std::string::npos);

  EXPECT_EQ(run_cli({}).code, cli::kConfigError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kConfigError);
  EXPECT_EQ(run_cli({"energy"}).code, cli::kConfigError);
  EXPECT_EQ(run_cli({"minimize", "--config", testing::data_path("plate_stretch.toml"), "--format", "xml"}).code,
            cli::kConfigError);
  EXPECT_EQ(run_cli({"energy", "--config", testing::data_path("plate_stretch.toml"), "--state", "/nonexistent.csv"}).code,
            cli::kConfigError);
}

TEST(Cli, LenientModeEvaluatesInvalidMaterial) {
  const Outcome r = run_cli({"energy", "--config", testing::data_path("bad_poisson.toml"), "--lenient"});
  EXPECT_EQ(r.code, cli::kSuccess) << r.err;
  EXPECT_NO_THROW(value_after(r.out, "strain energy"));
}

TEST(Cli, NotConvergedExitCode) {
  const auto dir = scratch("nc");
  std::ifstream in(testing::data_path("cantilever_load.toml"));
  std::stringstream text;
  text << in.rdbuf();
  std::string cfg = std::regex_replace(text.str(), std::regex("max_iter = 3000"), "max_iter = 2");
  const auto path = std::filesystem::temp_directory_path() / "rshell_cli_test_nc.toml";
  std::ofstream(path) << cfg;
  const Outcome r = run_cli({"minimize", "--config", path.string(), "--out", dir.string()});
  EXPECT_EQ(r.code, cli::kNotConverged);
  EXPECT_NE(r.out.find("maximum number of iterations reached"), std::string::npos);
  std::filesystem::remove_all(dir);
  std::filesystem::remove(path);
}

TEST(Cli, Help) {
  const Outcome r = run_cli({"--help"});
  EXPECT_EQ(r.code, cli::kSuccess);
  EXPECT_NE(r.out.find("minimize"), std::string::npos);
}

}  // namespace
}  // namespace rshell
