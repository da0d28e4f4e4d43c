#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "support.hpp"
#include "unitint/errors.hpp"

using namespace unitint;
using namespace unitint::cli;
using nlohmann::json;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

RunConfig config(const std::string& text) { return parse_config(json::parse(text)); }

std::string csv_of(const RunConfig& cfg) {
  std::ostringstream out;
  write_csv(run_evolve(cfg), out);
  return out.str();
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t c = 0; c < t.header.size(); ++c)
    if (t.header[c] == name) return c;
  throw std::out_of_range(name);
}

std::string loop_csv(double theta1, double theta2, int n) {
  std::ostringstream s;
  s << "t,theta1,theta2,eps1,eps2\n";
  for (int k = 0; k <= n; ++k)
    s << k << ',' << format_number(theta1) << ',' << format_number(theta2) << ','
      << format_number(2 * pi * k / n) << ",0.25\n";
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("unitint_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(Config, DefaultsAndWindows) {
  const auto c = config(R"({"model": "stirap"})");
  EXPECT_EQ(c.t0, -12.0);
  EXPECT_EQ(c.t1, 15.0);
  EXPECT_EQ(c.samples, 1001u);
  EXPECT_EQ(c.pipeline, Pipeline::SU3);
  const auto k = config(R"({"model": "kancheva", "parameters": {"delta": 12}, "pipeline": "su4"})");
  EXPECT_EQ(k.kancheva.delta, 12.0);
  EXPECT_EQ(k.t1, 20.0);
  EXPECT_EQ(k.pipeline, Pipeline::SU4);
  const auto t = config(R"({"model": "trapping", "parameters": {"G1": [0, 6]}})");
  EXPECT_EQ(t.trapping.G1, cplx(0, 6));
}

TEST(Config, RejectsInvalid) {
  EXPECT_THROW(config(R"({"model": "nope"})"), ConfigInvalid);
  EXPECT_THROW(config(R"({"parameters": {}})"), ConfigInvalid);
  EXPECT_THROW(config(R"({"model": "stirap", "extra": 1})"), ConfigInvalid);
  EXPECT_THROW(config(R"({"model": "stirap", "parameters": {"Omega": 1}})"), ConfigInvalid);
  EXPECT_THROW(config(R"({"model": "stirap", "samples": 1})"), ConfigInvalid);
  EXPECT_THROW(config(R"({"model": "stirap", "t0": 2, "t1": 1})"), ConfigInvalid);
  EXPECT_THROW(config(R"({"model": "stirap", "tol": 1e-2})"), ConfigInvalid);
  EXPECT_THROW(config(R"({"model": "stirap", "tol": 1e-13})"), ConfigInvalid);
  EXPECT_THROW(config(R"({"model": "stirap", "parameters": {"tau": 0}})"), ConfigInvalid);
  EXPECT_THROW(config(R"({"model": "custom-coefficients", "parameters": {"a": [1, 2]}})"), ConfigInvalid);
  EXPECT_THROW(config(R"({"model": "dm", "parameters": {"beta": [0.3, 0, 0]}})"), ConfigInvalid);
  EXPECT_NO_THROW(config(R"({"model": "dm", "parameters": {"beta": [0, 0.3, 0.1]}})"));
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigInvalid);
}

TEST(Config, Overrides) {
  auto c = config(R"({"model": "stirap"})");
  apply(c, Overrides{Pipeline::Oracle, 1e-8, 11});
  EXPECT_EQ(c.pipeline, Pipeline::Oracle);
  EXPECT_EQ(c.tol, 1e-8);
  EXPECT_EQ(c.samples, 11u);
  EXPECT_THROW(apply(c, Overrides{std::nullopt, 5.0, std::nullopt}), ConfigInvalid);
}

TEST(Format, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-12.0), "-12");
  for (int k = 0; k < 200; ++k) {
    const double x = testing_support::uniform(-1e3, 1e3) * std::pow(10.0, k % 17 - 8);
    EXPECT_EQ(std::stod(format_number(x)), x);
  }
}

TEST(Evolve, HeaderAndStirapTransfer) {
  auto c = config(R"({"model": "stirap", "samples": 201})");
  const Table t = run_evolve(c);
  EXPECT_EQ(t.header, evolve_header());
  ASSERT_EQ(t.header.size(), 17u);
  EXPECT_EQ(t.rows.size(), 201u);
  EXPECT_GT(t.rows.back()[column(t, "P3")], 0.99);
  for (const auto& r : t.rows) EXPECT_LT(r[column(t, "oracle_deviation")], 1e-6);
}

TEST(Evolve, ZeroCoefficientsStayInInitialState) {
  const Table t = run_evolve(config(R"({"model": "custom-coefficients", "samples": 11})"));
  for (const auto& r : t.rows) {
    EXPECT_EQ(r[1], 1.0);
    EXPECT_EQ(r[2], 0.0);
    EXPECT_EQ(r[3], 0.0);
  }
}

TEST(Evolve, PipelinesAgreeWithOracle) {
  for (const char* p : {"su3", "su4", "oracle"}) {
    auto c = config(std::string(R"({"model": "kancheva", "samples": 101, "pipeline": ")") + p + "\"}");
    const Table t = run_evolve(c);
    for (const auto& r : t.rows) {
      EXPECT_LT(r[column(t, "oracle_deviation")], 1e-6) << p;
      EXPECT_NEAR(r[1] + r[2] + r[3], 1.0, 1e-8) << p;
    }
  }
}

TEST(Evolve, DeterministicOutput) {
  const auto c = config(R"({"model": "trapping", "samples": 51, "t1": 5})");
  EXPECT_EQ(csv_of(c), csv_of(c));
}

TEST(Gphase, Examples) {
  std::istringstream flat("t,theta1,theta2,eps1,eps2\n0,1,1,1,1\n1,1,1,1,1\n");
  EXPECT_EQ(run_gphase(read_angle_path(flat))["gamma_g"].get<double>(), 0.0);
  std::istringstream loop(loop_csv(pi / 2, pi / 2, 200));
  const json r = run_gphase(read_angle_path(loop));
  EXPECT_NEAR(r["gamma_g"].get<double>(), -pi / 2, 1e-12);
  EXPECT_TRUE(r["path_closed"].get<bool>());
  std::istringstream fine(loop_csv(pi / 2, pi / 2, 1000));
  EXPECT_NEAR(run_gphase(read_angle_path(fine))["gamma_g"].get<double>(), r["gamma_g"].get<double>(),
              1e-8);
}

TEST(Gphase, RejectsBadPaths) {
  std::istringstream header("time,a,b,c,d\n0,0,0,0,0\n");
  EXPECT_THROW(read_angle_path(header), PathInvalid);
  std::istringstream coarse("t,theta1,theta2,eps1,eps2\n0,0,0,0,0\n1,0.5,0,0,0\n");
  EXPECT_THROW(read_angle_path(coarse), PathInvalid);
  std::istringstream junk("t,theta1,theta2,eps1,eps2\n0,0,0,0,x\n");
  EXPECT_THROW(read_angle_path(junk), PathInvalid);
  std::istringstream one("t,theta1,theta2,eps1,eps2\n0,0,0,0,0\n");
  EXPECT_THROW(read_angle_path(one), PathInvalid);
}

TEST(Sweep, PointExpansion) {
  EXPECT_TRUE(sweep_points(json::parse(R"({"base": {}, "grid": {}})")).empty());
  EXPECT_TRUE(sweep_points(json::parse(R"({"base": {}, "points": []})")).empty());
  const auto nine = sweep_points(json::parse(
      R"({"base": {}, "grid": {"V1,V2": [[1, 2], [2, 2], [2, 1]], "delta": [1, 5, 50]}})"));
  ASSERT_EQ(nine.size(), 9u);
  EXPECT_EQ(nine[0], json::parse(R"({"V1": 1, "V2": 2, "delta": 1})"));
  EXPECT_THROW(sweep_points(json::parse(R"({"grid": {}})")), ConfigInvalid);
  EXPECT_THROW(sweep_points(json::parse(R"({"base": {}, "grid": {"V1,V2": [1]}})")), ConfigInvalid);
}

TEST(Sweep, EmptyGridWritesEmptyManifest) {
  const fs::path dir = scratch("empty");
  const fs::path cfg = dir.string() + ".json";
  std::ofstream(cfg) << R"({"base": {"model": "kancheva"}, "grid": {}})";
  std::ostringstream err;
  EXPECT_EQ(cmd_sweep(cfg.string(), dir.string(), {}, err), kExitOk);
  json m;
  std::ifstream(dir / "manifest.json") >> m;
  EXPECT_EQ(m["count"], 0);
  EXPECT_TRUE(m["entries"].empty());
}

TEST(Sweep, RatioGridThetaTwoSharedAcrossDetuning) {
  const fs::path dir = scratch("ratio");
  const fs::path cfg = dir.string() + ".json";
  std::ofstream(cfg) << R"({"base": {"model": "kancheva", "samples": 101, "t1": 5},
                            "grid": {"V1,V2": [[1, 2], [2, 1]], "delta": [1, 5]}})";
  std::ostringstream err;
  ASSERT_EQ(cmd_sweep(cfg.string(), dir.string(), {}, err), kExitOk) << err.str();
  json m;
  std::ifstream(dir / "manifest.json") >> m;
  ASSERT_EQ(m["entries"].size(), 4u);
  auto theta2 = [&](int k) {
    std::ifstream in(dir / m["entries"][static_cast<std::size_t>(k)]["file"].get<std::string>());
    std::string line;
    std::getline(in, line);
    std::vector<double> out;
    while (std::getline(in, line)) {
      std::stringstream ss(line);
      std::string cell;
      for (int c = 0; c <= 11; ++c) std::getline(ss, cell, ',');
      out.push_back(std::stod(cell));
    }
    return out;
  };
  // entries ordered (V1,V2) outer, delta inner
  for (int pair : {0, 2}) {
    const auto a = theta2(pair), b = theta2(pair + 1);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 1; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-6);
  }
}

TEST(ExitCodes, Mapping) {
  std::ostringstream err;
  EXPECT_EQ(exit_code_for(ConfigInvalid("x"), err), kExitConfig);
  EXPECT_EQ(exit_code_for(PathInvalid("x"), err), kExitConfig);
  EXPECT_EQ(exit_code_for(SingularityEncountered("x"), err), kExitNumeric);
  EXPECT_EQ(exit_code_for(StepSizeUnderflow("x"), err), kExitNumeric);
  EXPECT_EQ(cmd_evolve("/nonexistent.json", "/tmp/x.csv", {}, err), kExitConfig);
  EXPECT_EQ(cmd_gphase("/nonexistent.csv", "/tmp/x.json", err), kExitConfig);
}
