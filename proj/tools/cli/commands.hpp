// commands.hpp — evolve / gphase / sweep, usable without the argument parser
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "unitint/gphase.hpp"

namespace unitint::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// t, P1, P2, P3, m1r, m2r, m3r, m1i, m2i, m3i, theta1, theta2, eps1, eps2, phi,
// unitarity_residual, oracle_deviation
const std::vector<std::string>& evolve_header();

// Shortest decimal that reads back to the same double.
std::string format_number(double x);

Table run_evolve(const RunConfig& cfg);
void write_csv(const Table& table, std::ostream& out);
void write_csv(const Table& table, const std::string& path);

// CSV with header t,theta1,theta2,eps1,eps2. Throws PathInvalid.
gphase::AnglePath read_angle_path(std::istream& in);
gphase::AnglePath read_angle_path(const std::string& path);
nlohmann::json run_gphase(const gphase::AnglePath& path);

// {"base": config, "grid": {"name": [values], "a,b": [[va, vb], ...]}} expands to the
// Cartesian product over the keys; {"base": config, "points": [{...}, ...]} lists
// parameter overrides directly. An empty grid or list yields no runs.
std::vector<nlohmann::json> sweep_points(const nlohmann::json& sweep);

// Map an exception to an exit code, writing the message to `err`.
int exit_code_for(const std::exception& e, std::ostream& err);

int cmd_evolve(const std::string& config_path, const std::string& out_path, const Overrides& o,
               std::ostream& err);
int cmd_gphase(const std::string& path_file, const std::string& out_path, std::ostream& err);
int cmd_sweep(const std::string& config_path, const std::string& out_dir, const Overrides& o,
              std::ostream& err);

}  // namespace unitint::cli
