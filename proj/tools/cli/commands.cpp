#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "unitint/errors.hpp"
#include "unitint/ode.hpp"
#include "unitint/su3.hpp"
#include "unitint/su4embed.hpp"

namespace unitint::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double unwrap(double prev, double raw) {
  const double two_pi = 2.0 * std::numbers::pi;
  return raw + two_pi * std::round((prev - raw) / two_pi);
}

struct Sample {
  Eigen::VectorXd P;
  Eigen::Vector3cd m;  // NaN when the pipeline has no m-vector
  Eigen::Vector3cd angle_source;
  double phi = kNaN;
  double unitarity = 0.0;
  ComplexMatrix U;
};

std::vector<Sample> su3_samples(const RunConfig& cfg, const engine::MatrixSchedule& H) {
  engine::EvolveOptions o;
  o.tol = cfg.tol;
  o.samples = cfg.samples;
  const auto traj = engine::evolve([&](double t) { return engine::split_blocks(H(t), 1); },
                                   cfg.t0, cfg.t1, o);
  std::vector<Sample> out;
  for (const auto& s : traj)
    out.push_back({apps::populations(s.U, cfg.initial - 1), s.m, s.m, s.phi, s.unitarity, s.U});
  return out;
}

std::vector<Sample> su4_samples(const RunConfig& cfg, const engine::MatrixSchedule& H) {
  su4::EmbeddedOptions o;
  o.tol = cfg.tol;
  o.samples = cfg.samples;
  const auto traj = su4::evolve_embedded(
      [&](double t) { return algebra::coefficients_of(H(t)); }, cfg.t0, cfg.t1, o);
  std::vector<Sample> out;
  double prev = 0.0;
  for (const auto& s : traj) {
    const double phi = out.empty() ? std::arg(s.m.m(2)) : unwrap(prev, std::arg(s.m.m(2)));
    prev = phi;
    out.push_back({apps::populations(s.U3, cfg.initial - 1), s.m.m, s.m.m, phi,
                   algebra::unitarity_residual(s.U3), s.U3});
  }
  return out;
}

std::vector<Sample> oracle_samples(const RunConfig& cfg, const std::vector<ComplexMatrix>& U) {
  std::vector<Sample> out;
  const Eigen::Vector3cd nan3 = Eigen::Vector3cd::Constant(cplx(kNaN, kNaN));
  for (const auto& u : U) {
    // the last column is psi = (z, 1) / D up to phase; (-psi1, -psi2, psi3) has the m-shape
    Eigen::Vector3cd src = u.col(2);
    src(0) = -src(0);
    src(1) = -src(1);
    out.push_back({apps::populations(u, cfg.initial - 1), nan3, src, kNaN,
                   algebra::unitarity_residual(u), u});
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  return cells;
}

double parse_number(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v))
    throw PathInvalid("line " + std::to_string(line) + ": '" + s + "' is not a finite number");
  return v;
}

json with_parameters(json base, const json& overrides) {
  if (!base.contains("parameters")) base["parameters"] = json::object();
  for (const auto& [k, v] : overrides.items()) base["parameters"][k] = v;
  return base;
}

}  // namespace

const std::vector<std::string>& evolve_header() {
  static const std::vector<std::string> h{
      "t",      "P1",     "P2",   "P3",   "m1r", "m2r",
      "m3r",    "m1i",    "m2i",  "m3i",  "theta1", "theta2",
      "eps1",   "eps2",   "phi",  "unitarity_residual", "oracle_deviation"};
  return h;
}

std::string format_number(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

Table run_evolve(const RunConfig& cfg) {
  cfg.validate();
  const auto H = matrix_schedule(cfg);
  const auto times = ode::uniform_grid(cfg.t0, cfg.t1, cfg.samples);
  const auto oracle = engine::oracle_trajectory(H, times, 1e-12, (cfg.t1 - cfg.t0) / 256.0);

  std::vector<Sample> samples;
  switch (cfg.pipeline) {
    case Pipeline::SU3: samples = su3_samples(cfg, H); break;
    case Pipeline::SU4: samples = su4_samples(cfg, H); break;
    case Pipeline::Oracle: samples = oracle_samples(cfg, oracle); break;
  }

  Table table;
  table.header = evolve_header();
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const Sample& s = samples[k];
    auto ang = su3::polar_from_m(su3::MVector{s.angle_source});
    if (k > 0) {
      ang.eps1 = unwrap(e1, ang.eps1);
      ang.eps2 = unwrap(e2, ang.eps2);
    }
    e1 = ang.eps1;
    e2 = ang.eps2;
    std::vector<double> row{times[k], s.P(0), s.P(1), s.P(2),
                            s.m(0).real(), s.m(1).real(), s.m(2).real(),
                            s.m(0).imag(), s.m(1).imag(), s.m(2).imag(),
                            ang.theta1, ang.theta2, ang.eps1, ang.eps2, s.phi, s.unitarity,
                            (s.U - oracle[k]).norm()};
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.header.size(); ++c)
    out << (c ? "," : "") << table.header[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
    out << '\n';
  }
}

void write_csv(const Table& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigInvalid("cannot write '" + path + "'");
  write_csv(table, out);
  if (!out) throw ConfigInvalid("write failed for '" + path + "'");
}

gphase::AnglePath read_angle_path(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw PathInvalid("empty path file");
  const std::vector<std::string> expect{"t", "theta1", "theta2", "eps1", "eps2"};
  if (split_csv_line(line) != expect)
    throw PathInvalid("header must be t,theta1,theta2,eps1,eps2");
  gphase::AnglePath path;
  std::size_t n = 1;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != 5) throw PathInvalid("line " + std::to_string(n) + ": need 5 columns");
    gphase::AngleSample s;
    s.t = parse_number(cells[0], n);
    s.angles = {parse_number(cells[1], n), parse_number(cells[2], n), parse_number(cells[3], n),
                parse_number(cells[4], n)};
    if (!path.samples.empty()) {
      const auto& p = path.samples.back();
      if (!(s.t > p.t)) throw PathInvalid("line " + std::to_string(n) + ": t not increasing");
      const double d = std::max({std::abs(s.angles.theta1 - p.angles.theta1),
                                 std::abs(s.angles.theta2 - p.angles.theta2),
                                 std::abs(gphase::wrap_pi(s.angles.eps1 - p.angles.eps1)),
                                 std::abs(gphase::wrap_pi(s.angles.eps2 - p.angles.eps2))});
      if (d >= 0.1)
        throw PathInvalid("line " + std::to_string(n) + ": angle step >= 0.1 rad, resample the path");
    }
    path.samples.push_back(s);
  }
  if (path.samples.size() < 2) throw PathInvalid("path needs at least two samples");
  return path;
}

gphase::AnglePath read_angle_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PathInvalid("cannot open path file '" + path + "'");
  return read_angle_path(in);
}

json run_gphase(const gphase::AnglePath& path) {
  const auto g = gphase::su3_geometric_phase(path);
  return json{{"gamma_g", g.raw}, {"gamma_g_wrapped", g.wrapped}, {"path_closed", g.closed}};
}

std::vector<json> sweep_points(const json& sweep) {
  if (!sweep.is_object() || !sweep.contains("base"))
    throw ConfigInvalid("sweep config needs a 'base' object");
  for (const auto& [k, v] : sweep.items())
    if (k != "base" && k != "grid" && k != "points")
      throw ConfigInvalid("sweep config: unknown key '" + k + "'");
  if (sweep.contains("grid") == sweep.contains("points"))
    throw ConfigInvalid("sweep config needs exactly one of 'grid' or 'points'");

  std::vector<json> points;
  if (sweep.contains("points")) {
    const json& p = sweep.at("points");
    if (!p.is_array()) throw ConfigInvalid("'points' must be an array");
    for (const auto& e : p) {
      if (!e.is_object()) throw ConfigInvalid("each point must be an object");
      points.push_back(e);
    }
    return points;
  }

  const json& grid = sweep.at("grid");
  if (!grid.is_object()) throw ConfigInvalid("'grid' must be an object");
  if (grid.empty()) return points;
  points.push_back(json::object());
  for (const auto& [key, values] : grid.items()) {
    if (!values.is_array()) throw ConfigInvalid("grid axis '" + key + "' must be an array");
    std::vector<std::string> names;
    std::stringstream ks(key);
    for (std::string name; std::getline(ks, name, ',');) names.push_back(name);
    std::vector<json> next;
    for (const auto& base : points)
      for (const auto& v : values) {
        json p = base;
        if (names.size() == 1) {
          p[names[0]] = v;
        } else {
          if (!v.is_array() || v.size() != names.size())
            throw ConfigInvalid("grid axis '" + key + "' needs tuples of " +
                                std::to_string(names.size()));
          for (std::size_t i = 0; i < names.size(); ++i) p[names[i]] = v[i];
        }
        next.push_back(std::move(p));
      }
    points = std::move(next);
  }
  return points;
}

int exit_code_for(const std::exception& e, std::ostream& err) {
  err << "error: " << e.what() << '\n';
  if (dynamic_cast<const ConfigInvalid*>(&e) || dynamic_cast<const PathInvalid*>(&e))
    return kExitConfig;
  return kExitNumeric;
}

int cmd_evolve(const std::string& config_path, const std::string& out_path, const Overrides& o,
               std::ostream& err) {
  try {
    RunConfig cfg = load_config(config_path);
    apply(cfg, o);
    write_csv(run_evolve(cfg), out_path);
    return kExitOk;
  } catch (const std::exception& e) {
    return exit_code_for(e, err);
  }
}

int cmd_gphase(const std::string& path_file, const std::string& out_path, std::ostream& err) {
  try {
    const json result = run_gphase(read_angle_path(path_file));
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ConfigInvalid("cannot write '" + out_path + "'");
    out << result.dump(2) << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    return exit_code_for(e, err);
  }
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir, const Overrides& o,
              std::ostream& err) {
  std::vector<json> points;
  json base;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigInvalid("cannot open config '" + config_path + "'");
    json sweep;
    try {
      in >> sweep;
    } catch (const json::exception& e) {
      throw ConfigInvalid(std::string("sweep config: ") + e.what());
    }
    points = sweep_points(sweep);
    base = sweep.at("base");
    RunConfig check = parse_config(base);
    apply(check, o);
    fs::create_directories(out_dir);
  } catch (const std::exception& e) {
    return exit_code_for(e, err);
  }

  struct Outcome {
    int code = kExitOk;
    std::string message;
  };
  std::vector<std::future<Outcome>> tasks;
  std::vector<std::string> files;
  for (std::size_t k = 0; k < points.size(); ++k) {
    std::ostringstream name;
    name << "point_" << std::setw(3) << std::setfill('0') << k << ".csv";
    files.push_back(name.str());
    const std::string file = (fs::path(out_dir) / name.str()).string();
    const json cfg_json = with_parameters(base, points[k]);
    tasks.push_back(std::async(std::launch::async, [cfg_json, file, o] {
      try {
        RunConfig cfg = parse_config(cfg_json);
        apply(cfg, o);
        write_csv(run_evolve(cfg), file);
        return Outcome{};
      } catch (const std::exception& e) {
        std::ostringstream msg;
        return Outcome{exit_code_for(e, msg), e.what()};
      }
    }));
  }

  json manifest{{"count", points.size()}, {"entries", json::array()}};
  int code = kExitOk;
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const Outcome r = tasks[k].get();
    json entry{{"file", files[k]}, {"parameters", points[k]}, {"exit_code", r.code}};
    if (r.code != kExitOk) {
      entry["error"] = r.message;
      err << files[k] << ": " << r.message << '\n';
      code = std::max(code, r.code);
    }
    manifest["entries"].push_back(std::move(entry));
  }
  const std::string mpath = (fs::path(out_dir) / "manifest.json").string();
  std::ofstream out(mpath, std::ios::binary);
  if (!out) {
    err << "error: cannot write '" << mpath << "'\n";
    return kExitConfig;
  }
  out << manifest.dump(2) << '\n';
  return code;
}

}  // namespace unitint::cli
