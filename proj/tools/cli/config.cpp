#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "unitint/errors.hpp"

namespace unitint::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw ConfigInvalid(where + ": unknown key '" + key + "'");
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigInvalid("'" + key + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigInvalid("'" + key + "' must be finite");
  return v;
}

void read(const json& p, const char* key, double& out) {
  if (p.contains(key)) out = number(p.at(key), key);
}

cplx complex_number(const json& j, const std::string& key) {
  if (j.is_number()) return {number(j, key), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], key), number(j[1], key)};
  throw ConfigInvalid("'" + key + "' must be a number or [re, im]");
}

std::array<double, 8> eight(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 8) throw ConfigInvalid("'" + key + "' must hold 8 numbers");
  std::array<double, 8> out{};
  for (std::size_t k = 0; k < 8; ++k) out[k] = number(j[k], key);
  return out;
}

apps::TimeWindow default_window(Model m) {
  switch (m) {
    case Model::Stirap: return apps::kStirapWindow;
    case Model::Trapping: return apps::kTrappingWindow;
    case Model::Kancheva: return apps::kKanchevaWindow;
    default: return {0.0, 10.0};
  }
}

Model parse_model(const std::string& s) {
  if (s == "stirap") return Model::Stirap;
  if (s == "trapping") return Model::Trapping;
  if (s == "kancheva") return Model::Kancheva;
  if (s == "custom-coefficients") return Model::CustomCoefficients;
  if (s == "dm") return Model::DM;
  throw ConfigInvalid("unknown model '" + s + "'");
}

void parse_parameters(RunConfig& c, const json& p) {
  if (!p.is_object()) throw ConfigInvalid("'parameters' must be an object");
  switch (c.model) {
    case Model::Stirap:
      reject_unknown(p, {"amplitude", "t1", "t2", "tau", "Delta"}, "stirap parameters");
      read(p, "amplitude", c.stirap.amplitude);
      read(p, "t1", c.stirap.t1);
      read(p, "t2", c.stirap.t2);
      read(p, "tau", c.stirap.tau);
      read(p, "Delta", c.stirap.Delta);
      break;
    case Model::Trapping:
      reject_unknown(p, {"M1", "M2", "Omega1", "Omega2", "Delta1", "Delta2", "theta", "G1", "G2"},
                     "trapping parameters");
      read(p, "M1", c.trapping.M1);
      read(p, "M2", c.trapping.M2);
      read(p, "Omega1", c.trapping.Omega1);
      read(p, "Omega2", c.trapping.Omega2);
      read(p, "Delta1", c.trapping.Delta1);
      read(p, "Delta2", c.trapping.Delta2);
      read(p, "theta", c.trapping.theta);
      if (p.contains("G1")) c.trapping.G1 = complex_number(p.at("G1"), "G1");
      if (p.contains("G2")) c.trapping.G2 = complex_number(p.at("G2"), "G2");
      break;
    case Model::Kancheva:
      reject_unknown(p, {"delta", "V1", "V2"}, "kancheva parameters");
      read(p, "delta", c.kancheva.delta);
      read(p, "V1", c.kancheva.V1);
      read(p, "V2", c.kancheva.V2);
      break;
    case Model::CustomCoefficients:
      reject_unknown(p, {"a", "trace_part", "amplitude", "omega"}, "custom-coefficients parameters");
      if (p.contains("a")) c.custom.a.a = eight(p.at("a"), "a");
      read(p, "trace_part", c.custom.a.trace_part);
      if (p.contains("amplitude")) c.custom.amplitude = eight(p.at("amplitude"), "amplitude");
      read(p, "omega", c.custom.omega);
      break;
    case Model::DM: {
      reject_unknown(p, {"J", "beta", "Gamma"}, "dm parameters");
      read(p, "J", c.dm.J);
      if (p.contains("beta")) {
        const json& b = p.at("beta");
        if (!b.is_array() || b.size() != 3) throw ConfigInvalid("'beta' must hold 3 numbers");
        for (int k = 0; k < 3; ++k) c.dm.beta(k) = number(b[static_cast<std::size_t>(k)], "beta");
      }
      if (p.contains("Gamma")) {
        const json& g = p.at("Gamma");
        if (!g.is_array() || g.size() != 3) throw ConfigInvalid("'Gamma' must be 3x3");
        for (int r = 0; r < 3; ++r) {
          const json& row = g[static_cast<std::size_t>(r)];
          if (!row.is_array() || row.size() != 3) throw ConfigInvalid("'Gamma' must be 3x3");
          for (int k = 0; k < 3; ++k) c.dm.Gamma(r, k) = number(row[static_cast<std::size_t>(k)], "Gamma");
        }
      }
      break;
    }
  }
}

}  // namespace

std::string to_string(Model m) {
  switch (m) {
    case Model::Stirap: return "stirap";
    case Model::Trapping: return "trapping";
    case Model::Kancheva: return "kancheva";
    case Model::CustomCoefficients: return "custom-coefficients";
    case Model::DM: return "dm";
  }
  return "?";
}

std::string to_string(Pipeline p) {
  switch (p) {
    case Pipeline::SU3: return "su3";
    case Pipeline::SU4: return "su4";
    case Pipeline::Oracle: return "oracle";
  }
  return "?";
}

Pipeline parse_pipeline(const std::string& s) {
  if (s == "su3") return Pipeline::SU3;
  if (s == "su4") return Pipeline::SU4;
  if (s == "oracle") return Pipeline::Oracle;
  throw ConfigInvalid("unknown pipeline '" + s + "'");
}

void RunConfig::validate() const {
  if (samples < 2) throw ConfigInvalid("samples must be >= 2");
  if (!(t1 > t0)) throw ConfigInvalid("t1 must exceed t0");
  if (!(tol >= 1e-12 && tol <= 1e-3)) throw ConfigInvalid("tol must lie in [1e-12, 1e-3]");
  if (initial < 1 || initial > 3) throw ConfigInvalid("initial must be 1, 2 or 3");
  try {
    if (model == Model::Stirap) stirap.validate();
    if (model == Model::Trapping) trapping.validate();
    if (model == Model::DM) {
      dm.validate();
      const auto proj = su4::dm_coefficients(dm);
      if (proj.leakage > 1e-9)
        throw ConfigInvalid("dm parameters couple the decoupled state (need beta_x = 0, "
                            "Gamma_xy = Gamma_xz = 0)");
    }
  } catch (const OutOfRange& e) {
    throw ConfigInvalid(e.what());
  }
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigInvalid("config must be a JSON object");
  reject_unknown(j, {"model", "parameters", "t0", "t1", "samples", "tol", "pipeline", "initial"},
                 "config");
  if (!j.contains("model") || !j.at("model").is_string())
    throw ConfigInvalid("'model' is required and must be a string");
  RunConfig c;
  c.model = parse_model(j.at("model").get<std::string>());
  const auto w = default_window(c.model);
  c.t0 = w.t0;
  c.t1 = w.t1;
  if (j.contains("parameters")) {
    c.parameters = j.at("parameters");
    parse_parameters(c, c.parameters);
  }
  read(j, "t0", c.t0);
  read(j, "t1", c.t1);
  if (j.contains("samples")) {
    if (!j.at("samples").is_number_integer() || j.at("samples").get<long long>() < 2)
      throw ConfigInvalid("'samples' must be an integer >= 2");
    c.samples = j.at("samples").get<std::size_t>();
  }
  read(j, "tol", c.tol);
  if (j.contains("pipeline")) {
    if (!j.at("pipeline").is_string()) throw ConfigInvalid("'pipeline' must be a string");
    c.pipeline = parse_pipeline(j.at("pipeline").get<std::string>());
  }
  if (j.contains("initial")) {
    if (!j.at("initial").is_number_integer()) throw ConfigInvalid("'initial' must be an integer");
    c.initial = j.at("initial").get<int>();
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigInvalid("config '" + path + "': " + e.what());
  }
  return parse_config(j);
}

void apply(RunConfig& cfg, const Overrides& o) {
  if (o.pipeline) cfg.pipeline = *o.pipeline;
  if (o.tol) cfg.tol = *o.tol;
  if (o.samples) cfg.samples = *o.samples;
  cfg.validate();
}

engine::MatrixSchedule matrix_schedule(const RunConfig& cfg) {
  switch (cfg.model) {
    case Model::Stirap: {
      const auto p = cfg.stirap;
      return [p](double t) { return apps::stirap_hamiltonian(t, p); };
    }
    case Model::Trapping: {
      const auto p = cfg.trapping;
      return [p](double t) { return apps::trapping_hamiltonian(t, p); };
    }
    case Model::Kancheva: {
      const auto p = cfg.kancheva;
      return [p](double t) { return apps::kancheva_hamiltonian(t, p); };
    }
    case Model::CustomCoefficients: {
      const auto c = cfg.custom;
      return [c](double t) {
        algebra::CoefficientVector a = c.a;
        const double s = std::sin(c.omega * t);
        for (std::size_t k = 0; k < 8; ++k) a.a[k] += c.amplitude[k] * s;
        return algebra::assemble_su3_hamiltonian(a);
      };
    }
    case Model::DM: {
      const ComplexMatrix H = algebra::assemble_su3_hamiltonian(su4::dm_coefficients(cfg.dm).a);
      return [H](double) { return H; };
    }
  }
  throw ConfigInvalid("unknown model");
}

}  // namespace unitint::cli
