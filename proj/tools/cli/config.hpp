// config.hpp — run configuration: JSON schema, validation, schedules
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include <json.hpp>

#include "unitint/apps.hpp"
#include "unitint/engine.hpp"
#include "unitint/su4embed.hpp"

namespace unitint::cli {

enum class Model { Stirap, Trapping, Kancheva, CustomCoefficients, DM };
enum class Pipeline { SU3, SU4, Oracle };

// a_k(t) = a_k + amplitude_k sin(omega t)
struct CustomCoefficients {
  algebra::CoefficientVector a;
  std::array<double, 8> amplitude{};
  double omega = 0.0;
};

struct RunConfig {
  Model model = Model::Stirap;
  apps::StirapParams stirap;
  apps::TrappingParams trapping;
  apps::KanchevaParams kancheva;
  CustomCoefficients custom;
  su4::DMParameters dm;
  double t0 = 0.0, t1 = 1.0;
  std::size_t samples = 1001;
  double tol = 1e-12;
  Pipeline pipeline = Pipeline::SU3;
  int initial = 1;  // 1-based level holding the population at t0
  nlohmann::json parameters = nlohmann::json::object();

  void validate() const;  // throws ConfigInvalid
};

std::string to_string(Model m);
std::string to_string(Pipeline p);
Pipeline parse_pipeline(const std::string& s);

// Schema:
//   model: "stirap" | "trapping" | "kancheva" | "custom-coefficients" | "dm"   (required)
//   parameters: object of per-model fields (defaults apply for missing ones)
//   t0, t1: run window (defaults to the model's window)
//   samples (>= 2), tol ([1e-12, 1e-3]), pipeline ("su3" | "su4" | "oracle"), initial (1..3)
// Unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

struct Overrides {
  std::optional<Pipeline> pipeline;
  std::optional<double> tol;
  std::optional<std::size_t> samples;
};
void apply(RunConfig& cfg, const Overrides& o);

// Three-level Hamiltonian of the configured model.
engine::MatrixSchedule matrix_schedule(const RunConfig& cfg);

}  // namespace unitint::cli
