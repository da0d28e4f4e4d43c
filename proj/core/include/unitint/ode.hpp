// ode.hpp — adaptive Dormand-Prince 5(4) integrator for real state vectors
#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <vector>

namespace unitint::ode {

using State = Eigen::VectorXd;
using Rhs = std::function<void(double t, const State& y, State& dydt)>;

struct Options {
  double rtol = 1e-9;
  double atol = 1e-9;
  double max_step = 0.0;     // <= 0 means unbounded
  double first_step = 0.0;   // <= 0 means automatic
  double min_step = 1e-14;   // relative to the span of the run
  std::size_t max_steps = 50'000'000;
};

struct Stats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t evaluations = 0;
};

// Integrates y' = f(t, y) from times.front() and returns y at every entry of
// `times` (strictly increasing). Steps are clipped so each output time is hit
// exactly. Throws StepSizeUnderflow when the step shrinks below min_step.
std::vector<State> integrate(const Rhs& f, const State& y0, const std::vector<double>& times,
                             const Options& opt, Stats* stats = nullptr);

// Uniform grid of n points on [t0, t1], endpoints exact.
std::vector<double> uniform_grid(double t0, double t1, std::size_t n);

}  // namespace unitint::ode
