// gphase.hpp — geometric and dynamic phases on the base manifold
#pragma once

#include <vector>

#include "unitint/algebra.hpp"
#include "unitint/engine.hpp"
#include "unitint/su3.hpp"

namespace unitint::gphase {

struct AngleSample {
  double t = 0.0;
  su3::PolarAngles angles;  // eps may be wrapped or unwrapped
};

struct AnglePath {
  std::vector<AngleSample> samples;

  // First and last samples agree: theta exactly (1e-9), eps modulo 2 pi.
  bool closed(double tol = 1e-9) const;
};

AnglePath path_from_base(const std::vector<su3::BaseSample>& base);

// pi (1 - cos theta)
double su2_geometric_phase(double theta);

// Trapezoid quadrature over the constant-theta loop of the Berry connection
// i <psi| d psi / d eps> of the last column of U1(theta, eps).
double su2_loop_integral_numeric(double theta, int n_steps);

// Full 2x2 loop integral of U1^dagger dU1/d(-i eps), trapezoid in eps.
Eigen::Matrix2cd su2_loop_matrix(double theta, int n_steps);

// Re(-i <psi|dpsi>). Throws NormalizationDrift if | <psi|psi> - 1 | > 1e-8.
double connection_one_form(const ComplexVector& psi, const ComplexVector& dpsi);

// Last column of the polar-form U1.
Eigen::Vector3cd last_column(const su3::PolarAngles& p);

struct GeometricPhase {
  double raw = 0.0;
  double wrapped = 0.0;  // representative in (-pi, pi]
  bool closed = false;
};

// -1/2 int sin^2(theta1/2) [(d eps1 + d eps2) + cos(theta2) (d eps1 - d eps2)], trapezoid.
GeometricPhase su3_geometric_phase(const AnglePath& path);

// Same phase from state samples: gamma = int <psi| i d |psi> = -int A,
// with A from connection_one_form at chord midpoints.
double su3_geometric_phase_connection(const AnglePath& path);

// Path in the (theta, beta, alpha, gamma) coordinates with
// eps1 = -gamma - alpha, eps2 = -gamma + alpha, theta1 = 2 theta, theta2 = 2 beta.
struct EulerSample {
  double theta = 0.0, beta = 0.0, alpha = 0.0, gamma = 0.0;
};
std::vector<EulerSample> to_euler(const AnglePath& path);
// int sin^2(theta) (d gamma + cos(2 beta) d alpha), trapezoid.
double su3_geometric_phase_euler(const std::vector<EulerSample>& path);

// int U1^dagger H U1 dt over the samples, diagonal blocks only (trapezoid).
ComplexMatrix dynamic_phase(const engine::TrajectoryRecord& traj);

double wrap_pi(double x);

}  // namespace unitint::gphase
