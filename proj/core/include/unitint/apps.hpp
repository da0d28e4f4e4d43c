// apps.hpp — three-level model Hamiltonians, populations, Bessel zeros
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "unitint/algebra.hpp"
#include "unitint/engine.hpp"

namespace unitint::apps {

// Counterintuitive two-pulse transfer |1> -> |3> through |2>.
struct StirapParams {
  double amplitude = 2.5;
  double t1 = 3.0;  // center of G1 (couples 1-2)
  double t2 = 0.0;  // center of G2 (couples 2-3)
  double tau = 3.0;
  double Delta = 0.1;

  void validate() const;
};

// Frequency-modulated couplings; trapping when M is a zero of J0.
struct TrappingParams {
  double M1 = 30.6346, M2 = 30.6346;
  double Omega1 = 1.0, Omega2 = 1.0;
  double Delta1 = 10.0, Delta2 = -10.0;
  double theta = 0.0;
  cplx G1{6.0, 0.0}, G2{6.0, 0.0};

  void validate() const;
};

// Two strong fields on the 1-3 and 2-3 transitions, G_k(t) = -V_k e^{-i delta t}.
struct KanchevaParams {
  double delta = 5.0;
  double V1 = 2.0, V2 = 1.0;
};

struct TimeWindow {
  double t0 = 0.0, t1 = 1.0;
};

inline constexpr TimeWindow kStirapWindow{-12.0, 15.0};
inline constexpr TimeWindow kTrappingWindow{0.0, 50.0};
inline constexpr TimeWindow kKanchevaWindow{0.0, 20.0};

ComplexMatrix stirap_hamiltonian(double t, const StirapParams& p);
ComplexMatrix trapping_hamiltonian(double t, const TrappingParams& p);
ComplexMatrix kancheva_hamiltonian(double t, const KanchevaParams& p);

double bessel_j0(double x);
// k-th positive zero of J0, 1 <= k <= 20. Throws OutOfRange.
double bessel_j0_zero(int k);

// P_j(t) = |U(t)_{j, initial}|^2 (0-based initial index).
std::vector<Eigen::VectorXd> populations(const engine::TrajectoryRecord& traj, int initial);
Eigen::VectorXd populations(const ComplexMatrix& U, int initial);

}  // namespace unitint::apps
