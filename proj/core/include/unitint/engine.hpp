// engine.hpp — block decomposition U = U1 U2, z-flow, gauge factor, fiber
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "unitint/algebra.hpp"

namespace unitint::engine {

// H = [[upper, V], [Y^dagger, lower]]; upper is (N-n)x(N-n), lower is n x n.
// In Hermitian mode Y == V.
struct BlockHamiltonian {
  ComplexMatrix upper;
  ComplexMatrix lower;
  ComplexMatrix V;
  ComplexMatrix Y;

  int N() const { return static_cast<int>(upper.rows() + lower.rows()); }
  int n() const { return static_cast<int>(lower.rows()); }
  bool hermitian(double tol = 1e-12) const;
  void validate() const;  // throws DimensionMismatch
};

BlockHamiltonian make_blocks(const ComplexMatrix& upper, const ComplexMatrix& lower,
                             const ComplexMatrix& V);
BlockHamiltonian make_blocks(const ComplexMatrix& upper, const ComplexMatrix& lower,
                             const ComplexMatrix& V, const ComplexMatrix& Y);

// Split an N x N matrix with an n x n lower block.
BlockHamiltonian split_blocks(const ComplexMatrix& H, int n);
ComplexMatrix assemble_blocks(const BlockHamiltonian& H);

// z is (N-n) x n.
using ZBlock = ComplexMatrix;

struct FiberState {
  ComplexMatrix U2;  // block diagonal
  double phi = 0.0;
};

// dz/dt = -i [upper z + V - z (V^dagger z + lower)]
ZBlock z_flow_rhs(const BlockHamiltonian& H, const ZBlock& z);
// dz/dt = -i [upper z + V - z (Y^dagger z + lower)]
ZBlock z_flow_rhs_nonhermitian(const BlockHamiltonian& H, const ZBlock& z);
// The lower-left factor is carried as w^dagger (n x (N-n)). Returns d(w^dagger)/dt for
// i d(w^dagger)/dt = w^dagger (z Y^dagger - upper) + (lower + Y^dagger z) w^dagger + Y^dagger.
ComplexMatrix w_flow_rhs_nonhermitian(const BlockHamiltonian& H, const ZBlock& z,
                                      const ComplexMatrix& wdag);

ComplexMatrix gamma_upper(const ZBlock& z);  // I + z z^dagger
ComplexMatrix gamma_lower(const ZBlock& z);  // I + z^dagger z

// b = diag(gamma1^(1/2), gamma2^(-1/2)), so b^(-2) = diag(gamma1^(-1), gamma2).
ComplexMatrix gauge_factor(const ZBlock& z);

// Product [[I, z], [0, I]] [[I, 0], [w^dagger, I]] with w = -gamma1^(-1) z, optionally
// times the gauge factor b (which makes it unitary).
ComplexMatrix build_u1(const ZBlock& z, bool unitarize);

enum class Derivative { ChainRule, CentralDifference };

struct HeffOptions {
  Derivative method = Derivative::ChainRule;
  double fd_step = 1e-6;  // h for the central difference along zdot
};

// Effective fiber Hamiltonians of the unitarized decomposition.
ComplexMatrix heff_upper(const BlockHamiltonian& H, const ZBlock& z, const ZBlock& zdot,
                         const HeffOptions& opt = {});
ComplexMatrix heff_lower(const BlockHamiltonian& H, const ZBlock& z, const ZBlock& zdot,
                         const HeffOptions& opt = {});

// dU2/dt = -i diag(upper - z Y^dagger, lower + Y^dagger z) U2 (non-unitarized fiber).
ComplexMatrix u2_rhs_nonhermitian(const BlockHamiltonian& H, const ZBlock& z,
                                  const ComplexMatrix& U2);

using BlockSchedule = std::function<BlockHamiltonian(double)>;
using MatrixSchedule = std::function<ComplexMatrix(double)>;

struct TrajectorySample {
  double t = 0.0;
  ComplexMatrix H;   // full Hamiltonian at t
  ZBlock z;
  ComplexVector m;   // base vector (N = 3, n = 1 only; empty otherwise)
  double phi = 0.0;  // -arg(m3), unwrapped along the run
  ComplexMatrix U1;
  ComplexMatrix U2;
  ComplexMatrix U;
  double unitarity = 0.0;  // unitarity_residual(U)
};

using TrajectoryRecord = std::vector<TrajectorySample>;

struct EvolveOptions {
  double tol = 2e-13;  // linear drift on long oscillating runs tracks tol
  std::size_t samples = 1001;
  double max_step_fraction = 1.0 / 256.0;  // of t1 - t0
  HeffOptions heff{};
  double z_guard = 1e8;  // pure-z mode limit on 1 + tr(z^dagger z)
};

// Unitary integration of iU' = H U with U(t0) = I. For N = 3, n = 1 the base is
// carried by the linear m-flow; otherwise z is integrated directly.
TrajectoryRecord evolve(const BlockSchedule& schedule, double t0, double t1,
                        const EvolveOptions& opt = {});

// Direct integration of iU' = H U (no decomposition), order 7(8) Fehlberg pair.
ComplexMatrix oracle_evolve(const MatrixSchedule& schedule, double t0, double t1,
                            double tol = 1e-12);
std::vector<ComplexMatrix> oracle_trajectory(const MatrixSchedule& schedule,
                                             const std::vector<double>& times,
                                             double tol = 1e-12, double max_step = 0.0);

}  // namespace unitint::engine
