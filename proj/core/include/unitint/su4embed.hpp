// su4embed.hpp — SU(3) inside SU(4): embeddings, Clifford reduction, m/Plucker flows
#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "unitint/algebra.hpp"
#include "unitint/engine.hpp"
#include "unitint/su3.hpp"

namespace unitint::su4 {

using algebra::CoefficientVector;
using engine::BlockHamiltonian;
using su3::Generator;
using su3::MVector;
using su3::Real6;
using su3::Vec2;
using Complex6 = Eigen::Matrix<cplx, 6, 1>;
using Complex66 = Eigen::Matrix<cplx, 6, 6>;

// J (sigma.tau + beta.(sigma x tau) + sigma Gamma tau)
struct DMParameters {
  double J = 1.0;
  Eigen::Vector3d beta = Eigen::Vector3d::Zero();
  Eigen::Matrix3d Gamma = Eigen::Matrix3d::Zero();

  void validate() const;  // Gamma symmetric and traceless to 1e-12
};

struct PluckerVector {
  Complex6 P = Complex6::Zero();  // (P12, P13, P14, P23, P24, P34)

  double norm_squared() const { return P.squaredNorm(); }
  cplx quadric() const { return P(0) * P(5) - P(1) * P(4) + P(2) * P(3); }
  // (P12, -P13, P14, P23, P24, P34), the ordering the flow generator acts on
  Complex6 flow_order() const;
  static PluckerVector from_flow_order(const Complex6& q);
};

ComplexMatrix embed_su3_zero_padded(const CoefficientVector& a);

// Blocks of the zero-padded embedding.
BlockHamiltonian embedding_blocks(const CoefficientVector& a);

// Blocks after the relabeling 1->2, 2->3, 3->4, 4->1 of the two-spin basis.
BlockHamiltonian dm_relabeled_blocks(const CoefficientVector& a);

// Unitary T with assemble(dm_relabeled_blocks(a)) = T (H(a) + 0) T^dagger for traceless a.
const Eigen::Matrix4cd& dm_basis_change();

// Permutation matrix P with (P H P^T)(i, j) = H(pi(i), pi(j)), pi = relabeling.
const Eigen::Matrix4cd& relabel_permutation();

enum class Embedding { ZeroPadded, DM };

// Components (z1, z2, z3, z4) of z = z4/2 I - (i/2) sum_k z_k sigma_k.
std::array<cplx, 4> clifford_components(const ComplexMatrix& z);
ComplexMatrix from_clifford(const std::array<cplx, 4>& c);

// max |z1 - i z2|, |z3 - i z4| (ZeroPadded) or max |z1 - i z4|, |z2 - i z3| (DM)
double clifford_constraint_residual(const ComplexMatrix& z, Embedding mode);

// Reduced complex pair carried by each embedding.
// DM: z = z4 I - i sum_k z_k sigma_k with z4 = -i z1, z3 = -i z2; pair = (z1, z2).
// ZeroPadded: z = [pair, 0], i.e. the pair is the three-level z itself.
ComplexMatrix z_from_pair(const Vec2& pair, Embedding mode);
Vec2 pair_from_z(const ComplexMatrix& z, Embedding mode);

ComplexMatrix dm_two_spin_hamiltonian(const DMParameters& p);

struct DMProjection {
  CoefficientVector a;           // includes trace_part of the coupled three-level block
  double decoupled_energy = 0;   // energy of the state left out of the SU(3) block
  double leakage = 0;            // Frobenius norm of what the block family cannot represent
};

// Projects the relabeled two-spin Hamiltonian onto dm_relabeled_blocks(a) + s I + d P_out.
DMProjection dm_coefficients(const DMParameters& p);

// c_1..c_16 in terms of a_1..a_8 (c[0] is c_1).
std::array<double, 16> dm_o_coefficients(const CoefficientVector& a);

struct PairCoefficients {
  Vec2 X;
  Vec2 G;
  Eigen::Matrix2cd minus_iF;
};

// X = (V1/2, -i V2/2), G = (2 V1*, 2i V2*), V1 = a6 - i a7, V2 = a4 - i a5.
PairCoefficients pair_coefficients(const CoefficientVector& a);

// dz/dt = X - iF z + (G . z) z on the DM pair.
Vec2 su4_z_rhs(const CoefficientVector& a, const Vec2& z);

// m_mu = -2 z_mu e^{i phi} / D, m3 = e^{i phi} / D, D = sqrt(1 + 4 |z|^2)
MVector su4_m_transform(const Vec2& z, double phi);
su3::ZPhi su4_m_to_z(const MVector& m);

Eigen::Matrix3cd su4_m_complex_generator(const CoefficientVector& a);
Generator su4_m_rotation_generator(const CoefficientVector& a);

// Phase rate that keeps su4_m_transform(z, phi) on the m-flow: 4 Im(X . z*).
double su4_phi_rhs(const CoefficientVector& a, const Vec2& z);
// Two alternative closed forms, kept for comparison.
double su4_phi_rhs_alt_x(const CoefficientVector& a, const Vec2& z);  // from i phi' = -2(X z* - X* z)
double su4_phi_rhs_alt_v(const CoefficientVector& a, const Vec2& z);  // phi' = V* z + V z*, V = (V1, V2)

ComplexMatrix heff_simplified_upper(const BlockHamiltonian& H, const ComplexMatrix& z);
ComplexMatrix heff_simplified_lower(const BlockHamiltonian& H, const ComplexMatrix& z);
ComplexMatrix heff_simplified_upper(const CoefficientVector& a, const ComplexMatrix& z);
ComplexMatrix heff_simplified_lower(const CoefficientVector& a, const ComplexMatrix& z);

PluckerVector plucker_from_m(const Real6& m);

// H_P in its literal component layout (acts on the flow ordering).
Complex66 plucker_hamiltonian(const CoefficientVector& a);
// Generator induced by the m-flow: i C G C^(-1) on the flow ordering.
Complex66 plucker_generator(const CoefficientVector& a);

struct EmbeddedSample {
  double t = 0.0;
  ComplexMatrix z;     // 2x2
  MVector m;
  ComplexMatrix U4;    // U1 U2 in the relabeled basis
  ComplexMatrix U3;    // three-level propagator, trace phase included
  double clifford = 0.0;
  double unitarity = 0.0;
};

struct EmbeddedOptions {
  double tol = 2e-13;
  std::size_t samples = 1001;
  double max_step_fraction = 1.0 / 256.0;
};

// N = 4, n = 2 pipeline on the relabeled blocks: linear m-flow for the base,
// closed-form effective Hamiltonians for the two SU(2) fibers.
std::vector<EmbeddedSample> evolve_embedded(const su3::CoefficientSchedule& schedule, double t0,
                                            double t1, const EmbeddedOptions& opt = {});

}  // namespace unitint::su4
