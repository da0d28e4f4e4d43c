// su3.hpp — N = 3, n = 1 specialization: z-flow, m-vector rotation, polar angles
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "unitint/algebra.hpp"
#include "unitint/engine.hpp"

namespace unitint::su3 {

using algebra::CoefficientVector;
using Vec2 = Eigen::Vector2cd;
using Real6 = Eigen::Matrix<double, 6, 1>;
using Generator = Eigen::Matrix<double, 6, 6>;

struct MVector {
  Eigen::Vector3cd m = Eigen::Vector3cd(0, 0, 1);

  // (m1r, m2r, m3r, m1i, m2i, m3i)
  Real6 real6() const;
  static MVector from_real6(const Real6& r);
  double norm() const { return m.norm(); }
};

struct PolarAngles {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
};

struct VF {
  Vec2 V;
  Eigen::Matrix2cd F;
};

// V = (a4 - i a5, a6 - i a7), F = [[a3 + sqrt3 a8, a1 - i a2], [a1 + i a2, -a3 + sqrt3 a8]]
VF su3_v_f(const CoefficientVector& a);

// dz_mu/dt = -i V_mu - i F_{mu nu} z_nu + i (V^* . z) z_mu
Vec2 su3_z_rhs(const CoefficientVector& a, const Vec2& z);

// m_{1,2} = -z_{1,2} / (D e^{i phi}), m3 = 1 / (D e^{i phi}), D = sqrt(1 + |z|^2)
MVector z_to_m(const Vec2& z, double phi);

struct ZPhi {
  Vec2 z;
  double phi = 0.0;
};

// z_mu = -m_mu / m3, phi = -arg(m3). Throws BaseSingularity when |m3| <= 1e-9.
ZPhi m_to_z(const MVector& m);

// Real 6x6 antisymmetric generator G(a) with dm/dt = G m on the real 6-vector.
Generator m_rotation_generator(const CoefficientVector& a);

// d(phi)/dt = Re(V^* . z). This is the rate that keeps z_to_m(z, phi) on the m-flow.
double phi_rhs(const CoefficientVector& a, const Vec2& z);

using CoefficientSchedule = std::function<CoefficientVector(double)>;

// Integrates dm/dt = G(a(t)) m from m(times.front()) = m0.
std::vector<MVector> m_flow(const CoefficientSchedule& schedule, const std::vector<double>& times,
                            double tol = 1e-9, double max_step = 0.0,
                            const MVector& m0 = MVector{});
std::vector<MVector> m_flow(const CoefficientSchedule& schedule, double t0, double t1,
                            double tol = 1e-9, std::size_t samples = 1001);

// z1 = -tan(theta1/2) cos(theta2/2) e^{i eps1}, z2 = -tan(theta1/2) sin(theta2/2) e^{i eps2}
PolarAngles polar_from_z(const Vec2& z);
Vec2 z_from_polar(const PolarAngles& p);
// Same angles read off m directly (valid even where |m3| is small).
PolarAngles polar_from_m(const MVector& m);

// Closed-form unitary U1 in polar angles.
Eigen::Matrix3cd build_u1_su3(const PolarAngles& p);

struct BaseSample {
  double t = 0.0;
  PolarAngles angles;           // eps wrapped to [0, 2 pi)
  double eps1_unwrapped = 0.0;  // continuous along the run
  double eps2_unwrapped = 0.0;
};

std::vector<BaseSample> base_trajectory(const engine::TrajectoryRecord& traj);

// Maps engine blocks (N = 3, n = 1) to Gell-Mann coefficients.
CoefficientVector coefficients_of_blocks(const engine::BlockHamiltonian& H);

}  // namespace unitint::su3
