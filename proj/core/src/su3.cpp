#include "unitint/su3.hpp"

#include <cmath>
#include <numbers>

#include "unitint/errors.hpp"
#include "unitint/ode.hpp"

namespace unitint::su3 {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_2pi(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

double unwrap_next(double previous, double wrapped) {
  return wrapped + kTwoPi * std::round((previous - wrapped) / kTwoPi);
}

}  // namespace

Real6 MVector::real6() const {
  Real6 r;
  r << m(0).real(), m(1).real(), m(2).real(), m(0).imag(), m(1).imag(), m(2).imag();
  return r;
}

MVector MVector::from_real6(const Real6& r) {
  MVector v;
  v.m << cplx(r(0), r(3)), cplx(r(1), r(4)), cplx(r(2), r(5));
  return v;
}

VF su3_v_f(const CoefficientVector& a) {
  const double s3 = std::sqrt(3.0);
  VF out;
  out.V << cplx(a(4), -a(5)), cplx(a(6), -a(7));
  out.F << cplx(a(3) + s3 * a(8), 0), cplx(a(1), -a(2)), cplx(a(1), a(2)),
      cplx(-a(3) + s3 * a(8), 0);
  return out;
}

Vec2 su3_z_rhs(const CoefficientVector& a, const Vec2& z) {
  const VF vf = su3_v_f(a);
  const cplx vz = (vf.V.adjoint() * z)(0);
  return -I_UNIT * vf.V - I_UNIT * (vf.F * z) + I_UNIT * vz * z;
}

MVector z_to_m(const Vec2& z, double phi) {
  const double D = std::sqrt(1.0 + z.squaredNorm());
  const cplx inv = std::exp(cplx(0, -phi)) / D;
  MVector m;
  m.m << -z(0) * inv, -z(1) * inv, inv;
  return m;
}

ZPhi m_to_z(const MVector& m) {
  const cplx m3 = m.m(2);
  if (std::abs(m3) <= 1e-9) throw BaseSingularity("m_to_z: |m3| <= 1e-9");
  ZPhi out;
  out.z << -m.m(0) / m3, -m.m(1) / m3;
  out.phi = -std::arg(m3);
  return out;
}

Generator m_rotation_generator(const CoefficientVector& a) {
  const double s3 = std::sqrt(3.0);
  const double a1 = a(1), a2 = a(2), a3 = a(3), a4 = a(4), a5 = a(5), a6 = a(6), a7 = a(7),
               a8 = a(8);
  Generator G;
  G << 0, -a2, a5, a3 + s3 * a8, a1, -a4,
      a2, 0, a7, a1, -a3 + s3 * a8, -a6,
      -a5, -a7, 0, -a4, -a6, 0,
      -a3 - s3 * a8, -a1, a4, 0, -a2, a5,
      -a1, a3 - s3 * a8, a6, a2, 0, a7,
      a4, a6, 0, -a5, -a7, 0;
  return G;
}

double phi_rhs(const CoefficientVector& a, const Vec2& z) {
  const VF vf = su3_v_f(a);
  return (vf.V.adjoint() * z)(0).real();
}

std::vector<MVector> m_flow(const CoefficientSchedule& schedule, const std::vector<double>& times,
                            double tol, double max_step, const MVector& m0) {
  ode::Rhs rhs = [&](double t, const ode::State& y, ode::State& dy) {
    dy = m_rotation_generator(schedule(t)) * y;
  };
  ode::Options o;
  o.rtol = tol;
  o.atol = tol;
  o.max_step = max_step;
  const ode::State y0 = m0.real6();
  const auto states = ode::integrate(rhs, y0, times, o);
  std::vector<MVector> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(MVector::from_real6(s));
  return out;
}

std::vector<MVector> m_flow(const CoefficientSchedule& schedule, double t0, double t1, double tol,
                            std::size_t samples) {
  if (!(t1 > t0)) throw OutOfRange("m_flow: need t1 > t0");
  return m_flow(schedule, ode::uniform_grid(t0, t1, samples), tol, (t1 - t0) / 256.0);
}

PolarAngles polar_from_z(const Vec2& z) {
  PolarAngles p;
  const double r = z.norm();
  if (r == 0.0) return p;
  p.theta1 = 2.0 * std::atan(r);
  p.theta2 = 2.0 * std::atan2(std::abs(z(1)), std::abs(z(0)));
  p.eps1 = std::abs(z(0)) > 0 ? wrap_2pi(std::arg(-z(0))) : 0.0;
  p.eps2 = std::abs(z(1)) > 0 ? wrap_2pi(std::arg(-z(1))) : 0.0;
  return p;
}

Vec2 z_from_polar(const PolarAngles& p) {
  const double t = std::tan(0.5 * p.theta1);
  Vec2 z;
  z << -t * std::cos(0.5 * p.theta2) * std::exp(cplx(0, p.eps1)),
      -t * std::sin(0.5 * p.theta2) * std::exp(cplx(0, p.eps2));
  return z;
}

PolarAngles polar_from_m(const MVector& mv) {
  const auto& m = mv.m;
  PolarAngles p;
  const double r12 = std::hypot(std::abs(m(0)), std::abs(m(1)));
  if (r12 == 0.0) return p;
  p.theta1 = 2.0 * std::atan2(r12, std::abs(m(2)));
  p.theta2 = 2.0 * std::atan2(std::abs(m(1)), std::abs(m(0)));
  // m_mu conj(m3) carries e^{i eps_mu}; phi cancels
  const cplx ref = std::abs(m(2)) > 0 ? std::conj(m(2)) : cplx(1.0, 0.0);
  p.eps1 = std::abs(m(0)) > 0 ? wrap_2pi(std::arg(m(0) * ref)) : 0.0;
  p.eps2 = std::abs(m(1)) > 0 ? wrap_2pi(std::arg(m(1) * ref)) : 0.0;
  return p;
}

Eigen::Matrix3cd build_u1_su3(const PolarAngles& p) {
  const double s1 = std::sin(0.5 * p.theta1), c1 = std::cos(0.5 * p.theta1);
  const double q = std::sin(0.25 * p.theta1);
  const double q2 = q * q;
  const double s2 = std::sin(0.5 * p.theta2), c2 = std::cos(0.5 * p.theta2);
  const cplx e1 = std::exp(cplx(0, p.eps1)), e2 = std::exp(cplx(0, p.eps2));
  const cplx e12 = std::exp(cplx(0, p.eps1 - p.eps2));
  Eigen::Matrix3cd U;
  U << 1.0 - 2.0 * q2 * c2 * c2, -q2 * std::sin(p.theta2) * e12, -s1 * c2 * e1,
      -q2 * std::sin(p.theta2) * std::conj(e12), 1.0 - 2.0 * q2 * s2 * s2, -s1 * s2 * e2,
      s1 * c2 * std::conj(e1), s1 * s2 * std::conj(e2), c1;
  return U;
}

std::vector<BaseSample> base_trajectory(const engine::TrajectoryRecord& traj) {
  std::vector<BaseSample> out;
  out.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const auto& s = traj[k];
    BaseSample b;
    b.t = s.t;
    if (s.m.size() == 3) {
      MVector mv;
      mv.m = s.m;
      b.angles = polar_from_m(mv);
    } else {
      if (s.z.rows() != 2 || s.z.cols() != 1)
        throw DimensionMismatch("base_trajectory: expected N = 3, n = 1 samples");
      b.angles = polar_from_z(Vec2(s.z.col(0)));
    }
    if (out.empty()) {
      b.eps1_unwrapped = b.angles.eps1;
      b.eps2_unwrapped = b.angles.eps2;
    } else {
      b.eps1_unwrapped = unwrap_next(out.back().eps1_unwrapped, b.angles.eps1);
      b.eps2_unwrapped = unwrap_next(out.back().eps2_unwrapped, b.angles.eps2);
    }
    out.push_back(b);
  }
  return out;
}

CoefficientVector coefficients_of_blocks(const engine::BlockHamiltonian& H) {
  if (H.upper.rows() != 2 || H.lower.rows() != 1)
    throw DimensionMismatch("coefficients_of_blocks: expected N = 3, n = 1");
  return algebra::coefficients_of(engine::assemble_blocks(H), 1e-10);
}

}  // namespace unitint::su3
