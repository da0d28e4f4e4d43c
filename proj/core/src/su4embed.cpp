#include "unitint/su4embed.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pack.hpp"
#include "unitint/errors.hpp"
#include "unitint/ode.hpp"

namespace unitint::su4 {

using algebra::pauli;

namespace {

const double kS3 = std::sqrt(3.0);

cplx V1_of(const CoefficientVector& a) { return cplx(a(6), -a(7)); }
cplx V2_of(const CoefficientVector& a) { return cplx(a(4), -a(5)); }

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& A, const Eigen::Matrix2cd& B) {
  Eigen::Matrix4cd K;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) K.block<2, 2>(2 * i, 2 * j) = A(i, j) * B;
  return K;
}

}  // namespace

void DMParameters::validate() const {
  if ((Gamma - Gamma.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw OutOfRange("DMParameters: Gamma not symmetric");
  if (std::abs(Gamma.trace()) > 1e-12) throw OutOfRange("DMParameters: Gamma not traceless");
}

Complex6 PluckerVector::flow_order() const {
  Complex6 q = P;
  q(1) = -q(1);
  return q;
}

PluckerVector PluckerVector::from_flow_order(const Complex6& q) {
  PluckerVector p;
  p.P = q;
  p.P(1) = -p.P(1);
  return p;
}

ComplexMatrix embed_su3_zero_padded(const CoefficientVector& a) {
  ComplexMatrix H = ComplexMatrix::Zero(4, 4);
  H.topLeftCorner(3, 3) = algebra::assemble_su3_hamiltonian(a);
  return H;
}

BlockHamiltonian embedding_blocks(const CoefficientVector& a) {
  const double h = a(8) / kS3;
  const Eigen::Matrix2cd upper =
      h * pauli(0) + a(1) * pauli(1) + a(2) * pauli(2) + a(3) * pauli(3) +
      (a.trace_part / 3.0) * pauli(0);
  // lower block carries sigma_3; see the decisions notes
  Eigen::Matrix2cd lower = -h * (pauli(0) + pauli(3));
  lower(0, 0) += a.trace_part / 3.0;
  const cplx v1 = V1_of(a), v2 = V2_of(a);
  const Eigen::Matrix2cd V =
      0.5 * v2 * pauli(0) + 0.5 * v1 * pauli(1) - 0.5 * I_UNIT * v1 * pauli(2) + 0.5 * v2 * pauli(3);
  return engine::make_blocks(upper, lower, V);
}

BlockHamiltonian dm_relabeled_blocks(const CoefficientVector& a) {
  const double h = a(8) / kS3;
  const Eigen::Matrix2cd upper = h * pauli(0) - a(3) * pauli(1) - a(2) * pauli(2) - a(1) * pauli(3);
  const Eigen::Matrix2cd lower = -h * pauli(0) - h * pauli(1);
  const cplx v1 = V1_of(a), v2 = V2_of(a);
  const Eigen::Matrix2cd V = 0.5 * v1 * pauli(0) + 0.5 * v1 * pauli(1) -
                             0.5 * cplx(a(5), a(4)) * pauli(2) - 0.5 * v2 * pauli(3);
  return engine::make_blocks(upper, lower, V);
}

const Eigen::Matrix4cd& dm_basis_change() {
  static const Eigen::Matrix4cd T = [] {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix4cd t = Eigen::Matrix4cd::Zero();
    t(0, 0) = -r;
    t(0, 1) = r;
    t(1, 0) = r;
    t(1, 1) = r;
    t(2, 2) = r;
    t(2, 3) = r;
    t(3, 2) = r;
    t(3, 3) = -r;
    return t;
  }();
  return T;
}

const Eigen::Matrix4cd& relabel_permutation() {
  static const Eigen::Matrix4cd P = [] {
    // new state i is old state pi(i): 1 -> 2, 2 -> 3, 3 -> 4, 4 -> 1
    const int pi[4] = {1, 2, 3, 0};
    Eigen::Matrix4cd p = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 4; ++i) p(i, pi[i]) = 1.0;
    return p;
  }();
  return P;
}

std::array<cplx, 4> clifford_components(const ComplexMatrix& z) {
  if (z.rows() != 2 || z.cols() != 2) throw DimensionMismatch("clifford_components: need 2x2");
  std::array<cplx, 4> c;
  for (int k = 1; k <= 3; ++k) c[static_cast<std::size_t>(k - 1)] = I_UNIT * (z * pauli(k)).trace();
  c[3] = z.trace();
  return c;
}

ComplexMatrix from_clifford(const std::array<cplx, 4>& c) {
  Eigen::Matrix2cd z = 0.5 * c[3] * pauli(0);
  for (int k = 1; k <= 3; ++k) z -= 0.5 * I_UNIT * c[static_cast<std::size_t>(k - 1)] * pauli(k);
  return z;
}

double clifford_constraint_residual(const ComplexMatrix& z, Embedding mode) {
  const auto c = clifford_components(z);
  if (mode == Embedding::ZeroPadded)
    return std::max(std::abs(c[0] - I_UNIT * c[1]), std::abs(c[2] - I_UNIT * c[3]));
  return std::max(std::abs(c[0] - I_UNIT * c[3]), std::abs(c[1] - I_UNIT * c[2]));
}

ComplexMatrix z_from_pair(const Vec2& pair, Embedding mode) {
  ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  if (mode == Embedding::ZeroPadded) {
    z.col(0) = pair;
    return z;
  }
  const cplx z1 = pair(0), z2 = pair(1);
  z = -I_UNIT * z1 * pauli(0) - I_UNIT * (z1 * pauli(1) + z2 * pauli(2) - I_UNIT * z2 * pauli(3));
  return z;
}

Vec2 pair_from_z(const ComplexMatrix& z, Embedding mode) {
  if (z.rows() != 2 || z.cols() != 2) throw DimensionMismatch("pair_from_z: need 2x2");
  if (mode == Embedding::ZeroPadded) return z.col(0);
  Vec2 p;
  p << 0.5 * I_UNIT * (z * pauli(1)).trace(), 0.5 * I_UNIT * (z * pauli(2)).trace();
  return p;
}

ComplexMatrix dm_two_spin_hamiltonian(const DMParameters& p) {
  p.validate();
  std::array<Eigen::Matrix4cd, 3> S, T;
  for (int k = 0; k < 3; ++k) {
    S[static_cast<std::size_t>(k)] = kron(pauli(k + 1), pauli(0));
    T[static_cast<std::size_t>(k)] = kron(pauli(0), pauli(k + 1));
  }
  Eigen::Matrix4cd H = Eigen::Matrix4cd::Zero();
  for (std::size_t k = 0; k < 3; ++k) H += S[k] * T[k];
  H += p.beta(0) * (S[1] * T[2] - S[2] * T[1]);
  H += p.beta(1) * (S[2] * T[0] - S[0] * T[2]);
  H += p.beta(2) * (S[0] * T[1] - S[1] * T[0]);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      H += p.Gamma(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * S[i] * T[j];
  return p.J * H;
}

DMProjection dm_coefficients(const DMParameters& p) {
  const Eigen::Matrix4cd& P = relabel_permutation();
  const Eigen::Matrix4cd H = P * dm_two_spin_hamiltonian(p) * P.transpose();

  std::vector<Eigen::Matrix4cd> basis;
  for (int k = 1; k <= 8; ++k)
    basis.push_back(engine::assemble_blocks(dm_relabeled_blocks(CoefficientVector::unit(k))));
  basis.push_back(Eigen::Matrix4cd::Identity());
  Eigen::Vector4cd out(0, 0, 1, -1);
  out /= std::sqrt(2.0);
  basis.push_back(out * out.adjoint());

  Eigen::MatrixXd A(32, static_cast<Eigen::Index>(basis.size()));
  Eigen::VectorXd b(32);
  for (Eigen::Index c = 0; c < A.cols(); ++c)
    for (Eigen::Index k = 0; k < 16; ++k) {
      A(2 * k, c) = basis[static_cast<std::size_t>(c)](k).real();
      A(2 * k + 1, c) = basis[static_cast<std::size_t>(c)](k).imag();
    }
  for (Eigen::Index k = 0; k < 16; ++k) {
    b(2 * k) = H(k).real();
    b(2 * k + 1) = H(k).imag();
  }
  const Eigen::VectorXd x = A.colPivHouseholderQr().solve(b);

  DMProjection r;
  for (int k = 1; k <= 8; ++k) r.a(k) = x(k - 1);
  r.a.trace_part = 3.0 * x(8);
  r.decoupled_energy = x(8) + x(9);
  r.leakage = (A * x - b).norm();
  return r;
}

std::array<double, 16> dm_o_coefficients(const CoefficientVector& a) {
  const double r8 = a(8) / kS3;
  return {0.0,          a(1),         a(1),           4.0 * r8,
          a(6),         a(5),         2.0 * a(4),     2.0 * a(7),
          a(6),         a(5),         2.0 * a(4),     2.0 * a(7),
          -2.0 * a(3) - 2.0 * r8, 2.0 * a(3) - 2.0 * r8, 2.0 * a(2), 2.0 * a(2)};
}

PairCoefficients pair_coefficients(const CoefficientVector& a) {
  const cplx v1 = V1_of(a), v2 = V2_of(a);
  PairCoefficients c;
  c.X << 0.5 * v1, -0.5 * I_UNIT * v2;
  c.G << 2.0 * std::conj(v1), 2.0 * I_UNIT * std::conj(v2);
  c.minus_iF << cplx(0, a(3) - kS3 * a(8)), cplx(a(1), a(2)), cplx(-a(1), a(2)),
      cplx(0, -a(3) - kS3 * a(8));
  return c;
}

Vec2 su4_z_rhs(const CoefficientVector& a, const Vec2& z) {
  const auto c = pair_coefficients(a);
  const cplx gz = c.G.transpose() * z;
  return c.X + c.minus_iF * z + gz * z;
}

MVector su4_m_transform(const Vec2& z, double phi) {
  const double D = std::sqrt(1.0 + 4.0 * z.squaredNorm());
  const cplx e = std::exp(cplx(0, phi)) / D;
  MVector m;
  m.m << -2.0 * z(0) * e, -2.0 * z(1) * e, e;
  return m;
}

su3::ZPhi su4_m_to_z(const MVector& m) {
  const cplx m3 = m.m(2);
  if (std::abs(m3) <= 1e-9) throw BaseSingularity("su4_m_to_z: |m3| <= 1e-9");
  su3::ZPhi out;
  out.z << -m.m(0) / (2.0 * m3), -m.m(1) / (2.0 * m3);
  out.phi = std::arg(m3);
  return out;
}

Eigen::Matrix3cd su4_m_complex_generator(const CoefficientVector& a) {
  Eigen::Matrix3cd K;
  K << cplx(0, a(3) - kS3 * a(8)), cplx(a(1), a(2)), cplx(-a(6), a(7)),
      cplx(-a(1), a(2)), cplx(0, -a(3) - kS3 * a(8)), cplx(a(5), a(4)),
      cplx(a(6), a(7)), cplx(-a(5), a(4)), 0.0;
  return K;
}

Generator su4_m_rotation_generator(const CoefficientVector& a) {
  const double a1 = a(1), a2 = a(2), a3 = a(3), a4 = a(4), a5 = a(5), a6 = a(6), a7 = a(7),
               a8 = a(8);
  Generator G;
  G << 0, a1, -a6, -a3 + kS3 * a8, -a2, -a7,
      -a1, 0, a5, -a2, a3 + kS3 * a8, -a4,
      a6, -a5, 0, -a7, -a4, 0,
      a3 - kS3 * a8, a2, a7, 0, a1, -a6,
      a2, -a3 - kS3 * a8, a4, -a1, 0, a5,
      a7, a4, 0, a6, -a5, 0;
  return G;
}

double su4_phi_rhs(const CoefficientVector& a, const Vec2& z) {
  const auto c = pair_coefficients(a);
  return 4.0 * (c.X.transpose() * z.conjugate())(0).imag();
}

double su4_phi_rhs_alt_x(const CoefficientVector& a, const Vec2& z) {
  const auto c = pair_coefficients(a);
  // i phi' = -2 (X z* - X* z)  =>  phi' = 2i (X z* - X* z)
  const cplx xz = (c.X.transpose() * z.conjugate())(0);
  return (2.0 * I_UNIT * (xz - std::conj(xz))).real();
}

double su4_phi_rhs_alt_v(const CoefficientVector& a, const Vec2& z) {
  Vec2 V;
  V << V1_of(a), V2_of(a);
  const cplx vz = (V.adjoint() * z)(0);
  return 2.0 * vz.real();
}

ComplexMatrix heff_simplified_upper(const BlockHamiltonian& H, const ComplexMatrix& z) {
  const double D = std::sqrt(1.0 + z.squaredNorm());
  const ComplexMatrix zV = z * H.V.adjoint();
  const ComplexMatrix zz = z * z.adjoint();
  return H.upper - (zV + zV.adjoint()) / (D + 1.0) -
         (zV * zz + zz * H.V * z.adjoint()) / (2.0 * (D + 1.0) * (D + 1.0));
}

ComplexMatrix heff_simplified_lower(const BlockHamiltonian& H, const ComplexMatrix& z) {
  const ComplexMatrix zv = z.adjoint() * H.V;
  return H.lower + 0.5 * (zv + zv.adjoint());
}

ComplexMatrix heff_simplified_upper(const CoefficientVector& a, const ComplexMatrix& z) {
  return heff_simplified_upper(dm_relabeled_blocks(a), z);
}

ComplexMatrix heff_simplified_lower(const CoefficientVector& a, const ComplexMatrix& z) {
  return heff_simplified_lower(dm_relabeled_blocks(a), z);
}

namespace {

// P (natural ordering) = C m for the real 6-vector m.
const Complex66& plucker_map() {
  static const Complex66 C = [] {
    Complex66 c = Complex66::Zero();
    const cplx h(0.5, 0), ih(0, 0.5);
    c(0, 4) = -h;
    c(0, 5) = ih;
    c(1, 0) = ih;
    c(1, 1) = h;
    c(2, 2) = -ih;
    c(2, 3) = h;
    c(3, 2) = -ih;
    c(3, 3) = -h;
    c(4, 0) = -ih;
    c(4, 1) = h;
    c(5, 5) = ih;
    c(5, 4) = h;
    return c;
  }();
  return C;
}

}  // namespace

PluckerVector plucker_from_m(const Real6& m) {
  PluckerVector p;
  p.P = plucker_map() * m.cast<cplx>();
  return p;
}

Complex66 plucker_hamiltonian(const CoefficientVector& a) {
  const double r8 = a(8) / kS3;
  const double m64 = a(6) - a(4), m75 = a(7) - a(5), p64 = a(6) + a(4), p75 = a(7) + a(5);
  const double m32 = a(3) - a(2);
  const cplx u(m64, m75), w(p64, p75);
  Eigen::Matrix3cd H1, H2, VP;
  H1 << 2.0 * r8, u, u,
      std::conj(u), -a(1), r8,
      std::conj(u), r8, -a(1);
  H2 << a(1), -r8, -u,
      -r8, a(1), -u,
      -std::conj(u), -std::conj(u), -2.0 * r8;
  VP << -w, w, 0.0,
      m32, 0.0, -w,
      0.0, -m32, cplx(p64, -p75);
  Complex66 HP;
  HP.topLeftCorner<3, 3>() = H1;
  HP.topRightCorner<3, 3>() = VP;
  HP.bottomLeftCorner<3, 3>() = VP.adjoint();
  HP.bottomRightCorner<3, 3>() = H2;
  return HP;
}

Complex66 plucker_generator(const CoefficientVector& a) {
  Complex66 CQ = plucker_map();
  CQ.row(1) *= -1.0;
  const Complex66 G = su4_m_rotation_generator(a).cast<cplx>();
  return I_UNIT * CQ * G * CQ.inverse();
}

std::vector<EmbeddedSample> evolve_embedded(const su3::CoefficientSchedule& schedule, double t0,
                                            double t1, const EmbeddedOptions& opt) {
  if (!(t1 > t0)) throw OutOfRange("evolve_embedded: need t1 > t0");
  const Eigen::Matrix4cd& T = dm_basis_change();

  auto z_of = [](const ode::State& y) {
    const MVector mv = MVector::from_real6(y.head<6>());
    return z_from_pair(su4_m_to_z(mv).z, Embedding::DM);
  };

  ode::Rhs rhs = [&](double t, const ode::State& y, ode::State& dy) {
    const CoefficientVector a = schedule(t);
    const BlockHamiltonian H = dm_relabeled_blocks(a);
    const ComplexMatrix z = z_of(y);
    dy.head<6>() = su4_m_rotation_generator(a) * y.head<6>();
    ComplexMatrix Uu(2, 2), Ul(2, 2);
    Eigen::Index k = detail::unpack(y, 6, Uu);
    detail::unpack(y, k, Ul);
    k = detail::pack(-I_UNIT * heff_simplified_upper(H, z) * Uu, dy, 6);
    k = detail::pack(-I_UNIT * heff_simplified_lower(H, z) * Ul, dy, k);
    dy(k) = a.trace_part / 3.0;
  };

  ode::State y0 = ode::State::Zero(6 + 8 + 8 + 1);
  y0(2) = 1.0;
  Eigen::Index k = detail::pack(ComplexMatrix::Identity(2, 2), y0, 6);
  detail::pack(ComplexMatrix::Identity(2, 2), y0, k);

  ode::Options o;
  o.rtol = opt.tol;
  o.atol = opt.tol;
  o.max_step = (t1 - t0) * opt.max_step_fraction;
  const auto times = ode::uniform_grid(t0, t1, opt.samples);
  const auto states = ode::integrate(rhs, y0, times, o);

  std::vector<EmbeddedSample> out;
  out.reserve(states.size());
  for (std::size_t s = 0; s < states.size(); ++s) {
    const auto& y = states[s];
    EmbeddedSample e;
    e.t = times[s];
    e.m = MVector::from_real6(y.head<6>());
    e.z = z_of(y);
    ComplexMatrix Uu(2, 2), Ul(2, 2);
    Eigen::Index j = detail::unpack(y, 6, Uu);
    j = detail::unpack(y, j, Ul);
    ComplexMatrix U2 = ComplexMatrix::Zero(4, 4);
    U2.topLeftCorner(2, 2) = Uu;
    U2.bottomRightCorner(2, 2) = Ul;
    e.U4 = engine::build_u1(e.z, true) * U2;
    e.U3 = std::exp(cplx(0, -y(j))) * (T.adjoint() * e.U4 * T).topLeftCorner(3, 3);
    e.clifford = clifford_constraint_residual(e.z, Embedding::DM);
    e.unitarity = algebra::unitarity_residual(e.U4);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace unitint::su4
