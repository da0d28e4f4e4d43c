#include "unitint/engine.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pack.hpp"
#include "unitint/errors.hpp"
#include "unitint/ode.hpp"
#include "unitint/su3.hpp"

namespace unitint::engine {

using algebra::hermitian_inv_sqrt;
using algebra::hermitian_sqrt;

bool BlockHamiltonian::hermitian(double tol) const {
  return algebra::hermiticity_residual(upper) <= tol && algebra::hermiticity_residual(lower) <= tol &&
         (V - Y).cwiseAbs().maxCoeff() <= tol;
}

void BlockHamiltonian::validate() const {
  const auto p = upper.rows(), n = lower.rows();
  if (upper.cols() != p || lower.cols() != n) throw DimensionMismatch("diagonal blocks not square");
  if (n < 1 || p < 1 || p + n > 4) throw DimensionMismatch("need 1 <= n < N <= 4");
  if (V.rows() != p || V.cols() != n || Y.rows() != p || Y.cols() != n)
    throw DimensionMismatch("coupling block shape");
}

BlockHamiltonian make_blocks(const ComplexMatrix& upper, const ComplexMatrix& lower,
                             const ComplexMatrix& V) {
  return make_blocks(upper, lower, V, V);
}

BlockHamiltonian make_blocks(const ComplexMatrix& upper, const ComplexMatrix& lower,
                             const ComplexMatrix& V, const ComplexMatrix& Y) {
  BlockHamiltonian H{upper, lower, V, Y};
  H.validate();
  return H;
}

BlockHamiltonian split_blocks(const ComplexMatrix& H, int n) {
  if (H.rows() != H.cols()) throw DimensionMismatch("split_blocks: matrix not square");
  const Eigen::Index N = H.rows(), p = N - n;
  if (n < 1 || p < 1) throw DimensionMismatch("split_blocks: bad n");
  return make_blocks(H.topLeftCorner(p, p), H.bottomRightCorner(n, n), H.topRightCorner(p, n),
                     H.bottomLeftCorner(n, p).adjoint());
}

ComplexMatrix assemble_blocks(const BlockHamiltonian& H) {
  H.validate();
  const auto p = H.upper.rows(), n = H.lower.rows();
  ComplexMatrix M(p + n, p + n);
  M.topLeftCorner(p, p) = H.upper;
  M.bottomRightCorner(n, n) = H.lower;
  M.topRightCorner(p, n) = H.V;
  M.bottomLeftCorner(n, p) = H.Y.adjoint();
  return M;
}

namespace {

void check_z(const BlockHamiltonian& H, const ZBlock& z, const char* who) {
  H.validate();
  if (z.rows() != H.upper.rows() || z.cols() != H.lower.rows())
    throw DimensionMismatch(std::string(who) + ": z has wrong shape");
}

}  // namespace

ZBlock z_flow_rhs(const BlockHamiltonian& H, const ZBlock& z) {
  check_z(H, z, "z_flow_rhs");
  return -I_UNIT * (H.upper * z + H.V - z * (H.V.adjoint() * z + H.lower));
}

ZBlock z_flow_rhs_nonhermitian(const BlockHamiltonian& H, const ZBlock& z) {
  check_z(H, z, "z_flow_rhs_nonhermitian");
  return -I_UNIT * (H.upper * z + H.V - z * (H.Y.adjoint() * z + H.lower));
}

ComplexMatrix w_flow_rhs_nonhermitian(const BlockHamiltonian& H, const ZBlock& z,
                                      const ComplexMatrix& wdag) {
  check_z(H, z, "w_flow_rhs_nonhermitian");
  if (wdag.rows() != z.cols() || wdag.cols() != z.rows())
    throw DimensionMismatch("w_flow_rhs_nonhermitian: w^dagger has wrong shape");
  const ComplexMatrix Yd = H.Y.adjoint();
  return -I_UNIT * (wdag * (z * Yd - H.upper) + (H.lower + Yd * z) * wdag + Yd);
}

ComplexMatrix gamma_upper(const ZBlock& z) {
  return ComplexMatrix::Identity(z.rows(), z.rows()) + z * z.adjoint();
}

ComplexMatrix gamma_lower(const ZBlock& z) {
  return ComplexMatrix::Identity(z.cols(), z.cols()) + z.adjoint() * z;
}

ComplexMatrix gauge_factor(const ZBlock& z) {
  const auto p = z.rows(), n = z.cols();
  ComplexMatrix b = ComplexMatrix::Zero(p + n, p + n);
  b.topLeftCorner(p, p) = hermitian_sqrt(gamma_upper(z));
  b.bottomRightCorner(n, n) = hermitian_inv_sqrt(gamma_lower(z));
  return b;
}

ComplexMatrix build_u1(const ZBlock& z, bool unitarize) {
  const auto p = z.rows(), n = z.cols(), N = p + n;
  const ComplexMatrix wdag = -(gamma_upper(z).ldlt().solve(z)).adjoint();
  ComplexMatrix left = ComplexMatrix::Identity(N, N), right = ComplexMatrix::Identity(N, N);
  left.topRightCorner(p, n) = z;
  right.bottomLeftCorner(n, p) = wdag;
  ComplexMatrix U = left * right;
  if (unitarize) U = U * gauge_factor(z);
  return U;
}

namespace {

ComplexMatrix inv_sqrt_rate(const ComplexMatrix& gamma, const ComplexMatrix& dgamma,
                            const std::function<ComplexMatrix(double)>& gamma_at,
                            const HeffOptions& opt) {
  if (opt.method == Derivative::ChainRule) return algebra::inv_sqrt_derivative(gamma, dgamma);
  const double h = opt.fd_step;
  return (hermitian_inv_sqrt(gamma_at(h)) - hermitian_inv_sqrt(gamma_at(-h))) / (2.0 * h);
}

ComplexMatrix heff_from(const ComplexMatrix& gamma, const ComplexMatrix& rate,
                        const ComplexMatrix& K) {
  const ComplexMatrix s = hermitian_sqrt(gamma);
  const ComplexMatrix si = hermitian_inv_sqrt(gamma);
  const ComplexMatrix comm = rate * s - s * rate;
  const ComplexMatrix sym = si * K * s;
  return 0.5 * I_UNIT * comm + 0.5 * (sym + sym.adjoint());
}

}  // namespace

ComplexMatrix heff_upper(const BlockHamiltonian& H, const ZBlock& z, const ZBlock& zdot,
                         const HeffOptions& opt) {
  check_z(H, z, "heff_upper");
  const ComplexMatrix g = gamma_upper(z);
  const ComplexMatrix dg = zdot * z.adjoint() + z * zdot.adjoint();
  const ComplexMatrix rate = inv_sqrt_rate(
      g, dg, [&](double h) { return gamma_upper(z + h * zdot); }, opt);
  return heff_from(g, rate, H.upper - z * H.V.adjoint());
}

ComplexMatrix heff_lower(const BlockHamiltonian& H, const ZBlock& z, const ZBlock& zdot,
                         const HeffOptions& opt) {
  check_z(H, z, "heff_lower");
  const ComplexMatrix g = gamma_lower(z);
  const ComplexMatrix dg = zdot.adjoint() * z + z.adjoint() * zdot;
  const ComplexMatrix rate = inv_sqrt_rate(
      g, dg, [&](double h) { return gamma_lower(z + h * zdot); }, opt);
  return heff_from(g, rate, H.lower + z.adjoint() * H.V);
}

ComplexMatrix u2_rhs_nonhermitian(const BlockHamiltonian& H, const ZBlock& z,
                                  const ComplexMatrix& U2) {
  check_z(H, z, "u2_rhs_nonhermitian");
  const auto p = H.upper.rows(), n = H.lower.rows();
  if (U2.rows() != p + n || U2.cols() != p + n)
    throw DimensionMismatch("u2_rhs_nonhermitian: U2 has wrong shape");
  const ComplexMatrix Yd = H.Y.adjoint();
  ComplexMatrix out = ComplexMatrix::Zero(p + n, p + n);
  out.topLeftCorner(p, p) = -I_UNIT * (H.upper - z * Yd) * U2.topLeftCorner(p, p);
  out.bottomRightCorner(n, n) = -I_UNIT * (H.lower + Yd * z) * U2.bottomRightCorner(n, n);
  return out;
}

namespace {

struct Layout {
  Eigen::Index p, n;
  bool m_mode;
  Eigen::Index base_size() const { return m_mode ? 6 : detail::packed_size(p, n); }
  Eigen::Index size() const {
    return base_size() + detail::packed_size(p, p) + detail::packed_size(n, n);
  }
};

ZBlock z_from_m6(const Eigen::VectorXd& y) {
  su3::Real6 r = y.head<6>();
  const auto zp = su3::m_to_z(su3::MVector::from_real6(r));
  return ZBlock(zp.z);
}

double wrap_continue(double previous, double value) {
  const double two_pi = 2.0 * std::numbers::pi;
  return value + two_pi * std::round((previous - value) / two_pi);
}

}  // namespace

TrajectoryRecord evolve(const BlockSchedule& schedule, double t0, double t1,
                        const EvolveOptions& opt) {
  if (!(t1 > t0)) throw OutOfRange("evolve: need t1 > t0");
  const BlockHamiltonian H0 = schedule(t0);
  H0.validate();
  Layout L{H0.upper.rows(), H0.lower.rows(), H0.upper.rows() == 2 && H0.lower.rows() == 1};

  auto blocks_at = [&](double t) {
    BlockHamiltonian H = schedule(t);
    H.validate();
    if (H.upper.rows() != L.p || H.lower.rows() != L.n)
      throw DimensionMismatch("evolve: schedule changed block sizes");
    if (!H.hermitian(1e-10)) throw NonHermitianInput("evolve: schedule is not Hermitian");
    return H;
  };

  auto base_z = [&](const Eigen::VectorXd& y) {
    if (L.m_mode) return z_from_m6(y);
    ZBlock z(L.p, L.n);
    detail::unpack(y, 0, z);
    const double load = 1.0 + z.squaredNorm();
    if (!(load <= opt.z_guard))
      throw SingularityEncountered("evolve: 1 + tr(z^dagger z) exceeded guard");
    return z;
  };

  ode::Rhs rhs = [&](double t, const ode::State& y, ode::State& dy) {
    const BlockHamiltonian H = blocks_at(t);
    const ZBlock z = base_z(y);
    const ZBlock zdot = z_flow_rhs(H, z);
    Eigen::Index off = 0;
    if (L.m_mode) {
      const su3::Generator G = su3::m_rotation_generator(su3::coefficients_of_blocks(H));
      dy.head<6>() = G * y.head<6>();
      off = 6;
    } else {
      off = detail::pack(zdot, dy, 0);
    }
    ComplexMatrix Uu(L.p, L.p), Ul(L.n, L.n);
    Eigen::Index k = detail::unpack(y, off, Uu);
    detail::unpack(y, k, Ul);
    const ComplexMatrix dUu = -I_UNIT * heff_upper(H, z, zdot, opt.heff) * Uu;
    const ComplexMatrix dUl = -I_UNIT * heff_lower(H, z, zdot, opt.heff) * Ul;
    k = detail::pack(dUu, dy, off);
    detail::pack(dUl, dy, k);
  };

  ode::State y0 = ode::State::Zero(L.size());
  Eigen::Index off = 0;
  if (L.m_mode) {
    y0(2) = 1.0;  // m = (0, 0, 1)
    off = 6;
  } else {
    off = detail::pack(ZBlock::Zero(L.p, L.n), y0, 0);
  }
  off = detail::pack(ComplexMatrix::Identity(L.p, L.p), y0, off);
  detail::pack(ComplexMatrix::Identity(L.n, L.n), y0, off);

  ode::Options o;
  o.rtol = opt.tol;
  o.atol = opt.tol;
  o.max_step = (t1 - t0) * opt.max_step_fraction;
  const auto times = ode::uniform_grid(t0, t1, opt.samples);
  const auto states = ode::integrate(rhs, y0, times, o);

  TrajectoryRecord rec;
  rec.reserve(states.size());
  double phi_prev = 0.0;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const auto& y = states[s];
    TrajectorySample smp;
    smp.t = times[s];
    smp.H = assemble_blocks(schedule(smp.t));
    smp.z = base_z(y);
    Eigen::Index k = L.base_size();
    if (L.m_mode) {
      smp.m = su3::MVector::from_real6(y.head<6>()).m;
      const double raw = -std::arg(smp.m(2)) + 0.0;  // no negative zero
      smp.phi = s == 0 ? raw : wrap_continue(phi_prev, raw);
      phi_prev = smp.phi;
    }
    ComplexMatrix Uu(L.p, L.p), Ul(L.n, L.n);
    k = detail::unpack(y, k, Uu);
    detail::unpack(y, k, Ul);
    smp.U2 = ComplexMatrix::Zero(L.p + L.n, L.p + L.n);
    smp.U2.topLeftCorner(L.p, L.p) = Uu;
    smp.U2.bottomRightCorner(L.n, L.n) = Ul;
    smp.U1 = build_u1(smp.z, true);
    smp.U = smp.U1 * smp.U2;
    smp.unitarity = algebra::unitarity_residual(smp.U);
    rec.push_back(std::move(smp));
  }
  return rec;
}

}  // namespace unitint::engine
