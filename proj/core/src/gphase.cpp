#include "unitint/gphase.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "unitint/errors.hpp"

namespace unitint::gphase {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double angle_step(double from, double to) { return wrap_pi(to - from); }

bool same_mod_2pi(double a, double b, double tol) { return std::abs(wrap_pi(a - b)) <= tol; }

}  // namespace

double wrap_pi(double x) {
  double r = std::fmod(x + kPi, kTwoPi);
  if (r <= 0) r += kTwoPi;
  return r - kPi;
}

bool AnglePath::closed(double tol) const {
  if (samples.size() < 2) return false;
  const auto& a = samples.front().angles;
  const auto& b = samples.back().angles;
  return std::abs(a.theta1 - b.theta1) <= tol && std::abs(a.theta2 - b.theta2) <= tol &&
         same_mod_2pi(a.eps1, b.eps1, tol) && same_mod_2pi(a.eps2, b.eps2, tol);
}

AnglePath path_from_base(const std::vector<su3::BaseSample>& base) {
  AnglePath p;
  p.samples.reserve(base.size());
  for (const auto& b : base) {
    AngleSample s{b.t, b.angles};
    s.angles.eps1 = b.eps1_unwrapped;
    s.angles.eps2 = b.eps2_unwrapped;
    p.samples.push_back(s);
  }
  return p;
}

double su2_geometric_phase(double theta) {
  if (theta < 0.0 || theta > kPi) throw OutOfRange("su2_geometric_phase: theta outside [0, pi]");
  return kPi * (1.0 - std::cos(theta));
}

Eigen::Matrix2cd su2_loop_matrix(double theta, int n_steps) {
  if (n_steps < 16) throw OutOfRange("su2_loop_matrix: n_steps < 16");
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
  const double h = kTwoPi / n_steps;
  // periodic integrand: the closing trapezoid weights fold into a plain sum
  for (int k = 0; k < n_steps; ++k) {
    const double eps = h * k;
    const cplx e = std::exp(cplx(0, eps));
    Eigen::Matrix2cd U, dU;
    U << c, -s * std::conj(e), s * e, c;
    // d/d(-i eps) = i d/d eps
    dU << 0.0, I_UNIT * (I_UNIT * s * std::conj(e)), I_UNIT * (I_UNIT * s * e), 0.0;
    acc += h * (U.adjoint() * dU);
  }
  return acc;
}

double su2_loop_integral_numeric(double theta, int n_steps) {
  return su2_loop_matrix(theta, n_steps)(1, 1).real();
}

double connection_one_form(const ComplexVector& psi, const ComplexVector& dpsi) {
  if (psi.size() != dpsi.size()) throw DimensionMismatch("connection_one_form: sizes differ");
  const double drift = std::abs(psi.squaredNorm() - 1.0);
  if (drift > 1e-8) throw NormalizationDrift("connection_one_form: |<psi|psi> - 1| = " + std::to_string(drift));
  return (-I_UNIT * psi.dot(dpsi)).real();
}

Eigen::Vector3cd last_column(const su3::PolarAngles& p) {
  const double s1 = std::sin(0.5 * p.theta1), c1 = std::cos(0.5 * p.theta1);
  const double s2 = std::sin(0.5 * p.theta2), c2 = std::cos(0.5 * p.theta2);
  Eigen::Vector3cd v;
  v << -s1 * c2 * std::exp(cplx(0, p.eps1)), -s1 * s2 * std::exp(cplx(0, p.eps2)), c1;
  return v;
}

GeometricPhase su3_geometric_phase(const AnglePath& path) {
  GeometricPhase g;
  const auto& S = path.samples;
  auto f1 = [](const su3::PolarAngles& a) {
    const double s = std::sin(0.5 * a.theta1);
    return -0.5 * s * s * (1.0 + std::cos(a.theta2));
  };
  auto f2 = [](const su3::PolarAngles& a) {
    const double s = std::sin(0.5 * a.theta1);
    return -0.5 * s * s * (1.0 - std::cos(a.theta2));
  };
  double acc = 0.0;
  for (std::size_t k = 1; k < S.size(); ++k) {
    const auto& a = S[k - 1].angles;
    const auto& b = S[k].angles;
    acc += 0.5 * (f1(a) + f1(b)) * angle_step(a.eps1, b.eps1) +
           0.5 * (f2(a) + f2(b)) * angle_step(a.eps2, b.eps2);
  }
  g.raw = acc;
  g.wrapped = wrap_pi(acc);
  g.closed = path.closed();
  return g;
}

double su3_geometric_phase_connection(const AnglePath& path) {
  const auto& S = path.samples;
  double acc = 0.0;
  for (std::size_t k = 1; k < S.size(); ++k) {
    const Eigen::Vector3cd a = last_column(S[k - 1].angles);
    const Eigen::Vector3cd b = last_column(S[k].angles);
    const Eigen::Vector3cd mid = (0.5 * (a + b)).normalized();
    acc -= connection_one_form(mid, b - a);
  }
  return acc;
}

std::vector<EulerSample> to_euler(const AnglePath& path) {
  std::vector<EulerSample> out;
  out.reserve(path.samples.size());
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t k = 0; k < path.samples.size(); ++k) {
    const auto& a = path.samples[k].angles;
    // follow the eps branches continuously so that alpha, gamma do not jump
    if (k == 0) {
      e1 = a.eps1;
      e2 = a.eps2;
    } else {
      e1 += angle_step(path.samples[k - 1].angles.eps1, a.eps1);
      e2 += angle_step(path.samples[k - 1].angles.eps2, a.eps2);
    }
    EulerSample s;
    s.theta = 0.5 * a.theta1;
    s.beta = 0.5 * a.theta2;
    s.gamma = -0.5 * (e1 + e2);
    s.alpha = 0.5 * (e2 - e1);
    out.push_back(s);
  }
  return out;
}

double su3_geometric_phase_euler(const std::vector<EulerSample>& path) {
  auto w = [](const EulerSample& s) { return std::sin(s.theta) * std::sin(s.theta); };
  auto wa = [](const EulerSample& s) {
    return std::sin(s.theta) * std::sin(s.theta) * std::cos(2.0 * s.beta);
  };
  double acc = 0.0;
  for (std::size_t k = 1; k < path.size(); ++k) {
    const auto& a = path[k - 1];
    const auto& b = path[k];
    acc += 0.5 * (w(a) + w(b)) * (b.gamma - a.gamma) + 0.5 * (wa(a) + wa(b)) * (b.alpha - a.alpha);
  }
  return acc;
}

ComplexMatrix dynamic_phase(const engine::TrajectoryRecord& traj) {
  if (traj.empty()) return {};
  const Eigen::Index N = traj.front().U1.rows();
  const Eigen::Index n = traj.front().z.size() > 0 ? N - traj.front().z.rows() : 0;
  auto block_diag = [&](const engine::TrajectorySample& s) {
    ComplexMatrix M = s.U1.adjoint() * s.H * s.U1;
    if (n > 0 && n < N) {
      M.topRightCorner(N - n, n).setZero();
      M.bottomLeftCorner(n, N - n).setZero();
    }
    return M;
  };
  ComplexMatrix acc = ComplexMatrix::Zero(N, N);
  ComplexMatrix prev = block_diag(traj.front());
  for (std::size_t k = 1; k < traj.size(); ++k) {
    ComplexMatrix cur = block_diag(traj[k]);
    acc += 0.5 * (traj[k].t - traj[k - 1].t) * (prev + cur);
    prev = std::move(cur);
  }
  return acc;
}

}  // namespace unitint::gphase
