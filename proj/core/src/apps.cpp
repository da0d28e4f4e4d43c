#include "unitint/apps.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "unitint/errors.hpp"

namespace unitint::apps {

namespace {

constexpr double kPi = std::numbers::pi;

double gaussian(double t, double center, double tau) {
  const double u = (t - center) / tau;
  return std::exp(-u * u);
}

}  // namespace

void StirapParams::validate() const {
  if (!(tau > 0)) throw OutOfRange("StirapParams: tau must be positive");
}

void TrappingParams::validate() const {
  if (!(Omega1 > 0) || !(Omega2 > 0)) throw OutOfRange("TrappingParams: Omega must be positive");
}

ComplexMatrix stirap_hamiltonian(double t, const StirapParams& p) {
  const double g1 = p.amplitude * gaussian(t, p.t1, p.tau);
  const double g2 = p.amplitude * gaussian(t, p.t2, p.tau);
  ComplexMatrix H = ComplexMatrix::Zero(3, 3);
  H(0, 1) = H(1, 0) = g1;
  H(1, 2) = H(2, 1) = g2;
  H(1, 1) = 2.0 * p.Delta;
  return H;
}

ComplexMatrix trapping_hamiltonian(double t, const TrappingParams& p) {
  ComplexMatrix H = ComplexMatrix::Zero(3, 3);
  H(0, 0) = p.Delta1 - p.M1 * p.Omega1 * std::cos(p.Omega1 * t + p.theta);
  H(2, 2) = -p.Delta2 + p.M2 * p.Omega2 * std::cos(p.Omega2 * t);
  H(0, 1) = p.G1;
  H(1, 0) = std::conj(p.G1);
  H(1, 2) = p.G2;
  H(2, 1) = std::conj(p.G2);
  return H;
}

ComplexMatrix kancheva_hamiltonian(double t, const KanchevaParams& p) {
  const cplx phase = std::exp(cplx(0, -p.delta * t));
  const cplx g1 = -p.V1 * phase, g2 = -p.V2 * phase;
  ComplexMatrix H = ComplexMatrix::Zero(3, 3);
  H(0, 2) = g1;
  H(1, 2) = g2;
  H(2, 0) = std::conj(g1);
  H(2, 1) = std::conj(g2);
  return H;
}

double bessel_j0(double x) { return std::cyl_bessel_j(0.0, std::abs(x)); }

double bessel_j0_zero(int k) {
  if (k < 1 || k > 20) throw OutOfRange("bessel_j0_zero: k must be in 1..20");
  // McMahon's estimate is within 0.01 of the zero; the bracket has one sign change
  const double guess = (k - 0.25) * kPi;
  double lo = guess - 0.3, hi = guess + 0.3;
  double flo = bessel_j0(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = bessel_j0(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd populations(const ComplexMatrix& U, int initial) {
  if (initial < 0 || initial >= U.cols()) throw OutOfRange("populations: initial index");
  return U.col(initial).cwiseAbs2();
}

std::vector<Eigen::VectorXd> populations(const engine::TrajectoryRecord& traj, int initial) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(traj.size());
  for (const auto& s : traj) out.push_back(populations(s.U, initial));
  return out;
}

}  // namespace unitint::apps
