#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "unitint/engine.hpp"
#include "unitint/errors.hpp"
#include "unitint/gphase.hpp"
#include "unitint/ode.hpp"
#include "unitint/su3.hpp"

using namespace unitint;
using namespace unitint::gphase;
using std::numbers::pi;

namespace {

AnglePath eps1_loop(double theta1, double theta2, double eps2, int n) {
  AnglePath p;
  for (int k = 0; k <= n; ++k) {
    const double s = 2 * pi * k / n;
    p.samples.push_back({s, su3::PolarAngles{theta1, theta2, s, eps2}});
  }
  return p;
}

AnglePath wobbly_path(int n) {
  AnglePath p;
  for (int k = 0; k <= n; ++k) {
    const double s = static_cast<double>(k) / n;
    p.samples.push_back({s, su3::PolarAngles{1.0 + 0.4 * std::sin(2 * pi * s),
                                             0.8 + 0.3 * std::cos(4 * pi * s), 2 * pi * s,
                                             -4 * pi * s + 0.2 * std::sin(2 * pi * s)}});
  }
  return p;
}

}  // namespace

TEST(Su2, ClosedForm) {
  EXPECT_EQ(su2_geometric_phase(0.0), 0.0);
  EXPECT_NEAR(su2_geometric_phase(pi / 2), pi, 1e-15);
  EXPECT_NEAR(su2_geometric_phase(2 * pi / 3), 1.5 * pi, 1e-14);
  EXPECT_THROW(su2_geometric_phase(-0.1), OutOfRange);
  EXPECT_THROW(su2_geometric_phase(3.2), OutOfRange);
}

TEST(Su2, NumericLoop) {
  EXPECT_NEAR(su2_loop_integral_numeric(0.0, 64), 0.0, 1e-15);
  EXPECT_NEAR(su2_loop_integral_numeric(pi / 2, 1024), pi, 1e-6);
  for (double th = 0.1; th < 3.05; th += 0.4)
    EXPECT_NEAR(su2_loop_integral_numeric(th, 4096), su2_geometric_phase(th), 1e-8);
  EXPECT_THROW(su2_loop_integral_numeric(1.0, 8), OutOfRange);
}

TEST(Su2, LoopMatrixIsDiagonalWithOppositeEntries) {
  // the upper entry is the negative of the lower one
  const Eigen::Matrix2cd M = su2_loop_matrix(1.2, 256);
  EXPECT_NEAR(std::abs(M(0, 1)) + std::abs(M(1, 0)), 0.0, 1e-12);
  EXPECT_NEAR(M(0, 0).real(), -su2_geometric_phase(1.2), 1e-12);
  EXPECT_NEAR(M(1, 1).real(), su2_geometric_phase(1.2), 1e-12);
}

TEST(Connection, Examples) {
  const ComplexVector psi = Eigen::Vector3cd(0, 0, std::exp(cplx(0, 0.3)));
  EXPECT_EQ(connection_one_form(psi, ComplexVector::Zero(3)), 0.0);
  EXPECT_NEAR(connection_one_form(psi, I_UNIT * 0.01 * psi), 0.01, 1e-16);
  EXPECT_THROW(connection_one_form(2.0 * psi, psi), NormalizationDrift);
}

TEST(Connection, MatchesClosedFormIntegrand) {
  for (int r = 0; r < 20; ++r) {
    su3::PolarAngles p{testing_support::uniform(0, 3), testing_support::uniform(0, 3),
                       testing_support::uniform(0, 6), testing_support::uniform(0, 6)};
    const double d1 = testing_support::uniform(), d2 = testing_support::uniform();
    const double h = 1e-6;
    su3::PolarAngles a = p, b = p;
    a.eps1 -= h * d1, a.eps2 -= h * d2;
    b.eps1 += h * d1, b.eps2 += h * d2;
    const Eigen::Vector3cd dpsi = (last_column(b) - last_column(a)) / (2 * h);
    const double s = std::sin(0.5 * p.theta1);
    const double closed = -0.5 * s * s * ((d1 + d2) + std::cos(p.theta2) * (d1 - d2));
    // the one-form <psi|i dpsi> is the negative of the connection
    EXPECT_NEAR(-connection_one_form(last_column(p), dpsi), closed, 1e-8);
  }
}

TEST(Su3Phase, VanishesAtBasePoint) {
  AnglePath p;
  for (int k = 0; k <= 50; ++k) p.samples.push_back({double(k), su3::PolarAngles{0.0, 1.0, 0.1 * k, -0.2 * k}});
  EXPECT_EQ(su3_geometric_phase(p).raw, 0.0);
}

TEST(Su3Phase, Eps1Loop) {
  for (double t1 : {0.3, 1.1, 2.5})
    for (double t2 : {0.0, 0.7, 2.0}) {
      const auto g = su3_geometric_phase(eps1_loop(t1, t2, 0.4, 400));
      const double s = std::sin(0.5 * t1);
      const double expect = -pi * s * s * (1 + std::cos(t2));
      EXPECT_NEAR(g.raw, expect, 1e-12);
      EXPECT_TRUE(g.closed);
      EXPECT_NEAR(g.wrapped, wrap_pi(expect), 1e-12);
      EXPECT_NEAR(su3_geometric_phase_connection(eps1_loop(t1, t2, 0.4, 4000)), expect, 1e-6);
    }
}

TEST(Su3Phase, ConnectionRouteOnGenericPath) {
  const auto g = su3_geometric_phase(wobbly_path(20000));
  EXPECT_NEAR(su3_geometric_phase_connection(wobbly_path(20000)), g.raw, 1e-6);
  EXPECT_TRUE(g.closed);
}

TEST(Su3Phase, EulerCoordinatesGiveSameValue) {
  const auto path = wobbly_path(2000);
  EXPECT_NEAR(su3_geometric_phase_euler(to_euler(path)), su3_geometric_phase(path).raw, 1e-12);
}

TEST(Su3Phase, AdditiveOverConcatenation) {
  const auto path = wobbly_path(1000);
  AnglePath a, b;
  a.samples.assign(path.samples.begin(), path.samples.begin() + 401);
  b.samples.assign(path.samples.begin() + 400, path.samples.end());
  EXPECT_NEAR(su3_geometric_phase(a).raw + su3_geometric_phase(b).raw,
              su3_geometric_phase(path).raw, 1e-13);
  EXPECT_FALSE(a.closed());
}

TEST(DynamicPhase, ZeroHamiltonian) {
  engine::EvolveOptions o;
  o.samples = 11;
  const auto traj = engine::evolve(
      [](double) { return engine::split_blocks(ComplexMatrix::Zero(3, 3), 1); }, 0, 1, o);
  EXPECT_EQ(dynamic_phase(traj).norm(), 0.0);
}

TEST(DynamicPhase, AlignedTwoLevelFrame) {
  // H = -a.sigma with a along the frame axis: U1^dagger H U1 = diag(-1, 1)
  const double T = 2.5;
  ComplexMatrix z(1, 1);
  z << cplx(0.6, -0.3);
  const ComplexMatrix U1 = engine::build_u1(z, true);
  Eigen::Vector2cd d(-1, 1);
  const ComplexMatrix H = U1 * d.asDiagonal() * U1.adjoint();
  engine::TrajectoryRecord rec;
  for (int k = 0; k <= 10; ++k) {
    engine::TrajectorySample s;
    s.t = T * k / 10;
    s.H = H;
    s.z = z;
    s.U1 = U1;
    rec.push_back(s);
  }
  const ComplexMatrix P = dynamic_phase(rec);
  EXPECT_LT((P - T * ComplexMatrix(d.asDiagonal())).norm(), 1e-13);

  ComplexMatrix s3(2, 2);
  s3 << -1, 0, 0, 1;
  engine::EvolveOptions o;
  o.samples = 21;
  const auto traj = engine::evolve([&](double) { return engine::split_blocks(s3, 1); }, 0, T, o);
  EXPECT_LT((dynamic_phase(traj) - T * ComplexMatrix(d.asDiagonal())).norm(), 1e-13);
}

TEST(TotalPhase, FiberPhaseMatchesOracle) {
  // <psi(T)| U(T) e3> = exp(i (gamma_g - dynamic)) with psi the last column of U1
  const auto a0 = testing_support::random_coefficients(0.8), a1 = testing_support::random_coefficients(0.8);
  auto H = [&](double t) {
    algebra::CoefficientVector a;
    for (int k = 0; k < 8; ++k) a.a[k] = a0.a[k] + std::cos(0.7 * t + k) * a1.a[k];
    return algebra::assemble_su3_hamiltonian(a);
  };
  const double T = 4.0;
  engine::EvolveOptions o;
  o.samples = 8001;
  o.tol = 1e-11;
  const auto traj = engine::evolve([&](double t) { return engine::split_blocks(H(t), 1); }, 0, T, o);
  const auto path = path_from_base(su3::base_trajectory(traj));
  const double gamma = su3_geometric_phase(path).raw;
  const double dyn = dynamic_phase(traj)(2, 2).real();
  const ComplexMatrix U = engine::oracle_evolve(H, 0, T);
  const cplx overlap = traj.back().U1.col(2).dot(U.col(2));
  EXPECT_NEAR(std::abs(overlap), 1.0, 1e-8);
  EXPECT_NEAR(wrap_pi(std::arg(overlap) - (gamma - dyn)), 0.0, 1e-5);
}

TEST(WrapPi, Range) {
  EXPECT_NEAR(wrap_pi(3 * pi / 2), -pi / 2, 1e-15);
  EXPECT_NEAR(wrap_pi(-pi / 2), -pi / 2, 1e-15);
  EXPECT_NEAR(wrap_pi(pi), pi, 1e-15);
  EXPECT_NEAR(wrap_pi(-pi), pi, 1e-15);
}
