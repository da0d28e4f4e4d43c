#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "unitint/apps.hpp"
#include "unitint/engine.hpp"
#include "unitint/errors.hpp"

using namespace unitint;
using namespace unitint::apps;

namespace {

engine::TrajectoryRecord run(const engine::MatrixSchedule& H, TimeWindow w, std::size_t samples) {
  engine::EvolveOptions o;
  o.samples = samples;
  return engine::evolve([&](double t) { return engine::split_blocks(H(t), 1); }, w.t0, w.t1, o);
}

double min_p11(const engine::TrajectoryRecord& traj) {
  double lo = 1.0;
  for (const auto& P : populations(traj, 0)) lo = std::min(lo, P(0));
  return lo;
}

}  // namespace

TEST(Stirap, Hamiltonian) {
  const StirapParams p;
  const ComplexMatrix H = stirap_hamiltonian(p.t1, p);
  EXPECT_NEAR(H(0, 1).real(), 2.5, 1e-15);
  EXPECT_NEAR(H(1, 1).real(), 0.2, 1e-15);
  EXPECT_EQ(H(0, 2), cplx(0));
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix R = stirap_hamiltonian(testing_support::uniform(-12, 15), p);
    EXPECT_EQ((R - R.transpose()).norm(), 0.0);
    EXPECT_EQ(R.imag().norm(), 0.0);
  }
  // both pulses have decayed at the window edges
  EXPECT_LT(stirap_hamiltonian(kStirapWindow.t0, p).cwiseAbs()(0, 1), 2e-7);
  EXPECT_LT(stirap_hamiltonian(kStirapWindow.t1, p).cwiseAbs()(1, 2), 2e-7);
}

TEST(Trapping, Hamiltonian) {
  const TrappingParams p;
  const ComplexMatrix H = trapping_hamiltonian(0.0, p);
  EXPECT_NEAR(H(0, 0).real(), 10 - 30.6346, 1e-12);
  EXPECT_NEAR(std::abs(H(0, 1)), 6.0, 1e-15);
  EXPECT_EQ(H(1, 1), cplx(0));
  for (int k = 0; k < 10; ++k)
    EXPECT_EQ(algebra::hermiticity_residual(trapping_hamiltonian(testing_support::uniform(0, 50), p)), 0.0);
}

TEST(Kancheva, Hamiltonian) {
  const KanchevaParams p;
  EXPECT_NEAR(std::abs(kancheva_hamiltonian(0.0, p)(0, 2) + 2.0), 0.0, 1e-15);
  for (int k = 0; k < 10; ++k) {
    const ComplexMatrix H = kancheva_hamiltonian(testing_support::uniform(0, 20), p);
    EXPECT_EQ(H.diagonal().norm(), 0.0);
    EXPECT_EQ(algebra::hermiticity_residual(H), 0.0);
    EXPECT_NEAR(std::abs(H(1, 2)), 1.0, 1e-15);
  }
}

TEST(Bessel, ZerosAndValues) {
  EXPECT_NEAR(bessel_j0_zero(1), 2.404826, 1e-6);
  EXPECT_NEAR(bessel_j0_zero(10), 30.6346, 1e-3);
  for (int k = 1; k <= 20; ++k) {
    const double x = bessel_j0_zero(k);
    EXPECT_NEAR(bessel_j0(x), 0.0, 1e-6);
    EXPECT_NEAR(std::cyl_bessel_j(0.0, x), 0.0, 1e-6) << "k = " << k;
  }
  for (double x : {0.0, 0.5, 3.0, 11.9, 12.1, 25.0, 60.0})
    EXPECT_NEAR(bessel_j0(x), std::cyl_bessel_j(0.0, x), 1e-9) << "x = " << x;
  EXPECT_THROW(bessel_j0_zero(0), OutOfRange);
  EXPECT_THROW(bessel_j0_zero(21), OutOfRange);
}

TEST(Populations, IdentityAndConservation) {
  const auto P = populations(ComplexMatrix::Identity(3, 3), 0);
  EXPECT_EQ(P, Eigen::Vector3d(1, 0, 0));
  const auto traj = run([](double t) { return kancheva_hamiltonian(t, {}); }, kKanchevaWindow, 201);
  for (const auto& p : populations(traj, 0)) EXPECT_NEAR(p.sum(), 1.0, 1e-8);
}

TEST(Populations, StirapTransfer) {
  const auto traj = run([](double t) { return stirap_hamiltonian(t, {}); }, kStirapWindow, 201);
  EXPECT_GT(populations(traj, 0).back()(2), 0.99);
}

TEST(Populations, KanchevaLargeDetuning) {
  KanchevaParams p;
  p.delta = 12.0;
  const auto traj = run([&](double t) { return kancheva_hamiltonian(t, p); }, kKanchevaWindow, 1001);
  double hi = 0.0;
  for (const auto& P : populations(traj, 0)) hi = std::max(hi, P(2));
  EXPECT_LT(hi, 0.1);
}

TEST(Populations, TrappingAtBesselZeroForFastModulation) {
  // the averaged coupling G J0(M) vanishes once Omega is well above G
  TrappingParams trapped, free;
  trapped.Omega1 = trapped.Omega2 = free.Omega1 = free.Omega2 = 30.0;
  trapped.M1 = trapped.M2 = bessel_j0_zero(10);
  free.M1 = free.M2 = 7.0;
  const TimeWindow w{0.0, 10.0};
  const double a = min_p11(run([&](double t) { return trapping_hamiltonian(t, trapped); }, w, 2001));
  const double b = min_p11(run([&](double t) { return trapping_hamiltonian(t, free); }, w, 2001));
  EXPECT_GT(a, 0.8);
  EXPECT_GT(a - b, 0.3);
}
