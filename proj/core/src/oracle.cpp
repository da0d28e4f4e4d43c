// Brute-force reference: iU' = H U integrated without any decomposition.
#include <boost/numeric/odeint.hpp>
#include <string>
#include <vector>

#include "unitint/engine.hpp"
#include "unitint/errors.hpp"

namespace unitint::engine {

namespace odeint = boost::numeric::odeint;

namespace {

using RawState = std::vector<double>;

void to_matrix(const RawState& y, Eigen::Index N, ComplexMatrix& U) {
  std::size_t k = 0;
  for (Eigen::Index j = 0; j < N; ++j)
    for (Eigen::Index i = 0; i < N; ++i, k += 2) U(i, j) = cplx(y[k], y[k + 1]);
}

void from_matrix(const ComplexMatrix& U, RawState& y) {
  std::size_t k = 0;
  for (Eigen::Index j = 0; j < U.cols(); ++j)
    for (Eigen::Index i = 0; i < U.rows(); ++i, k += 2) {
      y[k] = U(i, j).real();
      y[k + 1] = U(i, j).imag();
    }
}

}  // namespace

std::vector<ComplexMatrix> oracle_trajectory(const MatrixSchedule& schedule,
                                             const std::vector<double>& times, double tol,
                                             double max_step) {
  if (times.empty()) return {};
  const ComplexMatrix H0 = schedule(times.front());
  if (H0.rows() != H0.cols()) throw DimensionMismatch("oracle: Hamiltonian not square");
  const Eigen::Index N = H0.rows();

  RawState y(static_cast<std::size_t>(2 * N * N), 0.0);
  from_matrix(ComplexMatrix::Identity(N, N), y);

  ComplexMatrix U(N, N);
  auto system = [&](const RawState& x, RawState& dx, double t) {
    to_matrix(x, N, U);
    from_matrix(-I_UNIT * (schedule(t) * U), dx);
  };

  std::vector<ComplexMatrix> out;
  out.reserve(times.size());
  auto observer = [&](const RawState& x, double) {
    ComplexMatrix M(N, N);
    to_matrix(x, N, M);
    out.push_back(std::move(M));
  };

  const double span = times.back() - times.front();
  const double dtmax = max_step > 0 ? max_step : span / 256.0;
  using Stepper = odeint::runge_kutta_fehlberg78<RawState>;
  auto stepper = odeint::make_controlled(tol, tol, dtmax, Stepper());
  try {
    odeint::integrate_times(stepper, system, y, times.begin(), times.end(), dtmax / 16.0,
                            observer);
  } catch (const odeint::step_adjustment_error& e) {
    throw StepSizeUnderflow(std::string("oracle: ") + e.what());
  } catch (const odeint::no_progress_error& e) {
    throw StepSizeUnderflow(std::string("oracle: ") + e.what());
  }
  return out;
}

ComplexMatrix oracle_evolve(const MatrixSchedule& schedule, double t0, double t1, double tol) {
  if (!(t1 > t0)) throw OutOfRange("oracle_evolve: need t1 > t0");
  return oracle_trajectory(schedule, {t0, t1}, tol).back();
}

}  // namespace unitint::engine
