#include "unitint/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "unitint/errors.hpp"

namespace unitint::ode {

namespace {

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

double error_norm(const State& err, const State& y, const State& ynew, const Options& opt) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double sc = opt.atol + opt.rtol * std::max(std::abs(y(i)), std::abs(ynew(i)));
    const double r = err(i) / sc;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(std::max<Eigen::Index>(1, err.size())));
}

}  // namespace

std::vector<double> uniform_grid(double t0, double t1, std::size_t n) {
  if (n < 2) throw OutOfRange("uniform_grid: need at least two points");
  std::vector<double> g(n);
  const double span = t1 - t0;
  for (std::size_t k = 0; k < n; ++k)
    g[k] = t0 + span * static_cast<double>(k) / static_cast<double>(n - 1);
  g.back() = t1;
  return g;
}

std::vector<State> integrate(const Rhs& f, const State& y0, const std::vector<double>& times,
                             const Options& opt, Stats* stats) {
  if (times.empty()) return {};
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw OutOfRange("integrate: times must increase strictly");

  std::vector<State> out;
  out.reserve(times.size());
  out.push_back(y0);
  if (times.size() == 1) return out;

  const double span = times.back() - times.front();
  const double hmax = opt.max_step > 0 ? opt.max_step : span;
  const double hmin = opt.min_step * std::max(1.0, span);
  const Eigen::Index n = y0.size();

  Stats local;
  State y = y0, ynew(n), err(n), tmp(n);
  State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
  double t = times.front();
  f(t, y, k1);
  ++local.evaluations;

  double h = opt.first_step;
  if (h <= 0) {
    // Hairer's starting-step heuristic, first stage only
    const double d0 = y.norm() / std::sqrt(static_cast<double>(std::max<Eigen::Index>(1, n)));
    const double d1 = k1.norm() / std::sqrt(static_cast<double>(std::max<Eigen::Index>(1, n)));
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min({h, hmax, 1e-3 * span + hmin});
  }

  std::size_t next = 1;
  while (next < times.size()) {
    if (local.accepted + local.rejected > opt.max_steps)
      throw StepSizeUnderflow("integrate: step budget exhausted");
    const double target = times[next];
    bool lands = false;
    double hs = std::min(h, hmax);
    if (t + hs >= target - 1e-12 * std::max(1.0, std::abs(target))) {
      hs = target - t;
      lands = true;
    }

    tmp = y + hs * a21 * k1;
    f(t + c2 * hs, tmp, k2);
    tmp = y + hs * (a31 * k1 + a32 * k2);
    f(t + c3 * hs, tmp, k3);
    tmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * hs, tmp, k4);
    tmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * hs, tmp, k5);
    tmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + hs, tmp, k6);
    ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double tnew = lands ? target : t + hs;
    f(tnew, ynew, k7);
    local.evaluations += 6;
    err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double en = error_norm(err, y, ynew, opt);
    if (!std::isfinite(en)) {
      ++local.rejected;
      h = 0.25 * hs;
      if (h < hmin) throw StepSizeUnderflow("integrate: non-finite state at t = " + std::to_string(t));
      continue;
    }
    if (en <= 1.0) {
      ++local.accepted;
      t = tnew;
      y = ynew;
      k1 = k7;
      if (lands) {
        out.push_back(y);
        ++next;
      }
      const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      // a clipped landing step says nothing about the natural step size
      h = lands ? std::max(h, hs * fac) : hs * fac;
    } else {
      ++local.rejected;
      h = hs * std::max(0.2, 0.9 * std::pow(en, -0.2));
      if (h < hmin) throw StepSizeUnderflow("integrate: step below minimum at t = " + std::to_string(t));
    }
  }
  if (stats) *stats = local;
  return out;
}

}  // namespace unitint::ode
