// support.hpp — shared fixtures: seeded random inputs and a series exponential
#pragma once

#include <Eigen/Dense>
#include <random>

#include "unitint/algebra.hpp"

namespace testing_support {

using unitint::ComplexMatrix;
using unitint::cplx;
using unitint::algebra::CoefficientVector;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

inline double uniform(double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline ComplexMatrix random_complex(Eigen::Index r, Eigen::Index c, double scale = 1.0) {
  ComplexMatrix M(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) M(i, j) = scale * cplx(uniform(), uniform());
  return M;
}

inline ComplexMatrix random_hermitian(Eigen::Index n, double scale = 1.0) {
  const ComplexMatrix A = random_complex(n, n, scale);
  return 0.5 * (A + A.adjoint());
}

inline CoefficientVector random_coefficients(double scale = 1.0, bool with_trace = false) {
  CoefficientVector a;
  for (auto& x : a.a) x = scale * uniform();
  if (with_trace) a.trace_part = scale * uniform();
  return a;
}

// exp(A) by scaling and squaring of a truncated Taylor series.
inline ComplexMatrix expm_series(const ComplexMatrix& A) {
  const double nrm = A.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (nrm / std::ldexp(1.0, s) > 0.25) ++s;
  const ComplexMatrix B = A / std::ldexp(1.0, s);
  ComplexMatrix term = ComplexMatrix::Identity(A.rows(), A.cols());
  ComplexMatrix sum = term;
  for (int k = 1; k <= 24; ++k) {
    term = term * B / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

}  // namespace testing_support
