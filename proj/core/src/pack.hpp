// pack.hpp — copy complex matrices in and out of real integrator state
#pragma once

#include <Eigen/Dense>

#include "unitint/algebra.hpp"

namespace unitint::detail {

inline Eigen::Index packed_size(Eigen::Index rows, Eigen::Index cols) { return 2 * rows * cols; }

// Writes M column-major as (re, im) pairs starting at offset; returns the next offset.
inline Eigen::Index pack(const ComplexMatrix& M, Eigen::VectorXd& y, Eigen::Index offset) {
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      y(offset++) = M(i, j).real();
      y(offset++) = M(i, j).imag();
    }
  return offset;
}

inline Eigen::Index unpack(const Eigen::VectorXd& y, Eigen::Index offset, ComplexMatrix& M) {
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      M(i, j) = cplx(y(offset), y(offset + 1));
      offset += 2;
    }
  return offset;
}

}  // namespace unitint::detail
