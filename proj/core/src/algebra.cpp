#include "unitint/algebra.hpp"

#include <cmath>
#include <string>

#include "unitint/errors.hpp"

namespace unitint::algebra {

namespace {

std::array<Eigen::Matrix3cd, 8> make_gellmann() {
  std::array<Eigen::Matrix3cd, 8> l;
  for (auto& m : l) m.setZero();
  const cplx i = I_UNIT;
  l[0](0, 1) = 1.0;
  l[0](1, 0) = 1.0;
  l[1](0, 1) = -i;
  l[1](1, 0) = i;
  l[2](0, 0) = 1.0;
  l[2](1, 1) = -1.0;
  l[3](0, 2) = 1.0;
  l[3](2, 0) = 1.0;
  l[4](0, 2) = -i;
  l[4](2, 0) = i;
  l[5](1, 2) = 1.0;
  l[5](2, 1) = 1.0;
  l[6](1, 2) = -i;
  l[6](2, 1) = i;
  const double s = 1.0 / std::sqrt(3.0);
  l[7](0, 0) = s;
  l[7](1, 1) = s;
  l[7](2, 2) = -2.0 * s;
  return l;
}

std::array<Eigen::Matrix2cd, 4> make_pauli() {
  std::array<Eigen::Matrix2cd, 4> p;
  p[0] = Eigen::Matrix2cd::Identity();
  p[1] << 0, 1, 1, 0;
  p[2] << 0, -I_UNIT, I_UNIT, 0;
  p[3] << 1, 0, 0, -1;
  return p;
}

}  // namespace

const std::array<Eigen::Matrix3cd, 8>& gellmann_basis() {
  static const auto basis = make_gellmann();
  return basis;
}

const Eigen::Matrix2cd& pauli(int k) {
  static const auto p = make_pauli();
  if (k < 0 || k > 3) throw OutOfRange("pauli index must be 0..3");
  return p[static_cast<std::size_t>(k)];
}

ComplexMatrix assemble_su3_hamiltonian(const CoefficientVector& a) {
  const auto& l = gellmann_basis();
  Eigen::Matrix3cd H = Eigen::Matrix3cd::Identity() * (a.trace_part / 3.0);
  for (std::size_t k = 0; k < 8; ++k) H += a.a[k] * l[k];
  return H;
}

double hermiticity_residual(const ComplexMatrix& H) {
  if (H.rows() != H.cols()) throw DimensionMismatch("hermiticity_residual: matrix not square");
  return (H - H.adjoint()).cwiseAbs().maxCoeff();
}

CoefficientVector coefficients_of(const ComplexMatrix& H, double tol) {
  if (H.rows() != 3 || H.cols() != 3) throw DimensionMismatch("coefficients_of: expected 3x3");
  const double r = hermiticity_residual(H);
  if (r > tol) throw NonHermitianInput("coefficients_of: residual " + std::to_string(r));
  const auto& l = gellmann_basis();
  CoefficientVector c;
  for (std::size_t k = 0; k < 8; ++k) c.a[k] = 0.5 * (H * l[k]).trace().real();
  c.trace_part = H.trace().real();
  return c;
}

ComplexMatrix hermitian_function(const ComplexMatrix& M, const std::function<double(double)>& f) {
  if (M.rows() != M.cols()) throw DimensionMismatch("hermitian_function: matrix not square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(M);
  const Eigen::VectorXd fl = es.eigenvalues().unaryExpr(f);
  const ComplexMatrix& Q = es.eigenvectors();
  return Q * fl.cast<cplx>().asDiagonal() * Q.adjoint();
}

namespace {

Eigen::SelfAdjointEigenSolver<ComplexMatrix> positive_eigen(const ComplexMatrix& M,
                                                           const char* who) {
  if (M.rows() != M.cols()) throw DimensionMismatch(std::string(who) + ": matrix not square");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(M);
  if (es.eigenvalues().minCoeff() <= 1e-12)
    throw NotPositiveDefinite(std::string(who) + ": eigenvalue <= 1e-12");
  return es;
}

}  // namespace

ComplexMatrix hermitian_inv_sqrt(const ComplexMatrix& M) {
  auto es = positive_eigen(M, "hermitian_inv_sqrt");
  const Eigen::VectorXd d = es.eigenvalues().cwiseSqrt().cwiseInverse();
  const ComplexMatrix& Q = es.eigenvectors();
  return Q * d.cast<cplx>().asDiagonal() * Q.adjoint();
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& M) {
  auto es = positive_eigen(M, "hermitian_sqrt");
  const Eigen::VectorXd d = es.eigenvalues().cwiseSqrt();
  const ComplexMatrix& Q = es.eigenvectors();
  return Q * d.cast<cplx>().asDiagonal() * Q.adjoint();
}

ComplexMatrix inv_sqrt_derivative(const ComplexMatrix& M, const ComplexMatrix& dM) {
  if (dM.rows() != M.rows() || dM.cols() != M.cols())
    throw DimensionMismatch("inv_sqrt_derivative: shapes differ");
  auto es = positive_eigen(M, "inv_sqrt_derivative");
  const ComplexMatrix& Q = es.eigenvectors();
  const Eigen::VectorXd s = es.eigenvalues().cwiseSqrt();
  ComplexMatrix B = Q.adjoint() * dM * Q;
  // divided difference of x^(-1/2): -1 / (s_i s_j (s_i + s_j)), exact also for i == j
  for (Eigen::Index i = 0; i < B.rows(); ++i)
    for (Eigen::Index j = 0; j < B.cols(); ++j) B(i, j) *= -1.0 / (s(i) * s(j) * (s(i) + s(j)));
  return Q * B * Q.adjoint();
}

double unitarity_residual(const ComplexMatrix& U) {
  if (U.rows() != U.cols()) throw DimensionMismatch("unitarity_residual: matrix not square");
  return (U.adjoint() * U - ComplexMatrix::Identity(U.rows(), U.cols())).norm();
}

}  // namespace unitint::algebra
