// algebra.hpp — Gell-Mann basis, Hermitian matrix functions, residuals
#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>

namespace unitint {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr cplx I_UNIT{0.0, 1.0};

}  // namespace unitint

namespace unitint::algebra {

// Real coefficients of H = trace_part * I / 3 + sum_k a[k] * lambda_{k+1}.
// a[0] is a1, ..., a[7] is a8.
struct CoefficientVector {
  std::array<double, 8> a{};
  double trace_part = 0.0;

  // 1-based access matching the lambda numbering.
  double& operator()(int k) { return a.at(static_cast<std::size_t>(k - 1)); }
  double operator()(int k) const { return a.at(static_cast<std::size_t>(k - 1)); }

  static CoefficientVector unit(int k, double value = 1.0) {
    CoefficientVector c;
    c(k) = value;
    return c;
  }
};

// Gell-Mann matrices lambda_1..lambda_8 (standard ordering), Tr(l_i l_j) = 2 delta_ij.
const std::array<Eigen::Matrix3cd, 8>& gellmann_basis();

ComplexMatrix assemble_su3_hamiltonian(const CoefficientVector& a);

// Throws NonHermitianInput if ||H - H^dagger||_inf > tol.
CoefficientVector coefficients_of(const ComplexMatrix& H, double tol = 1e-12);

// Max-abs entry of H - H^dagger.
double hermiticity_residual(const ComplexMatrix& H);

// f(M) for Hermitian M via eigendecomposition, reconstructed as Q f(L) Q^dagger.
ComplexMatrix hermitian_function(const ComplexMatrix& M, const std::function<double(double)>& f);

// M^(-1/2) for Hermitian positive-definite M. Throws NotPositiveDefinite.
ComplexMatrix hermitian_inv_sqrt(const ComplexMatrix& M);
ComplexMatrix hermitian_sqrt(const ComplexMatrix& M);

// Directional derivative of M^(-1/2) along the Hermitian direction dM
// (Daleckii-Krein formula on the eigendecomposition of M).
ComplexMatrix inv_sqrt_derivative(const ComplexMatrix& M, const ComplexMatrix& dM);

// ||U^dagger U - I||_F
double unitarity_residual(const ComplexMatrix& U);

// Pauli matrices sigma_1..sigma_3 and the 2x2 identity.
const Eigen::Matrix2cd& pauli(int k);

}  // namespace unitint::algebra
