// SPDX-License-Identifier: Apache-2.0
#ifndef SPDISO_LINALG_HPP
#define SPDISO_LINALG_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "spdiso/error.hpp"
#include "spdiso/tolerances.hpp"

namespace spdiso {

using Matrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;

// 2x2 rotation by theta; rotation2(pi/2) is the standard complex unit E.
Matrix rotation2(double theta);

Matrix symmetrize(const Matrix& a);
bool is_symmetric(const Matrix& a, double tol_rel);
bool is_orthogonal(const Matrix& a, double tol);

// A symmetric positive definite matrix, the points of the manifold.
// Construction validates symmetry and positivity; trusted() skips the
// eigenvalue check for matrices that are SPD by construction.
class SpdPoint {
 public:
  explicit SpdPoint(Matrix m, const Tolerances& tol = default_tolerances());
  static SpdPoint trusted(Matrix m);

  const Matrix& matrix() const { return m_; }
  int order() const { return static_cast<int>(m_.rows()); }

 private:
  SpdPoint() = default;
  Matrix m_;
};

struct SymEigen {
  Vector values;   // ascending
  Matrix vectors;  // orthogonal, columns match values
};

// Eigendecomposition of a symmetric matrix. Throws NonSymmetric.
SymEigen sym_eigen(const Matrix& s, const Tolerances& tol = default_tolerances());

// Complex eigenvalues of a general square matrix, conjugate-closed for real
// input. Throws ConvergenceFailure if the QR iteration does not converge.
std::vector<std::complex<double>> general_eigenvalues(const Matrix& a);

SpdPoint spd_sqrt(const SpdPoint& p);

struct PolarDecomposition {
  SpdPoint spd;      // Q = sqrt(A A^T)
  Matrix orthogonal; // U with A = Q U
};

// Polar decomposition of a nonsingular matrix. Throws Singular.
PolarDecomposition polar_decompose(const Matrix& a,
                                   const Tolerances& tol = default_tolerances());

bool is_normal(const Matrix& a, double tol);

// Algebra monomorphism M_h(C) -> M_2h(R); each entry z becomes the 2x2 block
// Re(z) I + Im(z) E.
Matrix rho_embed(const ComplexMatrix& z);

// Inverse of rho_embed on its image. Throws NotInImage if any 2x2 block of r
// is farther than tol * max(1, ||r||) from the form a I + b E.
ComplexMatrix rho_project(const Matrix& r, double tol);

// Block-diagonal assembly; order-0 blocks are skipped.
Matrix direct_sum(const std::vector<Matrix>& blocks);

SpdPoint matrix_exp_sym(const Matrix& x, const Tolerances& tol = default_tolerances());
Matrix matrix_log_spd(const SpdPoint& p);

// log(det P) as a sum of eigenvalue logs.
double spd_log_det(const SpdPoint& p);

}  // namespace spdiso

#endif
