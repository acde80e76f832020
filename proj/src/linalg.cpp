// SPDX-License-Identifier: Apache-2.0
#include "spdiso/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace spdiso {

const Tolerances& default_tolerances() {
  static const Tolerances defaults{};
  return defaults;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NotInImage: return "NotInImage";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::NotSemisimple: return "NotSemisimple";
    case ErrorCode::NonConstantModulus: return "NonConstantModulus";
    case ErrorCode::BasePointMismatch: return "BasePointMismatch";
    case ErrorCode::NotElliptic: return "NotElliptic";
    case ErrorCode::NotAFixedPoint: return "NotAFixedPoint";
    case ErrorCode::BlockExtractionFailure: return "BlockExtractionFailure";
  }
  return "Unknown";
}

Matrix rotation2(double theta) {
  Matrix e(2, 2);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  e << c, -s, s, c;
  return e;
}

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

bool is_symmetric(const Matrix& a, double tol_rel) {
  if (a.rows() != a.cols()) return false;
  const double scale = a.norm();
  return (a - a.transpose()).norm() <= tol_rel * std::max(scale, 1e-300);
}

bool is_orthogonal(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const auto n = a.rows();
  return (a.transpose() * a - Matrix::Identity(n, n)).norm() <= tol * std::sqrt(double(n));
}

SpdPoint::SpdPoint(Matrix m, const Tolerances& tol) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw Error(ErrorCode::InvalidArgument, "SpdPoint: matrix must be square and non-empty");
  if (!m.allFinite())
    throw Error(ErrorCode::InvalidArgument, "SpdPoint: entries must be finite");
  if (!is_symmetric(m, tol.sym))
    throw Error(ErrorCode::NonSymmetric, "SpdPoint: matrix is not symmetric");
  m_ = symmetrize(m);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceFailure, "SpdPoint: eigenvalue check failed to converge");
  const double floor = tol.pd * std::max(m_.norm(), 1e-300);
  if (solver.eigenvalues().minCoeff() <= floor)
    throw Error(ErrorCode::NotPositiveDefinite, "SpdPoint: matrix is not positive definite");
}

SpdPoint SpdPoint::trusted(Matrix m) {
  SpdPoint p;
  p.m_ = symmetrize(std::move(m));
  return p;
}

SymEigen sym_eigen(const Matrix& s, const Tolerances& tol) {
  if (s.rows() != s.cols())
    throw Error(ErrorCode::DimensionMismatch, "sym_eigen: matrix must be square");
  if (!is_symmetric(s, tol.sym))
    throw Error(ErrorCode::NonSymmetric, "sym_eigen: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrize(s));
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceFailure, "sym_eigen: iteration did not converge");
  return SymEigen{solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<std::complex<double>> general_eigenvalues(const Matrix& a) {
  if (a.rows() != a.cols())
    throw Error(ErrorCode::DimensionMismatch, "general_eigenvalues: matrix must be square");
  Eigen::EigenSolver<Matrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::ConvergenceFailure,
                "general_eigenvalues: QR iteration did not converge");
  const auto& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

namespace {

// Functional calculus on an SPD eigendecomposition.
template <typename Fn>
Matrix sym_apply(const SymEigen& eig, Fn&& fn) {
  Vector mapped = eig.values.unaryExpr(std::forward<Fn>(fn));
  return symmetrize(eig.vectors * mapped.asDiagonal() * eig.vectors.transpose());
}

}  // namespace

SpdPoint spd_sqrt(const SpdPoint& p) {
  SymEigen eig = sym_eigen(p.matrix());
  return SpdPoint::trusted(sym_apply(eig, [](double x) { return std::sqrt(std::max(x, 0.0)); }));
}

PolarDecomposition polar_decompose(const Matrix& a, const Tolerances& tol) {
  if (a.rows() != a.cols())
    throw Error(ErrorCode::DimensionMismatch, "polar_decompose: matrix must be square");
  const double det = a.determinant();
  if (!(std::abs(det) > tol.sing))
    throw Error(ErrorCode::Singular, "polar_decompose: matrix is singular");
  const Matrix gram = symmetrize(a * a.transpose());
  SymEigen eig = sym_eigen(gram);
  Matrix q = sym_apply(eig, [](double x) { return std::sqrt(std::max(x, 0.0)); });
  Matrix q_inv = sym_apply(eig, [](double x) { return 1.0 / std::sqrt(std::max(x, 1e-300)); });
  return PolarDecomposition{SpdPoint::trusted(q), q_inv * a};
}

bool is_normal(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = a.norm();
  return (a * a.transpose() - a.transpose() * a).norm() <= tol * std::max(scale * scale, 1e-300);
}

Matrix rho_embed(const ComplexMatrix& z) {
  const auto h = z.rows();
  if (z.cols() != h)
    throw Error(ErrorCode::DimensionMismatch, "rho_embed: matrix must be square");
  Matrix out = Matrix::Zero(2 * h, 2 * h);
  for (Eigen::Index i = 0; i < h; ++i) {
    for (Eigen::Index j = 0; j < h; ++j) {
      const double re = z(i, j).real();
      const double im = z(i, j).imag();
      out(2 * i, 2 * j) = re;
      out(2 * i, 2 * j + 1) = -im;
      out(2 * i + 1, 2 * j) = im;
      out(2 * i + 1, 2 * j + 1) = re;
    }
  }
  return out;
}

ComplexMatrix rho_project(const Matrix& r, double tol) {
  const auto n = r.rows();
  if (r.cols() != n || n % 2 != 0)
    throw Error(ErrorCode::DimensionMismatch, "rho_project: matrix must be square of even order");
  const auto h = n / 2;
  ComplexMatrix z(h, h);
  double residual_sq = 0.0;
  for (Eigen::Index i = 0; i < h; ++i) {
    for (Eigen::Index j = 0; j < h; ++j) {
      const double a = 0.5 * (r(2 * i, 2 * j) + r(2 * i + 1, 2 * j + 1));
      const double b = 0.5 * (r(2 * i + 1, 2 * j) - r(2 * i, 2 * j + 1));
      z(i, j) = std::complex<double>(a, b);
      const double da = r(2 * i, 2 * j) - a;
      const double db = r(2 * i + 1, 2 * j + 1) - a;
      const double dc = r(2 * i + 1, 2 * j) - b;
      const double dd = r(2 * i, 2 * j + 1) + b;
      residual_sq += da * da + db * db + dc * dc + dd * dd;
    }
  }
  if (std::sqrt(residual_sq) > tol * std::max(1.0, r.norm()))
    throw Error(ErrorCode::NotInImage, "rho_project: matrix is not in the image of the embedding");
  return z;
}

Matrix direct_sum(const std::vector<Matrix>& blocks) {
  Eigen::Index total = 0;
  for (const auto& b : blocks) {
    if (b.rows() != b.cols())
      throw Error(ErrorCode::DimensionMismatch, "direct_sum: blocks must be square");
    total += b.rows();
  }
  Matrix out = Matrix::Zero(total, total);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    if (b.rows() == 0) continue;
    out.block(at, at, b.rows(), b.rows()) = b;
    at += b.rows();
  }
  return out;
}

SpdPoint matrix_exp_sym(const Matrix& x, const Tolerances& tol) {
  SymEigen eig = sym_eigen(x, tol);
  return SpdPoint::trusted(sym_apply(eig, [](double v) { return std::exp(v); }));
}

Matrix matrix_log_spd(const SpdPoint& p) {
  SymEigen eig = sym_eigen(p.matrix());
  if (eig.values.minCoeff() <= 0.0)
    throw Error(ErrorCode::NotPositiveDefinite, "matrix_log_spd: matrix is not positive definite");
  return sym_apply(eig, [](double v) { return std::log(v); });
}

double spd_log_det(const SpdPoint& p) {
  SymEigen eig = sym_eigen(p.matrix());
  if (eig.values.minCoeff() <= 0.0)
    throw Error(ErrorCode::NotPositiveDefinite, "spd_log_det: matrix is not positive definite");
  return eig.values.array().log().sum();
}

}  // namespace spdiso
