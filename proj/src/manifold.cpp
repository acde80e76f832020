// SPDX-License-Identifier: Apache-2.0
#include "spdiso/manifold.hpp"

#include <cmath>

namespace spdiso {

namespace {

// P^{+-1/2} from one eigendecomposition.
struct Whitening {
  Matrix half;      // P^{1/2}
  Matrix inv_half;  // P^{-1/2}
};

Whitening whiten(const SpdPoint& p) {
  SymEigen eig = sym_eigen(p.matrix());
  Vector sqrt_vals = eig.values.array().max(0.0).sqrt();
  Vector inv_vals = sqrt_vals.unaryExpr([](double v) { return 1.0 / std::max(v, 1e-300); });
  Whitening w;
  w.half = symmetrize(eig.vectors * sqrt_vals.asDiagonal() * eig.vectors.transpose());
  w.inv_half = symmetrize(eig.vectors * inv_vals.asDiagonal() * eig.vectors.transpose());
  return w;
}

void check_same_order(const SpdPoint& a, const SpdPoint& b, const char* who) {
  if (a.order() != b.order())
    throw Error(ErrorCode::DimensionMismatch, std::string(who) + ": orders differ");
}

}  // namespace

TangentVector make_tangent(SpdPoint base, Matrix direction, const Tolerances& tol) {
  if (direction.rows() != base.order() || direction.cols() != base.order())
    throw Error(ErrorCode::DimensionMismatch, "make_tangent: direction order mismatch");
  if (!is_symmetric(direction, tol.sym))
    throw Error(ErrorCode::NonSymmetric, "make_tangent: direction is not symmetric");
  return TangentVector{std::move(base), symmetrize(direction)};
}

double metric(const TangentVector& v, const TangentVector& w, const Tolerances& tol) {
  check_same_order(v.base, w.base, "metric");
  const Matrix& a = v.base.matrix();
  if ((a - w.base.matrix()).norm() > tol.sym * std::max(a.norm(), 1.0) + 1e-300)
    throw Error(ErrorCode::BasePointMismatch, "metric: tangent vectors have different base points");
  const Matrix a_inv = a.llt().solve(Matrix::Identity(a.rows(), a.cols()));
  return (a_inv * v.direction * a_inv * w.direction).trace();
}

SpdPoint exp_map(const TangentVector& v) {
  Whitening w = whiten(v.base);
  const Matrix inner = symmetrize(w.inv_half * v.direction * w.inv_half);
  const Matrix e = matrix_exp_sym(inner).matrix();
  return SpdPoint::trusted(w.half * e * w.half);
}

TangentVector log_map(const SpdPoint& a, const SpdPoint& b) {
  check_same_order(a, b, "log_map");
  Whitening w = whiten(a);
  const Matrix inner = symmetrize(w.inv_half * b.matrix() * w.inv_half);
  const Matrix l = matrix_log_spd(SpdPoint::trusted(inner));
  return TangentVector{a, symmetrize(w.half * l * w.half)};
}

SpdPoint geodesic(const SpdPoint& a, const SpdPoint& b, double t) {
  check_same_order(a, b, "geodesic");
  Whitening w = whiten(a);
  const Matrix inner = symmetrize(w.inv_half * b.matrix() * w.inv_half);
  SymEigen eig = sym_eigen(inner);
  if (eig.values.minCoeff() <= 0.0)
    throw Error(ErrorCode::NotPositiveDefinite, "geodesic: endpoint is not positive definite");
  Vector powered = eig.values.array().pow(t);
  const Matrix mid =
      symmetrize(eig.vectors * powered.asDiagonal() * eig.vectors.transpose());
  return SpdPoint::trusted(w.half * mid * w.half);
}

double distance(const SpdPoint& a, const SpdPoint& b) {
  check_same_order(a, b, "distance");
  Whitening w = whiten(a);
  const Matrix inner = symmetrize(w.inv_half * b.matrix() * w.inv_half);
  return matrix_log_spd(SpdPoint::trusted(inner)).norm();
}

SlSplit sl_split(const SpdPoint& p) {
  const int n = p.order();
  const double log_det = spd_log_det(p);
  const Matrix unit = p.matrix() * std::exp(-log_det / n);
  return SlSplit{SpdPoint::trusted(unit), log_det / std::sqrt(double(n))};
}

SpdPoint sl_split_inverse(const SlSplit& split) {
  const int n = split.unit_det.order();
  const double log_det = split.coordinate * std::sqrt(double(n));
  return SpdPoint::trusted(split.unit_det.matrix() * std::exp(log_det / n));
}

}  // namespace spdiso
