// SPDX-License-Identifier: Apache-2.0
#ifndef SPDISO_MANIFOLD_HPP
#define SPDISO_MANIFOLD_HPP

#include "spdiso/linalg.hpp"

namespace spdiso {

struct TangentVector {
  SpdPoint base;
  Matrix direction;  // symmetric
};

TangentVector make_tangent(SpdPoint base, Matrix direction,
                           const Tolerances& tol = default_tolerances());

// Trace metric g_A(V, W) = tr(A^{-1} V A^{-1} W). Throws BasePointMismatch
// when v and w are anchored at different points.
double metric(const TangentVector& v, const TangentVector& w,
              const Tolerances& tol = default_tolerances());

SpdPoint exp_map(const TangentVector& v);
TangentVector log_map(const SpdPoint& a, const SpdPoint& b);

// Geodesic from a to b at parameter t; t = 0 gives a, t = 1 gives b.
SpdPoint geodesic(const SpdPoint& a, const SpdPoint& b, double t);

double distance(const SpdPoint& a, const SpdPoint& b);

// Isometric splitting off the determinant ray: P maps to its unit-determinant
// part together with the coordinate ln(det P) / sqrt(n) on a Euclidean line.
struct SlSplit {
  SpdPoint unit_det;
  double coordinate;
};

SlSplit sl_split(const SpdPoint& p);
SpdPoint sl_split_inverse(const SlSplit& split);

}  // namespace spdiso

#endif
