// SPDX-License-Identifier: Apache-2.0
#include "spdiso/isometry.hpp"

#include <cmath>

namespace spdiso {

Family family_of(const IsometrySpec& spec) {
  if (spec.use_j && spec.use_delta) return Family::CongruenceJDelta;
  if (spec.use_j) return Family::CongruenceJ;
  if (spec.use_delta) return Family::CongruenceDelta;
  return Family::Congruence;
}

const char* family_name(Family family) {
  switch (family) {
    case Family::Congruence: return "congruence";
    case Family::CongruenceDelta: return "congruence-delta";
    case Family::CongruenceJ: return "congruence-j";
    case Family::CongruenceJDelta: return "congruence-j-delta";
  }
  return "unknown";
}

const char* ellipticity_status_name(EllipticityStatus status) {
  switch (status) {
    case EllipticityStatus::Elliptic: return "Elliptic";
    case EllipticityStatus::NotSemisimple: return "NotSemisimple";
    case EllipticityStatus::NonConstantModulus: return "NonConstantModulus";
    case EllipticityStatus::ModulusNotOne: return "ModulusNotOne";
    case EllipticityStatus::DetNotUnit: return "DetNotUnit";
  }
  return "unknown";
}

IsometrySpec make_isometry(Matrix m, bool use_j, bool use_delta, const Tolerances& tol) {
  if (m.rows() != m.cols() || m.rows() < 2)
    throw Error(ErrorCode::DimensionMismatch, "make_isometry: matrix must be square of order >= 2");
  if (!m.allFinite())
    throw Error(ErrorCode::InvalidArgument, "make_isometry: entries must be finite");
  if (!(std::abs(m.determinant()) > tol.sing))
    throw Error(ErrorCode::Singular, "make_isometry: matrix is singular");
  return IsometrySpec{std::move(m), use_j, use_delta};
}

SpdPoint apply_isometry(const IsometrySpec& spec, const SpdPoint& p) {
  const int n = spec.order();
  if (p.order() != n)
    throw Error(ErrorCode::DimensionMismatch, "apply_isometry: orders differ");
  const Matrix& m = spec.m;
  const Matrix& x = p.matrix();
  Matrix out;
  if (spec.use_j) {
    out = m * x.llt().solve(m.transpose());
  } else {
    out = m * x * m.transpose();
  }
  if (spec.use_delta) {
    const double det_pow = std::exp((2.0 / n) * spd_log_det(p));
    out *= spec.use_j ? det_pow : 1.0 / det_pow;
  }
  return SpdPoint::trusted(std::move(out));
}

TangentVector differential(const IsometrySpec& spec, const TangentVector& v) {
  const int n = spec.order();
  if (v.base.order() != n)
    throw Error(ErrorCode::DimensionMismatch, "differential: orders differ");
  const Matrix& m = spec.m;
  const Matrix& x = v.base.matrix();
  const Matrix& dir = v.direction;
  const SpdPoint image = apply_isometry(spec, v.base);

  Matrix out;
  if (!spec.use_j && !spec.use_delta) {
    out = m * dir * m.transpose();
  } else {
    const auto llt = x.llt();
    const Matrix x_inv = llt.solve(Matrix::Identity(n, n));
    const double trace_term = (x_inv * dir).trace();
    if (!spec.use_j) {
      // d(Gamma_M o delta): det(X)^{-2/n} M (V - (2/n) tr(X^{-1}V) X) M^T
      const double det_pow = std::exp(-(2.0 / n) * spd_log_det(v.base));
      out = det_pow * (m * (dir - (2.0 / n) * trace_term * x) * m.transpose());
    } else {
      const Matrix pulled = m * x_inv * dir * x_inv * m.transpose();
      if (!spec.use_delta) {
        out = -pulled;
      } else {
        // d(Gamma_M o j o delta): det(X)^{2/n} ((2/n) tr(X^{-1}V) M X^{-1} M^T - M X^{-1}V X^{-1} M^T)
        const double det_pow = std::exp((2.0 / n) * spd_log_det(v.base));
        const Matrix core = m * x_inv * m.transpose();
        out = det_pow * ((2.0 / n) * trace_term * core - pulled);
      }
    }
  }
  return TangentVector{image, symmetrize(out)};
}

namespace {

bool map_canonical_failure(const Error& e, EllipticityReport* report) {
  if (e.code() == ErrorCode::NotSemisimple) {
    report->elliptic = false;
    report->reason = EllipticityStatus::NotSemisimple;
    return true;
  }
  if (e.code() == ErrorCode::NonConstantModulus) {
    report->elliptic = false;
    report->reason = EllipticityStatus::NonConstantModulus;
    return true;
  }
  return false;
}

EllipticityReport classify_congruence(const IsometrySpec& spec, bool require_unit_modulus,
                                      const Tolerances& tol) {
  EllipticityReport report;
  RjsSignature sig;
  try {
    sig = spectral_signature(spec.m, tol);
  } catch (const Error& e) {
    if (map_canonical_failure(e, &report)) {
      // Where ellipticity demands unit modulus, a modulus spread already
      // means some eigenvalue is off the unit circle.
      if (require_unit_modulus && report.reason == EllipticityStatus::NonConstantModulus)
        report.reason = EllipticityStatus::ModulusNotOne;
      return report;
    }
    throw;
  }
  report.rjs = sig;
  if (require_unit_modulus && std::abs(sig.modulus - 1.0) > tol.eig) {
    report.elliptic = false;
    report.reason = EllipticityStatus::ModulusNotOne;
    return report;
  }
  report.elliptic = true;
  report.reason = EllipticityStatus::Elliptic;
  return report;
}

EllipticityReport classify_j(const IsometrySpec& spec, const Tolerances& tol) {
  EllipticityReport report;
  const Matrix mt_inv =
      spec.m.transpose().partialPivLu().solve(Matrix::Identity(spec.order(), spec.order()));
  const Matrix n0 = spec.m * mt_inv;
  RjsSignature sig;
  try {
    sig = spectral_signature(n0, tol);
  } catch (const Error& e) {
    if (map_canonical_failure(e, &report)) {
      // det(M M^{-T}) = 1, so a modulus spread means moduli off one.
      if (report.reason == EllipticityStatus::NonConstantModulus)
        report.reason = EllipticityStatus::ModulusNotOne;
      return report;
    }
    throw;
  }
  report.rjs = sig;
  if (std::abs(sig.modulus - 1.0) > tol.eig) {
    report.elliptic = false;
    report.reason = EllipticityStatus::ModulusNotOne;
    return report;
  }
  const OrthogonalCongruence data = orthogonal_congruence_data(spec.m, tol);
  report.rja_of_u = data.signature;
  report.elliptic = true;
  report.reason = EllipticityStatus::Elliptic;
  return report;
}

}  // namespace

EllipticityReport classify(const IsometrySpec& spec, const Tolerances& tol) {
  switch (family_of(spec)) {
    case Family::Congruence:
      return classify_congruence(spec, /*require_unit_modulus=*/true, tol);
    case Family::CongruenceDelta:
      return classify_congruence(spec, /*require_unit_modulus=*/false, tol);
    case Family::CongruenceJ:
      return classify_j(spec, tol);
    case Family::CongruenceJDelta: {
      EllipticityReport report = classify_j(spec, tol);
      if (!report.elliptic) return report;
      if (std::abs(std::abs(spec.m.determinant()) - 1.0) > tol.det_unit) {
        report.elliptic = false;
        report.reason = EllipticityStatus::DetNotUnit;
      }
      return report;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "classify: unknown family");
}

OrthogonalCongruence orthogonal_congruence_data(const Matrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols() || m.rows() < 2)
    throw Error(ErrorCode::DimensionMismatch,
                "orthogonal_congruence_data: matrix must be square of order >= 2");
  if (!(std::abs(m.determinant()) > tol.sing))
    throw Error(ErrorCode::Singular, "orthogonal_congruence_data: matrix is singular");
  const int n = static_cast<int>(m.rows());

  const Matrix mt_inv = m.transpose().partialPivLu().solve(Matrix::Identity(n, n));
  const Matrix n0 = m * mt_inv;
  const RjsConjugation similarity = rjs_conjugator(n0, tol);

  const Matrix s = similarity.conjugator;
  const Matrix s_inv = s.partialPivLu().solve(Matrix::Identity(n, n));
  const Matrix normal_part = s_inv * m * s_inv.transpose();

  PolarDecomposition polar = polar_decompose(normal_part, tol);
  const RjaCongruence rja = rja_orthogonal_conjugator(polar.orthogonal, tol);
  const Matrix congruence = s * spd_sqrt(polar.spd).matrix() * rja.conjugator;

  const Matrix reassembled = congruence * rja.form * congruence.transpose();
  if ((reassembled - m).norm() > 1e-6 * std::max(m.norm(), 1.0))
    throw Error(ErrorCode::ConvergenceFailure,
                "orthogonal_congruence_data: congruence residual too large");
  return OrthogonalCongruence{s,          polar.spd,  polar.orthogonal,
                              rja.conjugator, congruence, rja.signature};
}

}  // namespace spdiso
