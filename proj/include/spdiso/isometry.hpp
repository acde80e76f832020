// SPDX-License-Identifier: Apache-2.0
#ifndef SPDISO_ISOMETRY_HPP
#define SPDISO_ISOMETRY_HPP

#include <optional>

#include "spdiso/canonical.hpp"
#include "spdiso/manifold.hpp"

namespace spdiso {

// One of the four isometry families of the SPD manifold with the trace
// metric, selected by the two flags:
//   X -> M X M^T                          (congruence)
//   X -> M X M^T / det(X)^{2/n}           (use_delta)
//   X -> M X^{-1} M^T                     (use_j)
//   X -> det(X)^{2/n} M X^{-1} M^T        (use_j and use_delta)
struct IsometrySpec {
  Matrix m;
  bool use_j = false;
  bool use_delta = false;

  int order() const { return static_cast<int>(m.rows()); }
};

enum class Family { Congruence, CongruenceDelta, CongruenceJ, CongruenceJDelta };

Family family_of(const IsometrySpec& spec);
const char* family_name(Family family);

// Validates order >= 2 and nonsingularity of M.
IsometrySpec make_isometry(Matrix m, bool use_j, bool use_delta,
                           const Tolerances& tol = default_tolerances());

SpdPoint apply_isometry(const IsometrySpec& spec, const SpdPoint& p);

// Differential of the isometry at v.base, returned at apply_isometry(base).
TangentVector differential(const IsometrySpec& spec, const TangentVector& v);

enum class EllipticityStatus {
  Elliptic,
  NotSemisimple,
  NonConstantModulus,
  ModulusNotOne,
  DetNotUnit,
};

const char* ellipticity_status_name(EllipticityStatus status);

struct EllipticityReport {
  bool elliptic = false;
  EllipticityStatus reason = EllipticityStatus::Elliptic;
  // Eigenstructure of M for the congruence families, of M M^{-T} for the
  // j-families; present whenever the corresponding form exists.
  std::optional<RjsSignature> rjs;
  // Auxiliary signature of the orthogonal matrix congruent to M (j-families).
  std::optional<RjaSignature> rja_of_u;
};

EllipticityReport classify(const IsometrySpec& spec,
                           const Tolerances& tol = default_tolerances());

// Congruence of M onto the auxiliary form of an orthogonal matrix:
//   similarity^{-1} (M M^{-T}) similarity is orthogonal,
//   polar_spd * orthogonal is the polar decomposition of S^{-1} M S^{-T},
//   congruence = similarity * sqrt(polar_spd) * rja_conjugator, and
//   M = congruence * rja_matrix(signature) * congruence^T.
struct OrthogonalCongruence {
  Matrix similarity;   // S
  SpdPoint polar_spd;  // Q
  Matrix orthogonal;   // U
  Matrix rja_conjugator;  // Z
  Matrix congruence;   // R
  RjaSignature signature;
};

OrthogonalCongruence orthogonal_congruence_data(const Matrix& m,
                                                const Tolerances& tol = default_tolerances());

}  // namespace spdiso

#endif
