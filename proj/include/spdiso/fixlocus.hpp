// SPDX-License-Identifier: Apache-2.0
#ifndef SPDISO_FIXLOCUS_HPP
#define SPDISO_FIXLOCUS_HPP

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "spdiso/isometry.hpp"

namespace spdiso {

enum class FactorKind {
  Euclidean,    // R^m
  SlModSo,      // SL_m / SO_m
  SlcModSu,     // SL_m(C) / SU_m
  So0ModSoSo,   // SO_0(p,q) / (SO_p x SO_q)
  SpModU,       // Sp_2k / U_k
  SuModSu,      // SU(mu,nu) / S(U_mu x U_nu)
};

const char* factor_kind_name(FactorKind kind);

struct DeRhamFactor {
  FactorKind kind = FactorKind::Euclidean;
  int a = 0;  // m, p, k or mu depending on kind
  int b = 0;  // q or nu where applicable

  int dimension() const;
};

struct FixedLocusDescriptor {
  Family family = Family::Congruence;
  // F0 for the congruence families (det-normalized for the delta family),
  // R for the j-families.
  Matrix conjugator;
  std::variant<RjsSignature, RjaSignature> signature;
  std::optional<double> det_constraint;  // required det of fixed points
  int dimension = 0;
  std::vector<DeRhamFactor> factors;
};

// Explicit description of the fixed locus of an elliptic isometry.
// Throws NotElliptic.
FixedLocusDescriptor fix_locus(const IsometrySpec& spec,
                               const Tolerances& tol = default_tolerances());

// Draws a fixed point by exponentiating a random element of the symmetric
// part of each block group's Lie algebra and conjugating the assembly.
// Deterministic in (seed, scale).
SpdPoint sample_point(const FixedLocusDescriptor& desc, std::uint64_t seed,
                      double scale = 0.5);

bool membership(const IsometrySpec& spec, const SpdPoint& p, double tol);

// Numeric dimension of the +1 eigenspace of the differential at a fixed
// point, computed on an orthonormal frame of the tangent space so that the
// kernel separates cleanly. Throws NotAFixedPoint.
int tangent_dim_oracle(const IsometrySpec& spec, const SpdPoint& p,
                       const Tolerances& tol = default_tolerances());

// Coordinates of the flat part of a delta-family locus: the diagonal blocks
// normalized to unit determinant together with the log-determinant
// coordinates of all blocks but the last.
struct DeltaSplit {
  std::vector<Matrix> unit_blocks;
  std::vector<double> coords;
};

DeltaSplit delta_splitting_coords(const FixedLocusDescriptor& desc, const SpdPoint& p,
                                  const Tolerances& tol = default_tolerances());
SpdPoint delta_splitting_inverse(const FixedLocusDescriptor& desc,
                                 const DeltaSplit& split);

}  // namespace spdiso

#endif
