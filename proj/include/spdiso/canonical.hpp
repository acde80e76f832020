// SPDX-License-Identifier: Apache-2.0
#ifndef SPDISO_CANONICAL_HPP
#define SPDISO_CANONICAL_HPP

#include <vector>

#include "spdiso/linalg.hpp"

namespace spdiso {

// Eigenstructure of a semisimple matrix with constant eigenvalue modulus.
// The standard form is modulus * (I_p (+) E_theta1^m1 (+) ... (+) -I_q)
// with 0 < theta_1 < ... < theta_r < pi.
struct RotationBlock {
  double angle = 0.0;
  int mult = 0;
};

struct RjsSignature {
  double modulus = 1.0;
  int pos_mult = 0;  // multiplicity of +modulus
  int neg_mult = 0;  // multiplicity of -modulus
  std::vector<RotationBlock> rotations;

  int order() const;
};

// Variant signature whose square matches the standard form of the square.
// The auxiliary form is
//   modulus * (I_p (+) -I_q (+) E_phi1^mu1 (+) -E_phi1^nu1 (+) ... (+) E^k)
// with 0 < phi_1 < ... < phi_h < pi/2 and mu_j + nu_j >= 1.
struct MixedBlock {
  double angle = 0.0;  // phi in (0, pi/2)
  int pos_pairs = 0;   // multiplicity of eigenpair at angle phi
  int neg_pairs = 0;   // multiplicity of eigenpair at angle pi - phi
};

struct RjaSignature {
  double modulus = 1.0;
  int pos_mult = 0;
  int neg_mult = 0;
  int imag_pairs = 0;  // multiplicity of the eigenpair at pi/2
  std::vector<MixedBlock> mixed;

  int order() const;
};

// Classifies the eigenstructure of a nonsingular matrix. Throws
// NonConstantModulus when the eigenvalue moduli spread exceeds tol.eig and
// NotSemisimple when a geometric multiplicity falls short.
RjsSignature spectral_signature(const Matrix& m,
                                const Tolerances& tol = default_tolerances());

Matrix rjs_matrix(const RjsSignature& sig);
Matrix rja_matrix(const RjaSignature& sig);

// Folds rotation angles in (pi/2, pi) onto (0, pi/2) and splits out the
// quarter-turn block, so that the resulting auxiliary form squares to the
// standard form of the square.
RjaSignature rja_to_signature(const RjsSignature& sig,
                              const Tolerances& tol = default_tolerances());

RjaSignature rja_signature(const Matrix& m,
                           const Tolerances& tol = default_tolerances());

struct RjsConjugation {
  RjsSignature signature;
  Matrix form;        // rjs_matrix(signature)
  Matrix conjugator;  // F with F * form * F^{-1} = M
};

RjsConjugation rjs_conjugator(const Matrix& m,
                              const Tolerances& tol = default_tolerances());

// Same, with the conjugator rescaled so that |det F| = sqrt(|det M|).
RjsConjugation rjs_conjugator_normalized(const Matrix& m,
                                         const Tolerances& tol = default_tolerances());

struct RjaCongruence {
  RjaSignature signature;
  Matrix form;        // rja_matrix(signature)
  Matrix conjugator;  // orthogonal Z with U = Z * form * Z^T
};

// Orthogonal congruence of an orthogonal matrix onto its auxiliary form.
// Throws NotOrthogonal.
RjaCongruence rja_orthogonal_conjugator(const Matrix& u,
                                        const Tolerances& tol = default_tolerances());

// Basis of the space of matrices commuting with rjs_matrix(sig):
// M_p (+) rho(M_m1(C)) (+) ... (+) M_q, of dimension p^2 + q^2 + 2 sum m_j^2.
std::vector<Matrix> commutant_basis(const RjsSignature& sig);

}  // namespace spdiso

#endif
