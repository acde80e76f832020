// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "spdiso/canonical.hpp"

using namespace spdiso;
using namespace spdiso::testing;

namespace {

Matrix conjugate(const Matrix& c, const Matrix& j) {
  return c * j * c.partialPivLu().solve(Matrix::Identity(j.rows(), j.cols()));
}

bool same_signature(const RjsSignature& a, const RjsSignature& b, double tol = 1e-8) {
  if (a.pos_mult != b.pos_mult || a.neg_mult != b.neg_mult) return false;
  if (std::abs(a.modulus - b.modulus) > tol * std::max(a.modulus, 1.0)) return false;
  if (a.rotations.size() != b.rotations.size()) return false;
  for (std::size_t i = 0; i < a.rotations.size(); ++i) {
    if (a.rotations[i].mult != b.rotations[i].mult) return false;
    if (std::abs(a.rotations[i].angle - b.rotations[i].angle) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("spectral_signature closed forms") {
  const RjsSignature rot = spectral_signature(rotation2(kPi / 3));
  CHECK(rot.pos_mult == 0);
  CHECK(rot.neg_mult == 0);
  REQUIRE(rot.rotations.size() == 1);
  CHECK(rot.rotations[0].angle == doctest::Approx(kPi / 3));
  CHECK(rot.rotations[0].mult == 1);
  CHECK(rot.modulus == doctest::Approx(1.0));

  Matrix d = Matrix::Identity(3, 3);
  d(2, 2) = -1.0;
  const RjsSignature diag = spectral_signature(d);
  CHECK(diag.pos_mult == 2);
  CHECK(diag.neg_mult == 1);
  CHECK(diag.rotations.empty());
}

TEST_CASE("spectral_signature rejects defective and mixed-modulus input") {
  Matrix jordan(2, 2);
  jordan << 1, 1, 0, 1;
  CHECK_THROWS_WITH_AS(spectral_signature(jordan), doctest::Contains("multiplicity"), Error);

  Matrix mixed(2, 2);
  mixed << 2, 0, 0, 0.5;
  CHECK_THROWS_AS(spectral_signature(mixed), Error);
  try {
    spectral_signature(mixed);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonConstantModulus);
  }
}

TEST_CASE("rjs_matrix assembles the standard form") {
  RjsSignature sig;
  sig.modulus = 1.0;
  sig.pos_mult = 1;
  sig.neg_mult = 1;
  Matrix expect(2, 2);
  expect << 1, 0, 0, -1;
  CHECK((rjs_matrix(sig) - expect).norm() == 0.0);

  RjsSignature twice;
  twice.modulus = 2.0;
  twice.rotations.push_back(RotationBlock{kPi / 2, 1});
  CHECK((rjs_matrix(twice) - 2.0 * rotation2(kPi / 2)).norm() <= 1e-15);
}

TEST_CASE("signature round trips through conjugation") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const RjsSignature sig = random_rjs_signature(rng, n, trial % 2 == 0);
    const Matrix j = rjs_matrix(sig);
    const Matrix m = conjugate(random_conditioned(rng, n), j);
    const RjsSignature back = spectral_signature(m);
    CHECK(same_signature(back, sig, 1e-7));
    CHECK(eigenvalues_match(general_eigenvalues(rjs_matrix(back)), general_eigenvalues(m)));
  }
}

TEST_CASE("signature is invariant under transpose") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const Matrix m =
        conjugate(random_conditioned(rng, n), rjs_matrix(random_rjs_signature(rng, n, true)));
    CHECK(same_signature(spectral_signature(m), spectral_signature(m.transpose()), 1e-7));
  }
}

TEST_CASE("rjs_conjugator on matrices already in standard form") {
  RjsSignature sig;
  sig.pos_mult = 1;
  sig.neg_mult = 1;
  const Matrix j = rjs_matrix(sig);
  const RjsConjugation conj = rjs_conjugator(j);
  CHECK((conj.form - j).norm() <= 1e-12);
  CHECK((conjugate(conj.conjugator, conj.form) - j).norm() <= 1e-10);

  const Matrix e = rotation2(0.8);
  const RjsConjugation rot = rjs_conjugator(e);
  CHECK((conjugate(rot.conjugator, rot.form) - e).norm() <= 1e-10);
}

TEST_CASE("rjs_conjugator reassembles random conjugates") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const RjsSignature sig = random_rjs_signature(rng, n, trial % 3 != 0);
    // Condition of the conjugating matrix ranges up to about 1e3.
    const double spread = uniform(rng, 0.5, 3.45);
    const Matrix m = conjugate(random_conditioned(rng, n, spread), rjs_matrix(sig));
    const RjsConjugation conj = rjs_conjugator(m);
    CHECK((conjugate(conj.conjugator, conj.form) - m).norm() <= 1e-8 * std::max(m.norm(), 1.0));
  }
}

TEST_CASE("normalized conjugator pins the determinant") {
  const RjsConjugation id = rjs_conjugator_normalized(Matrix::Identity(3, 3));
  CHECK(std::abs(std::abs(id.conjugator.determinant()) - 1.0) <= 1e-10);

  const Matrix four = 4.0 * Matrix::Identity(2, 2);
  const RjsConjugation scaled = rjs_conjugator_normalized(four);
  CHECK(std::abs(scaled.conjugator.determinant()) == doctest::Approx(4.0));
  CHECK((conjugate(scaled.conjugator, scaled.form) - four).norm() <= 1e-10);

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const Matrix m =
        conjugate(random_conditioned(rng, n), rjs_matrix(random_rjs_signature(rng, n, false)));
    const RjsConjugation conj = rjs_conjugator_normalized(m);
    const double target = std::sqrt(std::abs(m.determinant()));
    CHECK(std::abs(std::abs(conj.conjugator.determinant()) - target) <= 1e-8 * target);
    CHECK((conjugate(conj.conjugator, conj.form) - m).norm() <= 1e-8 * std::max(m.norm(), 1.0));
  }
}

TEST_CASE("rja folding rules") {
  // A rotation past the right angle folds onto its mirror angle.
  const RjaSignature folded = rja_signature(rotation2(3 * kPi / 4));
  CHECK(folded.pos_mult == 0);
  CHECK(folded.neg_mult == 0);
  CHECK(folded.imag_pairs == 0);
  REQUIRE(folded.mixed.size() == 1);
  CHECK(folded.mixed[0].angle == doctest::Approx(kPi / 4));
  CHECK(folded.mixed[0].pos_pairs == 0);
  CHECK(folded.mixed[0].neg_pairs == 1);

  const RjaSignature omega = rja_signature(omega_matrix(2, 5));
  CHECK(omega.pos_mult == 2);
  CHECK(omega.neg_mult == 3);
  CHECK(omega.imag_pairs == 0);
  CHECK(omega.mixed.empty());

  const RjaSignature quarter = rja_signature(rotation2(kPi / 2));
  CHECK(quarter.imag_pairs == 1);
  CHECK(quarter.pos_mult == 0);
  CHECK(quarter.neg_mult == 0);
  CHECK(quarter.mixed.empty());
}

TEST_CASE("rja_matrix assembles the auxiliary form") {
  RjaSignature sig;
  sig.pos_mult = 1;
  sig.neg_mult = 1;
  Matrix expect(2, 2);
  expect << 1, 0, 0, -1;
  CHECK((rja_matrix(sig) - expect).norm() == 0.0);

  RjaSignature quarter;
  quarter.imag_pairs = 1;
  CHECK((rja_matrix(quarter) - rotation2(kPi / 2)).norm() <= 1e-15);
}

TEST_CASE("auxiliary form squares to the standard form of the square") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const RjsSignature sig = random_rjs_signature(rng, n, true);
    const Matrix u0 = random_orthogonal(rng, n);
    const Matrix m = u0 * rjs_matrix(sig) * u0.transpose();
    const Matrix aux = rja_matrix(rja_signature(m));
    const Matrix square_form = rjs_matrix(spectral_signature(m * m));
    CHECK((aux * aux - square_form).norm() <= 1e-10 * std::max(square_form.norm(), 1.0));
  }
}

TEST_CASE("rja_orthogonal_conjugator closed forms") {
  const Matrix omega = omega_matrix(1, 3);
  const RjaCongruence fixed = rja_orthogonal_conjugator(omega);
  CHECK((fixed.form - omega).norm() <= 1e-12);
  CHECK((fixed.conjugator * fixed.form * fixed.conjugator.transpose() - omega).norm() <= 1e-10);

  const Matrix lam = lambda_matrix(2);
  const RjaCongruence skew = rja_orthogonal_conjugator(lam);
  CHECK((skew.form - lam).norm() <= 1e-12);
  CHECK(skew.signature.imag_pairs == 2);

  const Matrix e34 = rotation2(3 * kPi / 4);
  const RjaCongruence folded = rja_orthogonal_conjugator(e34);
  CHECK((folded.form + rotation2(kPi / 4)).norm() <= 1e-12);
  CHECK((folded.conjugator * folded.form * folded.conjugator.transpose() - e34).norm() <= 1e-8);
}

TEST_CASE("rja_orthogonal_conjugator on random orthogonal matrices") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const Matrix z0 = random_orthogonal(rng, n);
    const Matrix u = z0 * rja_matrix(random_rja_signature(rng, n)) * z0.transpose();
    const RjaCongruence congruence = rja_orthogonal_conjugator(u);
    CHECK(is_orthogonal(congruence.conjugator, 1e-8));
    CHECK((congruence.conjugator * congruence.form * congruence.conjugator.transpose() - u)
              .norm() <= 1e-8 * std::max(u.norm(), 1.0));
  }
  CHECK_THROWS_AS(rja_orthogonal_conjugator(2.0 * Matrix::Identity(2, 2)), Error);
}

TEST_CASE("mixed rotation forms are embedded complex scalars") {
  // E_theta^{(+)mu (+) (-E_theta)^{(+)nu} equals the embedding of
  // exp(i theta) (I_mu (+) -I_nu).
  const double theta = kPi / 5;
  ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
  diag(0, 0) = std::polar(1.0, theta);
  diag(1, 1) = std::polar(1.0, theta);
  diag(2, 2) = -std::polar(1.0, theta);
  CHECK((rho_embed(diag) - theta_matrix(theta, 2, 1)).norm() <= 1e-14);
}

TEST_CASE("commutant basis structure and size") {
  RjsSignature full;
  full.pos_mult = 3;
  CHECK(commutant_basis(full).size() == 9);

  RjsSignature pair;
  pair.rotations.push_back(RotationBlock{0.7, 1});
  const auto basis = commutant_basis(pair);
  REQUIRE(basis.size() == 2);
  CHECK((basis[0] - Matrix::Identity(2, 2)).norm() == 0.0);
  CHECK((basis[1] - rotation2(kPi / 2)).norm() <= 1e-15);
}

TEST_CASE("commutant basis dimension matches the numeric commutator kernel") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const RjsSignature sig = random_rjs_signature(rng, n, true);
    const Matrix j = rjs_matrix(sig);
    const auto basis = commutant_basis(sig);
    int expected = sig.pos_mult * sig.pos_mult + sig.neg_mult * sig.neg_mult;
    for (const auto& rot : sig.rotations) expected += 2 * rot.mult * rot.mult;
    CHECK(static_cast<int>(basis.size()) == expected);
    CHECK(commutator_kernel_dimension(j) == expected);
    for (const auto& b : basis)
      CHECK((b * j - j * b).norm() <= 1e-14 * std::max(j.norm(), 1.0));
  }
}
