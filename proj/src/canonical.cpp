// SPDX-License-Identifier: Apache-2.0
#include "spdiso/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace spdiso {

namespace {

constexpr double kPi = 3.14159265358979323846;

// The rank cutoff is taken relative to the scale of the unshifted matrix, so
// that a numerically zero shift (multiplicity n) still reads as rank zero.
int numeric_rank(const Vector& singular_values, double scale, double rel_tol) {
  const double cutoff = rel_tol * std::max(scale, 1e-300);
  int rank = 0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i)
    if (singular_values(i) > cutoff) ++rank;
  return rank;
}

// Kernel of (m - lambda I) over C with an expected dimension; also enforces
// the geometric-multiplicity test rank = n - mult.
ComplexMatrix complex_kernel(const ComplexMatrix& shifted, int mult, double scale,
                             const Tolerances& tol, const char* who) {
  Eigen::JacobiSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
  const int n = static_cast<int>(shifted.rows());
  if (numeric_rank(svd.singularValues(), scale, tol.rank) != n - mult)
    throw Error(ErrorCode::NotSemisimple,
                std::string(who) + ": eigenvalue geometric multiplicity deficit");
  return svd.matrixV().rightCols(mult);
}

Matrix real_kernel(const Matrix& shifted, int mult, double scale, const Tolerances& tol,
                   const char* who) {
  Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
  const int n = static_cast<int>(shifted.rows());
  if (numeric_rank(svd.singularValues(), scale, tol.rank) != n - mult)
    throw Error(ErrorCode::NotSemisimple,
                std::string(who) + ": eigenvalue geometric multiplicity deficit");
  return svd.matrixV().rightCols(mult);
}

// Columns (sqrt(2) Re v, sqrt(2) Im v) per kernel vector v of the eigenvalue
// exp(-i angle); in this basis the matrix acts as the rotation by angle.
Matrix realify_pairs(const ComplexMatrix& kernel) {
  const auto n = kernel.rows();
  const auto m = kernel.cols();
  Matrix out(n, 2 * m);
  const double s = std::sqrt(2.0);
  for (Eigen::Index c = 0; c < m; ++c) {
    out.col(2 * c) = s * kernel.col(c).real();
    out.col(2 * c + 1) = s * kernel.col(c).imag();
  }
  return out;
}

void check_nonsingular(const Matrix& m, const Tolerances& tol, const char* who) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw Error(ErrorCode::DimensionMismatch, std::string(who) + ": matrix must be square");
  if (!m.allFinite())
    throw Error(ErrorCode::InvalidArgument, std::string(who) + ": entries must be finite");
  if (!(std::abs(m.determinant()) > tol.sing))
    throw Error(ErrorCode::Singular, std::string(who) + ": matrix is singular");
}

}  // namespace

int RjsSignature::order() const {
  int n = pos_mult + neg_mult;
  for (const auto& r : rotations) n += 2 * r.mult;
  return n;
}

int RjaSignature::order() const {
  int n = pos_mult + neg_mult + 2 * imag_pairs;
  for (const auto& b : mixed) n += 2 * (b.pos_pairs + b.neg_pairs);
  return n;
}

RjsSignature spectral_signature(const Matrix& m, const Tolerances& tol) {
  check_nonsingular(m, tol, "spectral_signature");
  const int n = static_cast<int>(m.rows());
  const auto eigenvalues = general_eigenvalues(m);

  double min_mod = std::numeric_limits<double>::infinity();
  double max_mod = 0.0;
  double log_sum = 0.0;
  for (const auto& ev : eigenvalues) {
    const double mod = std::abs(ev);
    min_mod = std::min(min_mod, mod);
    max_mod = std::max(max_mod, mod);
    log_sum += std::log(mod);
  }
  if (max_mod / min_mod - 1.0 > tol.eig)
    throw Error(ErrorCode::NonConstantModulus,
                "spectral_signature: eigenvalue moduli are not constant");
  const double eta = std::exp(log_sum / n);

  RjsSignature sig;
  sig.modulus = eta;
  std::vector<double> pair_angles;
  for (const auto& ev : eigenvalues) {
    if (ev.imag() > 0.0) {
      pair_angles.push_back(std::atan2(ev.imag(), ev.real()));
    } else if (ev.imag() == 0.0) {
      if (ev.real() > 0.0)
        ++sig.pos_mult;
      else
        ++sig.neg_mult;
    }
  }
  if (sig.pos_mult + sig.neg_mult + 2 * static_cast<int>(pair_angles.size()) != n)
    throw Error(ErrorCode::ConvergenceFailure,
                "spectral_signature: eigenvalues are not conjugate-closed");

  std::sort(pair_angles.begin(), pair_angles.end());
  for (std::size_t i = 0; i < pair_angles.size();) {
    std::size_t j = i + 1;
    double sum = pair_angles[i];
    while (j < pair_angles.size() && pair_angles[j] - pair_angles[j - 1] <= tol.angle_gap) {
      sum += pair_angles[j];
      ++j;
    }
    const int count = static_cast<int>(j - i);
    const double theta = sum / count;
    if (theta <= tol.angle_gap)
      sig.pos_mult += 2 * count;
    else if (theta >= kPi - tol.angle_gap)
      sig.neg_mult += 2 * count;
    else
      sig.rotations.push_back(RotationBlock{theta, count});
    i = j;
  }

  // Geometric multiplicities: the numeric rank of (M - lambda I) must drop by
  // exactly the algebraic multiplicity at every distinct eigenvalue.
  const ComplexMatrix mc = m.cast<std::complex<double>>();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const double scale = m.norm() + eta;
  if (sig.pos_mult > 0)
    real_kernel(m - eta * Matrix::Identity(n, n), sig.pos_mult, scale, tol,
                "spectral_signature");
  if (sig.neg_mult > 0)
    real_kernel(m + eta * Matrix::Identity(n, n), sig.neg_mult, scale, tol,
                "spectral_signature");
  for (const auto& rot : sig.rotations) {
    const std::complex<double> lambda = std::polar(eta, rot.angle);
    complex_kernel(mc - lambda * id, rot.mult, scale, tol, "spectral_signature");
  }
  return sig;
}

Matrix rjs_matrix(const RjsSignature& sig) {
  std::vector<Matrix> blocks;
  if (sig.pos_mult > 0) blocks.push_back(Matrix::Identity(sig.pos_mult, sig.pos_mult));
  for (const auto& rot : sig.rotations)
    for (int i = 0; i < rot.mult; ++i) blocks.push_back(rotation2(rot.angle));
  if (sig.neg_mult > 0) blocks.push_back(-Matrix::Identity(sig.neg_mult, sig.neg_mult));
  return sig.modulus * direct_sum(blocks);
}

Matrix rja_matrix(const RjaSignature& sig) {
  std::vector<Matrix> blocks;
  if (sig.pos_mult > 0) blocks.push_back(Matrix::Identity(sig.pos_mult, sig.pos_mult));
  if (sig.neg_mult > 0) blocks.push_back(-Matrix::Identity(sig.neg_mult, sig.neg_mult));
  for (const auto& b : sig.mixed) {
    for (int i = 0; i < b.pos_pairs; ++i) blocks.push_back(rotation2(b.angle));
    for (int i = 0; i < b.neg_pairs; ++i) blocks.push_back(-rotation2(b.angle));
  }
  for (int i = 0; i < sig.imag_pairs; ++i) blocks.push_back(rotation2(kPi / 2));
  return sig.modulus * direct_sum(blocks);
}

RjaSignature rja_to_signature(const RjsSignature& sig, const Tolerances& tol) {
  RjaSignature out;
  out.modulus = sig.modulus;
  out.pos_mult = sig.pos_mult;
  out.neg_mult = sig.neg_mult;
  std::vector<MixedBlock> items;
  for (const auto& rot : sig.rotations) {
    if (std::abs(rot.angle - kPi / 2) <= tol.angle_gap)
      out.imag_pairs += rot.mult;
    else if (rot.angle < kPi / 2)
      items.push_back(MixedBlock{rot.angle, rot.mult, 0});
    else
      items.push_back(MixedBlock{kPi - rot.angle, 0, rot.mult});
  }
  std::sort(items.begin(), items.end(),
            [](const MixedBlock& a, const MixedBlock& b) { return a.angle < b.angle; });
  for (std::size_t i = 0; i < items.size();) {
    MixedBlock merged = items[i];
    double weighted = merged.angle * (merged.pos_pairs + merged.neg_pairs);
    std::size_t j = i + 1;
    while (j < items.size() && items[j].angle - items[j - 1].angle <= tol.angle_gap) {
      merged.pos_pairs += items[j].pos_pairs;
      merged.neg_pairs += items[j].neg_pairs;
      weighted += items[j].angle * (items[j].pos_pairs + items[j].neg_pairs);
      ++j;
    }
    merged.angle = weighted / (merged.pos_pairs + merged.neg_pairs);
    out.mixed.push_back(merged);
    i = j;
  }
  return out;
}

RjaSignature rja_signature(const Matrix& m, const Tolerances& tol) {
  return rja_to_signature(spectral_signature(m, tol), tol);
}

namespace {

RjsConjugation build_rjs_conjugation(const Matrix& m, const Tolerances& tol) {
  RjsConjugation out;
  out.signature = spectral_signature(m, tol);
  const int n = static_cast<int>(m.rows());
  const double eta = out.signature.modulus;
  const ComplexMatrix mc = m.cast<std::complex<double>>();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  Matrix f(n, n);
  int at = 0;
  const double scale = m.norm() + eta;
  if (out.signature.pos_mult > 0) {
    const int p = out.signature.pos_mult;
    f.middleCols(at, p) =
        real_kernel(m - eta * Matrix::Identity(n, n), p, scale, tol, "rjs_conjugator");
    at += p;
  }
  for (const auto& rot : out.signature.rotations) {
    const std::complex<double> lambda = std::polar(eta, -rot.angle);
    const ComplexMatrix kernel =
        complex_kernel(mc - lambda * id, rot.mult, scale, tol, "rjs_conjugator");
    f.middleCols(at, 2 * rot.mult) = realify_pairs(kernel);
    at += 2 * rot.mult;
  }
  if (out.signature.neg_mult > 0) {
    const int q = out.signature.neg_mult;
    f.middleCols(at, q) =
        real_kernel(m + eta * Matrix::Identity(n, n), q, scale, tol, "rjs_conjugator");
    at += q;
  }

  out.form = rjs_matrix(out.signature);
  out.conjugator = f;
  Eigen::PartialPivLU<Matrix> lu(f);
  const Matrix reassembled = (f * out.form) * lu.inverse();
  if ((reassembled - m).norm() > 1e-6 * std::max(m.norm(), 1.0))
    throw Error(ErrorCode::ConvergenceFailure,
                "rjs_conjugator: reassembly residual too large");
  return out;
}

}  // namespace

RjsConjugation rjs_conjugator(const Matrix& m, const Tolerances& tol) {
  return build_rjs_conjugation(m, tol);
}

RjsConjugation rjs_conjugator_normalized(const Matrix& m, const Tolerances& tol) {
  RjsConjugation out = build_rjs_conjugation(m, tol);
  const int n = static_cast<int>(m.rows());
  const double det_f = std::abs(out.conjugator.determinant());
  const double target = std::sqrt(std::abs(m.determinant()));
  out.conjugator *= std::pow(target / det_f, 1.0 / n);
  return out;
}

RjaCongruence rja_orthogonal_conjugator(const Matrix& u, const Tolerances& tol) {
  if (u.rows() != u.cols())
    throw Error(ErrorCode::DimensionMismatch, "rja_orthogonal_conjugator: matrix must be square");
  if (!is_orthogonal(u, tol.orth))
    throw Error(ErrorCode::NotOrthogonal, "rja_orthogonal_conjugator: matrix is not orthogonal");

  const RjsSignature sig = spectral_signature(u, tol);
  const int n = static_cast<int>(u.rows());
  const double eta = sig.modulus;
  const ComplexMatrix uc = u.cast<std::complex<double>>();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  RjaCongruence out;
  out.signature = rja_to_signature(sig, tol);

  // Rotation clusters sorted into the auxiliary layout: angles below pi/2
  // keep their sign, angles above fold to pi - theta, the pi/2 band goes
  // last. Eigenvectors are taken at the original cluster angles.
  struct Slot {
    int block;      // index into out.signature.mixed
    bool reflected;
    double theta;   // original angle
    int mult;
  };
  auto nearest_block = [&](double folded) {
    int best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.signature.mixed.size(); ++i) {
      const double gap = std::abs(out.signature.mixed[i].angle - folded);
      if (gap < best_gap) {
        best_gap = gap;
        best = static_cast<int>(i);
      }
    }
    return best;
  };
  std::vector<Slot> mixed_slots;
  std::vector<RotationBlock> quarter;
  for (const auto& rot : sig.rotations) {
    if (std::abs(rot.angle - kPi / 2) <= tol.angle_gap)
      quarter.push_back(rot);
    else if (rot.angle < kPi / 2)
      mixed_slots.push_back(Slot{nearest_block(rot.angle), false, rot.angle, rot.mult});
    else
      mixed_slots.push_back(Slot{nearest_block(kPi - rot.angle), true, rot.angle, rot.mult});
  }
  std::sort(mixed_slots.begin(), mixed_slots.end(), [](const Slot& a, const Slot& b) {
    if (a.block != b.block) return a.block < b.block;
    if (a.reflected != b.reflected) return a.reflected < b.reflected;
    return a.theta < b.theta;
  });

  Matrix z(n, n);
  int at = 0;
  const double scale = u.norm() + eta;
  if (sig.pos_mult > 0) {
    z.middleCols(at, sig.pos_mult) =
        real_kernel(u - eta * Matrix::Identity(n, n), sig.pos_mult, scale, tol,
                    "rja_orthogonal_conjugator");
    at += sig.pos_mult;
  }
  if (sig.neg_mult > 0) {
    z.middleCols(at, sig.neg_mult) =
        real_kernel(u + eta * Matrix::Identity(n, n), sig.neg_mult, scale, tol,
                    "rja_orthogonal_conjugator");
    at += sig.neg_mult;
  }
  for (const auto& slot : mixed_slots) {
    // E_phi blocks want eigenvectors of exp(-i theta); the reflected blocks
    // -E_{pi-theta} act as a rotation by theta - pi, so they want exp(+i theta).
    const std::complex<double> lambda = std::polar(eta, slot.reflected ? slot.theta : -slot.theta);
    const ComplexMatrix kernel =
        complex_kernel(uc - lambda * id, slot.mult, scale, tol, "rja_orthogonal_conjugator");
    z.middleCols(at, 2 * slot.mult) = realify_pairs(kernel);
    at += 2 * slot.mult;
  }
  for (const auto& rot : quarter) {
    const std::complex<double> lambda = std::polar(eta, -rot.angle);
    const ComplexMatrix kernel =
        complex_kernel(uc - lambda * id, rot.mult, scale, tol, "rja_orthogonal_conjugator");
    z.middleCols(at, 2 * rot.mult) = realify_pairs(kernel);
    at += 2 * rot.mult;
  }

  out.form = rja_matrix(out.signature);
  out.conjugator = z;
  if (!is_orthogonal(z, 1e-6))
    throw Error(ErrorCode::ConvergenceFailure,
                "rja_orthogonal_conjugator: conjugator is not orthogonal");
  if ((z * out.form * z.transpose() - u).norm() > 1e-6 * std::max(u.norm(), 1.0))
    throw Error(ErrorCode::ConvergenceFailure,
                "rja_orthogonal_conjugator: reassembly residual too large");
  return out;
}

std::vector<Matrix> commutant_basis(const RjsSignature& sig) {
  const int n = sig.order();
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(sig.pos_mult) * sig.pos_mult +
                static_cast<std::size_t>(sig.neg_mult) * sig.neg_mult);

  auto full_block = [&](int offset, int size) {
    for (int a = 0; a < size; ++a)
      for (int b = 0; b < size; ++b) {
        Matrix e = Matrix::Zero(n, n);
        e(offset + a, offset + b) = 1.0;
        basis.push_back(std::move(e));
      }
  };

  int at = 0;
  full_block(at, sig.pos_mult);
  at += sig.pos_mult;
  for (const auto& rot : sig.rotations) {
    const int m = rot.mult;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        Matrix re = Matrix::Zero(n, n);
        re(at + 2 * a, at + 2 * b) = 1.0;
        re(at + 2 * a + 1, at + 2 * b + 1) = 1.0;
        basis.push_back(std::move(re));
        Matrix im = Matrix::Zero(n, n);
        im(at + 2 * a, at + 2 * b + 1) = -1.0;
        im(at + 2 * a + 1, at + 2 * b) = 1.0;
        basis.push_back(std::move(im));
      }
    at += 2 * m;
  }
  full_block(at, sig.neg_mult);
  return basis;
}

}  // namespace spdiso
