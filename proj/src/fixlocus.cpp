// SPDX-License-Identifier: Apache-2.0
#include "spdiso/fixlocus.hpp"

#include <cmath>
#include <random>

#include <Eigen/SVD>

namespace spdiso {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Deterministic gaussian stream; Box-Muller over a fixed 53-bit uniform so
// sampled points are reproducible bit for bit across runs.
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed ^ 0x9e3779b97f4a7c15ull) {}

  double uniform() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double a = 2.0 * kPi * uniform();
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

Matrix gaussian_symmetric(GaussianRng& rng, int n, double scale) {
  Matrix y(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double g = scale * rng.gaussian();
      y(i, j) = g;
      y(j, i) = g;
    }
  return y;
}

ComplexMatrix gaussian_hermitian(GaussianRng& rng, int m, double scale) {
  ComplexMatrix h(m, m);
  for (int i = 0; i < m; ++i) {
    h(i, i) = scale * rng.gaussian();
    for (int j = i + 1; j < m; ++j) {
      const std::complex<double> z(scale * rng.gaussian(), scale * rng.gaussian());
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

// exp of the symmetric part of gl_p: all of Sym_p.
Matrix spd_group_block(GaussianRng& rng, int p, double scale) {
  if (p == 0) return Matrix(0, 0);
  return matrix_exp_sym(gaussian_symmetric(rng, p, scale)).matrix();
}

// exp of the rho image of a Hermitian matrix.
Matrix hermitian_group_block(GaussianRng& rng, int m, double scale) {
  if (m == 0) return Matrix(0, 0);
  return matrix_exp_sym(rho_embed(gaussian_hermitian(rng, m, scale))).matrix();
}

// Symmetric part of so(p, q): zero diagonal blocks, arbitrary coupling block.
Matrix indefinite_orthogonal_block(GaussianRng& rng, int p, int q, double scale) {
  if (p + q == 0) return Matrix(0, 0);
  Matrix y = Matrix::Zero(p + q, p + q);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) {
      const double g = scale * rng.gaussian();
      y(i, p + j) = g;
      y(p + j, i) = g;
    }
  return matrix_exp_sym(y).matrix();
}

// Symmetric part of u(mu, nu) under rho: the off-diagonal Hermitian coupling.
Matrix indefinite_unitary_block(GaussianRng& rng, int mu, int nu, double scale) {
  const int m = mu + nu;
  if (m == 0) return Matrix(0, 0);
  ComplexMatrix y = ComplexMatrix::Zero(m, m);
  for (int i = 0; i < mu; ++i)
    for (int j = 0; j < nu; ++j) {
      const std::complex<double> z(scale * rng.gaussian(), scale * rng.gaussian());
      y(i, mu + j) = z;
      y(mu + j, i) = std::conj(z);
    }
  return matrix_exp_sym(rho_embed(y)).matrix();
}

// Symmetric matrices anticommuting with E^{(+)k}: 2x2 blocks spanned by
// diag(1,-1) and the swap, with symmetric coefficient matrices.
Matrix symplectic_block(GaussianRng& rng, int k, double scale) {
  if (k == 0) return Matrix(0, 0);
  const Matrix s1 = gaussian_symmetric(rng, k, scale);
  const Matrix s2 = gaussian_symmetric(rng, k, scale);
  Matrix y = Matrix::Zero(2 * k, 2 * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      y(2 * a, 2 * b) = s1(a, b);
      y(2 * a + 1, 2 * b + 1) = -s1(a, b);
      y(2 * a, 2 * b + 1) = s2(a, b);
      y(2 * a + 1, 2 * b) = s2(a, b);
    }
  return matrix_exp_sym(y).matrix();
}

int gamma_dimension(const RjsSignature& sig) {
  int dim = sig.pos_mult * (sig.pos_mult + 1) / 2 + sig.neg_mult * (sig.neg_mult + 1) / 2;
  for (const auto& rot : sig.rotations) dim += rot.mult * rot.mult;
  return dim;
}

int j_dimension(const RjaSignature& sig) {
  int dim = sig.pos_mult * sig.neg_mult + sig.imag_pairs * (sig.imag_pairs + 1);
  for (const auto& b : sig.mixed) dim += 2 * b.pos_pairs * b.neg_pairs;
  return dim;
}

std::vector<DeRhamFactor> gamma_factors(const RjsSignature& sig, bool with_delta) {
  const int r = static_cast<int>(sig.rotations.size());
  const int r_prime = r + (sig.pos_mult > 0 ? 1 : 0) + (sig.neg_mult > 0 ? 1 : 0);
  const int euclid = with_delta ? (r_prime >= 2 ? r_prime - 1 : 0) : r_prime;
  std::vector<DeRhamFactor> factors;
  if (euclid > 0) factors.push_back(DeRhamFactor{FactorKind::Euclidean, euclid, 0});
  if (sig.pos_mult >= 2) factors.push_back(DeRhamFactor{FactorKind::SlModSo, sig.pos_mult, 0});
  if (sig.neg_mult >= 2) factors.push_back(DeRhamFactor{FactorKind::SlModSo, sig.neg_mult, 0});
  for (const auto& rot : sig.rotations)
    if (rot.mult >= 2) factors.push_back(DeRhamFactor{FactorKind::SlcModSu, rot.mult, 0});
  return factors;
}

std::vector<DeRhamFactor> j_factors(const RjaSignature& sig, bool with_delta) {
  int euclid = 0;
  if (sig.pos_mult == 1 && sig.neg_mult == 1)
    euclid = with_delta ? 2 : 1;
  else if (with_delta)
    euclid = 1;
  std::vector<DeRhamFactor> factors;
  if (euclid > 0) factors.push_back(DeRhamFactor{FactorKind::Euclidean, euclid, 0});
  if (sig.pos_mult >= 1 && sig.neg_mult >= 1 && sig.pos_mult + sig.neg_mult >= 3)
    factors.push_back(DeRhamFactor{FactorKind::So0ModSoSo, sig.pos_mult, sig.neg_mult});
  if (sig.imag_pairs >= 1) factors.push_back(DeRhamFactor{FactorKind::SpModU, sig.imag_pairs, 0});
  for (const auto& b : sig.mixed)
    if (b.pos_pairs >= 1 && b.neg_pairs >= 1)
      factors.push_back(DeRhamFactor{FactorKind::SuModSu, b.pos_pairs, b.neg_pairs});
  return factors;
}

}  // namespace

const char* factor_kind_name(FactorKind kind) {
  switch (kind) {
    case FactorKind::Euclidean: return "euclidean";
    case FactorKind::SlModSo: return "sl-mod-so";
    case FactorKind::SlcModSu: return "slc-mod-su";
    case FactorKind::So0ModSoSo: return "so0-mod-soxso";
    case FactorKind::SpModU: return "sp-mod-u";
    case FactorKind::SuModSu: return "su-mod-su";
  }
  return "unknown";
}

int DeRhamFactor::dimension() const {
  switch (kind) {
    case FactorKind::Euclidean: return a;
    case FactorKind::SlModSo: return a * (a + 1) / 2 - 1;
    case FactorKind::SlcModSu: return a * a - 1;
    case FactorKind::So0ModSoSo: return a * b;
    case FactorKind::SpModU: return a * (a + 1);
    case FactorKind::SuModSu: return 2 * a * b;
  }
  return 0;
}

FixedLocusDescriptor fix_locus(const IsometrySpec& spec, const Tolerances& tol) {
  const EllipticityReport report = classify(spec, tol);
  if (!report.elliptic)
    throw Error(ErrorCode::NotElliptic, std::string("fix_locus: isometry is not elliptic (") +
                                            ellipticity_status_name(report.reason) + ")");
  FixedLocusDescriptor desc;
  desc.family = family_of(spec);
  switch (desc.family) {
    case Family::Congruence: {
      const RjsConjugation conj = rjs_conjugator(spec.m, tol);
      desc.conjugator = conj.conjugator;
      desc.signature = conj.signature;
      desc.dimension = gamma_dimension(conj.signature);
      desc.factors = gamma_factors(conj.signature, false);
      break;
    }
    case Family::CongruenceDelta: {
      const RjsConjugation conj = rjs_conjugator_normalized(spec.m, tol);
      desc.conjugator = conj.conjugator;
      desc.signature = conj.signature;
      desc.dimension = gamma_dimension(conj.signature) - 1;
      desc.factors = gamma_factors(conj.signature, true);
      desc.det_constraint = std::abs(spec.m.determinant());
      break;
    }
    case Family::CongruenceJ:
    case Family::CongruenceJDelta: {
      const OrthogonalCongruence data = orthogonal_congruence_data(spec.m, tol);
      desc.conjugator = data.congruence;
      desc.signature = data.signature;
      const int base_dim = j_dimension(data.signature);
      if (desc.family == Family::CongruenceJ) {
        desc.dimension = base_dim;
        desc.factors = j_factors(data.signature, false);
        desc.det_constraint = std::abs(spec.m.determinant());
      } else {
        desc.dimension = base_dim + 1;
        desc.factors = j_factors(data.signature, true);
      }
      break;
    }
  }
  return desc;
}

SpdPoint sample_point(const FixedLocusDescriptor& desc, std::uint64_t seed, double scale) {
  GaussianRng rng(seed);
  std::vector<Matrix> blocks;
  if (std::holds_alternative<RjsSignature>(desc.signature)) {
    const auto& sig = std::get<RjsSignature>(desc.signature);
    blocks.push_back(spd_group_block(rng, sig.pos_mult, scale));
    for (const auto& rot : sig.rotations)
      blocks.push_back(hermitian_group_block(rng, rot.mult, scale));
    blocks.push_back(spd_group_block(rng, sig.neg_mult, scale));
    Matrix assembled = direct_sum(blocks);
    if (desc.family == Family::CongruenceDelta) {
      // The determinant constraint enters through the normalized conjugator,
      // so the block matrix itself is brought back to the unit-determinant
      // slice before conjugation.
      const double log_det = spd_log_det(SpdPoint::trusted(assembled));
      assembled *= std::exp(-log_det / assembled.rows());
    }
    return SpdPoint::trusted(desc.conjugator * assembled * desc.conjugator.transpose());
  }

  const auto& sig = std::get<RjaSignature>(desc.signature);
  blocks.push_back(indefinite_orthogonal_block(rng, sig.pos_mult, sig.neg_mult, scale));
  for (const auto& b : sig.mixed)
    blocks.push_back(indefinite_unitary_block(rng, b.pos_pairs, b.neg_pairs, scale));
  blocks.push_back(symplectic_block(rng, sig.imag_pairs, scale));
  Matrix assembled = direct_sum(blocks);
  if (desc.family == Family::CongruenceJDelta) assembled *= std::exp(scale * rng.gaussian());
  return SpdPoint::trusted(desc.conjugator * assembled * desc.conjugator.transpose());
}

bool membership(const IsometrySpec& spec, const SpdPoint& p, double tol) {
  if (p.order() != spec.order())
    throw Error(ErrorCode::DimensionMismatch, "membership: orders differ");
  const SpdPoint image = apply_isometry(spec, p);
  return (image.matrix() - p.matrix()).norm() <= tol * p.matrix().norm();
}

int tangent_dim_oracle(const IsometrySpec& spec, const SpdPoint& p, const Tolerances& tol) {
  if (!membership(spec, p, tol.residual))
    throw Error(ErrorCode::NotAFixedPoint, "tangent_dim_oracle: point is not fixed");
  const int n = spec.order();
  const int dim = n * (n + 1) / 2;

  // Work in a metric-orthonormal frame V = P^{1/2} S P^{1/2}; there the
  // differential is an orthogonal matrix and its fixed space separates from
  // the rest of the spectrum independently of the conditioning of P.
  SymEigen eig = sym_eigen(p.matrix());
  Vector sqrt_vals = eig.values.array().max(0.0).sqrt();
  Vector inv_vals = sqrt_vals.unaryExpr([](double v) { return 1.0 / std::max(v, 1e-300); });
  const Matrix half = symmetrize(eig.vectors * sqrt_vals.asDiagonal() * eig.vectors.transpose());
  const Matrix inv_half =
      symmetrize(eig.vectors * inv_vals.asDiagonal() * eig.vectors.transpose());

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Matrix op(dim, dim);
  int col = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Matrix s = Matrix::Zero(n, n);
      if (i == j) {
        s(i, i) = 1.0;
      } else {
        s(i, j) = inv_sqrt2;
        s(j, i) = inv_sqrt2;
      }
      const Matrix ambient = symmetrize(half * s * half);
      const TangentVector image = differential(spec, TangentVector{p, ambient});
      const Matrix t = symmetrize(inv_half * image.direction * inv_half);
      int row = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
          op(row++, col) = (a == b) ? t(a, a) : std::sqrt(2.0) * t(a, b);
      ++col;
    }
  }
  op -= Matrix::Identity(dim, dim);

  Eigen::JacobiSVD<Matrix> svd(op);
  const Vector sv = svd.singularValues();
  // In the orthonormal frame the differential has unit operator norm, so the
  // cutoff scale never collapses even when the whole map is the identity.
  const double cutoff = tol.kernel * std::max(sv(0), 1.0);
  int kernel = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) < cutoff) ++kernel;
  return kernel;
}

namespace {

struct BlockLayout {
  int offset = 0;
  int size = 0;
  bool hermitian = false;  // rho image of a Hermitian block
};

std::vector<BlockLayout> delta_layout(const RjsSignature& sig) {
  std::vector<BlockLayout> layout;
  int at = 0;
  if (sig.pos_mult > 0) {
    layout.push_back(BlockLayout{at, sig.pos_mult, false});
    at += sig.pos_mult;
  }
  for (const auto& rot : sig.rotations) {
    layout.push_back(BlockLayout{at, 2 * rot.mult, true});
    at += 2 * rot.mult;
  }
  if (sig.neg_mult > 0) {
    layout.push_back(BlockLayout{at, sig.neg_mult, false});
    at += sig.neg_mult;
  }
  return layout;
}

}  // namespace

DeltaSplit delta_splitting_coords(const FixedLocusDescriptor& desc, const SpdPoint& p,
                                  const Tolerances&) {
  if (desc.family != Family::CongruenceDelta)
    throw Error(ErrorCode::InvalidArgument,
                "delta_splitting_coords: descriptor is not a delta-family locus");
  const auto& sig = std::get<RjsSignature>(desc.signature);
  const int n = sig.order();
  if (p.order() != n)
    throw Error(ErrorCode::DimensionMismatch, "delta_splitting_coords: orders differ");

  const Matrix f0_inv =
      desc.conjugator.partialPivLu().solve(Matrix::Identity(n, n));
  const Matrix b = symmetrize(f0_inv * p.matrix() * f0_inv.transpose());

  const std::vector<BlockLayout> layout = delta_layout(sig);
  Matrix mask = Matrix::Zero(n, n);
  for (const auto& blk : layout)
    mask.block(blk.offset, blk.offset, blk.size, blk.size).setOnes();
  const double off_block = ((1.0 - mask.array()) * b.array()).matrix().norm();
  if (off_block > 1e-7 * std::max(b.norm(), 1e-300))
    throw Error(ErrorCode::BlockExtractionFailure,
                "delta_splitting_coords: point does not split into the locus blocks");

  DeltaSplit out;
  double total_log_det = 0.0;
  std::vector<double> log_dets;
  for (const auto& blk : layout) {
    Matrix block = b.block(blk.offset, blk.offset, blk.size, blk.size);
    if (blk.hermitian) {
      try {
        rho_project(block, 1e-6);
      } catch (const Error&) {
        throw Error(ErrorCode::NotAFixedPoint,
                    "delta_splitting_coords: block is not a complex-structure block");
      }
    }
    const double log_det = spd_log_det(SpdPoint::trusted(block));
    log_dets.push_back(log_det);
    total_log_det += log_det;
    out.unit_blocks.push_back(block * std::exp(-log_det / blk.size));
  }
  if (std::abs(total_log_det) > 1e-7 * n)
    throw Error(ErrorCode::NotAFixedPoint,
                "delta_splitting_coords: point is not on the unit-determinant slice");

  // One log-determinant coordinate per block except the last, whose
  // determinant is pinned by the unit-determinant constraint. The complex
  // blocks carry weight two on their complex determinant, which is exactly
  // the real log-determinant.
  for (std::size_t i = 0; i + 1 < layout.size(); ++i) out.coords.push_back(log_dets[i]);
  return out;
}

SpdPoint delta_splitting_inverse(const FixedLocusDescriptor& desc, const DeltaSplit& split) {
  if (desc.family != Family::CongruenceDelta)
    throw Error(ErrorCode::InvalidArgument,
                "delta_splitting_inverse: descriptor is not a delta-family locus");
  const auto& sig = std::get<RjsSignature>(desc.signature);
  const std::vector<BlockLayout> layout = delta_layout(sig);
  if (split.unit_blocks.size() != layout.size() ||
      split.coords.size() + 1 != layout.size())
    throw Error(ErrorCode::DimensionMismatch,
                "delta_splitting_inverse: block or coordinate count mismatch");

  std::vector<Matrix> blocks;
  double used_log_det = 0.0;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (split.unit_blocks[i].rows() != layout[i].size)
      throw Error(ErrorCode::DimensionMismatch, "delta_splitting_inverse: block size mismatch");
    double log_det = 0.0;
    if (i + 1 < layout.size()) {
      log_det = split.coords[i];
      used_log_det += log_det;
    } else {
      log_det = -used_log_det;
    }
    blocks.push_back(split.unit_blocks[i] * std::exp(log_det / layout[i].size));
  }
  const Matrix assembled = direct_sum(blocks);
  return SpdPoint::trusted(desc.conjugator * assembled * desc.conjugator.transpose());
}

}  // namespace spdiso
