// SPDX-License-Identifier: Apache-2.0
#ifndef SPDISO_TESTS_HELPERS_HPP
#define SPDISO_TESTS_HELPERS_HPP

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/SVD>

#include "spdiso/canonical.hpp"
#include "spdiso/isometry.hpp"
#include "spdiso/linalg.hpp"

namespace spdiso::testing {

constexpr double kPi = 3.14159265358979323846;

inline double gauss(std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

inline Matrix random_matrix(std::mt19937_64& rng, int n, double scale = 1.0) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = scale * gauss(rng);
  return m;
}

inline Matrix random_symmetric(std::mt19937_64& rng, int n, double scale = 1.0) {
  return symmetrize(random_matrix(rng, n, scale));
}

inline SpdPoint random_spd(std::mt19937_64& rng, int n, double scale = 0.5) {
  return matrix_exp_sym(random_symmetric(rng, n, scale));
}

inline Matrix random_orthogonal(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n));
  return qr.householderQ();
}

// Random nonsingular matrix with singular values in [exp(-spread), exp(spread)].
inline Matrix random_conditioned(std::mt19937_64& rng, int n, double spread = 1.1) {
  const Matrix u = random_orthogonal(rng, n);
  const Matrix v = random_orthogonal(rng, n);
  Vector s(n);
  for (int i = 0; i < n; ++i) s(i) = std::exp(uniform(rng, -spread, spread));
  return u * s.asDiagonal() * v.transpose();
}

inline Matrix omega_matrix(int p, int n) {
  Matrix m = Matrix::Identity(n, n);
  for (int i = p; i < n; ++i) m(i, i) = -1.0;
  return m;
}

inline Matrix lambda_matrix(int m) {
  std::vector<Matrix> blocks(m, rotation2(kPi / 2));
  return direct_sum(blocks);
}

inline Matrix theta_matrix(double theta, int mu, int nu) {
  std::vector<Matrix> blocks;
  for (int i = 0; i < mu; ++i) blocks.push_back(rotation2(theta));
  for (int i = 0; i < nu; ++i) blocks.push_back(-rotation2(theta));
  return direct_sum(blocks);
}

// Distinct angles from a fixed grid so that spectra separate cleanly.
inline std::vector<double> separated_angles(std::mt19937_64& rng, int count, double lo,
                                            double hi, int grid = 12) {
  std::vector<double> candidates(grid);
  for (int i = 0; i < grid; ++i)
    candidates[i] = lo + (hi - lo) * (i + 0.5) / grid;
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::vector<double> out(candidates.begin(), candidates.begin() + count);
  std::sort(out.begin(), out.end());
  return out;
}

inline RjsSignature random_rjs_signature(std::mt19937_64& rng, int n, bool unit_modulus) {
  RjsSignature sig;
  sig.modulus = unit_modulus ? 1.0 : std::exp(uniform(rng, -0.35, 0.35));
  int rest = n;
  sig.pos_mult = static_cast<int>(rng() % (rest + 1));
  rest -= sig.pos_mult;
  int pairs = static_cast<int>(rng() % (rest / 2 + 1));
  sig.neg_mult = rest - 2 * pairs;
  std::vector<int> mults;
  while (pairs > 0) {
    const int m = 1 + static_cast<int>(rng() % pairs);
    mults.push_back(m);
    pairs -= m;
  }
  const auto angles =
      separated_angles(rng, static_cast<int>(mults.size()), 0.25, kPi - 0.25);
  for (std::size_t i = 0; i < mults.size(); ++i)
    sig.rotations.push_back(RotationBlock{angles[i], mults[i]});
  return sig;
}

inline RjaSignature random_rja_signature(std::mt19937_64& rng, int n) {
  RjaSignature sig;
  sig.modulus = 1.0;
  int rest = n;
  sig.pos_mult = static_cast<int>(rng() % (rest + 1));
  rest -= sig.pos_mult;
  int pairs = static_cast<int>(rng() % (rest / 2 + 1));
  sig.neg_mult = rest - 2 * pairs;
  sig.imag_pairs = pairs > 0 ? static_cast<int>(rng() % (pairs + 1)) : 0;
  pairs -= sig.imag_pairs;
  std::vector<std::pair<int, int>> splits;
  while (pairs > 0) {
    const int m = 1 + static_cast<int>(rng() % pairs);
    const int mu = static_cast<int>(rng() % (m + 1));
    splits.emplace_back(mu, m - mu);
    pairs -= m;
  }
  const auto angles =
      separated_angles(rng, static_cast<int>(splits.size()), 0.2, kPi / 2 - 0.2, 6);
  for (std::size_t i = 0; i < splits.size(); ++i)
    sig.mixed.push_back(MixedBlock{angles[i], splits[i].first, splits[i].second});
  return sig;
}

// Random elliptic isometry of the requested family, built by conjugating or
// congruence-transforming a random canonical form with modest condition.
inline IsometrySpec random_spec(std::mt19937_64& rng, int n, Family family) {
  switch (family) {
    case Family::Congruence: {
      const RjsSignature sig = random_rjs_signature(rng, n, true);
      const Matrix c = random_conditioned(rng, n);
      return make_isometry(
          c * rjs_matrix(sig) * c.partialPivLu().solve(Matrix::Identity(n, n)), false, false);
    }
    case Family::CongruenceDelta: {
      const RjsSignature sig = random_rjs_signature(rng, n, false);
      const Matrix c = random_conditioned(rng, n);
      return make_isometry(
          c * rjs_matrix(sig) * c.partialPivLu().solve(Matrix::Identity(n, n)), false, true);
    }
    case Family::CongruenceJ:
    case Family::CongruenceJDelta: {
      const Matrix z0 = random_orthogonal(rng, n);
      const Matrix u0 = z0 * rja_matrix(random_rja_signature(rng, n)) * z0.transpose();
      const Matrix k = random_conditioned(rng, n);
      Matrix m = k * u0 * k.transpose();
      if (family == Family::CongruenceJDelta)
        m *= std::pow(std::abs(m.determinant()), -1.0 / n);
      return make_isometry(m, true, family == Family::CongruenceJDelta);
    }
  }
  throw std::logic_error("unreachable");
}

constexpr Family kAllFamilies[] = {Family::Congruence, Family::CongruenceDelta,
                                   Family::CongruenceJ, Family::CongruenceJDelta};

// Greedy nearest-match pairing of eigenvalue multisets.
inline bool eigenvalues_match(std::vector<std::complex<double>> a,
                              std::vector<std::complex<double>> b, double tol_eig = 1e-8) {
  if (a.size() != b.size()) return false;
  double scale = 0.0;
  for (const auto& x : a) scale = std::max(scale, std::abs(x));
  const double tol = tol_eig * std::max(scale, 1.0);
  std::vector<bool> used(b.size(), false);
  for (const auto& x : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_at = b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (used[i]) continue;
      const double d = std::abs(x - b[i]);
      if (d < best) {
        best = d;
        best_at = i;
      }
    }
    if (best_at == b.size() || best > tol) return false;
    used[best_at] = true;
  }
  return true;
}

// Independent oracle: numeric nullity of A -> A J - J A on all of M_n.
inline int commutator_kernel_dimension(const Matrix& j) {
  const int n = static_cast<int>(j.rows());
  const int big = n * n;
  Matrix op(big, big);
  int col = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Matrix e = Matrix::Zero(n, n);
      e(a, b) = 1.0;
      const Matrix image = e * j - j * e;
      int row = 0;
      for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) op(row++, col) = image(i, k);
      ++col;
    }
  Eigen::JacobiSVD<Matrix> svd(op);
  const Vector sv = svd.singularValues();
  if (sv(0) == 0.0) return big;
  int kernel = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) < 1e-8 * sv(0)) ++kernel;
  return kernel;
}

}  // namespace spdiso::testing

#endif
