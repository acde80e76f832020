// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "spdiso/manifold.hpp"

using namespace spdiso;
using namespace spdiso::testing;

TEST_CASE("metric closed forms and symmetry") {
  const SpdPoint id(Matrix::Identity(2, 2));
  CHECK(metric(TangentVector{id, Matrix::Identity(2, 2)},
               TangentVector{id, Matrix::Identity(2, 2)}) == doctest::Approx(2.0));

  Matrix a(2, 2);
  a << 1, 0, 0, 4;
  Matrix v = Matrix::Zero(2, 2);
  v(1, 1) = 4.0;
  const SpdPoint pa(a);
  CHECK(metric(TangentVector{pa, v}, TangentVector{pa, v}) == doctest::Approx(1.0));

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const SpdPoint base = random_spd(rng, n);
    const Matrix x = random_symmetric(rng, n);
    const Matrix y = random_symmetric(rng, n);
    const double xy = metric(TangentVector{base, x}, TangentVector{base, y});
    const double yx = metric(TangentVector{base, y}, TangentVector{base, x});
    CHECK(std::abs(xy - yx) <= 1e-12 * std::max(1.0, std::abs(xy)));
    CHECK(metric(TangentVector{base, x}, TangentVector{base, x}) > 0.0);
  }
}

TEST_CASE("metric rejects mismatched base points") {
  const SpdPoint a(Matrix::Identity(2, 2));
  const SpdPoint b(2.0 * Matrix::Identity(2, 2));
  CHECK_THROWS_AS(metric(TangentVector{a, Matrix::Identity(2, 2)},
                         TangentVector{b, Matrix::Identity(2, 2)}),
                  Error);
}

TEST_CASE("metric is positive definite on a tangent frame") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const SpdPoint base = random_spd(rng, n);
    const int dim = n * (n + 1) / 2;
    std::vector<Matrix> frame;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Matrix s = Matrix::Zero(n, n);
        s(i, j) = s(j, i) = 1.0;
        frame.push_back(s);
      }
    Matrix gram(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        gram(i, j) = metric(TangentVector{base, frame[i]}, TangentVector{base, frame[j]});
    SymEigen eig = sym_eigen(symmetrize(gram));
    CHECK(eig.values.minCoeff() > 0.0);
  }
}

TEST_CASE("exp and log invert each other") {
  const SpdPoint id(Matrix::Identity(3, 3));
  std::mt19937_64 rng(71);
  const Matrix x = random_symmetric(rng, 3, 0.4);
  CHECK((exp_map(TangentVector{id, x}).matrix() - matrix_exp_sym(x).matrix()).norm() <= 1e-12);
  CHECK(log_map(id, id).direction.norm() <= 1e-12);

  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const SpdPoint a = random_spd(rng, n);
    const SpdPoint b = random_spd(rng, n);
    const SpdPoint back = exp_map(log_map(a, b));
    CHECK((back.matrix() - b.matrix()).norm() <= 1e-8 * b.matrix().norm());
    CHECK((exp_map(TangentVector{a, Matrix::Zero(n, n)}).matrix() - a.matrix()).norm() <=
          1e-12 * a.matrix().norm());
  }
}

TEST_CASE("geodesic endpoints, midpoint, additivity") {
  const SpdPoint id(Matrix::Identity(2, 2));
  const SpdPoint four(4.0 * Matrix::Identity(2, 2));
  CHECK((geodesic(id, four, 0.5).matrix() - 2.0 * Matrix::Identity(2, 2)).norm() <= 1e-10);

  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const SpdPoint a = random_spd(rng, n);
    const SpdPoint b = random_spd(rng, n);
    CHECK((geodesic(a, b, 0.0).matrix() - a.matrix()).norm() <= 1e-10 * a.matrix().norm());
    CHECK((geodesic(a, b, 1.0).matrix() - b.matrix()).norm() <= 1e-9 * b.matrix().norm());

    const SpdPoint mid = geodesic(a, b, 0.5);
    const double d = distance(a, b);
    CHECK(std::abs(distance(a, mid) - d / 2) <= 1e-9 * std::max(d, 1.0));
    CHECK(std::abs(distance(mid, b) - d / 2) <= 1e-9 * std::max(d, 1.0));

    const double t = uniform(rng, 0.0, 1.0);
    CHECK(std::abs(distance(a, geodesic(a, b, t)) - t * d) <= 1e-9 * std::max(d, 1.0));
  }
}

TEST_CASE("distance closed forms, symmetry, congruence invariance") {
  const SpdPoint id(Matrix::Identity(2, 2));
  const SpdPoint e2(std::exp(2.0) * Matrix::Identity(2, 2));
  CHECK(distance(id, e2) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(distance(id, id) == doctest::Approx(0.0));

  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const SpdPoint a = random_spd(rng, n);
    const SpdPoint b = random_spd(rng, n);
    const double ab = distance(a, b);
    CHECK(std::abs(ab - distance(b, a)) <= 1e-10 * std::max(ab, 1.0));

    const Matrix c = random_conditioned(rng, n);
    const SpdPoint ca = SpdPoint::trusted(c * a.matrix() * c.transpose());
    const SpdPoint cb = SpdPoint::trusted(c * b.matrix() * c.transpose());
    CHECK(std::abs(distance(ca, cb) - ab) <= 1e-9 * std::max(ab, 1.0));
  }
}

TEST_CASE("triangle inequality") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const SpdPoint a = random_spd(rng, n);
    const SpdPoint b = random_spd(rng, n);
    const SpdPoint c = random_spd(rng, n);
    CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
  }
}

TEST_CASE("sl_split closed forms and isometry property") {
  const SlSplit at_id = sl_split(SpdPoint(Matrix::Identity(2, 2)));
  CHECK(at_id.coordinate == doctest::Approx(0.0));
  CHECK(at_id.unit_det.matrix().isIdentity(1e-12));

  const int n = 3;
  const SlSplit ray = sl_split(SpdPoint(std::exp(1.0) * Matrix::Identity(n, n)));
  CHECK(ray.coordinate == doctest::Approx(std::sqrt(double(n))));
  CHECK(ray.unit_det.matrix().isIdentity(1e-12));

  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + static_cast<int>(rng() % 5);
    const SpdPoint p = random_spd(rng, dim);
    const SpdPoint q = random_spd(rng, dim);
    const SlSplit sp = sl_split(p);
    const SlSplit sq = sl_split(q);
    CHECK(std::abs(std::exp(spd_log_det(sp.unit_det)) - 1.0) <= 1e-10);

    const double total = distance(p, q);
    const double flat = sp.coordinate - sq.coordinate;
    const double inside = distance(sp.unit_det, sq.unit_det);
    CHECK(std::abs(total * total - (inside * inside + flat * flat)) <=
          1e-9 * std::max(1.0, total * total));

    const SpdPoint back = sl_split_inverse(sp);
    CHECK((back.matrix() - p.matrix()).norm() <= 1e-10 * p.matrix().norm());
  }
}
