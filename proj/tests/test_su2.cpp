#include "oracles.hpp"

#include "flatstrata/errors.hpp"
#include "flatstrata/su2.hpp"

#include <doctest.h>

#include <numbers>

using namespace flatstrata;

namespace {

const double pi = std::numbers::pi;

double dist4(const SU2Element &a, const Eigen::Vector4d &q) {
  return (Eigen::Vector4d(a.w(), a.x(), a.y(), a.z()) - q).norm();
}

} // namespace

TEST_CASE("products of basis quaternions") {
  const SU2Element i(0, 1, 0, 0), j(0, 0, 1, 0), k(0, 0, 0, 1);
  CHECK(dist4(i * j, {0, 0, 0, 1}) < 1e-15);
  CHECK(dist4(j * k, {0, 1, 0, 0}) < 1e-15);
  CHECK(dist4(k * i, {0, 0, 1, 0}) < 1e-15);
  CHECK(dist4(i * i, {-1, 0, 0, 0}) < 1e-15);
  std::mt19937_64 rng(1);
  const SU2Element b = oracle::haar(rng);
  CHECK(SU2Element::identity().distance(SU2Element(1, 0, 0, 0)) == 0.0);
  CHECK((SU2Element::identity() * b).distance(b) < 1e-15);
}

TEST_CASE("group axioms on random samples") {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int s = 0; s < 1000; ++s) {
    const SU2Element a = oracle::haar(rng), b = oracle::haar(rng), c = oracle::haar(rng);
    worst = std::max(worst, ((a * b) * c).distance(a * (b * c)));
    worst = std::max(worst, (a * a.inverse()).distance(SU2Element::identity()));
    worst = std::max(worst, (a.inverse() * a).distance(SU2Element::identity()));
    const auto q = (a * b).components();
    worst = std::max(worst, std::abs(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3] - 1.0));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("product agrees with 2x2 unitary matrices") {
  std::mt19937_64 rng(2);
  for (int s = 0; s < 200; ++s) {
    const SU2Element a = oracle::haar(rng), b = oracle::haar(rng);
    const Eigen::Vector4d ref = oracle::from_matrix(oracle::to_matrix(a) * oracle::to_matrix(b));
    CHECK(dist4(su2_multiply(a, b), ref) < 1e-13);
    CHECK(su2_trace(a) == doctest::Approx(oracle::to_matrix(a).trace().real()).epsilon(1e-14));
  }
}

TEST_CASE("exponential") {
  CHECK(dist4(su2_exp(AlgebraVector::Zero()), {1, 0, 0, 0}) == 0.0);
  CHECK(dist4(su2_exp({pi, 0, 0}), {-1, 0, 0, 0}) < 1e-15);
  CHECK(dist4(su2_exp({1e-13, -2e-13, 0}), {1, 1e-13, -2e-13, 0}) < 1e-20);
  std::mt19937_64 rng(3);
  for (int s = 0; s < 200; ++s) {
    const AlgebraVector x = oracle::gaussian3(rng) * (s % 2 ? 1.0 : 1e-5);
    CHECK((su2_exp(x) * su2_exp(-x)).distance(SU2Element::identity()) < 1e-14);
    const Eigen::Vector4d ref = oracle::from_matrix(oracle::exp_series(x));
    CHECK(dist4(su2_exp(x), ref) < 1e-13);
  }
}

TEST_CASE("logarithm") {
  CHECK(su2_log(SU2Element::identity()).norm() == 0.0);
  CHECK((su2_log(SU2Element(0, 1, 0, 0)) - AlgebraVector(pi / 2, 0, 0)).norm() < 1e-15);
  CHECK_THROWS_AS(su2_log(SU2Element(-1, 0, 0, 0)), DomainError);
  std::mt19937_64 rng(4);
  for (int s = 0; s < 500; ++s) {
    const SU2Element a = oracle::haar(rng);
    const AlgebraVector x = su2_log(a);
    CHECK(x.norm() < pi);
    CHECK(su2_exp(x).distance(a) < 1e-10);
  }
}

TEST_CASE("adjoint action") {
  CHECK((su2_ad(SU2Element::identity()) - Eigen::Matrix3d::Identity()).norm() == 0.0);
  CHECK((su2_ad(SU2Element(-1, 0, 0, 0)) - Eigen::Matrix3d::Identity()).norm() == 0.0);
  // quarter turn about axis 1 is a 90 degree rotation of axes 2, 3
  Eigen::Matrix3d rot;
  rot << 1, 0, 0, 0, 0, -1, 0, 1, 0;
  CHECK((su2_ad(su2_exp({pi / 4, 0, 0})) - rot).norm() < 1e-15);

  std::mt19937_64 rng(5);
  for (int s = 0; s < 300; ++s) {
    const SU2Element a = oracle::haar(rng), b = oracle::haar(rng);
    const AdjointMatrix m = su2_ad(a);
    CHECK((m - oracle::adjoint(a)).norm() < 1e-13);
    CHECK((su2_ad(a * b) - m * su2_ad(b)).norm() < 1e-10);
    CHECK((m.transpose() * m - Eigen::Matrix3d::Identity()).norm() < 1e-10);
    CHECK(m.determinant() == doctest::Approx(1.0).epsilon(1e-10));
    const AlgebraVector x = oracle::gaussian3(rng), y = oracle::gaussian3(rng);
    CHECK(std::abs(su2_inner(m * x, m * y) - su2_inner(x, y)) < 1e-10);
    // conjugation restricted to imaginary quaternions
    const SU2Element xe(0, x(0), x(1), x(2));
    const AlgebraVector conj = (a * xe * a.inverse()).vec() * x.norm();
    CHECK((m * x - conj).norm() < 1e-12);
  }
}

TEST_CASE("inner product and trace") {
  CHECK(su2_inner({1, 0, 0}, {1, 0, 0}) == 1.0);
  CHECK(su2_inner({1, 0, 0}, {0, 1, 0}) == 0.0);
  CHECK(su2_trace(SU2Element::identity()) == 2.0);
  CHECK(su2_trace(SU2Element(-1, 0, 0, 0)) == -2.0);
  std::mt19937_64 rng(6);
  for (int s = 0; s < 200; ++s) {
    const SU2Element a = oracle::haar(rng), b = oracle::haar(rng);
    CHECK(std::abs(su2_trace(su2_conjugate(a, b)) - su2_trace(a)) < 1e-14);
    CHECK(std::abs(su2_trace(a)) <= 2.0);
  }
}

TEST_CASE("trace derivative along exp(tX) against finite differences") {
  // d/dt trace(exp(tX) a) at 0 is 2 Re(X a) = -2 <X, vec(a)>
  std::mt19937_64 rng(7);
  const double h = 1e-5;
  for (int s = 0; s < 200; ++s) {
    const SU2Element a = oracle::haar(rng);
    const AlgebraVector x = oracle::gaussian3(rng);
    const double fd = (su2_trace(su2_exp(h * x) * a) - su2_trace(su2_exp(-h * x) * a)) / (2 * h);
    CHECK(std::abs(fd - (-2.0 * su2_inner(x, a.vec()))) < 1e-7);
    CHECK(std::abs(2.0 * left_multiply_imaginary(x, a)(0) - (-2.0 * su2_inner(x, a.vec()))) < 1e-14);
  }
}

TEST_CASE("normalization and degenerate input") {
  const SU2Element a(2, 0, 0, 0);
  CHECK(a.w() == 1.0);
  CHECK_THROWS_AS(SU2Element(0, 0, 0, 0), DomainError);
  CHECK(is_central(SU2Element(-1, 0, 0, 0), 1e-12));
  CHECK_FALSE(is_central(SU2Element(0, 1, 0, 0), 1e-12));
}

TEST_CASE("aligning rotation") {
  std::mt19937_64 rng(8);
  for (int s = 0; s < 100; ++s) {
    const AlgebraVector from = oracle::gaussian3(rng).normalized(), to = oracle::gaussian3(rng).normalized();
    CHECK((su2_ad(aligning_rotation(from, to)) * from - to).norm() < 1e-12);
  }
  const AlgebraVector e1(1, 0, 0);
  CHECK((su2_ad(aligning_rotation(e1, -e1)) * e1 + e1).norm() < 1e-12);
  CHECK((su2_ad(aligning_rotation(e1, e1)) * e1 - e1).norm() < 1e-12);
}
