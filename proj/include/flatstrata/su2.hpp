#pragma once

#include <Eigen/Dense>

#include <array>

namespace flatstrata {

// su(2) identified with the imaginary quaternions, coordinates in (i, j, k).
using AlgebraVector = Eigen::Vector3d;
// Matrix of Ad(a) acting on AlgebraVector; an element of SO(3).
using AdjointMatrix = Eigen::Matrix3d;

// Unit quaternion w + x i + y j + z k.
class SU2Element {
public:
  SU2Element() = default;
  // Normalizes the input; throws DomainError for the zero quaternion.
  SU2Element(double w, double x, double y, double z);

  static SU2Element identity() { return {}; }

  double w() const { return q_[0]; }
  double x() const { return q_[1]; }
  double y() const { return q_[2]; }
  double z() const { return q_[3]; }
  AlgebraVector vec() const { return {q_[1], q_[2], q_[3]}; }
  std::array<double, 4> components() const { return q_; }

  SU2Element inverse() const { return {q_[0], -q_[1], -q_[2], -q_[3], Raw{}}; }
  SU2Element operator-() const { return {-q_[0], -q_[1], -q_[2], -q_[3], Raw{}}; }

  // Euclidean distance in R^4.
  double distance(const SU2Element &other) const;

  friend SU2Element operator*(const SU2Element &a, const SU2Element &b);

private:
  struct Raw {};
  SU2Element(double w, double x, double y, double z, Raw) : q_{w, x, y, z} {}

  std::array<double, 4> q_{1.0, 0.0, 0.0, 0.0};
};

SU2Element su2_multiply(const SU2Element &a, const SU2Element &b);

// exp(X) = (cos|X|, sin|X| X/|X|).
SU2Element su2_exp(const AlgebraVector &X);

// Inverse of su2_exp with |log a| in [0, pi). Throws DomainError at -1.
AlgebraVector su2_log(const SU2Element &a);

// Matrix of X -> a X a^{-1}.
AdjointMatrix su2_ad(const SU2Element &a);

double su2_inner(const AlgebraVector &X, const AlgebraVector &Y);

// Trace of the 2x2 unitary matrix, i.e. 2w.
double su2_trace(const SU2Element &a);

// b a b^{-1}
SU2Element su2_conjugate(const SU2Element &a, const SU2Element &b);

// Quaternion product with an imaginary quaternion on the left: X * a.
// Used for first-order variations exp(tX) a = a + t X a + O(t^2).
Eigen::Vector4d left_multiply_imaginary(const AlgebraVector &X, const SU2Element &a);

bool is_central(const SU2Element &a, double tol);

// Shortest rotation taking unit vector `from` onto unit vector `to`, as an
// element c with Ad(c) from = to.
SU2Element aligning_rotation(const AlgebraVector &from, const AlgebraVector &to);

} // namespace flatstrata
