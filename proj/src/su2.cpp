#include "flatstrata/su2.hpp"

#include "flatstrata/errors.hpp"

#include <algorithm>
#include <cmath>

namespace flatstrata {

SU2Element::SU2Element(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n))
    throw DomainError("SU2Element: quaternion has zero or non-finite norm");
  q_ = {w / n, x / n, y / n, z / n};
}

double SU2Element::distance(const SU2Element &other) const {
  double s = 0.0;
  for (int i = 0; i < 4; ++i)
    s += (q_[i] - other.q_[i]) * (q_[i] - other.q_[i]);
  return std::sqrt(s);
}

SU2Element operator*(const SU2Element &a, const SU2Element &b) {
  const auto &p = a.q_;
  const auto &q = b.q_;
  // renormalizing constructor
  return SU2Element(p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
                    p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
                    p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
                    p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]);
}

SU2Element su2_multiply(const SU2Element &a, const SU2Element &b) { return a * b; }

SU2Element su2_exp(const AlgebraVector &X) {
  const double theta = X.norm();
  // sin(t)/t, series below 1e-4 is exact to double precision
  const double sinc = theta < 1e-4 ? 1.0 - theta * theta / 6.0 : std::sin(theta) / theta;
  return SU2Element(std::cos(theta), sinc * X[0], sinc * X[1], sinc * X[2]);
}

AlgebraVector su2_log(const SU2Element &a) {
  const AlgebraVector v = a.vec();
  const double s = v.norm();
  if (a.w() < 0.0 && s < 1e-12)
    throw DomainError("su2_log: -identity lies on the branch cut");
  const double theta = std::atan2(s, a.w());
  if (s < 1e-12)
    return v; // theta ~ s near the identity
  return (theta / s) * v;
}

AdjointMatrix su2_ad(const SU2Element &a) {
  const double w = a.w(), x = a.x(), y = a.y(), z = a.z();
  AdjointMatrix m;
  m << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return m;
}

double su2_inner(const AlgebraVector &X, const AlgebraVector &Y) { return X.dot(Y); }

double su2_trace(const SU2Element &a) { return 2.0 * a.w(); }

SU2Element su2_conjugate(const SU2Element &a, const SU2Element &b) {
  return b * a * b.inverse();
}

Eigen::Vector4d left_multiply_imaginary(const AlgebraVector &X, const SU2Element &a) {
  // (0, X) * (w, v) = (-X.v, w X + X x v)
  const AlgebraVector v = a.vec();
  const AlgebraVector im = a.w() * X + X.cross(v);
  return {-X.dot(v), im[0], im[1], im[2]};
}

bool is_central(const SU2Element &a, double tol) {
  return a.vec().norm() <= tol;
}

SU2Element aligning_rotation(const AlgebraVector &from, const AlgebraVector &to) {
  const AlgebraVector f = from.normalized();
  const AlgebraVector t = to.normalized();
  const double c = std::clamp(f.dot(t), -1.0, 1.0);
  AlgebraVector axis = f.cross(t);
  if (axis.norm() < 1e-12) {
    if (c > 0)
      return SU2Element::identity();
    // antiparallel: any axis perpendicular to f
    axis = f.cross(std::abs(f[0]) < 0.9 ? AlgebraVector::UnitX() : AlgebraVector::UnitY());
  }
  const double half = 0.5 * std::acos(c);
  return su2_exp(half * axis.normalized());
}

} // namespace flatstrata
