#pragma once

// Reference computations used by the tests. Everything here avoids the
// library's own algorithms: group elements are 2x2 complex matrices, ranks
// come from full-pivot LU, Jacobians from finite differences and torsion
// from explicit determinants.

#include "flatstrata/presentation.hpp"
#include "flatstrata/su2.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using Mat2 = Eigen::Matrix2cd;
using flatstrata::SU2Element;

// w + x i + y j + z k  ->  [[w + i x, y + i z], [-y + i z, w - i x]]
inline Mat2 to_matrix(const SU2Element &a) {
  using C = std::complex<double>;
  Mat2 m;
  m << C(a.w(), a.x()), C(a.y(), a.z()), C(-a.y(), a.z()), C(a.w(), -a.x());
  return m;
}

inline Eigen::Vector4d from_matrix(const Mat2 &m) {
  return {m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag()};
}

// Imaginary unit quaternions e_1, e_2, e_3 as matrices.
inline Mat2 basis_matrix(int k) {
  Eigen::Vector4d q = Eigen::Vector4d::Zero();
  q(k + 1) = 1.0;
  return to_matrix(SU2Element(q(0), q(1), q(2), q(3)));
}

inline Eigen::Vector3d imaginary_part(const Mat2 &m) {
  const Eigen::Vector4d q = from_matrix(m);
  return q.tail<3>();
}

// Ad(a) column by column: a e_k a^dagger.
inline Eigen::Matrix3d adjoint(const SU2Element &a) {
  const Mat2 g = to_matrix(a);
  Eigen::Matrix3d out;
  for (int k = 0; k < 3; ++k)
    out.col(k) = imaginary_part(g * basis_matrix(k) * g.adjoint());
  return out;
}

// exp of the pure quaternion X by its power series on 2x2 matrices.
inline Mat2 exp_series(const Eigen::Vector3d &x) {
  Mat2 m = Mat2::Zero();
  for (int k = 0; k < 3; ++k)
    m += x(k) * basis_matrix(k);
  Mat2 term = Mat2::Identity(), sum = Mat2::Identity();
  for (int n = 1; n < 40; ++n) {
    term = term * m / static_cast<double>(n);
    sum += term;
  }
  return sum;
}

inline SU2Element exp_element(const Eigen::Vector3d &x) {
  const Eigen::Vector4d q = from_matrix(exp_series(x));
  return SU2Element(q(0), q(1), q(2), q(3));
}

inline Mat2 evaluate(const std::vector<SU2Element> &images, const flatstrata::Word &w) {
  Mat2 m = Mat2::Identity();
  for (int l : w.letters()) {
    const Mat2 g = to_matrix(images.at(std::abs(l) - 1));
    m = m * (l > 0 ? g : Mat2(g.adjoint()));
  }
  return m;
}

// log of an SU(2) matrix close to the identity, as a 3-vector.
inline Eigen::Vector3d log_near_identity(const Mat2 &m) {
  const Eigen::Vector4d q = from_matrix(m);
  const double s = q.tail<3>().norm();
  if (s == 0.0)
    return Eigen::Vector3d::Zero();
  return std::atan2(s, q(0)) / s * q.tail<3>();
}

inline SU2Element haar(std::mt19937_64 &rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return SU2Element(n(rng), n(rng), n(rng), n(rng));
}

inline Eigen::Vector3d gaussian3(std::mt19937_64 &rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  return {n(rng), n(rng), n(rng)};
}

inline Eigen::MatrixXd gaussian(int rows, int cols, std::mt19937_64 &rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m(r, c) = n(rng);
  return m;
}

inline int lu_rank(const Eigen::MatrixXd &m, double threshold) {
  if (m.rows() == 0 || m.cols() == 0)
    return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(threshold);
  return static_cast<int>(lu.rank());
}

// Central-difference Jacobian of the relator logs under x_g -> exp(t u_g) x_g.
inline Eigen::MatrixXd relator_jacobian_fd(const flatstrata::Presentation &p,
                                           const std::vector<SU2Element> &images, double h = 1e-6) {
  const int n = p.generator_count(), m = p.relator_count();
  Eigen::MatrixXd j(3 * m, 3 * n);
  for (int g = 0; g < n; ++g) {
    for (int c = 0; c < 3; ++c) {
      Eigen::Vector3d e = Eigen::Vector3d::Zero();
      e(c) = h;
      auto plus = images, minus = images;
      plus[g] = exp_element(e) * images[g];
      minus[g] = exp_element(-e) * images[g];
      for (int r = 0; r < m; ++r) {
        const Mat2 base = evaluate(images, p.relators()[r]);
        const Eigen::Vector3d lp = log_near_identity(evaluate(plus, p.relators()[r]) * base.adjoint());
        const Eigen::Vector3d lm = log_near_identity(evaluate(minus, p.relators()[r]) * base.adjoint());
        j.block<3, 1>(3 * r, 3 * g + c) = (lp - lm) / (2 * h);
      }
    }
  }
  return j;
}

// d0 built from the matrix adjoint.
inline Eigen::MatrixXd coboundary(const std::vector<SU2Element> &images) {
  const int n = static_cast<int>(images.size());
  Eigen::MatrixXd d(3 * n, 3);
  for (int g = 0; g < n; ++g)
    d.block<3, 3>(3 * g, 0) = adjoint(images[g]) - Eigen::Matrix3d::Identity();
  return d;
}

// A random exact sequence 0 -> V_1 -> ... -> V_n -> 0 with the given ranks
// r_1..r_{n-1} of the maps: V_j = im f_{j-1} + complement, each built from a
// random invertible change of basis.
struct ExactSequence {
  std::vector<int> dims;
  std::vector<Eigen::MatrixXd> maps;
};

inline ExactSequence random_exact_sequence(const std::vector<int> &ranks, std::mt19937_64 &rng) {
  const int n = static_cast<int>(ranks.size()) + 1;
  ExactSequence s;
  std::vector<Eigen::MatrixXd> q(n);
  for (int j = 0; j < n; ++j) {
    const int in = j == 0 ? 0 : ranks[j - 1];
    const int out = j == n - 1 ? 0 : ranks[j];
    s.dims.push_back(in + out);
    q[j] = gaussian(in + out, in + out, rng);
  }
  for (int j = 0; j + 1 < n; ++j) {
    const int in = j == 0 ? 0 : ranks[j - 1];
    const int r = ranks[j];
    const Eigen::MatrixXd qinv = q[j].inverse();
    const Eigen::MatrixXd m = gaussian(r, r, rng);
    s.maps.push_back(q[j + 1].leftCols(r) * m * qinv.bottomRows(s.dims[j] - in));
  }
  return s;
}

// Torsion from explicit top forms: in V_j take the basis
// [f_{j-1}(s_{j-1}), s_j] with random lifts s_j, and multiply
// |det|^{(-1)^j} over 1-based positions j. The result does not depend on
// the lifts when the sequence is exact.
inline double brute_force_torsion(const std::vector<int> &dims, const std::vector<Eigen::MatrixXd> &maps,
                                  std::mt19937_64 &rng) {
  const int n = static_cast<int>(dims.size());
  std::vector<int> rank(n, 0);
  for (int j = 0; j + 1 < n; ++j)
    rank[j] = dims[j] - (j == 0 ? 0 : rank[j - 1]);
  double log_t = 0.0;
  Eigen::MatrixXd image_part(dims[0], 0);
  for (int j = 0; j < n; ++j) {
    const int r = j + 1 < n ? rank[j] : 0;
    const Eigen::MatrixXd lift = gaussian(dims[j], r, rng);
    Eigen::MatrixXd b(dims[j], dims[j]);
    b << image_part, lift;
    const double d = dims[j] == 0 ? 1.0 : std::abs(b.fullPivLu().determinant());
    log_t += ((j + 1) % 2 == 0 ? 1.0 : -1.0) * std::log(d);
    if (j + 1 < n)
      image_part = maps[j] * lift;
  }
  return std::exp(log_t);
}

inline Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64 &rng) {
  if (n == 0)
    return Eigen::MatrixXd(0, 0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian(n, n, rng));
  return qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
}

} // namespace oracle
