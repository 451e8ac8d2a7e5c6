#include "flatstrata/linalg.hpp"

#include "flatstrata/tolerances.hpp"

#include <cmath>
#include <limits>

namespace flatstrata {

namespace {

Eigen::JacobiSVD<Eigen::MatrixXd> full_svd(const Eigen::MatrixXd &m) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

} // namespace

RankInfo numeric_rank(const Eigen::MatrixXd &m, double tol) {
  RankInfo info;
  info.smallest_nonzero = std::numeric_limits<double>::infinity();
  if (m.rows() == 0 || m.cols() == 0)
    return info;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  info.singular_values = svd.singularValues();
  for (Eigen::Index i = 0; i < info.singular_values.size(); ++i) {
    const double s = info.singular_values[i];
    if (s > tol) {
      ++info.rank;
      info.smallest_nonzero = std::min(info.smallest_nonzero, s);
    }
    if (s > tol / kIllConditionedFactor && s < tol * kIllConditionedFactor)
      info.ill_conditioned = true;
  }
  return info;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd &m, double tol) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0)
    return Eigen::MatrixXd::Identity(n, n);
  if (n == 0)
    return Eigen::MatrixXd(0, 0);
  const auto svd = full_svd(m);
  const auto &s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s[r] > tol)
    ++r;
  return svd.matrixV().rightCols(n - r);
}

Eigen::MatrixXd range_basis(const Eigen::MatrixXd &m, double tol) {
  if (m.rows() == 0 || m.cols() == 0)
    return Eigen::MatrixXd(m.rows(), 0);
  const auto svd = full_svd(m);
  const auto &s = svd.singularValues();
  Eigen::Index r = 0;
  while (r < s.size() && s[r] > tol)
    ++r;
  return svd.matrixU().leftCols(r);
}

LogSingularProduct log_singular_product(const Eigen::MatrixXd &m, double tol) {
  LogSingularProduct out;
  if (m.rows() == 0 || m.cols() == 0)
    return out;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    const double s = svd.singularValues()[i];
    if (s > tol) {
      out.log_value += std::log(s);
      ++out.rank;
    }
  }
  return out;
}

} // namespace flatstrata
