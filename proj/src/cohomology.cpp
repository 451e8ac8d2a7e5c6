#include "flatstrata/cohomology.hpp"

#include "flatstrata/errors.hpp"
#include "flatstrata/linalg.hpp"

#include <sstream>

namespace flatstrata {

TwistedComplex build_complex(const Representation &rep, const Eigen::MatrixXd &P) {
  const auto d = P.cols();
  const auto n = static_cast<Eigen::Index>(rep.presentation().generator_count());
  TwistedComplex c;
  c.coefficient_basis = P;
  c.d0.resize(d * n, d);
  for (Eigen::Index g = 0; g < n; ++g)
    c.d0.block(g * d, 0, d, d) =
        P.transpose() * su2_ad(rep.image(static_cast<int>(g))) * P -
        Eigen::MatrixXd::Identity(d, d);
  c.d1 = fox_matrix(rep.presentation().relators(), rep.images(), P);
  return c;
}

Eigen::MatrixXd build_d0(const Representation &rep) {
  return build_complex(rep, Eigen::Matrix3d::Identity()).d0;
}

CohomologySummary cohomology_with(const Representation &rep, const Eigen::MatrixXd &P,
                                  const Tolerances &tol) {
  rep.require_relators(tol.relator);
  const TwistedComplex c = build_complex(rep, P);
  const auto d = P.cols();
  const auto cochains = c.d0.rows();

  CohomologySummary s;
  s.coefficient_basis = P;

  const RankInfo r0 = numeric_rank(c.d0, tol.rank);
  const RankInfo r1 = numeric_rank(c.d1, tol.rank);
  s.rank_d0 = r0.rank;
  s.rank_d1 = r1.rank;
  s.singular_values_d0 = r0.singular_values;
  s.singular_values_d1 = r1.singular_values;
  s.smallest_nonzero_d0 = r0.smallest_nonzero;
  if (r0.ill_conditioned)
    s.warnings.push_back("ill-conditioned rank of d0");
  if (r1.ill_conditioned)
    s.warnings.push_back("ill-conditioned rank of d1");

  s.h0 = static_cast<int>(d) - r0.rank;
  s.z1 = static_cast<int>(cochains) - r1.rank;
  s.h1 = s.z1 - r0.rank;
  s.basis_h0 = null_space(c.d0, tol.rank);
  if (c.d1.rows() > 0 && c.d0.rows() > 0)
    s.exactness_residual = (c.d1 * c.d0).norm();
  if (s.exactness_residual > tol.rank)
    s.warnings.push_back("d1 * d0 does not vanish");

  // harmonic representatives: Z^1 projected off B^1
  const Eigen::MatrixXd Z = null_space(c.d1, tol.rank);
  const Eigen::MatrixXd B = range_basis(c.d0, tol.rank);
  const Eigen::MatrixXd W = Z - B * (B.transpose() * Z);
  s.basis_h1 = range_basis(W, 0.5);
  if (s.basis_h1.cols() != s.h1) {
    std::ostringstream msg;
    msg << "harmonic basis has " << s.basis_h1.cols() << " columns, expected h1 = " << s.h1;
    s.warnings.push_back(msg.str());
  }
  return s;
}

CohomologySummary cohomology(const Representation &rep, const Tolerances &tol) {
  return cohomology_with(rep, Eigen::Matrix3d::Identity(), tol);
}

AlgebraVector stabilizer_axis(const Representation &rep, const Tolerances &tol) {
  const Eigen::MatrixXd kernel = null_space(build_d0(rep), tol.rank);
  if (kernel.cols() != 1) {
    std::ostringstream msg;
    msg << "stabilizer_axis: stabilizer has dimension " << kernel.cols()
        << "; the stabilizer/complement split needs dimension 1";
    throw DomainError(msg.str());
  }
  AlgebraVector axis = kernel.col(0);
  // fix the sign for determinism
  Eigen::Index k;
  axis.cwiseAbs().maxCoeff(&k);
  return axis[k] < 0 ? AlgebraVector(-axis) : axis;
}

Eigen::MatrixXd coefficient_basis(const Representation &rep, CoefficientPart part,
                                  const Tolerances &tol) {
  if (part == CoefficientPart::full)
    return Eigen::Matrix3d::Identity();
  const AlgebraVector axis = stabilizer_axis(rep, tol);
  if (part == CoefficientPart::stabilizer)
    return axis;
  const Eigen::MatrixXd a = axis.transpose();
  return null_space(a, 0.5);
}

CohomologySummary restrict_coefficients(const Representation &rep, CoefficientPart part,
                                        const Tolerances &tol) {
  return cohomology_with(rep, coefficient_basis(rep, part, tol), tol);
}

} // namespace flatstrata
