#pragma once

#include "flatstrata/presentation.hpp"
#include "flatstrata/tolerances.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace flatstrata {

// Cochain complex C^0 -> C^1 -> C^2 of a presentation with coefficients in
// an Ad-invariant subspace of su(2) spanned by the orthonormal columns of
// `coefficient_basis` (3 x d). With the identity basis this is the full
// adjoint complex.
struct TwistedComplex {
  Eigen::MatrixXd coefficient_basis;
  Eigen::MatrixXd d0; // (d n) x d, block g = P^T (Ad(x_g) - I) P
  Eigen::MatrixXd d1; // (d m) x (d n), Fox Jacobian of the relators
};

TwistedComplex build_complex(const Representation &rep, const Eigen::MatrixXd &coefficient_basis);

Eigen::MatrixXd build_d0(const Representation &rep);

struct CohomologySummary {
  int h0 = 0;
  int h1 = 0;
  int rank_d0 = 0;
  int rank_d1 = 0;
  // dim Z^1 = dim ker d1
  int z1 = 0;
  Eigen::MatrixXd coefficient_basis;
  // orthonormal columns spanning ker d0 (coefficient coordinates)
  Eigen::MatrixXd basis_h0;
  // orthonormal columns spanning ker d1 cap (im d0)^perp (cochain coordinates)
  Eigen::MatrixXd basis_h1;
  Eigen::VectorXd singular_values_d0;
  Eigen::VectorXd singular_values_d1;
  // smallest singular value of d0 above the rank threshold
  double smallest_nonzero_d0 = 0.0;
  double exactness_residual = 0.0; // |d1 d0|
  std::vector<std::string> warnings;
};

CohomologySummary cohomology(const Representation &rep, const Tolerances &tol = {});

CohomologySummary cohomology_with(const Representation &rep,
                                  const Eigen::MatrixXd &coefficient_basis,
                                  const Tolerances &tol = {});

enum class CoefficientPart { full, stabilizer, complement };

// Axis fixed by Ad of every image; requires h0 == 1.
AlgebraVector stabilizer_axis(const Representation &rep, const Tolerances &tol = {});

// 3 x d orthonormal basis of the requested part of su(2) at rep. The
// stabilizer/complement split exists only at reducible nontrivial reps.
Eigen::MatrixXd coefficient_basis(const Representation &rep, CoefficientPart part,
                                  const Tolerances &tol = {});

CohomologySummary restrict_coefficients(const Representation &rep, CoefficientPart part,
                                        const Tolerances &tol = {});

} // namespace flatstrata
