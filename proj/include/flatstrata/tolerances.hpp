#pragma once

namespace flatstrata {

// The single tolerance ladder used across the library.
struct Tolerances {
  double algebraic = 1e-12; // unit norm, group axioms
  double identity = 1e-10;  // derived identities (Ad homomorphism, orthonormality)
  double rank = 1e-8;       // singular-value threshold for rank decisions
  double relator = 1e-9;    // max relator residual accepted for a representation
};

// Rank decisions whose singular value falls inside [rank / 10, rank * 10]
// are flagged as ill-conditioned.
inline constexpr double kIllConditionedFactor = 10.0;

// Metric convention tag reported next to every torsion/volume/symplectic value.
inline constexpr const char *kMetricConvention =
    "su2 basis (i,j,k) orthonormal; inner(X,Y) = X.Y";
inline constexpr const char *kTorsionConvention =
    "odd-position maps numerator, even-position maps denominator; absolute value";

} // namespace flatstrata
