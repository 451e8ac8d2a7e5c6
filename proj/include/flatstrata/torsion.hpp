#pragma once

#include "flatstrata/presentation.hpp"
#include "flatstrata/tolerances.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace flatstrata {

// 0 -> V_1 -> ... -> V_n -> 0 with orthonormal reference bases.
// maps[j] : V_{j+1} -> V_{j+2} (0-based), shape dims[j+1] x dims[j].
struct MetricSequence {
  std::vector<int> dims;
  std::vector<Eigen::MatrixXd> maps;
};

// Throws InputError when a map's shape does not match the dimensions.
void check_shapes(const MetricSequence &seq);

struct ExactnessReport {
  double residual = 0.0; // max |f_{j+1} f_j|
  bool ranks_exact = true;
  int first_failure = -1; // 0-based space index where exactness fails
};

ExactnessReport exactness(const MetricSequence &seq, double rank_tol);

struct TorsionValue {
  double value = 1.0;
  double log_value = 0.0;
  std::string convention_note = kTorsionConvention;
};

TorsionValue torsion_from_log(double log_value);

struct HalfDensityValue {
  double value = 1.0;
};

// Alternating product of the nonzero singular values of the maps: the map
// at odd (1-based) position j contributes to the numerator, even positions
// to the denominator. Accumulated in log space. Throws DomainError when the
// sequence is not exact.
TorsionValue sequence_torsion(const MetricSequence &seq, const Tolerances &tol = {});

// Torsion of a cochain complex C^0 -> C^1 -> ... with harmonic cohomology
// bases: the product of nonzero singular values of d_j raised to (-1)^j.
TorsionValue cochain_complex_torsion(const std::vector<Eigen::MatrixXd> &differentials,
                                     const Tolerances &tol = {});

struct VolumeValue {
  TorsionValue volume;
  HalfDensityValue half_density;
  int stratum = 0;
};

// Handlebody volume of a free-group representation from the stratum's
// defining exact sequence (d0 followed by the harmonic projection for the
// top stratum; orbit tangent plus torus directions for the torus stratum;
// the constant 1 for the isolated stratum).
VolumeValue jw_volume(const Representation &rep, const Tolerances &tol = {});

// Independent route: square root of the Gram determinant of d0 restricted
// to the orthocomplement of the stabilizer.
double jw_volume_by_gram(const Representation &rep, const Tolerances &tol = {});

// Torus-stratum split into stabilizer-line and complement contributions,
// each computed from its own coefficient complex.
struct VolumeFactors {
  TorsionValue stabilizer;
  TorsionValue complement;
};
VolumeFactors jw_volume_factors(const Representation &rep, const Tolerances &tol = {});

// Restriction data of the sequence
// 0 -> H1(N) -> H1(H_1) + H1(H_2) -> H1(Sigma) -> H1(N)* -> 0
// in harmonic orthonormal bases.
struct MayerVietorisData {
  Eigen::MatrixXd manifold_to_handle1;  // h1(H_1) x h1(N)
  Eigen::MatrixXd manifold_to_handle2;  // h1(H_2) x h1(N)
  Eigen::MatrixXd handle1_to_surface;   // h1(Sigma) x h1(H_1)
  Eigen::MatrixXd handle2_to_surface;   // h1(Sigma) x h1(H_2)
  Eigen::MatrixXd surface_gram;         // symplectic pairing on H1(Sigma)
  Eigen::MatrixXd manifold_to_surface;  // h1(Sigma) x h1(N)
};

MetricSequence mayer_vietoris_sequence(const MayerVietorisData &data);

// sequence_torsion of the assembled sequence; the error on non-exactness
// means the intersection is not stratified-clean.
TorsionValue mv_torsion(const MayerVietorisData &data, const Tolerances &tol = {});

} // namespace flatstrata
