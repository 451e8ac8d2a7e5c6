#pragma once

#include "flatstrata/cohomology.hpp"
#include "flatstrata/presentation.hpp"
#include "flatstrata/stratification.hpp"
#include "flatstrata/tolerances.hpp"
#include "flatstrata/torsion.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace flatstrata {

// One handlebody of a Heegaard splitting: its free group on `genus`
// generators, the image of each surface generator (a1..ag, b1..bg) as a word
// in the handlebody generators, and the image of each handlebody generator
// as a word in the manifold group.
struct Handlebody {
  std::vector<Word> surface_images;
  std::vector<Word> manifold_images;
};

struct HeegaardData {
  int genus = 0;
  PresentationPtr manifold;
  Handlebody handle1;
  Handlebody handle2;
};

// Throws InputError if sizes disagree with the genus or a surface relator
// does not map to the trivial word in a handlebody.
void validate_heegaard(const HeegaardData &h);

HeegaardData heegaard_s3();
HeegaardData heegaard_s1xs2();
// Genus-1 splitting with the second meridian a^p b^q; manifold group Z/p
// presented as cyclic(p).
HeegaardData heegaard_lens(int p, int q);

PresentationPtr three_torus_presentation();

// Differentials of the cubical cochain complex of the 3-torus with
// coefficients in span(P).
std::vector<Eigen::MatrixXd> three_torus_cochain_complex(const Representation &rep,
                                                          const Eigen::MatrixXd &coefficient_basis);

// Restriction data at rep (a representation of the manifold group) with
// coefficients g (part = full) or the stabilizer line (part = stabilizer).
MayerVietorisData mayer_vietoris_data(const Representation &rep, const HeegaardData &heegaard,
                                      CoefficientPart part, const Tolerances &tol = {});

TorsionValue mv_torsion_at(const Representation &rep, const HeegaardData &heegaard,
                           CoefficientPart part, const Tolerances &tol = {});

struct CleanVerdict {
  bool pass = true;
  int component_dim = 0;
  int cohomology_dim = 0; // h1 with the stratum's coefficients
  std::string coefficients; // "none", "stabilizer", "full"
};

struct ModuliPoint {
  std::string point_id;
  Representation rep;
  StratumLabel stratum;
  double cs_value = 0.0;
  TorsionValue torsion;
  int component_dim = 0;
  double weight = 1.0;
  std::string fingerprint;
  std::optional<CleanVerdict> verdict;
};

enum class ManifoldExample { s3, s1xs2, lens, t3, custom };

ManifoldExample parse_example(const std::string &name);
const char *to_string(ManifoldExample ex);

// Candidate point for the custom example.
struct CandidatePoint {
  std::string point_id;
  std::vector<SU2Element> images;
  int component_dim = 0;
  double weight = 1.0;
  std::optional<double> torsion;
};

struct ModuliParams {
  int p = 1;
  int q = 1;
  int chart_nodes = 8; // per-angle nodes for positive-dimensional families
  PresentationPtr custom_presentation;
  std::vector<CandidatePoint> candidates;
};

// Traces of the generators, their pairwise products x_i x_j and x_i x_j^{-1},
// and triple products x_i x_j x_k (i < j < k), rounded to 1e-7.
std::string conjugacy_fingerprint(const Representation &rep);

// Some h with h x_i h^{-1} = y_i for all i, if one exists within tol.
std::optional<SU2Element> find_conjugator(const Representation &from, const Representation &to,
                                          double tol);

// Points of M(N) up to conjugacy with stratum labels, component dimensions,
// chart weights and fingerprints. Torsion and CS values are left at their
// defaults (1 and 0).
std::vector<ModuliPoint> enumerate_moduli(ManifoldExample example, const ModuliParams &params,
                                          const Tolerances &tol = {});

CleanVerdict clean_intersection_check(const ModuliPoint &point, const Tolerances &tol = {});

// Full pipeline: enumerate, torsion per point (Mayer-Vietoris for the
// genus-1 examples, cubical complex for the 3-torus, supplied values for
// custom points) and clean-intersection verdicts.
struct ModuliCatalogue {
  ManifoldExample example = ManifoldExample::s3;
  PresentationPtr manifold;
  std::vector<ModuliPoint> points;
};

ModuliCatalogue build_catalogue(ManifoldExample example, const ModuliParams &params,
                                const std::optional<HeegaardData> &custom_heegaard = std::nullopt,
                                const Tolerances &tol = {}, int threads = 1);

struct InvariantResult {
  int k = 0;
  // contributions of the strata i = 0, 1, 3
  std::array<std::complex<double>, 3> per_stratum{};
  std::complex<double> total{};
  std::vector<std::pair<std::string, CleanVerdict>> diagnostics;
};

// Sum of weight * exp(2 pi i k cs) * torsion per stratum. Throws DomainError
// naming the first point whose verdict is missing or failing.
InvariantResult assemble_invariant(const std::vector<ModuliPoint> &points, int k);

struct StationaryPhaseEntry {
  double tau = 1.0;
  int spectral_flow = 0;
  double cs = 0.0;
};

// (1/2) e^{3 pi i/4} sum sqrt(tau) e^{-2 pi i I/4} e^{2 pi i CS (k + 2)}
std::complex<double> stationary_phase_fg(const std::vector<StationaryPhaseEntry> &entries, int k);

} // namespace flatstrata
