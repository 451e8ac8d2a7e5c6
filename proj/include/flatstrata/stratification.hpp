#pragma once

#include "flatstrata/presentation.hpp"
#include "flatstrata/tolerances.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace flatstrata {

// Stratum label: 0 (stabilizer G), 1 (a maximal torus), 3 (the center).
// stabilizer_dim is h0 at the representation: 3, 1 or 0.
struct StratumLabel {
  int i = 0;
  int stabilizer_dim = 3;
  // all images are +-1 but not all +1
  bool central_flag = false;
  // smallest nonzero singular value of d0 is below 10x the rank tolerance
  bool boundary_ambiguous = false;
};

// Numeric verdict from h0, cross-checked against the algebraic test on
// the images (central / common rotation axis). Throws DomainError when the
// two disagree away from a stratum boundary.
StratumLabel classify_stratum(const Representation &rep, const Tolerances &tol = {});

// Dimension of the stratum through rep for a free-group representation:
// 0, g or 3g - 3. Throws DomainError if the cohomological count disagrees.
int stratum_tangent_dim(const Representation &rep, const Tolerances &tol = {});

struct PolarizationValue {
  std::vector<double> traces;
};

PolarizationValue polarization_map(const Representation &rep, std::span<const Word> curves);

// True when every trace equals 2 within tol.
bool in_handlebody_fibre(const PolarizationValue &value, double tol);

// Fibre test without curve words: every B-generator of a surface
// representation maps to the identity.
bool b_images_trivial(const Representation &surface_rep, double tol);

// splitmix64 of (seed, index); independent sub-seeds for parallel draws.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index);

SU2Element haar_random(std::mt19937_64 &rng);
AlgebraVector random_unit_vector(std::mt19937_64 &rng);

// Deterministic sample of free(g) in the requested stratum (central_flag
// selects a nontrivial central tuple for i = 0). Throws DomainError when
// the rejection budget runs out, e.g. i = 3 at g = 1.
Representation sample_stratum(int g, const StratumLabel &label, std::uint64_t seed,
                              const Tolerances &tol = {});

// Surface representation with A-images from a free-group representation
// and every B-image equal to the identity.
Representation embed_in_surface(const Representation &free_rep);

// Random irreducible representation of surface(g), built by solving the
// last commutator exactly. Throws DomainError when g < 2.
Representation random_surface_representation(int g, std::uint64_t seed,
                                             const Tolerances &tol = {});


// Census of Haar-random free(g) tuples plus a tangent-dimension audit on
// forced samples of every stratum. Results depend only on (g, samples, seed).
struct StrataCensus {
  int genus = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  int count_stratum0 = 0;
  int count_stratum1 = 0;
  int count_stratum3 = 0;
  int boundary_ambiguous = 0;
  int constant_dimension_violations = 0; // h1 - h0 != 3g - 3
  int euler_violations = 0;              // 3 - h0 + h1 != 3g
  // forced samples per stratum: {0, 1, 3}
  int tangent_checked[3] = {0, 0, 0};
  int tangent_violations[3] = {0, 0, 0};
};

StrataCensus strata_census(int g, int samples, std::uint64_t seed, int threads = 1,
                           const Tolerances &tol = {});

} // namespace flatstrata
