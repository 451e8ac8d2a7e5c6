#include "flatstrata/stratification.hpp"

#include "flatstrata/cohomology.hpp"
#include "flatstrata/errors.hpp"
#include "flatstrata/parallel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace flatstrata {

namespace {

constexpr int kRejectionBudget = 1000;

std::shared_ptr<const Presentation> shared_free(int g) {
  return std::make_shared<const Presentation>(Presentation::free_group(g));
}

// 3 - dim Stab from the images alone.
int algebraic_stratum(const Representation &rep, double tol) {
  const SU2Element *ref = nullptr;
  double best = 0.0;
  for (const auto &x : rep.images()) {
    const double s = x.vec().norm();
    if (s > best) {
      best = s;
      ref = &x;
    }
  }
  if (ref == nullptr || best <= tol)
    return 0;
  const AlgebraVector axis = ref->vec().normalized();
  for (const auto &x : rep.images())
    if (x.vec().cross(axis).norm() > tol)
      return 3;
  return 1;
}

} // namespace

StratumLabel classify_stratum(const Representation &rep, const Tolerances &tol) {
  const CohomologySummary h = cohomology(rep, tol);
  StratumLabel label;
  if (h.h0 != 0 && h.h0 != 1 && h.h0 != 3) {
    std::ostringstream msg;
    msg << "classify_stratum: h0 = " << h.h0 << " is not a stabilizer dimension of SU(2)";
    throw DomainError(msg.str());
  }
  label.stabilizer_dim = h.h0;
  // stabilizers G, T, Z(G) carry the labels 0, 1, 3
  label.i = h.h0 == 3 ? 0 : h.h0 == 1 ? 1 : 3;
  label.boundary_ambiguous = h.rank_d0 > 0 && h.smallest_nonzero_d0 < kIllConditionedFactor * tol.rank;
  if (label.i == 0) {
    for (const auto &x : rep.images())
      if (x.w() < 0)
        label.central_flag = true;
  }
  const int algebraic = algebraic_stratum(rep, tol.rank);
  if (algebraic != label.i && !label.boundary_ambiguous) {
    std::ostringstream msg;
    msg << "classify_stratum: rank verdict i = " << label.i << " conflicts with axis verdict i = "
        << algebraic;
    throw DomainError(msg.str());
  }
  return label;
}

int stratum_tangent_dim(const Representation &rep, const Tolerances &tol) {
  if (rep.presentation().kind() != PresentationKind::free)
    throw DomainError("stratum_tangent_dim: needs a free-group representation");
  const int g = rep.presentation().genus();
  const StratumLabel label = classify_stratum(rep, tol);
  int dim = 0;
  int expected = 0;
  switch (label.i) {
  case 0:
    return 0;
  case 1:
    dim = restrict_coefficients(rep, CoefficientPart::stabilizer, tol).h1;
    expected = g;
    break;
  default:
    dim = cohomology(rep, tol).h1;
    expected = 3 * g - 3;
    break;
  }
  if (dim != expected) {
    std::ostringstream msg;
    msg << "stratum_tangent_dim: stratum " << label.i << " has tangent dimension " << dim
        << ", expected " << expected;
    throw DomainError(msg.str());
  }
  return dim;
}

PolarizationValue polarization_map(const Representation &rep, std::span<const Word> curves) {
  PolarizationValue v;
  v.traces.reserve(curves.size());
  for (const auto &c : curves)
    v.traces.push_back(su2_trace(evaluate_word(rep, c)));
  return v;
}

bool in_handlebody_fibre(const PolarizationValue &value, double tol) {
  for (double t : value.traces)
    if (std::abs(t - 2.0) > tol)
      return false;
  return true;
}

bool b_images_trivial(const Representation &surface_rep, double tol) {
  if (surface_rep.presentation().kind() != PresentationKind::surface)
    throw DomainError("b_images_trivial: needs a surface representation");
  const int g = surface_rep.presentation().genus();
  for (int i = g; i < 2 * g; ++i)
    if (surface_rep.image(i).distance(SU2Element::identity()) > tol)
      return false;
  return true;
}

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SU2Element haar_random(std::mt19937_64 &rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const double w = n(rng), x = n(rng), y = n(rng), z = n(rng);
    if (w * w + x * x + y * y + z * z > 1e-8)
      return SU2Element(w, x, y, z);
  }
}

AlgebraVector random_unit_vector(std::mt19937_64 &rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    AlgebraVector v(n(rng), n(rng), n(rng));
    if (v.norm() > 1e-6)
      return v.normalized();
  }
}

Representation sample_stratum(int g, const StratumLabel &label, std::uint64_t seed,
                              const Tolerances &tol) {
  if (g < 1)
    throw DomainError("sample_stratum: genus must be >= 1");
  if (label.i != 0 && label.i != 1 && label.i != 3)
    throw DomainError("sample_stratum: stratum index must be 0, 1 or 3");
  auto pres = shared_free(g);
  std::mt19937_64 rng(seed);
  const auto n = static_cast<std::size_t>(g);

  if (label.i == 0) {
    if (!label.central_flag)
      return Representation::trivial(pres);
    std::bernoulli_distribution coin(0.5);
    std::vector<SU2Element> imgs(n);
    bool any = false;
    for (auto &x : imgs)
      if (coin(rng)) {
        x = -SU2Element::identity();
        any = true;
      }
    if (!any)
      imgs[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)] = -SU2Element::identity();
    return Representation(pres, std::move(imgs));
  }

  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    std::vector<SU2Element> imgs;
    imgs.reserve(n);
    if (label.i == 1) {
      const AlgebraVector axis = random_unit_vector(rng);
      for (std::size_t k = 0; k < n; ++k)
        imgs.push_back(su2_exp(angle(rng) * axis));
    } else {
      for (std::size_t k = 0; k < n; ++k)
        imgs.push_back(haar_random(rng));
    }
    Representation rep(pres, std::move(imgs));
    try {
      const StratumLabel got = classify_stratum(rep, tol);
      if (got.i == label.i && !got.boundary_ambiguous)
        return rep;
    } catch (const DomainError &) {
      // conflicting verdicts only happen next to a boundary; draw again
    }
  }
  throw DomainError("sample_stratum: rejection budget exceeded");
}

Representation embed_in_surface(const Representation &free_rep) {
  if (free_rep.presentation().kind() != PresentationKind::free)
    throw DomainError("embed_in_surface: needs a free-group representation");
  const int g = free_rep.presentation().genus();
  std::vector<SU2Element> imgs = free_rep.images();
  imgs.resize(2 * static_cast<std::size_t>(g));
  return Representation(std::make_shared<const Presentation>(Presentation::surface_group(g)),
                        std::move(imgs));
}

Representation random_surface_representation(int g, std::uint64_t seed, const Tolerances &tol) {
  if (g < 2)
    throw DomainError("random_surface_representation: irreducible reps need genus >= 2");
  auto pres = std::make_shared<const Presentation>(Presentation::surface_group(g));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const auto G = static_cast<std::size_t>(g);

  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    std::vector<SU2Element> a(G), b(G);
    SU2Element partial;
    for (std::size_t i = 0; i + 1 < G; ++i) {
      a[i] = haar_random(rng);
      b[i] = haar_random(rng);
      partial = partial * a[i] * b[i] * a[i].inverse() * b[i].inverse();
    }
    // need [X, Y] = C, i.e. X Y X^{-1} = C Y: Y on the great sphere Re(CY) = Re(Y)
    const SU2Element C = partial.inverse();
    Eigen::Vector4d normal4(C.w() - 1.0, -C.x(), -C.y(), -C.z());
    Eigen::Vector4d y(normal(rng), normal(rng), normal(rng), normal(rng));
    if (normal4.norm() > 1e-12) {
      normal4.normalize();
      y -= y.dot(normal4) * normal4;
    }
    if (y.norm() < 1e-6)
      continue;
    const SU2Element Y(y[0], y[1], y[2], y[3]);
    const SU2Element CY = C * Y;
    if (Y.vec().norm() < 1e-6)
      continue;
    const SU2Element X = aligning_rotation(Y.vec(), CY.vec()) * su2_exp(angle(rng) * Y.vec().normalized());
    a[G - 1] = X;
    b[G - 1] = Y;
    std::vector<SU2Element> imgs = a;
    imgs.insert(imgs.end(), b.begin(), b.end());
    Representation rep(pres, std::move(imgs));
    if (!(rep.relator_residual() < tol.relator))
      continue;
    const CohomologySummary h = cohomology(rep, tol);
    if (h.h0 == 0 && h.smallest_nonzero_d0 > kIllConditionedFactor * tol.rank)
      return rep;
  }
  throw DomainError("random_surface_representation: rejection budget exceeded");
}


StrataCensus strata_census(int g, int samples, std::uint64_t seed, int threads,
                           const Tolerances &tol) {
  if (g < 1 || samples < 1)
    throw DomainError("strata_census: need genus >= 1 and samples >= 1");
  StrataCensus c;
  c.genus = g;
  c.samples = samples;
  c.seed = seed;
  const auto pres = shared_free(g);
  const auto n = static_cast<std::size_t>(samples);

  struct Draw {
    int i = 0;
    bool ambiguous = false;
    int h0 = 0, h1 = 0;
  };
  std::vector<Draw> draws(n);
  parallel_for(n, threads, [&](std::size_t s) {
    std::mt19937_64 rng(sub_seed(seed, s));
    std::vector<SU2Element> imgs;
    for (int k = 0; k < g; ++k)
      imgs.push_back(haar_random(rng));
    const Representation rep(pres, std::move(imgs));
    const CohomologySummary h = cohomology(rep, tol);
    const StratumLabel label = classify_stratum(rep, tol);
    draws[s] = {label.i, label.boundary_ambiguous, h.h0, h.h1};
  });
  for (const auto &d : draws) {
    (d.i == 0 ? c.count_stratum0 : d.i == 1 ? c.count_stratum1 : c.count_stratum3)++;
    c.boundary_ambiguous += d.ambiguous;
    c.constant_dimension_violations += (d.h1 - d.h0 != 3 * g - 3);
    c.euler_violations += (3 - d.h0 + d.h1 != 3 * g);
  }

  const int strata[3] = {0, 1, 3};
  for (int slot = 0; slot < 3; ++slot) {
    if (strata[slot] == 3 && g < 2)
      continue; // no irreducible tuples of a single element
    std::vector<int> bad(n, 0);
    parallel_for(n, threads, [&](std::size_t s) {
      StratumLabel want;
      want.i = strata[slot];
      const auto rep = sample_stratum(g, want, sub_seed(sub_seed(seed, 1000003 + slot), s), tol);
      try {
        stratum_tangent_dim(rep, tol);
      } catch (const DomainError &) {
        bad[s] = 1;
      }
    });
    c.tangent_checked[slot] = samples;
    for (int b : bad)
      c.tangent_violations[slot] += b;
  }
  return c;
}

} // namespace flatstrata
