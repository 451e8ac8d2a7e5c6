#include "oracles.hpp"

#include "flatstrata/cohomology.hpp"
#include "flatstrata/errors.hpp"
#include "flatstrata/linalg.hpp"
#include "flatstrata/stratification.hpp"
#include "flatstrata/symplectic.hpp"

#include <doctest.h>

using namespace flatstrata;

namespace {

Cocycle cocycle_of(const Eigen::VectorXd &v) { return Cocycle{v}; }

Eigen::VectorXd random_vector(int n, std::mt19937_64 &rng) { return oracle::gaussian(n, 1, rng).col(0); }

// trace(w) after x_g -> exp(t u_g) x_g, from 2x2 matrices.
double moved_trace(const Representation &rep, const Word &w, const Eigen::VectorXd &u, double t) {
  auto im = rep.images();
  for (std::size_t g = 0; g < im.size(); ++g)
    im[g] = oracle::exp_element(t * u.segment<3>(3 * static_cast<long>(g))) * im[g];
  return oracle::evaluate(im, w).trace().real();
}

} // namespace

TEST_CASE("form examples at random irreducible points") {
  std::mt19937_64 rng(1);
  for (int g = 2; g <= 3; ++g) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const Representation rep = random_surface_representation(g, seed);
      const auto h = cohomology(rep);
      const Eigen::MatrixXd &H = h.basis_h1;
      const Cocycle u = cocycle_of(H * random_vector(static_cast<int>(H.cols()), rng));
      const Cocycle v = cocycle_of(H * random_vector(static_cast<int>(H.cols()), rng));
      CHECK(std::abs(goldman_form(rep, u, u)) < 1e-10);
      CHECK(std::abs(goldman_form(rep, u, v) + goldman_form(rep, v, u)) < 1e-9);
      const Cocycle xi = cocycle_of(build_d0(rep) * oracle::gaussian3(rng));
      CHECK(std::abs(goldman_form(rep, xi, v)) < 1e-8);
      const Cocycle shifted = cocycle_of(u.values + xi.values);
      CHECK(std::abs(goldman_form(rep, shifted, v) - goldman_form(rep, u, v)) < 1e-8);

      const Eigen::MatrixXd gram = H.transpose() * goldman_matrix(rep) * H;
      CHECK(numeric_rank(gram, 1e-8).rank == 6 * g - 6);
      CHECK(oracle::lu_rank(gram, 1e-8) == 6 * g - 6);
    }
  }
}

TEST_CASE("form restricted to Z^1 is antisymmetric on cocycles only") {
  const Representation rep = random_surface_representation(2, 4);
  const Eigen::MatrixXd G = goldman_matrix(rep);
  const Eigen::MatrixXd z = null_space(fox_jacobian_at(rep), 1e-8);
  CHECK(z.cols() == 9);
  const Eigen::MatrixXd gz = z.transpose() * G * z;
  CHECK((gz + gz.transpose()).norm() < 1e-9);
}

TEST_CASE("conjugation equivariance") {
  std::mt19937_64 rng(2);
  const Representation rep = random_surface_representation(2, 8);
  const SU2Element c = oracle::haar(rng);
  const Representation conj = rep.conjugated(c);
  const auto H = cohomology(rep).basis_h1;
  const Eigen::Matrix3d ad = su2_ad(c);
  for (int s = 0; s < 10; ++s) {
    Eigen::VectorXd u = H * random_vector(static_cast<int>(H.cols()), rng);
    Eigen::VectorXd v = H * random_vector(static_cast<int>(H.cols()), rng);
    Eigen::VectorXd ru = u, rv = v;
    for (int g = 0; g < 4; ++g) {
      ru.segment<3>(3 * g) = ad * u.segment<3>(3 * g);
      rv.segment<3>(3 * g) = ad * v.segment<3>(3 * g);
    }
    CHECK(std::abs(goldman_form(rep, {u}, {v}) - goldman_form(conj, {ru}, {rv})) < 1e-9);
  }
}

TEST_CASE("non-surface presentations are rejected") {
  const auto p = std::make_shared<const Presentation>(Presentation::free_group(2));
  CHECK_THROWS_AS(goldman_matrix(Representation::trivial(p)), DomainError);
}

TEST_CASE("cocycle rule") {
  std::mt19937_64 rng(3);
  const Representation rep = random_surface_representation(2, 2);
  const Cocycle u{random_vector(12, rng)};
  const Word a({1, 3, -2}), b({4, 4, -1});
  const AlgebraVector lhs = cocycle_value(rep, a * b, u);
  const AlgebraVector rhs = cocycle_value(rep, a, u) + su2_ad(evaluate_word(rep, a)) * cocycle_value(rep, b, u);
  CHECK((lhs - rhs).norm() < 1e-12);
  CHECK(cocycle_value(rep, Word(), u).norm() == 0.0);
  const AlgebraVector inv = cocycle_value(rep, Word({-2}), u);
  CHECK((inv + su2_ad(rep.image(1).inverse()) * u.values.segment<3>(3)).norm() < 1e-14);
}

TEST_CASE("trace derivative") {
  std::mt19937_64 rng(4);
  const Representation rep = random_surface_representation(3, 6);
  const auto H = cohomology(rep).basis_h1;
  const Word w({1, 2, -4, 5, 5, -6});
  CHECK(trace_derivative(rep, w, Cocycle{Eigen::VectorXd::Zero(18)}) == 0.0);
  for (int s = 0; s < 50; ++s) {
    const Eigen::VectorXd u = H * random_vector(static_cast<int>(H.cols()), rng);
    const double h = 1e-5;
    const double fd = (moved_trace(rep, w, u, h) - moved_trace(rep, w, u, -h)) / (2 * h);
    CHECK(std::abs(fd - trace_derivative(rep, w, Cocycle{u})) < 1e-7);
  }
  // a curve with trivial holonomy sits at the maximum of the trace
  const auto p = std::make_shared<const Presentation>(Presentation::free_group(2));
  const Representation f(p, {oracle::haar(rng), oracle::haar(rng)});
  const Word trivial_hol = commutator(Word({1}), Word({1, 2})) * commutator(Word({1}), Word({1, 2})).inverse();
  CHECK(std::abs(trace_derivative(f, Word({1, -1}), Cocycle{random_vector(6, rng)})) < 1e-15);
  CHECK(std::abs(trace_derivative(f, trivial_hol, Cocycle{random_vector(6, rng)})) < 1e-12);
  const SU2Element one;
  const Representation fixed(p, {one, oracle::haar(rng)});
  CHECK(std::abs(trace_derivative(fixed, Word({1}), Cocycle{random_vector(6, rng)})) < 1e-14);
}

TEST_CASE("fibre tangent spaces") {
  std::mt19937_64 rng(5);
  // zero curves: all of H^1
  const Representation rep = random_surface_representation(2, 3);
  CHECK(fibre_tangent_basis(rep, {}).size() == 6);

  // generic interior fibre: 3g - 3 curves cut out a Lagrangian
  for (int g = 2; g <= 3; ++g) {
    const Representation r = random_surface_representation(g, 11 + g);
    std::vector<Word> curves;
    for (int i = 0; i < g; ++i)
      curves.push_back(Word::generator(g + i));
    for (int i = 0; i + 3 < 3 * g; ++i)
      if (static_cast<int>(curves.size()) < 3 * g - 3)
        curves.push_back(commutator(Word::generator(i), Word::generator(g + i)));
    REQUIRE(static_cast<int>(curves.size()) == 3 * g - 3);
    const auto basis = fibre_tangent_basis(r, curves);
    CHECK(static_cast<int>(basis.size()) == 3 * g - 3);
    for (const auto &u : basis)
      for (const auto &v : basis)
        CHECK(std::abs(goldman_form(r, u, v)) < 1e-7);
  }

  // handlebody fibre: every curve in the B-normal closure has trace 2, a
  // critical value, so the linear constraints are empty and the basis is
  // all of H^1; the tangent space of L_H (A-variations) lies inside it and
  // is isotropic.
  StratumLabel top;
  top.i = 3;
  const Representation l = embed_in_surface(sample_stratum(2, top, 4));
  const std::vector<Word> bcurves{Word({3}), Word({4}), Word({1, 3, -1})};
  const auto basis = fibre_tangent_basis(l, bcurves);
  CHECK(basis.size() == 6);
  Eigen::MatrixXd span(12, basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    span.col(static_cast<long>(k)) = basis[k].values;
  const Eigen::MatrixXd d0 = build_d0(l);
  std::vector<Eigen::VectorXd> tangent;
  for (int s = 0; s < 10; ++s) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(12);
    a.head(6) = random_vector(6, rng);
    const Eigen::VectorXd harmonic = a - d0 * d0.completeOrthogonalDecomposition().solve(a);
    const Eigen::VectorXd resid = harmonic - span * (span.transpose() * harmonic);
    CHECK(resid.norm() < 1e-8 * std::max(1.0, a.norm()));
    tangent.push_back(harmonic);
  }
  for (const auto &u : tangent)
    for (const auto &v : tangent)
      CHECK(std::abs(goldman_form(l, {u}, {v})) < 1e-7);
}

TEST_CASE("audit") {
  const SymplecticAudit a = symplectic_audit(2, 20, 3);
  CHECK(a.rank_expected == 6);
  CHECK(a.rank_matches == 20);
  CHECK(a.max_antisymmetry < 1e-8);
  CHECK(a.max_coboundary < 1e-8);
  CHECK(a.max_gauge_shift < 1e-8);
  CHECK(a.max_isotropy < 1e-7);
}
