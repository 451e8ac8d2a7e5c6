#include "oracles.hpp"

#include "flatstrata/errors.hpp"
#include "flatstrata/presentation.hpp"

#include <doctest.h>

using namespace flatstrata;

namespace {

std::vector<SU2Element> random_images(int n, std::mt19937_64 &rng) {
  std::vector<SU2Element> out;
  for (int k = 0; k < n; ++k)
    out.push_back(oracle::haar(rng));
  return out;
}

Word random_word(int n, int length, std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> pick(1, n);
  std::bernoulli_distribution sign(0.5);
  std::vector<int> letters;
  for (int k = 0; k < length; ++k)
    letters.push_back(sign(rng) ? pick(rng) : -pick(rng));
  return Word(letters);
}

} // namespace

TEST_CASE("free reduction") {
  CHECK(Word({1, -1}).empty());
  CHECK(Word({1, 2, -2, -1, 3}).letters() == std::vector<int>{3});
  CHECK(Word({1, 2}) * Word({-2, 3}) == Word({1, 3}));
  CHECK(Word({1, 2, -1}).inverse() == Word({1, -2, -1}));
  CHECK(Word({1, 2}).power(2) == Word({1, 2, 1, 2}));
  CHECK(Word({1, 2}).power(-1) == Word({-2, -1}));
  CHECK(Word({1}).power(0).empty());
  CHECK_THROWS_AS(Word({0}), InputError);
  std::mt19937_64 rng(1);
  for (int s = 0; s < 200; ++s) {
    const Word w = random_word(3, 12, rng);
    CHECK(Word(w.letters()) == w); // reduction is idempotent
    for (std::size_t k = 1; k < w.size(); ++k)
      CHECK(w.letters()[k] != -w.letters()[k - 1]);
  }
}

TEST_CASE("evaluation is a homomorphism and respects reduction") {
  std::mt19937_64 rng(2);
  const auto images = random_images(3, rng);
  CHECK(evaluate_word(images, Word()).distance(SU2Element::identity()) == 0.0);
  for (int s = 0; s < 200; ++s) {
    const Word u = random_word(3, 7, rng), v = random_word(3, 5, rng);
    const SU2Element uv = evaluate_word(images, u * v);
    CHECK(uv.distance(evaluate_word(images, u) * evaluate_word(images, v)) < 1e-13);
    const Eigen::Vector4d ref = oracle::from_matrix(oracle::evaluate(images, u * v));
    CHECK((Eigen::Vector4d(uv.w(), uv.x(), uv.y(), uv.z()) - ref).norm() < 1e-13);
    // inserting a cancelling pair changes nothing
    std::vector<int> raw = u.letters();
    raw.insert(raw.begin() + static_cast<long>(raw.size() / 2), {2, -2});
    CHECK(evaluate_word(images, Word(raw)).distance(evaluate_word(images, u)) < 1e-13);
  }
  const SU2Element i(0, 1, 0, 0), j(0, 0, 1, 0);
  CHECK(evaluate_word(std::vector<SU2Element>{i, j}, Word({1, 2})).distance(SU2Element(0, 0, 0, 1)) < 1e-15);
  CHECK_THROWS_AS(evaluate_word(std::vector<SU2Element>{i}, Word({2})), DomainError);
}

TEST_CASE("Fox derivative examples") {
  const auto d = fox_derivative(Word({1}), 0);
  REQUIRE(d.terms.size() == 1);
  CHECK(d.terms[0].sign == 1);
  CHECK(d.terms[0].prefix.empty());

  // d(a b a^-1 b^-1)/da = 1 - a b a^-1
  const auto c = fox_derivative(Word({1, 2, -1, -2}), 0);
  REQUIRE(c.terms.size() == 2);
  CHECK(c.terms[0].sign == 1);
  CHECK(c.terms[0].prefix.empty());
  CHECK(c.terms[1].sign == -1);
  CHECK(c.terms[1].prefix == Word({1, 2, -1}));

  CHECK(fox_derivative(Word({2}), 0).terms.empty());
  // one term per occurrence
  CHECK(fox_derivative(Word({1, 2, 1, 1, -2}), 0).terms.size() == 3);
}

TEST_CASE("Fox product rule") {
  std::mt19937_64 rng(3);
  const auto images = random_images(3, rng);
  const Eigen::MatrixXd full = Eigen::Matrix3d::Identity();
  for (int s = 0; s < 100; ++s) {
    const Word u = random_word(3, 6, rng), v = random_word(3, 6, rng);
    const std::vector<Word> uv{u * v}, uu{u}, vv{v};
    const Eigen::MatrixXd lhs = fox_matrix(uv, images, full);
    Eigen::MatrixXd rhs = fox_matrix(uu, images, full);
    rhs += oracle::adjoint(evaluate_word(images, u)) * fox_matrix(vv, images, full);
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("Fox Jacobian against finite differences with quadratic decay") {
  std::mt19937_64 rng(4);
  for (int s = 0; s < 50; ++s) {
    const auto images = random_images(3, rng);
    const Word w = random_word(3, 10, rng);
    Eigen::VectorXd u(9);
    for (int k = 0; k < 3; ++k)
      u.segment<3>(3 * k) = oracle::gaussian3(rng);
    const std::vector<Word> ws{w};
    const Eigen::Vector3d linear = fox_matrix(ws, images, Eigen::Matrix3d::Identity()) * u;
    const double steps[2] = {1e-3, 1e-4};
    double err[2];
    for (int k = 0; k < 2; ++k) {
      auto moved = images;
      for (int g = 0; g < 3; ++g)
        moved[g] = oracle::exp_element(steps[k] * u.segment<3>(3 * g)) * images[g];
      const oracle::Mat2 change = oracle::evaluate(moved, w) * oracle::evaluate(images, w).adjoint();
      err[k] = (oracle::log_near_identity(change) - steps[k] * linear).norm();
    }
    if (linear.norm() > 1e-3) {
      CHECK(err[0] < 1e-2 * u.squaredNorm() * steps[0]);
      CHECK(err[0] / err[1] > 50.0);
      CHECK(err[0] / err[1] < 200.0);
    }
  }
}

TEST_CASE("presentations and their invariants") {
  const auto f = Presentation::free_group(2);
  CHECK(f.relator_count() == 0);
  CHECK(f.generator_names() == std::vector<std::string>{"x1", "x2"});
  const auto s = Presentation::surface_group(2);
  CHECK(s.relators()[0] == surface_relator(2));
  CHECK(s.relators()[0] == Word({1, 3, -1, -3, 2, 4, -2, -4}));
  CHECK(s.genus() == 2);
  const auto c = Presentation::cyclic_group(5);
  CHECK(c.relators()[0] == Word({1}).power(5));
  const auto cs = Presentation::circle_times_surface(2);
  CHECK(cs.generator_count() == 5);
  CHECK(cs.relator_count() == 5);
  CHECK(cs.relators()[0] == surface_relator(2, 1));
  CHECK(cs.relators()[1] == commutator(Word({1}), Word({2})));

  CHECK_THROWS_AS(Presentation({"a", "b"}, {Word({1, 2})}, PresentationKind::surface, 1), InputError);
  CHECK_THROWS_AS(Presentation({"a", "a"}, {}, PresentationKind::custom), InputError);
  CHECK_THROWS_AS(Presentation({"a"}, {Word({2})}, PresentationKind::custom), InputError);
  CHECK_THROWS_AS(Presentation({"a"}, {Word()}, PresentationKind::custom), InputError);
  // surface genus 1 with user-chosen names
  CHECK_NOTHROW(Presentation({"a", "b"}, {Word({1, 2, -1, -2})}, PresentationKind::surface, 1));
}

TEST_CASE("word text round trip") {
  const Presentation p({"a", "b"}, {}, PresentationKind::custom);
  CHECK(p.parse_word("a b A B") == Word({1, 2, -1, -2}));
  CHECK(p.parse_word("1").empty());
  CHECK(p.parse_word("").empty());
  CHECK(p.format_word(Word({1, -2})) == "a B");
  CHECK_THROWS_AS(p.parse_word("c"), InputError);
  const auto s = Presentation::surface_group(2);
  CHECK(s.parse_word(s.format_word(s.relators()[0])) == s.relators()[0]);
}

TEST_CASE("Fox Jacobian at special representations") {
  const auto surf = std::make_shared<const Presentation>(Presentation::surface_group(2));
  CHECK(fox_jacobian_at(Representation::trivial(surf)).norm() == 0.0);

  const auto free3 = std::make_shared<const Presentation>(Presentation::free_group(3));
  const Eigen::MatrixXd jf = fox_jacobian_at(Representation::trivial(free3));
  CHECK(jf.rows() == 0);
  CHECK(jf.cols() == 9);

  // a^p: block is sum_m Ad(a^m)
  const int p = 5;
  const auto cyc = std::make_shared<const Presentation>(Presentation::cyclic_group(p));
  const SU2Element a = su2_exp({2 * std::numbers::pi / p, 0, 0});
  const Representation rep(cyc, {a});
  Eigen::Matrix3d expect = Eigen::Matrix3d::Zero();
  SU2Element am;
  for (int m = 0; m < p; ++m, am = am * a)
    expect += oracle::adjoint(am);
  CHECK((fox_jacobian_at(rep) - expect).norm() < 1e-12);
  CHECK(rep.relator_residual() < 1e-14);
}

TEST_CASE("Fox Jacobian agrees with the numerical Jacobian of the relators") {
  std::mt19937_64 rng(5);
  const auto p = Presentation::circle_times_surface(2);
  for (int s = 0; s < 10; ++s) {
    const auto images = random_images(p.generator_count(), rng);
    const auto fd = oracle::relator_jacobian_fd(p, images);
    // off the relator variety too: the first-order change of r(x) r(x)^-1
    const Eigen::MatrixXd j = fox_matrix(p.relators(), images, Eigen::Matrix3d::Identity());
    CHECK((j - fd).norm() < 1e-7);
  }
}

TEST_CASE("representations, residuals and polishing") {
  const auto surf = std::make_shared<const Presentation>(Presentation::surface_group(1));
  const SU2Element i(0, 1, 0, 0), j(0, 0, 1, 0);
  const Representation bad(surf, {i, j});
  CHECK(bad.relator_residual() > 1.0);
  CHECK_THROWS_AS(bad.require_relators(1e-9), DomainError);
  CHECK_THROWS_AS(Representation(surf, {i}), InputError);

  const SU2Element a = su2_exp({0.3, 0, 0}), b = su2_exp({0, 0, 0}) * su2_exp({1.1, 0, 0});
  const Representation good(surf, {a, b});
  CHECK(good.relator_residual() < 1e-15);

  // perturb a commuting pair off the variety and project back
  const Representation near(surf, {su2_exp({0, 1e-5, 0}) * a, b});
  CHECK(near.relator_residual() > 1e-7);
  const Representation fixed = polish_representation(near, 1e-12);
  CHECK(fixed.relator_residual() < 1e-12);
  CHECK(fixed.image(0).distance(near.image(0)) < 1e-4);

  std::mt19937_64 rng(6);
  const SU2Element h = oracle::haar(rng);
  const Representation conj = good.conjugated(h);
  CHECK(conj.image(0).distance(h * a * h.inverse()) < 1e-15);
  CHECK(conj.relator_residual() < 1e-14);
}
