#include "flatstrata/symplectic.hpp"

#include "flatstrata/cohomology.hpp"
#include "flatstrata/errors.hpp"
#include "flatstrata/linalg.hpp"
#include "flatstrata/stratification.hpp"

#include <cmath>
#include <random>

namespace flatstrata {

namespace {

void require_surface(const Representation &rep, const Tolerances &tol) {
  if (rep.presentation().kind() != PresentationKind::surface)
    throw DomainError("goldman_form: needs a surface-group presentation");
  rep.require_relators(tol.relator);
}

Eigen::VectorXd random_vector(std::mt19937_64 &rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v[i] = normal(rng);
  return v;
}

} // namespace

Eigen::MatrixXd goldman_matrix(const Representation &rep, const Eigen::MatrixXd &P) {
  require_surface(rep, Tolerances{});
  const auto d = P.cols();
  const auto n = static_cast<Eigen::Index>(rep.presentation().generator_count());
  const Eigen::MatrixXd Id = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(d * n, d * n);
  // F maps a cochain to its value on the current prefix p_{k-1}
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(d, d * n);
  SU2Element prefix;
  for (int l : rep.presentation().relators().front().letters()) {
    const auto g = static_cast<Eigen::Index>(std::abs(l) - 1);
    const Eigen::MatrixXd M = P.transpose() * su2_ad(prefix) * P;
    // E maps a cochain to its value on the letter y_k
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(d, d * n);
    if (l > 0) {
      E.block(0, g * d, d, d) = Id;
      prefix = prefix * rep.image(static_cast<int>(g));
    } else {
      const SU2Element inv = rep.image(static_cast<int>(g)).inverse();
      E.block(0, g * d, d, d) = -(P.transpose() * su2_ad(inv) * P);
      prefix = prefix * inv;
      // -[x | x^{-1}] contributes +<u(x), v(x)>
      G.block(g * d, g * d, d, d) += Id;
    }
    const Eigen::MatrixXd ME = M * E;
    G += F.transpose() * ME;
    F += ME;
  }
  return G;
}

Eigen::MatrixXd goldman_matrix(const Representation &rep) {
  return goldman_matrix(rep, Eigen::Matrix3d::Identity());
}

double goldman_form(const Representation &rep, const Cocycle &u, const Cocycle &v,
                    const Tolerances &tol) {
  require_surface(rep, tol);
  const Eigen::MatrixXd G = goldman_matrix(rep);
  if (u.values.size() != G.rows() || v.values.size() != G.rows())
    throw DomainError("goldman_form: cochain size does not match the presentation");
  return u.values.dot(G * v.values);
}

AlgebraVector cocycle_value(const Representation &rep, const Word &w, const Cocycle &u) {
  const Word words[] = {w};
  return fox_matrix(words, rep.images(), Eigen::Matrix3d::Identity()) * u.values;
}

double trace_derivative(const Representation &rep, const Word &w, const Cocycle &u) {
  const AlgebraVector U = cocycle_value(rep, w, u);
  return 2.0 * left_multiply_imaginary(U, evaluate_word(rep, w))[0];
}

std::vector<Cocycle> fibre_tangent_basis(const Representation &rep, std::span<const Word> curves,
                                         const Tolerances &tol) {
  const CohomologySummary h = cohomology(rep, tol);
  const Eigen::MatrixXd &H = h.basis_h1;
  // gradient of trace(w) in u is F_w^T (-2 hol_vec)
  Eigen::MatrixXd constraints(static_cast<Eigen::Index>(curves.size()), H.cols());
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const Word words[] = {curves[c]};
    const Eigen::MatrixXd F = fox_matrix(words, rep.images(), Eigen::Matrix3d::Identity());
    const AlgebraVector hol = evaluate_word(rep, curves[c]).vec();
    constraints.row(static_cast<Eigen::Index>(c)) = (-2.0 * hol.transpose() * F) * H;
  }
  const Eigen::MatrixXd N = null_space(constraints, tol.rank);
  const Eigen::MatrixXd B = H * N;
  std::vector<Cocycle> out;
  for (Eigen::Index k = 0; k < B.cols(); ++k)
    out.push_back({B.col(k)});
  return out;
}

SymplecticAudit symplectic_audit(int g, int samples, std::uint64_t seed, const Tolerances &tol) {
  SymplecticAudit audit;
  audit.genus = g;
  audit.samples = samples;
  audit.rank_expected = 6 * g - 6;
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t base = sub_seed(seed, static_cast<std::uint64_t>(s));
    std::mt19937_64 rng(sub_seed(base, 1));
    const Representation rep = random_surface_representation(g, base, tol);
    const CohomologySummary h = cohomology(rep, tol);
    const Eigen::MatrixXd G = goldman_matrix(rep);
    const Eigen::MatrixXd d0 = build_d0(rep);
    const Eigen::MatrixXd &H = h.basis_h1;

    const Eigen::VectorXd u = H * random_vector(rng, H.cols());
    const Eigen::VectorXd v = H * random_vector(rng, H.cols());
    const Eigen::VectorXd shift = d0 * random_vector(rng, 3);
    const double uv = u.dot(G * v);
    audit.max_antisymmetry = std::max(audit.max_antisymmetry, std::abs(uv + v.dot(G * u)));
    audit.max_coboundary = std::max(audit.max_coboundary, std::abs(shift.dot(G * v)));
    audit.max_gauge_shift =
        std::max(audit.max_gauge_shift, std::abs((u + shift).dot(G * v) - uv));
    if (numeric_rank(H.transpose() * G * H, tol.rank).rank == audit.rank_expected)
      ++audit.rank_matches;

    // tangent vectors to the handlebody fibre: vary A-images, keep B = 1
    StratumLabel top;
    top.i = 3;
    top.stabilizer_dim = 0;
    const Representation fibre_rep = embed_in_surface(sample_stratum(g, top, sub_seed(base, 2), tol));
    const Eigen::MatrixXd Gf = goldman_matrix(fibre_rep);
    Eigen::VectorXd a = Eigen::VectorXd::Zero(6 * g), b = Eigen::VectorXd::Zero(6 * g);
    a.head(3 * g) = random_vector(rng, 3 * g);
    b.head(3 * g) = random_vector(rng, 3 * g);
    audit.max_isotropy = std::max(audit.max_isotropy, std::abs(a.dot(Gf * b)));
  }
  return audit;
}

} // namespace flatstrata
