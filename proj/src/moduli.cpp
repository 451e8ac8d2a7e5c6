#include "flatstrata/moduli.hpp"

#include "flatstrata/errors.hpp"
#include "flatstrata/linalg.hpp"
#include "flatstrata/parallel.hpp"
#include "flatstrata/symplectic.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

namespace flatstrata {

namespace {

PresentationPtr share(Presentation p) { return std::make_shared<const Presentation>(std::move(p)); }

Word gen(int i) { return Word::generator(i); }

Representation induced(const PresentationPtr &target, const std::vector<Word> &words,
                       const Representation &source) {
  std::vector<SU2Element> imgs;
  imgs.reserve(words.size());
  for (const auto &w : words)
    imgs.push_back(evaluate_word(source, w));
  return Representation(target, std::move(imgs));
}

} // namespace

void validate_heegaard(const HeegaardData &h) {
  if (!h.manifold)
    throw InputError("HeegaardData: missing manifold presentation");
  if (h.genus < 1)
    throw InputError("HeegaardData: genus must be >= 1");
  const Word rel = surface_relator(h.genus);
  for (const Handlebody *hb : {&h.handle1, &h.handle2}) {
    if (static_cast<int>(hb->surface_images.size()) != 2 * h.genus)
      throw InputError("HeegaardData: need one handlebody word per surface generator");
    if (static_cast<int>(hb->manifold_images.size()) != h.genus)
      throw InputError("HeegaardData: need one manifold word per handlebody generator");
    for (const auto &w : hb->surface_images)
      for (int l : w.letters())
        if (std::abs(l) > h.genus)
          throw InputError("HeegaardData: handlebody word uses an unknown generator");
    for (const auto &w : hb->manifold_images)
      for (int l : w.letters())
        if (std::abs(l) > h.manifold->generator_count())
          throw InputError("HeegaardData: manifold word uses an unknown generator");
    // the surface relator must die in the free group of the handlebody
    Word image;
    for (int l : rel.letters()) {
      const Word &w = hb->surface_images[static_cast<std::size_t>(std::abs(l) - 1)];
      image = image * (l > 0 ? w : w.inverse());
    }
    if (!image.empty())
      throw InputError("HeegaardData: surface relator is not trivial in a handlebody");
  }
}

HeegaardData heegaard_s3() {
  HeegaardData h;
  h.genus = 1;
  h.manifold = share(Presentation({}, {}));
  h.handle1 = {{gen(0), Word()}, {Word()}};
  h.handle2 = {{Word(), gen(0)}, {Word()}};
  return h;
}

HeegaardData heegaard_s1xs2() {
  HeegaardData h;
  h.genus = 1;
  h.manifold = share(Presentation({"c"}, {}));
  h.handle1 = {{gen(0), Word()}, {gen(0)}};
  h.handle2 = {{gen(0), Word()}, {gen(0)}};
  return h;
}

HeegaardData heegaard_lens(int p, int q) {
  if (p < 1)
    throw InputError("heegaard_lens: p must be >= 1");
  if (std::gcd(p, q) != 1)
    throw InputError("heegaard_lens: p and q must be coprime");
  HeegaardData h;
  h.genus = 1;
  h.manifold = share(Presentation::cyclic_group(p));
  const Word y = gen(0);
  // Sigma -> H_2 kills a^p b^q: a -> y^q, b -> y^{-p}
  h.handle1 = {{gen(0), Word()}, {gen(0).power(q)}};
  h.handle2 = {{y.power(q), y.power(-p)}, {gen(0)}};
  return h;
}

PresentationPtr three_torus_presentation() {
  const Word a = gen(0), b = gen(1), c = gen(2);
  return share(Presentation({"a", "b", "c"}, {commutator(a, b), commutator(a, c), commutator(b, c)}));
}

std::vector<Eigen::MatrixXd> three_torus_cochain_complex(const Representation &rep,
                                                          const Eigen::MatrixXd &P) {
  const TwistedComplex c = build_complex(rep, P);
  const auto d = P.cols();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  auto act = [&](int g) -> Eigen::MatrixXd { return P.transpose() * su2_ad(rep.image(g)) * P; };
  // boundary of the 3-cell: (1 - c) e_ab + (b - 1) e_ac + (1 - a) e_bc
  Eigen::MatrixXd d2(d, 3 * d);
  d2 << I - act(2), act(1) - I, I - act(0);
  return {c.d0, c.d1, d2};
}

MayerVietorisData mayer_vietoris_data(const Representation &rep, const HeegaardData &heegaard,
                                      CoefficientPart part, const Tolerances &tol) {
  validate_heegaard(heegaard);
  if (&rep.presentation() != heegaard.manifold.get() &&
      rep.presentation().generator_count() != heegaard.manifold->generator_count())
    throw DomainError("mayer_vietoris_data: representation does not match the manifold group");
  rep.require_relators(tol.relator);
  const Eigen::MatrixXd P = coefficient_basis(rep, part, tol);
  const int g = heegaard.genus;
  const auto free_g = share(Presentation::free_group(g));
  const auto surface = share(Presentation::surface_group(g));

  const Representation r1 = induced(free_g, heegaard.handle1.manifold_images, rep);
  const Representation r2 = induced(free_g, heegaard.handle2.manifold_images, rep);
  const Representation s1 = induced(surface, heegaard.handle1.surface_images, r1);
  const Representation s2 = induced(surface, heegaard.handle2.surface_images, r2);
  for (int i = 0; i < 2 * g; ++i)
    if (s1.image(i).distance(s2.image(i)) > tol.identity)
      throw DomainError("mayer_vietoris_data: the two handlebodies induce different surface "
                        "representations");

  const CohomologySummary hN = cohomology_with(rep, P, tol);
  const CohomologySummary h1 = cohomology_with(r1, P, tol);
  const CohomologySummary h2 = cohomology_with(r2, P, tol);
  const CohomologySummary hS = cohomology_with(s1, P, tol);

  const Eigen::MatrixXd J1 = fox_matrix(heegaard.handle1.manifold_images, rep.images(), P);
  const Eigen::MatrixXd J2 = fox_matrix(heegaard.handle2.manifold_images, rep.images(), P);
  const Eigen::MatrixXd K1 = fox_matrix(heegaard.handle1.surface_images, r1.images(), P);
  const Eigen::MatrixXd K2 = fox_matrix(heegaard.handle2.surface_images, r2.images(), P);

  MayerVietorisData d;
  d.manifold_to_handle1 = h1.basis_h1.transpose() * J1 * hN.basis_h1;
  d.manifold_to_handle2 = h2.basis_h1.transpose() * J2 * hN.basis_h1;
  d.handle1_to_surface = hS.basis_h1.transpose() * K1 * h1.basis_h1;
  d.handle2_to_surface = hS.basis_h1.transpose() * K2 * h2.basis_h1;
  d.manifold_to_surface = hS.basis_h1.transpose() * K1 * J1 * hN.basis_h1;
  d.surface_gram = hS.basis_h1.transpose() * goldman_matrix(s1, P) * hS.basis_h1;
  return d;
}

TorsionValue mv_torsion_at(const Representation &rep, const HeegaardData &heegaard,
                           CoefficientPart part, const Tolerances &tol) {
  return mv_torsion(mayer_vietoris_data(rep, heegaard, part, tol), tol);
}

ManifoldExample parse_example(const std::string &name) {
  static const std::map<std::string, ManifoldExample> names{
      {"S3", ManifoldExample::s3},     {"s3", ManifoldExample::s3},
      {"S1xS2", ManifoldExample::s1xs2}, {"s1xs2", ManifoldExample::s1xs2},
      {"lens", ManifoldExample::lens}, {"T3", ManifoldExample::t3},
      {"t3", ManifoldExample::t3},     {"custom", ManifoldExample::custom}};
  const auto it = names.find(name);
  if (it == names.end())
    throw InputError("unknown example '" + name + "' (expected S3, S1xS2, lens, T3 or custom)");
  return it->second;
}

const char *to_string(ManifoldExample ex) {
  switch (ex) {
  case ManifoldExample::s3:
    return "S3";
  case ManifoldExample::s1xs2:
    return "S1xS2";
  case ManifoldExample::lens:
    return "lens";
  case ManifoldExample::t3:
    return "T3";
  case ManifoldExample::custom:
    return "custom";
  }
  return "custom";
}

std::string conjugacy_fingerprint(const Representation &rep) {
  const auto &x = rep.images();
  const std::size_t n = x.size();
  std::vector<double> traces;
  for (std::size_t i = 0; i < n; ++i)
    traces.push_back(su2_trace(x[i]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      traces.push_back(su2_trace(x[i] * x[j]));
      traces.push_back(su2_trace(x[i] * x[j].inverse()));
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        traces.push_back(su2_trace(x[i] * x[j] * x[k]));
  std::ostringstream out;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    if (i)
      out << ',';
    out << std::llround(traces[i] * 1e7);
  }
  return out.str();
}

std::optional<SU2Element> find_conjugator(const Representation &from, const Representation &to,
                                          double tol) {
  const auto &x = from.images();
  const auto &y = to.images();
  if (x.size() != y.size())
    return std::nullopt;
  auto verify = [&](const SU2Element &h) -> std::optional<SU2Element> {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (su2_conjugate(x[i], h).distance(y[i]) > tol)
        return std::nullopt;
    return h;
  };
  constexpr double axis_tol = 1e-6;
  std::size_t a = x.size();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i].vec().norm() > axis_tol && y[i].vec().norm() > axis_tol) {
      a = i;
      break;
    }
  if (a == x.size())
    return verify(SU2Element::identity());
  const SU2Element h0 = aligning_rotation(x[a].vec(), y[a].vec());
  const AlgebraVector axis = y[a].vec().normalized();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const AlgebraVector u0 = su2_conjugate(x[i], h0).vec();
    const AlgebraVector u = u0 - axis.dot(u0) * axis;
    const AlgebraVector v = y[i].vec() - axis.dot(y[i].vec()) * axis;
    if (u.norm() > axis_tol && v.norm() > axis_tol) {
      // rotate about the axis so that u lines up with v
      const double phi = std::atan2(axis.dot(u.cross(v)), u.dot(v));
      return verify(su2_exp(0.5 * phi * axis) * h0);
    }
  }
  return verify(h0);
}

namespace {

ModuliPoint make_point(std::string id, Representation rep, int component_dim, double weight,
                       const Tolerances &tol) {
  rep.require_relators(tol.relator);
  StratumLabel label = classify_stratum(rep, tol);
  std::string fp = conjugacy_fingerprint(rep);
  return ModuliPoint{std::move(id), std::move(rep), label, 0.0, TorsionValue{}, component_dim,
                     weight, std::move(fp), std::nullopt};
}

SU2Element torus(double theta) { return su2_exp(theta * AlgebraVector::UnitX()); }

std::vector<ModuliPoint> deduplicate(std::vector<ModuliPoint> points, double tol) {
  std::vector<ModuliPoint> kept;
  for (auto &p : points) {
    bool merged = false;
    for (const auto &k : kept)
      if (k.fingerprint == p.fingerprint && find_conjugator(p.rep, k.rep, tol)) {
        merged = true;
        break;
      }
    if (!merged)
      kept.push_back(std::move(p));
  }
  return kept;
}

} // namespace

std::vector<ModuliPoint> enumerate_moduli(ManifoldExample example, const ModuliParams &params,
                                          const Tolerances &tol) {
  const double pi = std::numbers::pi;
  std::vector<ModuliPoint> pts;
  switch (example) {
  case ManifoldExample::s3: {
    pts.push_back(make_point("S3:trivial", Representation::trivial(heegaard_s3().manifold), 0, 1.0, tol));
    break;
  }
  case ManifoldExample::s1xs2: {
    const auto pres = heegaard_s1xs2().manifold;
    const int m = params.chart_nodes;
    if (m < 2)
      throw InputError("enumerate_moduli: S1xS2 needs at least 2 chart nodes");
    pts.push_back(make_point("S1xS2:trivial", Representation(pres, {torus(0.0)}), 0, 1.0, tol));
    // interior trapezoid nodes of theta in [0, pi]; the endpoints are the
    // isolated central classes
    for (int j = 1; j < m; ++j) {
      std::ostringstream id;
      id << "S1xS2:theta=" << j << "/" << m << "pi";
      pts.push_back(make_point(id.str(), Representation(pres, {torus(pi * j / m)}), 1, pi / m, tol));
    }
    pts.push_back(make_point("S1xS2:central", Representation(pres, {torus(pi)}), 0, 1.0, tol));
    break;
  }
  case ManifoldExample::lens: {
    const HeegaardData h = heegaard_lens(params.p, params.q);
    for (int n = 0; n <= params.p / 2; ++n) {
      std::ostringstream id;
      id << "lens(" << params.p << "," << params.q << "):n=" << n;
      pts.push_back(make_point(id.str(),
                               Representation(h.manifold, {torus(2.0 * pi * n / params.p)}), 0,
                               1.0, tol));
    }
    break;
  }
  case ManifoldExample::t3: {
    const auto pres = three_torus_presentation();
    const int m = params.chart_nodes;
    if (m < 1)
      throw InputError("enumerate_moduli: T3 needs at least 1 chart node");
    const double cell = std::pow(2.0 * pi / m, 3);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          // one representative per Weyl orbit (theta -> -theta)
          const std::array<int, 3> t{i, j, k};
          const std::array<int, 3> neg{(m - i) % m, (m - j) % m, (m - k) % m};
          if (neg < t)
            continue;
          std::ostringstream id;
          id << "T3:" << i << "," << j << "," << k << "/" << m;
          Representation rep(pres, {torus(2 * pi * i / m), torus(2 * pi * j / m),
                                    torus(2 * pi * k / m)});
          const bool central = neg == t;
          pts.push_back(make_point(id.str(), std::move(rep), central ? 0 : 3,
                                   central ? 1.0 : cell, tol));
        }
    break;
  }
  case ManifoldExample::custom: {
    if (!params.custom_presentation)
      throw InputError("enumerate_moduli: custom example needs a presentation");
    for (const auto &c : params.candidates) {
      Representation rep(params.custom_presentation, c.images);
      if (!(rep.relator_residual() < tol.relator)) {
        std::ostringstream msg;
        msg << "enumerate_moduli: candidate " << c.point_id << " violates its relators (residual "
            << rep.relator_residual() << ")";
        throw DomainError(msg.str());
      }
      pts.push_back(make_point(c.point_id, std::move(rep), c.component_dim, c.weight, tol));
    }
    break;
  }
  }
  return deduplicate(std::move(pts), 1e-7);
}

CleanVerdict clean_intersection_check(const ModuliPoint &point, const Tolerances &tol) {
  CleanVerdict v;
  v.component_dim = point.component_dim;
  switch (point.stratum.i) {
  case 0:
    v.coefficients = "none";
    v.cohomology_dim = point.component_dim;
    v.pass = true;
    return v;
  case 1:
    v.coefficients = "stabilizer";
    v.cohomology_dim = restrict_coefficients(point.rep, CoefficientPart::stabilizer, tol).h1;
    break;
  default:
    v.coefficients = "full";
    v.cohomology_dim = cohomology(point.rep, tol).h1;
    break;
  }
  v.pass = v.cohomology_dim == v.component_dim;
  return v;
}

ModuliCatalogue build_catalogue(ManifoldExample example, const ModuliParams &params,
                                const std::optional<HeegaardData> &custom_heegaard,
                                const Tolerances &tol, int threads) {
  ModuliCatalogue cat;
  cat.example = example;
  cat.points = enumerate_moduli(example, params, tol);
  std::optional<HeegaardData> heegaard;
  switch (example) {
  case ManifoldExample::s3:
    heegaard = heegaard_s3();
    break;
  case ManifoldExample::s1xs2:
    heegaard = heegaard_s1xs2();
    break;
  case ManifoldExample::lens:
    heegaard = heegaard_lens(params.p, params.q);
    break;
  case ManifoldExample::custom:
    heegaard = custom_heegaard;
    break;
  case ManifoldExample::t3:
    break;
  }
  if (!cat.points.empty())
    cat.manifold = cat.points.front().rep.presentation_ptr();

  std::map<std::string, const CandidatePoint *> supplied;
  for (const auto &c : params.candidates)
    supplied[c.point_id] = &c;

  parallel_for(cat.points.size(), threads, [&](std::size_t n) {
    ModuliPoint &pt = cat.points[n];
    pt.verdict = clean_intersection_check(pt, tol);
    if (pt.stratum.i == 0)
      return; // constant volume on the isolated stratum
    const CoefficientPart part =
        pt.stratum.i == 1 ? CoefficientPart::stabilizer : CoefficientPart::full;
    if (example == ManifoldExample::custom) {
      const auto it = supplied.find(pt.point_id);
      if (it != supplied.end() && it->second->torsion) {
        if (!(*it->second->torsion > 0))
          throw InputError("custom point " + pt.point_id + ": torsion must be positive");
        pt.torsion = torsion_from_log(std::log(*it->second->torsion));
        return;
      }
      if (!heegaard)
        throw InputError("custom point " + pt.point_id + " needs a torsion value or Heegaard data");
    }
    if (example == ManifoldExample::t3) {
      pt.torsion = cochain_complex_torsion(
          three_torus_cochain_complex(pt.rep, coefficient_basis(pt.rep, part, tol)), tol);
      return;
    }
    pt.torsion = mv_torsion_at(pt.rep, *heegaard, part, tol);
  });
  return cat;
}

InvariantResult assemble_invariant(const std::vector<ModuliPoint> &points, int k) {
  InvariantResult res;
  res.k = k;
  for (const auto &p : points) {
    if (!p.verdict)
      throw DomainError("assemble_invariant: point " + p.point_id +
                        " has no clean-intersection verdict");
    res.diagnostics.emplace_back(p.point_id, *p.verdict);
    if (!p.verdict->pass)
      throw DomainError("assemble_invariant: point " + p.point_id +
                        " fails the stratified clean intersection condition");
  }
  for (const auto &p : points) {
    const double cs = p.cs_value - std::floor(p.cs_value);
    const std::complex<double> phase = std::polar(1.0, 2.0 * std::numbers::pi * k * cs);
    const int slot = p.stratum.i == 0 ? 0 : p.stratum.i == 1 ? 1 : 2;
    res.per_stratum[slot] += p.weight * phase * p.torsion.value;
  }
  res.total = res.per_stratum[0] + res.per_stratum[1] + res.per_stratum[2];
  return res;
}

std::complex<double> stationary_phase_fg(const std::vector<StationaryPhaseEntry> &entries, int k) {
  const double pi = std::numbers::pi;
  std::complex<double> sum{};
  for (const auto &e : entries) {
    if (!(e.tau > 0))
      throw DomainError("stationary_phase_fg: tau must be positive");
    sum += std::sqrt(e.tau) * std::polar(1.0, -2.0 * pi * e.spectral_flow / 4.0) *
           std::polar(1.0, 2.0 * pi * e.cs * (k + 2));
  }
  return 0.5 * std::polar(1.0, 3.0 * pi / 4.0) * sum;
}

} // namespace flatstrata
