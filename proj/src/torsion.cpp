#include "flatstrata/torsion.hpp"

#include "flatstrata/cohomology.hpp"
#include "flatstrata/errors.hpp"
#include "flatstrata/linalg.hpp"
#include "flatstrata/stratification.hpp"

#include <cmath>
#include <sstream>

namespace flatstrata {

void check_shapes(const MetricSequence &seq) {
  if (seq.dims.empty() ? !seq.maps.empty() : seq.maps.size() + 1 != seq.dims.size())
    throw InputError("MetricSequence: need exactly one map between consecutive spaces");
  for (int d : seq.dims)
    if (d < 0)
      throw InputError("MetricSequence: negative dimension");
  for (std::size_t j = 0; j < seq.maps.size(); ++j) {
    if (seq.maps[j].rows() != seq.dims[j + 1] || seq.maps[j].cols() != seq.dims[j]) {
      std::ostringstream msg;
      msg << "MetricSequence: map " << j + 1 << " has shape " << seq.maps[j].rows() << "x"
          << seq.maps[j].cols() << ", expected " << seq.dims[j + 1] << "x" << seq.dims[j];
      throw InputError(msg.str());
    }
  }
}

ExactnessReport exactness(const MetricSequence &seq, double rank_tol) {
  check_shapes(seq);
  ExactnessReport rep;
  const std::size_t n = seq.dims.size();
  std::vector<int> ranks;
  for (const auto &m : seq.maps)
    ranks.push_back(numeric_rank(m, rank_tol).rank);
  for (std::size_t j = 0; j + 1 < seq.maps.size(); ++j)
    if (seq.maps[j].size() > 0 && seq.maps[j + 1].size() > 0)
      rep.residual = std::max(rep.residual, (seq.maps[j + 1] * seq.maps[j]).norm());
  // exact at V_k iff rank(in) + rank(out) = dim V_k
  for (std::size_t k = 0; k < n; ++k) {
    const int in = k == 0 ? 0 : ranks[k - 1];
    const int out = k + 1 == n ? 0 : ranks[k];
    if (in + out != seq.dims[k] && rep.ranks_exact) {
      rep.ranks_exact = false;
      rep.first_failure = static_cast<int>(k);
    }
  }
  return rep;
}

TorsionValue torsion_from_log(double log_value) {
  TorsionValue t;
  t.log_value = log_value;
  t.value = std::exp(log_value);
  return t;
}

TorsionValue sequence_torsion(const MetricSequence &seq, const Tolerances &tol) {
  const ExactnessReport ex = exactness(seq, tol.rank);
  if (!ex.ranks_exact || ex.residual > tol.rank) {
    std::ostringstream msg;
    msg << "sequence_torsion: sequence is not exact (composite residual " << ex.residual;
    if (!ex.ranks_exact)
      msg << ", rank mismatch at space " << ex.first_failure + 1;
    msg << ")";
    throw DomainError(msg.str());
  }
  double log_value = 0.0;
  for (std::size_t j = 0; j < seq.maps.size(); ++j) {
    const double l = log_singular_product(seq.maps[j], tol.rank).log_value;
    log_value += (j % 2 == 0) ? l : -l; // j = 0 is position 1
  }
  return torsion_from_log(log_value);
}

TorsionValue cochain_complex_torsion(const std::vector<Eigen::MatrixXd> &differentials,
                                     const Tolerances &tol) {
  double log_value = 0.0;
  for (std::size_t j = 0; j < differentials.size(); ++j) {
    if (j + 1 < differentials.size()) {
      const auto &a = differentials[j];
      const auto &b = differentials[j + 1];
      if (b.cols() != a.rows())
        throw InputError("cochain_complex_torsion: differential shapes do not compose");
      if (a.size() > 0 && b.size() > 0 && (b * a).norm() > tol.rank)
        throw DomainError("cochain_complex_torsion: d_{j+1} d_j does not vanish");
    }
    const double l = log_singular_product(differentials[j], tol.rank).log_value;
    log_value += (j % 2 == 0) ? l : -l;
  }
  return torsion_from_log(log_value);
}

namespace {

StratumLabel volume_stratum(const Representation &rep, const Tolerances &tol) {
  if (rep.presentation().kind() != PresentationKind::free)
    throw DomainError("jw_volume: needs a free-group representation");
  const StratumLabel label = classify_stratum(rep, tol);
  if (label.boundary_ambiguous)
    throw DomainError("jw_volume: representation is boundary-ambiguous between strata");
  return label;
}

// Columns e_k (x) axis, k = 1..g.
Eigen::MatrixXd torus_directions(const AlgebraVector &axis, int g) {
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(3 * g, g);
  for (int k = 0; k < g; ++k)
    T.block(3 * k, k, 3, 1) = axis;
  return T;
}

VolumeValue finish(TorsionValue t, int stratum) {
  VolumeValue v;
  v.volume = t;
  v.half_density.value = std::exp(0.5 * t.log_value);
  v.stratum = stratum;
  return v;
}

} // namespace

VolumeValue jw_volume(const Representation &rep, const Tolerances &tol) {
  const StratumLabel label = volume_stratum(rep, tol);
  const int g = rep.presentation().genus();
  if (label.i == 0)
    return finish(TorsionValue{}, 0);

  const Eigen::MatrixXd d0 = build_d0(rep);
  if (label.i == 3) {
    // 0 -> g -> g^g -> H^1 -> 0
    const CohomologySummary h = cohomology(rep, tol);
    MetricSequence seq;
    seq.dims = {3, 3 * g, h.h1};
    seq.maps = {d0, h.basis_h1.transpose()};
    return finish(sequence_torsion(seq, tol), 3);
  }

  // 0 -> l^perp -> t^g + (orbit tangent) -> t^g -> 0
  const AlgebraVector axis = stabilizer_axis(rep, tol);
  const Eigen::MatrixXd Q = coefficient_basis(rep, CoefficientPart::complement, tol);
  const Eigen::MatrixXd T = torus_directions(axis, g);
  const Eigen::MatrixXd O = range_basis(d0 * Q, tol.rank);
  Eigen::MatrixXd middle(3 * g, T.cols() + O.cols());
  middle << T, O;
  Eigen::MatrixXd project = Eigen::MatrixXd::Zero(g, middle.cols());
  project.leftCols(g) = Eigen::MatrixXd::Identity(g, g);
  MetricSequence seq;
  seq.dims = {2, static_cast<int>(middle.cols()), g};
  seq.maps = {middle.transpose() * d0 * Q, project};
  return finish(sequence_torsion(seq, tol), 1);
}

double jw_volume_by_gram(const Representation &rep, const Tolerances &tol) {
  const StratumLabel label = volume_stratum(rep, tol);
  if (label.i == 0)
    return 1.0;
  const Eigen::MatrixXd d0 = build_d0(rep);
  const Eigen::MatrixXd Q =
      label.i == 3 ? Eigen::MatrixXd(Eigen::Matrix3d::Identity())
                   : coefficient_basis(rep, CoefficientPart::complement, tol);
  const Eigen::MatrixXd A = d0 * Q;
  return std::sqrt((A.transpose() * A).determinant());
}

VolumeFactors jw_volume_factors(const Representation &rep, const Tolerances &tol) {
  const StratumLabel label = volume_stratum(rep, tol);
  if (label.i != 1)
    throw DomainError("jw_volume_factors: the split exists only on the torus stratum");
  VolumeFactors f;
  for (const auto part : {CoefficientPart::stabilizer, CoefficientPart::complement}) {
    const Eigen::MatrixXd P = coefficient_basis(rep, part, tol);
    const TwistedComplex c = build_complex(rep, P);
    const CohomologySummary h = cohomology_with(rep, P, tol);
    MetricSequence seq;
    const int d = static_cast<int>(P.cols());
    const int cochains = static_cast<int>(c.d0.rows());
    // 0 -> H^0 -> coefficients -> cochains -> H^1 -> 0
    seq.dims = {h.h0, d, cochains, h.h1};
    seq.maps = {h.basis_h0, c.d0, h.basis_h1.transpose()};
    TorsionValue t = sequence_torsion(seq, tol);
    // d0 sits at position 2 here and at position 1 in the stratum sequence
    if (part == CoefficientPart::complement)
      f.complement = torsion_from_log(-t.log_value);
    else
      f.stabilizer = torsion_from_log(-t.log_value);
  }
  return f;
}

MetricSequence mayer_vietoris_sequence(const MayerVietorisData &d) {
  const auto n = d.manifold_to_handle1.cols();
  const auto h1 = d.manifold_to_handle1.rows();
  const auto h2 = d.manifold_to_handle2.rows();
  const auto s = d.handle1_to_surface.rows();
  if (d.manifold_to_handle2.cols() != n || d.handle1_to_surface.cols() != h1 ||
      d.handle2_to_surface.cols() != h2 || d.handle2_to_surface.rows() != s ||
      d.surface_gram.rows() != s || d.surface_gram.cols() != s ||
      d.manifold_to_surface.rows() != s || d.manifold_to_surface.cols() != n)
    throw InputError("mayer_vietoris_sequence: inconsistent restriction data shapes");
  Eigen::MatrixXd restrict(h1 + h2, n);
  restrict << d.manifold_to_handle1, d.manifold_to_handle2;
  Eigen::MatrixXd difference(s, h1 + h2);
  difference << d.handle1_to_surface, -d.handle2_to_surface;
  // w -> (omega(w, m_k))_k
  const Eigen::MatrixXd pairing = (d.surface_gram * d.manifold_to_surface).transpose();
  MetricSequence seq;
  seq.dims = {static_cast<int>(n), static_cast<int>(h1 + h2), static_cast<int>(s),
              static_cast<int>(n)};
  seq.maps = {restrict, difference, pairing};
  return seq;
}

TorsionValue mv_torsion(const MayerVietorisData &data, const Tolerances &tol) {
  return sequence_torsion(mayer_vietoris_sequence(data), tol);
}

} // namespace flatstrata
