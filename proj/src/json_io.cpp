#include "flatstrata/json_io.hpp"

#include "flatstrata/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace flatstrata {

namespace {

// Fail closed on unknown keys and on a schema other than ours.
void check_keys(const Json &j, std::initializer_list<const char *> allowed, const std::string &what) {
  if (!j.is_object())
    throw InputError(what + ": expected a JSON object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  ok.insert("schema");
  for (const auto &[key, value] : j.items()) {
    if (!ok.count(key))
      throw InputError(what + ": unknown field \"" + key + "\"");
  }
  if (j.contains("schema")) {
    const Json &s = j.at("schema");
    if (!s.is_number_integer() || s.get<int>() != kSchemaVersion)
      throw InputError(what + ": unsupported schema (expected " + std::to_string(kSchemaVersion) + ")");
  }
}

const Json &field(const Json &j, const char *key, const std::string &what) {
  if (!j.contains(key))
    throw InputError(what + ": missing field \"" + key + "\"");
  return j.at(key);
}

double as_real(const Json &j, const std::string &what) {
  if (!j.is_number())
    throw InputError(what + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v))
    throw InputError(what + ": expected a finite number");
  return v;
}

int as_int(const Json &j, const std::string &what) {
  if (!j.is_number_integer())
    throw InputError(what + ": expected an integer");
  return j.get<int>();
}

std::string as_string(const Json &j, const std::string &what) {
  if (!j.is_string())
    throw InputError(what + ": expected a string");
  return j.get<std::string>();
}

const Json &as_array(const Json &j, const std::string &what) {
  if (!j.is_array())
    throw InputError(what + ": expected an array");
  return j;
}

// Array or {"schema"?, "entries": [...]}.
const Json &entries_of(const Json &j, const std::string &what) {
  if (j.is_array())
    return j;
  check_keys(j, {"entries"}, what);
  return as_array(field(j, "entries", what), what + ".entries");
}

std::vector<Word> parse_words(const Json &j, const Presentation &p, const std::string &what) {
  std::vector<Word> out;
  for (const auto &w : as_array(j, what))
    out.push_back(p.parse_word(as_string(w, what)));
  return out;
}

Handlebody handlebody_from_json(const Json &j, const Presentation &handle_group,
                                const Presentation &manifold, const std::string &what) {
  check_keys(j, {"surface_images", "manifold_images"}, what);
  Handlebody h;
  h.surface_images = parse_words(field(j, "surface_images", what), handle_group, what + ".surface_images");
  h.manifold_images = parse_words(field(j, "manifold_images", what), manifold, what + ".manifold_images");
  return h;
}

} // namespace

Json parse_json_text(const std::string &text, const std::string &origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw InputError(origin + ": malformed JSON (" + e.what() + ")");
  }
}

Json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

Json to_json(const SU2Element &a) { return Json::array({a.w(), a.x(), a.y(), a.z()}); }

SU2Element su2_from_json(const Json &j) {
  if (!j.is_array() || j.size() != 4)
    throw InputError("quaternion: expected [w, x, y, z]");
  const double w = as_real(j[0], "quaternion"), x = as_real(j[1], "quaternion"),
               y = as_real(j[2], "quaternion"), z = as_real(j[3], "quaternion");
  const double norm = std::sqrt(w * w + x * x + y * y + z * z);
  if (std::abs(norm - 1.0) > 1e-6)
    throw InputError("quaternion: not a unit quaternion (norm " + std::to_string(norm) + ")");
  return SU2Element(w, x, y, z);
}

Json to_json(const Eigen::VectorXd &v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back(v(i));
  return out;
}

Json matrix_to_json(const Eigen::MatrixXd &m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Eigen::MatrixXd matrix_from_json(const Json &j, int rows, int cols) {
  std::ostringstream shape;
  shape << rows << " x " << cols;
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw InputError("matrix: expected " + shape.str() + " nested arrays");
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols)
      throw InputError("matrix: expected " + shape.str() + " nested arrays");
    for (int c = 0; c < cols; ++c)
      m(r, c) = as_real(j[r][c], "matrix entry");
  }
  return m;
}

Json to_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

PresentationPtr presentation_from_json(const Json &j) {
  const std::string what = "presentation";
  check_keys(j, {"generators", "relators", "kind", "genus", "order"}, what);
  const std::string kind = j.contains("kind") ? as_string(j.at("kind"), what + ".kind") : "custom";

  PresentationKind k;
  int parameter = 0;
  if (kind == "free" || kind == "surface" || kind == "circle_times_surface") {
    k = kind == "free" ? PresentationKind::free
        : kind == "surface" ? PresentationKind::surface
                            : PresentationKind::circle_times_surface;
    parameter = as_int(field(j, "genus", what), what + ".genus");
  } else if (kind == "cyclic") {
    k = PresentationKind::cyclic;
    parameter = as_int(field(j, "order", what), what + ".order");
  } else if (kind == "custom") {
    k = PresentationKind::custom;
  } else {
    throw InputError(what + ": unknown kind \"" + kind + "\"");
  }
  if (k != PresentationKind::cyclic && j.contains("order"))
    throw InputError(what + ": \"order\" only applies to kind cyclic");
  if ((k == PresentationKind::cyclic || k == PresentationKind::custom) && j.contains("genus"))
    throw InputError(what + ": \"genus\" does not apply to kind " + kind);

  if (!j.contains("generators")) {
    if (j.contains("relators"))
      throw InputError(what + ": relators given without generators");
    switch (k) {
    case PresentationKind::free:
      return std::make_shared<const Presentation>(Presentation::free_group(parameter));
    case PresentationKind::surface:
      return std::make_shared<const Presentation>(Presentation::surface_group(parameter));
    case PresentationKind::cyclic:
      return std::make_shared<const Presentation>(Presentation::cyclic_group(parameter));
    case PresentationKind::circle_times_surface:
      return std::make_shared<const Presentation>(Presentation::circle_times_surface(parameter));
    case PresentationKind::custom:
      throw InputError(what + ": custom presentations need generators");
    }
  }

  std::vector<std::string> names;
  for (const auto &n : as_array(j.at("generators"), what + ".generators"))
    names.push_back(as_string(n, what + ".generators"));
  const Presentation alphabet(names, {}, PresentationKind::custom);
  std::vector<Word> relators;
  if (j.contains("relators"))
    relators = parse_words(j.at("relators"), alphabet, what + ".relators");
  return std::make_shared<const Presentation>(std::move(names), std::move(relators), k, parameter);
}

Json to_json(const Presentation &p) {
  Json out;
  out["generators"] = p.generator_names();
  Json rel = Json::array();
  for (const auto &r : p.relators())
    rel.push_back(p.format_word(r));
  out["relators"] = std::move(rel);
  out["kind"] = to_string(p.kind());
  if (p.kind() == PresentationKind::cyclic)
    out["order"] = p.parameter();
  else if (p.kind() != PresentationKind::custom)
    out["genus"] = p.parameter();
  return out;
}

Representation representation_from_json(const Json &j, PresentationPtr presentation) {
  const std::string what = "representation";
  if (!j.is_object())
    throw InputError(what + ": expected a JSON object");
  const auto &names = presentation->generator_names();
  for (const auto &[key, value] : j.items()) {
    if (key == "schema")
      continue;
    if (std::find(names.begin(), names.end(), key) == names.end())
      throw InputError(what + ": unknown generator \"" + key + "\"");
  }
  if (j.contains("schema") && (!j.at("schema").is_number_integer() ||
                               j.at("schema").get<int>() != kSchemaVersion))
    throw InputError(what + ": unsupported schema");
  std::vector<SU2Element> images;
  for (const auto &n : names)
    images.push_back(su2_from_json(field(j, n.c_str(), what)));
  return Representation(std::move(presentation), std::move(images));
}

Json to_json(const Representation &rep) {
  Json out;
  const auto &names = rep.presentation().generator_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    out[names[i]] = to_json(rep.images()[i]);
  return out;
}

MetricSequence metric_sequence_from_json(const Json &j) {
  const std::string what = "metric sequence";
  check_keys(j, {"dims", "maps"}, what);
  MetricSequence seq;
  for (const auto &d : as_array(field(j, "dims", what), what + ".dims")) {
    const int v = as_int(d, what + ".dims");
    if (v < 0)
      throw InputError(what + ": negative dimension");
    seq.dims.push_back(v);
  }
  const Json &maps = as_array(field(j, "maps", what), what + ".maps");
  if (seq.dims.empty() || maps.size() + 1 != seq.dims.size())
    throw InputError(what + ": need exactly one map between consecutive spaces");
  for (std::size_t k = 0; k < maps.size(); ++k) {
    const int rows = seq.dims[k + 1], cols = seq.dims[k];
    // an empty matrix may be written as [] whatever its nominal shape
    if (maps[k].is_array() && maps[k].empty() && (rows == 0 || cols == 0)) {
      seq.maps.emplace_back(Eigen::MatrixXd::Zero(rows, cols));
      continue;
    }
    seq.maps.push_back(matrix_from_json(maps[k], rows, cols));
  }
  check_shapes(seq);
  return seq;
}

HeegaardData heegaard_from_json(const Json &j, PresentationPtr manifold) {
  const std::string what = "heegaard";
  check_keys(j, {"genus", "handle1", "handle2"}, what);
  HeegaardData h;
  h.genus = as_int(field(j, "genus", what), what + ".genus");
  if (h.genus < 1)
    throw InputError(what + ": genus must be at least 1");
  h.manifold = std::move(manifold);
  const Presentation handle_group = Presentation::free_group(h.genus);
  h.handle1 = handlebody_from_json(field(j, "handle1", what), handle_group, *h.manifold, what + ".handle1");
  h.handle2 = handlebody_from_json(field(j, "handle2", what), handle_group, *h.manifold, what + ".handle2");
  validate_heegaard(h);
  return h;
}

std::vector<StationaryPhaseEntry> fg_entries_from_json(const Json &j) {
  const std::string what = "fg entries";
  std::vector<StationaryPhaseEntry> out;
  for (const auto &e : entries_of(j, what)) {
    check_keys(e, {"tau", "spectral_flow", "cs"}, what);
    StationaryPhaseEntry s;
    s.tau = as_real(field(e, "tau", what), what + ".tau");
    if (!(s.tau > 0))
      throw InputError(what + ": tau must be positive");
    s.spectral_flow = as_int(field(e, "spectral_flow", what), what + ".spectral_flow");
    s.cs = as_real(field(e, "cs", what), what + ".cs");
    out.push_back(s);
  }
  return out;
}

std::vector<CsEntry> cs_table_from_json(const Json &j) {
  const std::string what = "cs table";
  std::vector<CsEntry> out;
  for (const auto &e : entries_of(j, what)) {
    check_keys(e, {"point_id", "fingerprint", "cs"}, what);
    CsEntry c;
    if (e.contains("point_id"))
      c.point_id = as_string(e.at("point_id"), what + ".point_id");
    if (e.contains("fingerprint"))
      c.fingerprint = as_string(e.at("fingerprint"), what + ".fingerprint");
    if (!c.point_id && !c.fingerprint)
      throw InputError(what + ": each row needs point_id or fingerprint");
    c.cs = as_real(field(e, "cs", what), what + ".cs");
    out.push_back(std::move(c));
  }
  return out;
}

void apply_cs_table(std::vector<ModuliPoint> &points, const std::vector<CsEntry> &table) {
  std::vector<int> row_hits(table.size(), 0);
  for (auto &p : points) {
    int match = -1;
    for (std::size_t r = 0; r < table.size(); ++r) {
      const CsEntry &e = table[r];
      const bool by_id = e.point_id && *e.point_id == p.point_id;
      const bool by_fp = e.fingerprint && *e.fingerprint == p.fingerprint;
      if ((e.point_id && !by_id) || (e.fingerprint && !by_fp))
        continue; // every key given must agree
      if (match >= 0)
        throw InputError("cs table: point " + p.point_id + " matched by more than one row");
      match = static_cast<int>(r);
    }
    if (match < 0)
      throw InputError("cs table: no row for point " + p.point_id);
    p.cs_value = table[match].cs;
    ++row_hits[match];
  }
  for (std::size_t r = 0; r < table.size(); ++r) {
    if (row_hits[r] == 0) {
      const CsEntry &e = table[r];
      throw InputError("cs table: row " + std::to_string(r) + " (" +
                       (e.point_id ? *e.point_id : *e.fingerprint) + ") matches no point");
    }
  }
}

CustomModuliInput custom_moduli_from_json(const Json &j) {
  const std::string what = "custom moduli";
  check_keys(j, {"presentation", "points", "heegaard"}, what);
  CustomModuliInput in;
  in.params.custom_presentation = presentation_from_json(field(j, "presentation", what));
  std::set<std::string> ids;
  for (const auto &e : as_array(field(j, "points", what), what + ".points")) {
    check_keys(e, {"point_id", "rep", "component_dim", "weight", "torsion"}, what + ".points");
    CandidatePoint c;
    c.point_id = as_string(field(e, "point_id", what), what + ".point_id");
    if (!ids.insert(c.point_id).second)
      throw InputError(what + ": duplicate point_id " + c.point_id);
    c.images = representation_from_json(field(e, "rep", what), in.params.custom_presentation).images();
    if (e.contains("component_dim")) {
      c.component_dim = as_int(e.at("component_dim"), what + ".component_dim");
      if (c.component_dim < 0)
        throw InputError(what + ": negative component_dim");
    }
    if (e.contains("weight"))
      c.weight = as_real(e.at("weight"), what + ".weight");
    if (e.contains("torsion"))
      c.torsion = as_real(e.at("torsion"), what + ".torsion");
    in.params.candidates.push_back(std::move(c));
  }
  if (j.contains("heegaard"))
    in.heegaard = heegaard_from_json(j.at("heegaard"), in.params.custom_presentation);
  return in;
}

Json to_json(const StratumLabel &label) {
  return Json{{"i", label.i},
              {"stabilizer_dim", label.stabilizer_dim},
              {"central_flag", label.central_flag},
              {"boundary_ambiguous", label.boundary_ambiguous}};
}

Json to_json(const CohomologySummary &h) {
  Json out;
  out["h0"] = h.h0;
  out["h1"] = h.h1;
  out["z1"] = h.z1;
  out["rank_d0"] = h.rank_d0;
  out["rank_d1"] = h.rank_d1;
  out["coefficient_dim"] = h.coefficient_basis.cols();
  out["smallest_nonzero_d0"] = h.smallest_nonzero_d0;
  out["exactness_residual"] = h.exactness_residual;
  out["warnings"] = h.warnings;
  return out;
}

Json to_json(const StrataCensus &c) {
  Json out;
  out["genus"] = c.genus;
  out["samples"] = c.samples;
  out["counts"] = Json{{"0", c.count_stratum0}, {"1", c.count_stratum1}, {"3", c.count_stratum3}};
  out["boundary_ambiguous"] = c.boundary_ambiguous;
  out["constant_dimension"] = Json{{"expected_h1_minus_h0", 3 * c.genus - 3},
                                   {"violations", c.constant_dimension_violations}};
  out["euler_violations"] = c.euler_violations;
  const char *slots[3] = {"0", "1", "3"};
  const int dims[3] = {0, c.genus, 3 * c.genus - 3};
  Json audit;
  for (int s = 0; s < 3; ++s) {
    audit[slots[s]] = Json{{"expected_dim", dims[s]},
                           {"checked", c.tangent_checked[s]},
                           {"violations", c.tangent_violations[s]}};
  }
  out["tangent_audit"] = std::move(audit);
  return out;
}

Json to_json(const SymplecticAudit &a) {
  Json out;
  out["genus"] = a.genus;
  out["samples"] = a.samples;
  out["max_antisymmetry"] = a.max_antisymmetry;
  out["max_coboundary"] = a.max_coboundary;
  out["max_gauge_shift"] = a.max_gauge_shift;
  out["max_isotropy"] = a.max_isotropy;
  out["rank_expected"] = a.rank_expected;
  out["rank_matches"] = a.rank_matches;
  return out;
}

Json to_json(const TorsionValue &t) {
  return Json{{"torsion", t.value}, {"log_torsion", t.log_value}, {"convention", t.convention_note}};
}

Json to_json(const CleanVerdict &v) {
  return Json{{"pass", v.pass},
              {"component_dim", v.component_dim},
              {"cohomology_dim", v.cohomology_dim},
              {"coefficients", v.coefficients}};
}

Json to_json(const ModuliPoint &p) {
  Json out;
  out["point_id"] = p.point_id;
  out["stratum"] = to_json(p.stratum);
  out["fingerprint"] = p.fingerprint;
  out["images"] = to_json(p.rep);
  out["component_dim"] = p.component_dim;
  out["weight"] = p.weight;
  out["cs"] = p.cs_value;
  out["torsion"] = p.torsion.value;
  out["log_torsion"] = p.torsion.log_value;
  out["verdict"] = p.verdict ? to_json(*p.verdict) : Json(nullptr);
  return out;
}

Json to_json(const InvariantResult &r) {
  Json out;
  out["k"] = r.k;
  out["per_stratum"] = Json{{"0", to_json(r.per_stratum[0])},
                            {"1", to_json(r.per_stratum[1])},
                            {"3", to_json(r.per_stratum[2])}};
  out["total"] = to_json(r.total);
  Json diag = Json::array();
  for (const auto &[id, v] : r.diagnostics) {
    Json d = to_json(v);
    d["point_id"] = id;
    diag.push_back(std::move(d));
  }
  out["verdicts"] = std::move(diag);
  return out;
}

} // namespace flatstrata
