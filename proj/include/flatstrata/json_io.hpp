#pragma once

#include "flatstrata/moduli.hpp"
#include "flatstrata/presentation.hpp"
#include "flatstrata/stratification.hpp"
#include "flatstrata/symplectic.hpp"
#include "flatstrata/torsion.hpp"

#include <json.hpp>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace flatstrata {

// Insertion-ordered so reports print in a fixed, readable order.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Parsing failures of any kind surface as InputError.
Json parse_json_text(const std::string &text, const std::string &origin);
Json read_json_file(const std::string &path);

Json to_json(const SU2Element &a);
SU2Element su2_from_json(const Json &j);
Json to_json(const Eigen::VectorXd &v);
Json matrix_to_json(const Eigen::MatrixXd &m); // row-major nested arrays
Eigen::MatrixXd matrix_from_json(const Json &j, int rows, int cols);
Json to_json(std::complex<double> z);

// {"schema"?, "generators", "relators", "kind", "genus"?/"order"?}
PresentationPtr presentation_from_json(const Json &j);
Json to_json(const Presentation &p);

// {"schema"?, "<generator>": [w, x, y, z], ...}, every generator required.
Representation representation_from_json(const Json &j, PresentationPtr presentation);
Json to_json(const Representation &rep);

// {"schema"?, "dims": [...], "maps": [matrix, ...]}
MetricSequence metric_sequence_from_json(const Json &j);

// {"schema"?, "genus", "handle1": {...}, "handle2": {...}}; each handle has
// "surface_images" (words in x1..xg) and "manifold_images" (words in the
// manifold generators).
HeegaardData heegaard_from_json(const Json &j, PresentationPtr manifold);

// Array or {"schema"?, "entries": [...]} of {"tau", "spectral_flow", "cs"}.
std::vector<StationaryPhaseEntry> fg_entries_from_json(const Json &j);

struct CsEntry {
  std::optional<std::string> point_id;
  std::optional<std::string> fingerprint;
  double cs = 0.0;
};

// Array or {"schema"?, "entries": [...]} of {"point_id"|"fingerprint", "cs"}.
std::vector<CsEntry> cs_table_from_json(const Json &j);

// Sets cs_value on every point. A row matches a point by point_id or by
// fingerprint; every point must be matched exactly once and every row must
// match something, otherwise InputError.
void apply_cs_table(std::vector<ModuliPoint> &points, const std::vector<CsEntry> &table);

// Custom moduli input:
// {"schema"?, "presentation": {...}, "points": [{"point_id", "rep",
//  "component_dim"?, "weight"?, "torsion"?}], "heegaard"?: {...}}
struct CustomModuliInput {
  ModuliParams params;
  std::optional<HeegaardData> heegaard;
};
CustomModuliInput custom_moduli_from_json(const Json &j);

Json to_json(const StratumLabel &label);
Json to_json(const CohomologySummary &h);
Json to_json(const StrataCensus &c);
Json to_json(const SymplecticAudit &a);
Json to_json(const TorsionValue &t);
Json to_json(const CleanVerdict &v);
Json to_json(const ModuliPoint &p);
Json to_json(const InvariantResult &r);

} // namespace flatstrata
