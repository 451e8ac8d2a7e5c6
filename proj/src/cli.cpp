#include "flatstrata/cli.hpp"

#include "flatstrata/cohomology.hpp"
#include "flatstrata/errors.hpp"
#include "flatstrata/json_io.hpp"
#include "flatstrata/moduli.hpp"
#include "flatstrata/stratification.hpp"
#include "flatstrata/symplectic.hpp"
#include "flatstrata/torsion.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>

namespace flatstrata {

namespace {

struct RunConfig {
  double tolerance = 1e-8;
  std::uint64_t seed = 0;
  int samples = 100;
  std::string format = "json";
  int threads = 1; // never reported: output must not depend on it
  int genus = 2;
};

struct Options {
  RunConfig run;
  std::vector<std::string> files;
  std::string part = "full";
  bool polish = false;
  std::string example;
  int p = 1;
  int q = 1;
  int k = 0;
  int nodes = 8;
  std::string cs_table;
  std::string custom;
  std::string entries;
};

Tolerances tolerances_of(const RunConfig &run) {
  Tolerances tol;
  tol.rank = run.tolerance;
  return tol;
}

void validate(const RunConfig &run) {
  if (!(run.tolerance > 0.0 && run.tolerance < 1e-2))
    throw InputError("--tol must lie in (0, 1e-2)");
  if (run.samples < 1)
    throw InputError("--samples must be at least 1");
  if (run.threads < 1)
    throw InputError("--threads must be at least 1");
  if (run.genus < 1)
    throw InputError("--genus must be at least 1");
}

// Every report carries its configuration and the metric conventions.
Json envelope(const std::string &command, const RunConfig &run, Json result) {
  Json out;
  out["schema"] = kSchemaVersion;
  out["command"] = command;
  for (auto &[key, value] : result.items())
    out[key] = std::move(value);
  out["config"] = Json{{"tolerance", run.tolerance},
                       {"seed", run.seed},
                       {"samples", run.samples},
                       {"genus", run.genus},
                       {"format", run.format}};
  out["conventions"] = Json{{"metric", kMetricConvention}, {"torsion", kTorsionConvention}};
  return out;
}

std::string scalar_text(const Json &v) {
  if (v.is_string())
    return v.get<std::string>();
  return v.dump();
}

void flatten(const Json &j, const std::string &prefix, std::vector<std::pair<std::string, std::string>> &rows) {
  if (j.is_object() && !j.empty()) {
    for (const auto &[key, value] : j.items())
      flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else {
    rows.emplace_back(prefix, scalar_text(j));
  }
}

void emit(std::ostream &out, const RunConfig &run, const Json &report) {
  if (run.format == "json") {
    out << report.dump(2) << '\n';
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto &r : rows)
    width = std::max(width, r.first.size());
  for (const auto &[key, value] : rows)
    out << key << std::string(width - key.size() + 2, ' ') << value << '\n';
}

std::string format_complex(std::complex<double> z) {
  // avoid printing "-0.000000"
  auto clean = [](double x) { return std::abs(x) < 5e-7 ? 0.0 : x; };
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f%+.6fi", clean(z.real()), clean(z.imag()));
  return buf;
}

Representation load_rep(const Options &o, const PresentationPtr &pres, const Tolerances &tol) {
  Representation rep = representation_from_json(read_json_file(o.files.at(1)), pres);
  if (o.polish)
    rep = polish_representation(rep, tol.relator);
  return rep;
}

void need_files(const Options &o, std::size_t n, const std::string &usage) {
  if (o.files.size() != n)
    throw InputError("expected " + usage);
}

CoefficientPart parse_part(const std::string &s) {
  if (s == "full")
    return CoefficientPart::full;
  if (s == "stabilizer")
    return CoefficientPart::stabilizer;
  if (s == "complement")
    return CoefficientPart::complement;
  throw InputError("--part must be full, stabilizer or complement");
}

Json run_classify(const Options &o) {
  need_files(o, 2, "<presentation.json> <representation.json>");
  const Tolerances tol = tolerances_of(o.run);
  const auto pres = presentation_from_json(read_json_file(o.files[0]));
  const Representation rep = load_rep(o, pres, tol);
  rep.require_relators(tol.relator);
  Json out;
  out["stratum"] = to_json(classify_stratum(rep, tol));
  out["relator_residual"] = rep.relator_residual();
  return out;
}

Json run_cohomology(const Options &o) {
  need_files(o, 2, "<presentation.json> <representation.json>");
  const Tolerances tol = tolerances_of(o.run);
  const auto pres = presentation_from_json(read_json_file(o.files[0]));
  const Representation rep = load_rep(o, pres, tol);
  Json out = to_json(restrict_coefficients(rep, parse_part(o.part), tol));
  out["part"] = o.part;
  out["relator_residual"] = rep.relator_residual();
  return out;
}

Json run_strata_scan(const Options &o) {
  const StrataCensus c =
      strata_census(o.run.genus, o.run.samples, o.run.seed, o.run.threads, tolerances_of(o.run));
  return to_json(c);
}

Json run_symplectic(const Options &o) {
  return to_json(symplectic_audit(o.run.genus, o.run.samples, o.run.seed, tolerances_of(o.run)));
}

ModuliParams moduli_params(const Options &o) {
  ModuliParams params;
  params.p = o.p;
  params.q = o.q;
  if (o.nodes < 1)
    throw InputError("--nodes must be at least 1");
  params.chart_nodes = o.nodes;
  return params;
}

ModuliCatalogue catalogue_for(const Options &o) {
  const ManifoldExample ex = parse_example(o.example);
  ModuliParams params = moduli_params(o);
  std::optional<HeegaardData> heegaard;
  if (ex == ManifoldExample::custom) {
    if (o.custom.empty())
      throw InputError("--example custom needs --custom <moduli.json>");
    CustomModuliInput in = custom_moduli_from_json(read_json_file(o.custom));
    params.custom_presentation = in.params.custom_presentation;
    params.candidates = std::move(in.params.candidates);
    heegaard = std::move(in.heegaard);
  } else if (!o.custom.empty()) {
    throw InputError("--custom only applies to --example custom");
  }
  return build_catalogue(ex, params, heegaard, tolerances_of(o.run), o.run.threads);
}

Json example_json(const Options &o) {
  Json ex{{"name", o.example}};
  if (parse_example(o.example) == ManifoldExample::lens) {
    ex["p"] = o.p;
    ex["q"] = o.q;
  }
  ex["chart_nodes"] = o.nodes;
  return ex;
}

Json run_torsion(const Options &o) {
  const Tolerances tol = tolerances_of(o.run);
  Json out;
  if (!o.example.empty()) {
    if (!o.files.empty())
      throw InputError("torsion: give either --example or input files, not both");
    const ModuliCatalogue cat = catalogue_for(o);
    out["example"] = example_json(o);
    Json pts = Json::array();
    for (const auto &p : cat.points)
      pts.push_back(to_json(p));
    out["points"] = std::move(pts);
    return out;
  }
  switch (o.files.size()) {
  case 1: {
    const MetricSequence seq = metric_sequence_from_json(read_json_file(o.files[0]));
    const TorsionValue t = sequence_torsion(seq, tol);
    out = to_json(t);
    out["mode"] = "sequence";
    return out;
  }
  case 2: {
    const auto pres = presentation_from_json(read_json_file(o.files[0]));
    if (pres->kind() != PresentationKind::free)
      throw InputError("torsion: a (presentation, representation) pair must use a free presentation");
    const Representation rep = load_rep(o, pres, tol);
    const VolumeValue v = jw_volume(rep, tol);
    out = to_json(v.volume);
    out["half_density"] = v.half_density.value;
    out["stratum"] = v.stratum;
    out["mode"] = "handlebody";
    return out;
  }
  case 3: {
    const auto pres = presentation_from_json(read_json_file(o.files[0]));
    const Representation rep = load_rep(o, pres, tol);
    const HeegaardData h = heegaard_from_json(read_json_file(o.files[2]), pres);
    rep.require_relators(tol.relator);
    const StratumLabel label = classify_stratum(rep, tol);
    TorsionValue t;
    if (label.i != 0)
      t = mv_torsion_at(rep, h, label.i == 1 ? CoefficientPart::stabilizer : CoefficientPart::full, tol);
    out = to_json(t);
    out["stratum"] = to_json(label);
    out["mode"] = "mayer_vietoris";
    return out;
  }
  default:
    throw InputError("torsion: expected <sequence.json>, <presentation.json> <representation.json>, "
                     "or those plus <heegaard.json>, or --example");
  }
}

Json run_invariant(const Options &o) {
  if (o.example.empty())
    throw InputError("invariant: --example is required");
  if (!o.files.empty())
    throw InputError("invariant: unexpected positional arguments");
  ModuliCatalogue cat = catalogue_for(o);
  std::string cs_source = "default-zero";
  if (!o.cs_table.empty()) {
    apply_cs_table(cat.points, cs_table_from_json(read_json_file(o.cs_table)));
    cs_source = o.cs_table;
  }
  const InvariantResult r = assemble_invariant(cat.points, o.k);
  Json out;
  out["example"] = example_json(o);
  out["cs_source"] = cs_source;
  const Json summary = to_json(r);
  for (const auto &[key, value] : summary.items())
    out[key] = value;
  Json pts = Json::array();
  for (const auto &p : cat.points)
    pts.push_back(to_json(p));
  out["points"] = std::move(pts);
  return out;
}

Json run_fg_sum(const Options &o) {
  if (o.entries.empty())
    throw InputError("fg-sum: --entries is required");
  const auto entries = fg_entries_from_json(read_json_file(o.entries));
  const std::complex<double> z = stationary_phase_fg(entries, o.k);
  Json out;
  out["k"] = o.k;
  out["entries"] = entries.size();
  out["value"] = to_json(z);
  out["formatted"] = format_complex(z);
  return out;
}

void add_run_options(CLI::App *sub, RunConfig &run, bool sampling) {
  sub->add_option("--tol", run.tolerance, "rank tolerance, in (0, 1e-2)");
  sub->add_option("--format", run.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  if (sampling) {
    sub->add_option("--seed", run.seed, "random seed");
    sub->add_option("--samples", run.samples, "number of samples");
    sub->add_option("--genus", run.genus, "genus g");
  }
  sub->add_option("--threads", run.threads, "worker threads (results do not depend on it)");
}

} // namespace

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"flatstrata: stratified SU(2) flat-connection moduli", "flatstrata"};
  app.require_subcommand(1);
  Options o;

  auto *classify = app.add_subcommand("classify", "stratum label of a representation");
  auto *coh = app.add_subcommand("cohomology", "twisted cohomology dimensions");
  auto *scan = app.add_subcommand("strata-scan", "census of random free-group tuples");
  auto *symp = app.add_subcommand("symplectic-check", "audit of the surface symplectic form");
  auto *tors = app.add_subcommand("torsion", "torsion of a sequence, handlebody or splitting");
  auto *inv = app.add_subcommand("invariant", "stratified invariant sum for an example manifold");
  auto *fg = app.add_subcommand("fg-sum", "stationary-phase sum from tabulated entries");

  for (auto *sub : {classify, coh, tors}) {
    add_run_options(sub, o.run, false);
    sub->add_option("files", o.files, "input JSON files");
    sub->add_flag("--polish", o.polish, "project the representation onto the relator variety first");
  }
  coh->add_option("--part", o.part, "full, stabilizer or complement");
  add_run_options(scan, o.run, true);
  add_run_options(symp, o.run, true);
  add_run_options(inv, o.run, false);
  add_run_options(fg, o.run, false);
  for (auto *sub : {tors, inv}) {
    sub->add_option("--example", o.example, "S3, S1xS2, lens, T3 or custom");
    sub->add_option("--p", o.p, "lens space p");
    sub->add_option("--q", o.q, "lens space q");
    sub->add_option("--nodes", o.nodes, "chart nodes per angle");
    sub->add_option("--custom", o.custom, "moduli JSON for --example custom");
  }
  inv->add_option("--k", o.k, "level");
  inv->add_option("--cs-table", o.cs_table, "Chern-Simons values JSON");
  fg->add_option("--k", o.k, "level");
  fg->add_option("--entries", o.entries, "entries JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  const CLI::App *sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    validate(o.run);
    Json result;
    if (name == "classify")
      result = run_classify(o);
    else if (name == "cohomology")
      result = run_cohomology(o);
    else if (name == "strata-scan")
      result = run_strata_scan(o);
    else if (name == "symplectic-check")
      result = run_symplectic(o);
    else if (name == "torsion")
      result = run_torsion(o);
    else if (name == "invariant")
      result = run_invariant(o);
    else
      result = run_fg_sum(o);
    emit(out, o.run, envelope(name, o.run, std::move(result)));
    return 0;
  } catch (const InputError &e) {
    err << "input error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError &e) {
    err << "domain error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

} // namespace flatstrata
