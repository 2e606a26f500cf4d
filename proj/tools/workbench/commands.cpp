#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "reference.hpp"

namespace zfs::cli {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return kParse;
    case ErrorKind::Numeric: return kNumeric;
    case ErrorKind::Resource: return kResource;
    case ErrorKind::Config:
    case ErrorKind::InvalidInput:
    case ErrorKind::UnsupportedRepresentation:
    case ErrorKind::PeriodicImage: return kConfig;
  }
  return kConfig;
}

namespace {

Json input_json(const RunConfig& rc) {
  Json in;
  if (rc.manifest) {
    in["manifest"] = rc.manifest->generic_string();
  } else {
    in["model"] = {{"kind", "biradical"},
                   {"separation_bohr", number(rc.model.separation)},
                   {"width_bohr", number(rc.model.width)},
                   {"spectator_pairs", rc.model.spectator_pairs},
                   {"contamination", number(rc.model.contamination)}};
  }
  if (rc.grid) in["grid"] = {{"points", rc.grid->points}, {"edge_bohr", number(rc.grid->edge)}};
  return in;
}

Json header(const char* kind, const RunConfig& rc, const OrbitalSet& set) {
  Json doc;
  doc["schema_version"] = results_schema_version;
  doc["kind"] = kind;
  doc["label"] = rc.label;
  doc["input"] = input_json(rc);
  doc["S"] = number(set.S().value());
  doc["mS"] = number(set.mS().value());
  return doc;
}

// D = d / (S (S - 1/2)) has no meaning below S = 1; report a zero tensor then.
SpinTensor safe_D(const SpinTensor& d, SpinQuantum S, std::vector<std::string>& warnings) {
  if (S.twice() >= 2) return d_to_D(d, S);
  warnings.push_back("S = " + to_string(S) + " has no zero-field splitting; D reported as zero");
  return d * 0.0;
}

Json zfs_json(const SpinTensor& D) {
  return Json{{"tensor", tensor_json(D)}, {"parameters", parameters_json(extract_parameters(D))}};
}

Json warnings_json(const std::vector<std::string>& w) {
  Json a = Json::array();
  for (const auto& s : w) a.push_back(s);
  return a;
}

void write_pairs_file(const CouplingResult& r, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Resource, path.string() + ": cannot open for writing");
  write_pair_table(out, r);
  if (!out) fail(ErrorKind::Resource, path.string() + ": write failed");
}

OrbitalSet load_low(const RunConfig& rc, const std::filesystem::path& path, const OrbitalSet& high) {
  OrbitalSet low = load_manifest(path);
  if (rc.grid) low = grid_input(low, *rc.grid);
  if (low.S() != high.S() || low.mS().twice() != high.S().twice() - 2) {
    fail(ErrorKind::Config, path.string() + ": low-spin input must have S = " + to_string(high.S()) +
                                " and mS = S - 1, got S = " + to_string(low.S()) + ", mS = " + to_string(low.mS()));
  }
  return low;
}

}  // namespace

Json compute_document(const RunConfig& rc) {
  if (rc.correction) return decontaminate_document(rc);
  const OrbitalSet set = load_input(rc);
  const CouplingResult r = assemble_d(set, rc.engine);
  std::vector<std::string> warnings = r.warnings;
  const SpinTensor D = safe_D(r.d_total, set.S(), warnings);

  Json doc = header("compute", rc, set);
  doc["engine"] = engine_json(r, rc.engine);
  doc["d"] = tensor_json(r.d_total);
  doc["blocks"] = blocks_json(r);
  doc["D_uncorrected"] = zfs_json(D);
  doc["warnings"] = warnings_json(warnings);
  if (rc.pairs) write_pairs_file(r, *rc.pairs);
  return doc;
}

Json decontaminate_document(const RunConfig& rc) {
  if (rc.auto_flip && !rc.low_spin.empty()) {
    fail(ErrorKind::Config, "choose either --auto-flip or --low inputs, not both");
  }
  if (!rc.auto_flip && rc.low_spin.empty()) {
    fail(ErrorKind::Config, "missing low-spin inputs: give --low manifests or --auto-flip");
  }
  const OrbitalSet high = load_input(rc);
  const SymmetryGroup group = resolve_group(rc);

  CouplingResult high_result;
  std::vector<CouplingResult> low_results;
  std::vector<std::string> low_names;
  DecontaminationReport report;
  if (rc.auto_flip) {
    if (rc.manifest && !load_manifest(*rc.manifest).is_analytic()) {
      fail(ErrorKind::Config, "--auto-flip needs a builtin model or an analytic manifest");
    }
    AutoFlipRun run = decontaminate_auto_flip(high, rc.engine, group, rc.weights);
    // same order as enumerate_low_configs
    for (std::size_t i = 0; i < high.size(); ++i) {
      const auto& e = high[i];
      if (e.block == Block::I && e.spin == SpinChannel::Up && e.occupied()) {
        low_names.push_back("flip:" + (e.label.empty() ? std::to_string(i) : e.label));
      }
    }
    high_result = std::move(run.high);
    low_results = std::move(run.lows);
    report = std::move(run.report);
  } else {
    if (!rc.weights.empty() && rc.weights.size() != rc.low_spin.size()) {
      fail(ErrorKind::Config, std::to_string(rc.weights.size()) + " weights given for " +
                                  std::to_string(rc.low_spin.size()) + " low-spin inputs");
    }
    high_result = assemble_d(high, rc.engine);
    std::vector<SpinTensor> d_lows;
    for (const auto& path : rc.low_spin) {
      low_results.push_back(assemble_d(load_low(rc, path, high), rc.engine));
      d_lows.push_back(low_results.back().d_total);
      low_names.push_back(path.generic_string());
    }
    report = decontaminate(high_result.d_total, d_lows, high.S(), group, rc.weights);
  }

  std::vector<std::string> warnings = high_result.warnings;
  for (const auto& r : low_results) {
    for (const auto& w : r.warnings) warnings.push_back(w);
  }

  Json doc = header("decontaminate", rc, high);
  doc["engine"] = engine_json(high_result, rc.engine);
  doc["d_high"] = tensor_json(report.d_high);
  doc["blocks_high"] = blocks_json(high_result);
  Json lows = Json::array();
  for (std::size_t i = 0; i < low_results.size(); ++i) {
    lows.push_back({{"source", low_names[i]}, {"weight", number(report.weights[i])}, {"d", tensor_json(report.d_low_each[i])}});
  }
  doc["d_low"] = lows;
  doc["symmetry_group"] = {{"name", rc.group_file ? "custom" : rc.group}, {"order", group.order()}};
  doc["d_low_mean"] = tensor_json(report.d_low_mean);
  doc["D_uncorrected"] = zfs_json(report.D_uncorrected);
  doc["D_tilde"] = zfs_json(report.D_tilde);
  doc["warnings"] = warnings_json(warnings);
  if (rc.pairs) write_pairs_file(high_result, *rc.pairs);
  return doc;
}

std::vector<std::string> scan_columns() {
  return {"separation", "D_uncorrected", "E_uncorrected", "D_tilde", "E_tilde", "d_I_I_zz", "d_I_II_zz", "d_II_II_zz"};
}

void write_scan(const RunConfig& rc, std::ostream& out) {
  if (rc.manifest) fail(ErrorKind::Config, "scan runs on the builtin model; drop --manifest");
  if (rc.scan.steps <= 1) fail(ErrorKind::Config, "scan needs at least 2 steps, got " + std::to_string(rc.scan.steps));
  if (!(rc.scan.from > 0.0 && rc.scan.to > 0.0)) fail(ErrorKind::Config, "scan separations must be positive");

  const std::vector<std::string> all = scan_columns();
  std::vector<std::string> cols = rc.scan.columns.empty() ? all : rc.scan.columns;
  for (const auto& c : cols) {
    if (std::find(all.begin(), all.end(), c) == all.end()) {
      std::string list;
      for (const auto& a : all) list += (list.empty() ? "" : ", ") + a;
      fail(ErrorKind::Config, "unknown scan column '" + c + "' (available: " + list + ")");
    }
  }

  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_field(cols[i]);
  out << "\r\n";
  for (int s = 0; s < rc.scan.steps; ++s) {
    const double t = static_cast<double>(s) / (rc.scan.steps - 1);
    RunConfig point = rc;
    point.model.separation = rc.scan.from + t * (rc.scan.to - rc.scan.from);
    const OrbitalSet set = load_input(point);
    const AutoFlipRun run = decontaminate_auto_flip(set, rc.engine);
    const auto& rep = run.report;
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const std::string& c = cols[i];
      double v = 0.0;
      if (c == "separation") v = point.model.separation;
      else if (c == "D_uncorrected") v = rep.uncorrected_parameters.D;
      else if (c == "E_uncorrected") v = rep.uncorrected_parameters.E;
      else if (c == "D_tilde") v = rep.tilde_parameters.D;
      else if (c == "E_tilde") v = rep.tilde_parameters.E;
      else if (c == "d_I_I_zz") v = run.high.block(BlockPair::I_I)(2, 2);
      else if (c == "d_I_II_zz") v = run.high.block(BlockPair::I_II)(2, 2);
      else if (c == "d_II_II_zz") v = run.high.block(BlockPair::II_II)(2, 2);
      out << (i ? "," : "") << format_number(v);
    }
    out << "\r\n";
  }
}

namespace {

struct ReportRow {
  std::string source;
  std::string label;
  std::string S;
  std::optional<double> D_unc, E_unc, D_corr, E_corr, D_expt, E_expt;
};

std::optional<double> read_parameter(const nlohmann::json& doc, const char* block, const char* name,
                                     const std::filesystem::path& path) {
  if (!doc.contains(block)) return std::nullopt;
  const auto& b = doc[block];
  if (!b.contains("parameters") || !b["parameters"].contains(name) || !b["parameters"][name].is_number()) {
    fail(ErrorKind::Parse, path.string() + ": " + block + ".parameters." + name + " missing");
  }
  const auto& p = b["parameters"];
  const EnergyUnit unit = p.contains("unit") && p["unit"].is_string() ? parse_energy_unit(p["unit"].get<std::string>())
                                                                       : EnergyUnit::MHz;
  return convert(p[name].get<double>(), unit, EnergyUnit::MHz);
}

ReportRow result_row(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, path.string() + ": cannot open result file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("schema_version") || !doc.contains("D_uncorrected")) {
    fail(ErrorKind::Parse, path.string() + ": not a zfskit result file");
  }
  ReportRow row;
  row.source = "computed";
  row.label = doc.contains("label") && doc["label"].is_string() && !doc["label"].get<std::string>().empty()
                  ? doc["label"].get<std::string>()
                  : path.stem().string();
  if (doc.contains("S") && doc["S"].is_number()) row.S = to_string(SpinQuantum::from_value(doc["S"].get<double>()));
  row.D_unc = read_parameter(doc, "D_uncorrected", "D", path);
  row.E_unc = read_parameter(doc, "D_uncorrected", "E", path);
  row.D_corr = read_parameter(doc, "D_tilde", "D", path);
  row.E_corr = read_parameter(doc, "D_tilde", "E", path);
  return row;
}

ReportRow reference_row(const ReferenceRecord& r) {
  return ReportRow{"reference: " + std::string(r.source), std::string(r.label),
                   to_string(SpinQuantum::from_twice(r.twice_S)), r.D_uncorrected, r.E_uncorrected,
                   r.D_corrected, r.E_corrected, r.D_expt, r.E_expt};
}

std::string fixed1(const std::optional<double>& v) {
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", *v);
  return std::string(buf) == "-0.0" ? "0.0" : buf;
}

}  // namespace

void write_report(const ReportOptions& options, std::ostream& out) {
  std::vector<ReportRow> rows;
  for (const auto& p : options.results) rows.push_back(result_row(p));
  std::vector<const ReferenceRecord*> refs;
  for (const auto& label : options.references) {
    const ReferenceRecord* r = find_reference(label);
    if (!r) {
      std::string list;
      for (const auto& rec : reference_records()) list += (list.empty() ? "" : ", ") + std::string(rec.label);
      fail(ErrorKind::Config, "unknown reference label '" + label + "' (available: " + list + ")");
    }
    refs.push_back(r);
  }
  if (options.results.empty() && refs.empty()) {
    for (const auto& rec : reference_records()) refs.push_back(&rec);
  }
  for (const auto* r : refs) rows.push_back(reference_row(*r));

  const std::vector<std::string> head = {"label", "S", "D_uncorrected", "E_uncorrected", "D_corrected",
                                         "E_corrected", "D_expt", "E_expt", "source"};
  auto cells = [&](const ReportRow& r, bool csv) {
    auto num = [&](const std::optional<double>& v) { return csv ? (v ? format_number(*v) : "") : fixed1(v); };
    return std::vector<std::string>{r.label, r.S, num(r.D_unc), num(r.E_unc), num(r.D_corr),
                                    num(r.E_corr), num(r.D_expt), num(r.E_expt), r.source};
  };

  if (options.csv) {
    for (std::size_t i = 0; i < head.size(); ++i) out << (i ? "," : "") << head[i];
    out << ",unit\r\n";
    for (const auto& r : rows) {
      const auto c = cells(r, true);
      for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << csv_field(c[i]);
      out << ",MHz\r\n";
    }
    return;
  }

  std::vector<std::size_t> width(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) width[i] = head[i].size();
  std::vector<std::vector<std::string>> table;
  for (const auto& r : rows) {
    table.push_back(cells(r, false));
    for (std::size_t i = 0; i < head.size(); ++i) width[i] = std::max(width[i], table.back()[i].size());
  }
  auto line = [&](const std::vector<std::string>& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const bool numeric = i >= 2 && i + 1 < c.size();
      if (i) out << "  ";
      if (i + 1 == c.size()) {
        out << c[i];
      } else {
        out << (numeric ? std::right : std::left) << std::setw(static_cast<int>(width[i])) << c[i];
      }
    }
    out << '\n';
  };
  out << "All values in MHz.\n";
  line(head);
  for (const auto& c : table) line(c);
}

namespace {

// Flags shared by compute, decontaminate, scan and oracle brute.
struct InputFlags {
  std::string config;
  std::string manifest;
  std::string label;
  double separation = 0, width = 0, contamination = 0;
  int spectators = 0;
  int grid_points = 0;
  double grid_edge = 0;
  std::string path, exchange, unit;
  double cutoff = 0, screening = 0;
  std::string output, pairs;
  std::map<std::string, CLI::Option*> opt;

  bool given(const std::string& name) const {
    auto it = opt.find(name);
    return it != opt.end() && it->second->count() > 0;
  }
};

void add_input_flags(CLI::App* app, InputFlags& f, bool with_engine, bool with_output) {
  f.opt["config"] = app->add_option("-c,--config", f.config, "TOML-style run config; flags override it");
  f.opt["manifest"] = app->add_option("-m,--manifest", f.manifest, "orbital-set manifest (JSON)");
  f.opt["label"] = app->add_option("--label", f.label, "label stored in the result");
  f.opt["separation"] = app->add_option("--separation", f.separation, "builtin model: radical distance (Bohr)");
  f.opt["width"] = app->add_option("--width", f.width, "builtin model: Gaussian width (Bohr)");
  f.opt["spectators"] = app->add_option("--spectators", f.spectators, "builtin model: doubly occupied pairs");
  f.opt["contamination"] = app->add_option("--contamination", f.contamination, "builtin model: in [0, 1]");
  f.opt["grid-points"] = app->add_option("--grid-points", f.grid_points, "sample analytic input on N^3 points");
  f.opt["grid-edge"] = app->add_option("--grid-edge", f.grid_edge, "edge of the sampling cell (Bohr)");
  if (with_engine) {
    f.opt["path"] = app->add_option("--path", f.path, "grid kernel: direct | spectral");
    f.opt["exchange"] = app->add_option("--exchange", f.exchange, "all_pairs | same_spin_only");
    f.opt["cutoff"] = app->add_option("--cutoff", f.cutoff, "minimum-image cutoff (Bohr)");
    f.opt["screening"] = app->add_option("--screening", f.screening, "relative density screening threshold");
  }
  f.opt["unit"] = app->add_option("--unit", f.unit, "output unit: MHz | cm-1 | ueV | Hartree");
  if (with_output) {
    f.opt["output"] = app->add_option("-o,--output", f.output, "output file (default: stdout)");
  }
}

RunConfig build_config(const InputFlags& f) {
  RunConfig rc;
  if (f.given("config")) apply_config_file(ConfigFile::parse(f.config), rc);
  if (f.given("manifest")) rc.manifest = f.manifest;
  if (f.given("label")) rc.label = f.label;
  if (f.given("separation")) rc.model.separation = f.separation;
  if (f.given("width")) rc.model.width = f.width;
  if (f.given("spectators")) rc.model.spectator_pairs = f.spectators;
  if (f.given("contamination")) rc.model.contamination = f.contamination;
  if (f.given("grid-points") || f.given("grid-edge")) {
    GridSpec g = rc.grid.value_or(GridSpec{});
    if (f.given("grid-points")) g.points = f.grid_points;
    if (f.given("grid-edge")) g.edge = f.grid_edge;
    rc.grid = g;
  }
  try {
    if (f.given("path")) rc.engine.path = parse_kernel_path(f.path);
    if (f.given("exchange")) rc.engine.exchange_scope = parse_exchange_scope(f.exchange);
    if (f.given("unit")) rc.engine.unit = parse_energy_unit(f.unit);
  } catch (const Error& e) {
    fail(ErrorKind::Config, e.what());
  }
  if (f.given("cutoff")) rc.engine.cutoff = f.cutoff;
  if (f.given("screening")) rc.engine.screening = f.screening;
  if (f.given("output")) rc.output = f.output;
  return rc;
}

struct CorrectionFlags {
  bool correct = false;
  std::vector<std::string> low;
  bool auto_flip = false;
  std::string group;
  std::vector<double> axis;
  std::string group_file;
  std::vector<double> weights;
  std::map<std::string, CLI::Option*> opt;

  bool given(const std::string& name) const {
    auto it = opt.find(name);
    return it != opt.end() && it->second->count() > 0;
  }
};

void add_correction_flags(CLI::App* app, CorrectionFlags& f) {
  f.opt["low"] = app->add_option("--low", f.low, "mS = S-1 manifest (repeatable)");
  f.opt["auto-flip"] = app->add_flag("--auto-flip", f.auto_flip, "build mS = S-1 sets by flipping block-I spins");
  f.opt["group"] = app->add_option("--group", f.group, "symmetrization group: C1 | C3 | C3v");
  f.opt["axis"] = app->add_option("--axis", f.axis, "group axis, three numbers")->expected(3)->delimiter(',');
  f.opt["group-file"] = app->add_option("--group-file", f.group_file, "JSON list of 3x3 operations");
  f.opt["weights"] = app->add_option("--weights", f.weights, "weights of the mS = S-1 tensors")->delimiter(',');
}

void apply_correction(const CorrectionFlags& f, RunConfig& rc) {
  if (f.given("low")) {
    rc.low_spin.assign(f.low.begin(), f.low.end());
    rc.auto_flip = false;
  }
  if (f.given("auto-flip")) {
    rc.auto_flip = true;
    if (!f.given("low")) rc.low_spin.clear();
  }
  if (f.given("group")) rc.group = f.group;
  if (f.given("axis")) rc.axis = Vector3(f.axis[0], f.axis[1], f.axis[2]);
  if (f.given("group-file")) rc.group_file = f.group_file;
  if (f.given("weights")) rc.weights = f.weights;
}

void emit(const std::optional<std::filesystem::path>& path, std::ostream& out, const std::string& text) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path, std::ios::binary);
  if (!file) fail(ErrorKind::Resource, path->string() + ": cannot open for writing");
  file << text;
  if (!file) fail(ErrorKind::Resource, path->string() + ": write failed");
}

std::string dump(const Json& doc) {
  std::ostringstream s;
  write_json(doc, s);
  return s.str();
}

Vector3 parse_point(const std::vector<double>& v, const char* flag) {
  if (v.size() != 3) fail(ErrorKind::Config, std::string(flag) + " needs three numbers");
  return Vector3(v[0], v[1], v[2]);
}

Json oracle_document(const char* which, const SpinTensor& d, SpinQuantum S, std::vector<std::string> warnings) {
  Json doc;
  doc["schema_version"] = results_schema_version;
  doc["kind"] = "oracle";
  doc["oracle"] = which;
  doc["S"] = number(S.value());
  doc["d"] = tensor_json(d);
  doc["D_uncorrected"] = zfs_json(safe_D(d, S, warnings));
  doc["warnings"] = warnings_json(warnings);
  return doc;
}

bool has_extension(const std::filesystem::path& p, const char* ext) {
  std::string e = p.extension().string();
  for (char& c : e) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return e == ext;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"zfskit: spin-spin zero-field splitting from orbital sets"};
  app.require_subcommand(1);
  int threads = 0;
  auto* threads_opt = app.add_option("--threads", threads, "worker threads (overrides ZFSKIT_NUM_THREADS)");

  InputFlags compute_in;
  CorrectionFlags compute_corr;
  std::string pairs_path;
  auto* compute = app.add_subcommand("compute", "coupling tensor d, D and E of one spin state");
  add_input_flags(compute, compute_in, true, true);
  add_correction_flags(compute, compute_corr);
  compute_corr.opt["correct"] = compute->add_flag("--correct", compute_corr.correct, "also apply the correction");
  auto* pairs_opt = compute->add_option("--pairs", pairs_path, "write the per-pair table (CSV)");

  InputFlags decon_in;
  CorrectionFlags decon_corr;
  std::string decon_pairs;
  auto* decon = app.add_subcommand("decontaminate", "spin-contamination corrected D from mS = S and mS = S-1 states");
  add_input_flags(decon, decon_in, true, true);
  add_correction_flags(decon, decon_corr);
  auto* decon_pairs_opt = decon->add_option("--pairs", decon_pairs, "write the high-spin per-pair table (CSV)");

  InputFlags scan_in;
  double scan_from = 0, scan_to = 0;
  int scan_steps = 0;
  std::vector<std::string> scan_cols;
  auto* scan = app.add_subcommand("scan", "sweep the builtin model's separation (CSV)");
  add_input_flags(scan, scan_in, true, true);
  auto* from_opt = scan->add_option("--from", scan_from, "first separation (Bohr)");
  auto* to_opt = scan->add_option("--to", scan_to, "last separation (Bohr)");
  auto* steps_opt = scan->add_option("--steps", scan_steps, "number of rows (>= 2)");
  auto* cols_opt = scan->add_option("--columns", scan_cols, "comma-separated subset of columns")->delimiter(',');

  ReportOptions report_opts;
  std::vector<std::string> report_results;
  bool report_list = false;
  std::string report_out;
  auto* report = app.add_subcommand("report", "computed results next to the shipped reference table");
  report->add_option("results", report_results, "result JSON files");
  report->add_option("--ref", report_opts.references, "reference label (repeatable)");
  report->add_flag("--list", report_list, "list reference labels");
  report->add_flag("--csv", report_opts.csv, "CSV instead of an aligned table");
  auto* report_out_opt = report->add_option("-o,--output", report_out, "output file (default: stdout)");

  auto* oracle = app.add_subcommand("oracle", "independent reference calculations");
  oracle->require_subcommand(1);
  std::vector<double> r1, r2;
  bool opposite = false;
  double point_S = 1.0;
  std::string point_unit = "MHz";
  std::string point_out;
  auto* point = oracle->add_subcommand("point", "two point spins");
  point->add_option("--r1", r1, "first position (Bohr)")->required()->expected(3)->delimiter(',');
  point->add_option("--r2", r2, "second position (Bohr)")->required()->expected(3)->delimiter(',');
  point->add_flag("--opposite", opposite, "spins in opposite channels");
  point->add_option("--S", point_S, "total spin used for D");
  point->add_option("--unit", point_unit, "output unit");
  auto* point_out_opt = point->add_option("-o,--output", point_out, "output file (default: stdout)");
  InputFlags brute_in;
  int brute_points = 24;
  double brute_padding = 6.0;
  auto* brute = oracle->add_subcommand("brute", "literal voxel-pair double sum");
  add_input_flags(brute, brute_in, false, true);
  brute_in.opt["exchange"] = brute->add_option("--exchange", brute_in.exchange, "all_pairs | same_spin_only");
  brute->add_option("--points", brute_points, "points per axis for analytic input");
  brute->add_option("--padding", brute_padding, "box padding for analytic input (Bohr)");

  std::string conv_in, conv_out;
  int conv_index = -1;
  int conv_points = 0;
  double conv_edge = 0;
  auto* convert = app.add_subcommand("convert", "cube round trip, or sample manifest orbitals to cube files");
  convert->add_option("input", conv_in, "cube or manifest")->required();
  convert->add_option("output", conv_out, "cube or manifest")->required();
  convert->add_option("--orbital", conv_index, "manifest entry to write as a cube");
  auto* conv_points_opt = convert->add_option("--grid-points", conv_points, "sampling points per axis");
  auto* conv_edge_opt = convert->add_option("--grid-edge", conv_edge, "sampling cell edge (Bohr)");

  try {
    configure_threads_from_env();
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) return app.exit(e, out, err);
      err << "zfskit: " << e.what() << '\n';
      return kConfig;
    }
    if (threads_opt->count()) {
      if (threads < 1) fail(ErrorKind::Config, "--threads must be positive");
      set_thread_count(threads);
    }

    if (compute->parsed()) {
      RunConfig rc = build_config(compute_in);
      apply_correction(compute_corr, rc);
      if (compute_corr.correct) rc.correction = true;
      if (pairs_opt->count()) rc.pairs = pairs_path;
      emit(rc.output, out, dump(compute_document(rc)));
    } else if (decon->parsed()) {
      RunConfig rc = build_config(decon_in);
      apply_correction(decon_corr, rc);
      rc.correction = true;
      if (decon_pairs_opt->count()) rc.pairs = decon_pairs;
      emit(rc.output, out, dump(decontaminate_document(rc)));
    } else if (scan->parsed()) {
      RunConfig rc = build_config(scan_in);
      if (from_opt->count()) rc.scan.from = scan_from;
      if (to_opt->count()) rc.scan.to = scan_to;
      if (steps_opt->count()) rc.scan.steps = scan_steps;
      if (cols_opt->count()) rc.scan.columns = scan_cols;
      std::ostringstream s;
      write_scan(rc, s);
      emit(rc.output, out, s.str());
    } else if (report->parsed()) {
      std::ostringstream s;
      if (report_list) {
        for (const auto& r : reference_records()) s << r.label << '\n';
      } else {
        report_opts.results.assign(report_results.begin(), report_results.end());
        write_report(report_opts, s);
      }
      emit(report_out_opt->count() ? std::optional<std::filesystem::path>(report_out) : std::nullopt, out, s.str());
    } else if (point->parsed()) {
      EnergyUnit unit;
      SpinQuantum S;
      try {
        unit = parse_energy_unit(point_unit);
        S = SpinQuantum::from_value(point_S);
      } catch (const Error& e) {
        fail(ErrorKind::Config, e.what());
      }
      const SpinTensor d =
          point_dipole_d({parse_point(r1, "--r1"), parse_point(r2, "--r2"), opposite ? -1 : 1}, unit);
      emit(point_out_opt->count() ? std::optional<std::filesystem::path>(point_out) : std::nullopt, out,
           dump(oracle_document("point", d, S, {})));
    } else if (brute->parsed()) {
      RunConfig rc = build_config(brute_in);
      if (brute_in.given("exchange")) {
        try {
          rc.engine.exchange_scope = parse_exchange_scope(brute_in.exchange);
        } catch (const Error& e) {
          fail(ErrorKind::Config, e.what());
        }
      }
      const OrbitalSet set = load_input(rc);
      BruteForceOptions opts;
      opts.points = brute_points;
      opts.padding = brute_padding;
      opts.exchange_scope = rc.engine.exchange_scope;
      opts.unit = rc.engine.unit;
      const SpinTensor d = brute_force_d(set, opts);
      emit(rc.output, out, dump(oracle_document("brute", d, set.S(), {})));
    } else if (convert->parsed()) {
      const std::filesystem::path in(conv_in), dst(conv_out);
      std::optional<GridSpec> grid;
      if (conv_points_opt->count() || conv_edge_opt->count()) {
        grid = GridSpec{};
        if (conv_points_opt->count()) grid->points = conv_points;
        if (conv_edge_opt->count()) grid->edge = conv_edge;
      }
      if (has_extension(in, ".cube")) {
        if (!has_extension(dst, ".cube")) fail(ErrorKind::Config, "a cube input converts to a .cube output");
        write_cube(load_cube(in), dst);
      } else {
        OrbitalSet set = load_manifest(in);
        if (grid) set = grid_input(set, *grid);
        if (has_extension(dst, ".cube")) {
          if (conv_index < 0 || static_cast<std::size_t>(conv_index) >= set.size()) {
            fail(ErrorKind::Config, "--orbital must name a manifest entry (0.." + std::to_string(set.size() - 1) + ")");
          }
          if (set.is_analytic()) fail(ErrorKind::Config, "analytic orbitals need --grid-points/--grid-edge");
          GridOrbital g = std::get<GridOrbital>(set[static_cast<std::size_t>(conv_index)].orbital);
          g.metadata.comment1 = "zfskit orbital " + set[static_cast<std::size_t>(conv_index)].label;
          write_cube(g, dst);
        } else {
          write_manifest(set, dst);
        }
      }
    }
    return kOk;
  } catch (const Error& e) {
    err << "zfskit: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    err << "zfskit: resource error: out of memory\n";
    return kResource;
  } catch (const std::exception& e) {
    err << "zfskit: error: " << e.what() << '\n';
    return kConfig;
  }
}

}  // namespace zfs::cli
