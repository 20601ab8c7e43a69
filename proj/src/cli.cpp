#include "qcrit/cli.hpp"

#include "qcrit/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>

namespace qcrit::cli {

namespace {

struct RunConfig {
  int qubits = 0;
  std::string format = "table";
  std::string symmetry = "off";
  bool raw = false;
  int workers = 1;
  std::string output;
  std::string input;
  bool check = false;
  double tolerance = Tolerances{}.equality;
};

Symmetry symmetry_of(const RunConfig& cfg) { return cfg.symmetry == "on" ? Symmetry::on : Symmetry::off; }

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) out << text;
  else write_file(cfg.output, text);
}

EnumerationOptions options_of(const RunConfig& cfg) {
  EnumerationOptions o;
  o.symmetry = symmetry_of(cfg);
  o.raw = cfg.raw;
  o.workers = cfg.workers;
  return o;
}

int cmd_enumerate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto result = enumerate(cfg.qubits, options_of(cfg));
  emit(cfg, out, format_points(cfg.qubits, result.points, parse_format(cfg.format)));
  err << result.points.size() << " critical points for L=" << cfg.qubits << "\n";
  return kOk;
}

int cmd_states(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto result = enumerate(cfg.qubits, options_of(cfg));
  Tolerances tol;
  tol.equality = cfg.tolerance;

  nlohmann::ordered_json doc;
  doc["qubits"] = cfg.qubits;
  doc["states"] = nlohmann::ordered_json::array();
  std::ostringstream table;
  table << std::left << std::setw(4) << "#" << std::setw(28) << "beta" << std::setw(10) << "route" << std::setw(14)
        << "residual" << "pass\n";
  int failures = 0;
  std::size_t n = 0;
  for (const auto& p : result.points) {
    ++n;
    StateMeta meta{p.beta, p.entropy, ""};
    nlohmann::ordered_json entry;
    try {
      const auto built = construct_state(p, tol.solver);
      meta.route = to_string(built.route);
      const auto report = verify_state(built.state, p, tol);
      entry = state_to_json(built.state, meta);
      entry["report"] = report_to_json(report);
      if (!report.pass) ++failures;
      std::ostringstream residual;
      residual << std::scientific << std::setprecision(2) << report.eigen_residual;
      table << std::setw(4) << n << std::setw(28) << beta_string(p.beta) << std::setw(10) << meta.route << std::setw(14)
            << residual.str() << (report.pass ? "yes" : "NO") << "\n";
    } catch (const Infeasible& e) {
      ++failures;
      entry["meta"] = {{"beta", beta_string(p.beta)}, {"error", e.what()}};
      table << std::setw(4) << n << std::setw(28) << beta_string(p.beta) << "construction failed: " << e.what() << "\n";
    }
    doc["states"].push_back(std::move(entry));
  }

  if (cfg.format == "json" || !cfg.output.empty()) emit(cfg, out, doc.dump(2) + "\n");
  if (cfg.format != "json" || !cfg.output.empty()) out << table.str();
  err << n << " states, " << failures << " failed\n";
  return failures == 0 ? kOk : kVerificationFailed;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto doc = parse_state(read_file(cfg.input));
  Tolerances tol;
  tol.equality = cfg.tolerance;
  VerificationReport report;
  if (doc.meta.beta) {
    const auto beta = doc.meta.beta->vector();
    Eigen::VectorXd expected(beta.size());
    for (Eigen::Index i = 0; i < beta.size(); ++i) expected(i) = beta(i).to_double();
    const double entropy = doc.meta.entropy ? doc.meta.entropy->to_double() : entropy_value(beta).to_double();
    report = verify_state(doc.state, expected, entropy, tol);
  } else {
    report = verify_state(doc.state, tol);
  }
  emit(cfg, out, report_to_json(report).dump(2) + "\n");
  return report.pass ? kOk : kVerificationFailed;
}

int cmd_extend(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto doc = parse_results(read_file(cfg.input));
  const int next = doc.qubits + 1;
  const auto candidates = extend_iteratively(std::span<const CanonicalBeta>(doc.betas));
  emit(cfg, out, format_candidates(next, candidates, parse_format(cfg.format)));
  err << candidates.size() << " candidates for L=" << next << "\n";
  if (!cfg.check) return kOk;

  auto options = options_of(cfg);
  options.raw = true;
  options.witnesses = false;
  const auto level = enumerate(next, options);
  std::set<CanonicalBeta> known;
  for (const auto& p : level.points) known.insert(p.beta);
  std::size_t missing = 0;
  for (const auto& c : candidates) {
    if (known.count(c)) continue;
    ++missing;
    err << "missing at L=" << next << ": " << beta_string(c) << "\n";
  }
  err << "containment " << (missing == 0 ? "holds" : "fails") << " (" << known.size() << " raw points at L=" << next << ")\n";
  return missing == 0 ? kOk : kVerificationFailed;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  auto options = options_of(cfg);
  options.witnesses = false;
  options.count_orbits = true;
  const auto r = enumerate(cfg.qubits, options);
  const auto& s = r.stats;
  const std::uint64_t visited = s.solves - s.singular;
  const double ratio = visited == 0 ? 1.0 : static_cast<double>(s.covered_subsets) / static_cast<double>(visited);

  nlohmann::ordered_json j;
  j["qubits"] = cfg.qubits;
  j["symmetry"] = cfg.symmetry;
  j["workers"] = cfg.workers;
  j["critical_points"] = r.points.size();
  j["subsets_examined"] = s.subsets_examined;
  j["solves"] = s.solves;
  j["singular"] = s.singular;
  j["negative"] = s.negative;
  j["minimal"] = s.minimal;
  j["wide_fallbacks"] = s.wide_fallbacks;
  j["work_units"] = s.work_units;
  j["independent_subsets_covered"] = s.covered_subsets;
  j["orbit_compression"] = ratio;
  j["seconds"] = s.seconds;

  if (cfg.format == "json") {
    emit(cfg, out, j.dump(2) + "\n");
  } else {
    std::ostringstream t;
    for (const auto& [key, value] : j.items()) t << std::left << std::setw(30) << key << value.dump() << "\n";
    emit(cfg, out, t.str());
  }
  return kOk;
}

CLI::Option* add_qubits(CLI::App* sub, RunConfig& cfg) {
  return sub->add_option("-q,--qubits", cfg.qubits, "number of qubits L")
      ->check(CLI::Range(1, kMaxQubits))
      ->envname("QCRIT_QUBITS")
      ->required();
}

void add_format(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-f,--format", cfg.format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->envname("QCRIT_FORMAT");
}

void add_search(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--symmetry", cfg.symmetry, "reduce by qubit permutations and flips (on|off)")
      ->check(CLI::IsMember({"on", "off"}))
      ->envname("QCRIT_SYMMETRY");
  sub->add_option("-w,--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber)->envname("QCRIT_WORKERS");
}

void add_output(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-o,--output", cfg.output, "write to this file instead of stdout")->envname("QCRIT_OUTPUT");
}

void add_input(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("-i,--input", cfg.input, "input file")->envname("QCRIT_INPUT")->required();
}

void add_tolerance(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--tolerance", cfg.tolerance, "equality tolerance for numerical checks")
      ->check(CLI::PositiveNumber)
      ->envname("QCRIT_TOLERANCE");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Critical points of the linear entropy for L-qubit pure states", "qcrit"};
  app.require_subcommand(1);

  auto* en = app.add_subcommand("enumerate", "list critical points");
  add_qubits(en, cfg);
  add_format(en, cfg);
  add_search(en, cfg);
  en->add_flag("--raw", cfg.raw, "keep (1/2, ..., 1/2, 0)")->envname("QCRIT_RAW");
  add_output(en, cfg);

  auto* st = app.add_subcommand("states", "construct and verify a critical state per point");
  add_qubits(st, cfg);
  add_format(st, cfg);
  add_search(st, cfg);
  add_output(st, cfg);
  add_tolerance(st, cfg);

  auto* ve = app.add_subcommand("verify", "check a state file");
  add_input(ve, cfg);
  add_output(ve, cfg);
  add_tolerance(ve, cfg);

  auto* ex = app.add_subcommand("extend", "level L+1 candidates from a level-L results file");
  add_input(ex, cfg);
  add_format(ex, cfg);
  add_search(ex, cfg);
  ex->add_flag("--check", cfg.check, "enumerate L+1 and test containment")->envname("QCRIT_CHECK");
  add_output(ex, cfg);

  auto* be = app.add_subcommand("bench", "enumeration statistics and timing");
  add_qubits(be, cfg);
  add_format(be, cfg);
  add_search(be, cfg);
  add_output(be, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (symmetry_of(cfg) == Symmetry::on && cfg.qubits > kMaxSymmetryQubits)
      throw std::out_of_range("--symmetry on supports at most " + std::to_string(kMaxSymmetryQubits) + " qubits");
    if (en->parsed()) return cmd_enumerate(cfg, out, err);
    if (st->parsed()) return cmd_states(cfg, out, err);
    if (ve->parsed()) return cmd_verify(cfg, out, err);
    if (ex->parsed()) return cmd_extend(cfg, out, err);
    if (be->parsed()) return cmd_bench(cfg, out, err);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const Malformed& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace qcrit::cli
