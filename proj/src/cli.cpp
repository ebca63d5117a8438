#include "bcc/cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

#include "bcc/bell.hpp"
#include "bcc/ccp.hpp"
#include "bcc/json_io.hpp"
#include "bcc/simulate.hpp"
#include "bcc/state.hpp"

namespace bcc {

namespace {

// Reference values and the tolerances they are checked at.
constexpr double kReferenceS = 8.00685;
constexpr double kReferenceSOriginal = 3.00685;
constexpr double kSTolerance = 2e-4;
constexpr double kReferencePQ = 0.681974;
constexpr double kPQTolerance = 1e-4;
constexpr double kReferenceGap = 1.56e-4;
constexpr double kGapTolerance = 1e-5;
constexpr double kCertificateTolerance = 1e-5;

enum class Format { human, json, csv };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandResult {
  Json doc;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  int exit_code = kExitOk;
};

struct Options {
  Format format = Format::human;
  bool original = false;
  bool homogenized = false;
  std::string table_path;
  std::string input_path;
  std::string protocol = "quantum";
  std::uint64_t shots = 1'000'000;
  std::uint64_t seed = 0;
  unsigned shards = 1;
};

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_human(const Json& doc, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (doc.is_object()) {
    for (const auto& [key, value] : doc.items()) {
      const bool inline_value =
          !value.is_structured() ||
          (value.is_array() && std::none_of(value.begin(), value.end(),
                                            [](const Json& e) { return e.is_object(); }));
      if (inline_value) {
        out << pad << key << ": " << scalar_text(value) << '\n';
      } else {
        out << pad << key << ":\n";
        render_human(value, out, indent + 2);
      }
    }
  } else if (doc.is_array()) {
    for (const auto& item : doc) {
      if (item.is_object()) {
        out << pad << "-\n";
        render_human(item, out, indent + 2);
      } else {
        out << pad << "- " << scalar_text(item) << '\n';
      }
    }
  } else {
    out << pad << scalar_text(doc) << '\n';
  }
}

void flatten(const Json& doc, const std::string& prefix, std::vector<std::vector<std::string>>& rows) {
  if (doc.is_object()) {
    for (const auto& [key, value] : doc.items())
      flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
  } else if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i)
      flatten(doc[i], prefix + "." + std::to_string(i), rows);
  } else {
    rows.push_back({prefix, scalar_text(doc)});
  }
}

void emit(CommandResult& result, Format format, std::ostream& out) {
  round_numbers(result.doc);
  switch (format) {
    case Format::json:
      out << result.doc.dump(2) << '\n';
      break;
    case Format::human:
      render_human(result.doc, out, 0);
      break;
    case Format::csv: {
      auto header = result.csv_header;
      auto rows = result.csv_rows;
      if (header.empty()) {
        header = {"key", "value"};
        rows.clear();
        flatten(result.doc, "", rows);
      }
      const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
      };
      line(header);
      for (const auto& r : rows) line(r);
      break;
    }
  }
}

std::string fmt_number(double v) {
  Json j = v;
  round_numbers(j);
  return j.dump();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

FullCorrelationInequality load_inequality(const Options& opt) {
  if (opt.table_path.empty()) return homogenize(sliwa5());
  try {
    return inequality_from_json(read_json_file(opt.table_path));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Json check(const std::string& name, double value, double expected, double tolerance, bool pass) {
  return Json{{"name", name},
              {"value", number(value)},
              {"expected", number(expected)},
              {"tolerance", tolerance},
              {"pass", pass}};
}

Json within(const std::string& name, double value, double expected, double tolerance) {
  return check(name, value, expected, tolerance, std::abs(value - expected) <= tolerance);
}

// Pass/fail certificates for a state.
Json state_checks(const StateReport& r) {
  Json checks = Json::array();
  checks.push_back(check("trace", r.trace_deviation, 0.0, kStateTraceTolerance,
                         r.trace_deviation <= kStateTraceTolerance));
  checks.push_back(check("min_eigenvalue", r.min_eigenvalue, 0.0, kMinEigenvalueTolerance,
                         r.min_eigenvalue >= -kMinEigenvalueTolerance));
  checks.push_back(check("pt3_invariance", r.pt_invariance_deviation, 0.0, kCertificateTolerance,
                         r.pt_invariance_deviation <= kCertificateTolerance));
  for (std::size_t k = 0; k < 3; ++k) {
    checks.push_back(check("pt" + std::to_string(k + 1) + "_min_eigenvalue", r.pt_min_eigenvalues[k],
                           0.0, kCertificateTolerance,
                           r.pt_min_eigenvalues[k] >= -kCertificateTolerance));
  }
  checks.push_back(check("permutation_symmetry", r.max_permutation_deviation(), 0.0,
                         kCertificateTolerance, r.max_permutation_deviation() <= kCertificateTolerance));
  return checks;
}

bool all_pass(const Json& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Json& c) { return c["pass"].get<bool>(); });
}

Json settings_json(const Settings& x) { return Json::array({x[0], x[1], x[2]}); }

std::string settings_label(const Settings& x) { return term_label({x[0], x[1], x[2]}); }

// ---------------------------------------------------------------- commands

CommandResult cmd_state_validate(const Options& opt) {
  const DensityMatrix rho = [&] {
    if (opt.input_path.empty()) return build_vb_state();
    ComplexMatrix m;
    try {
      m = matrix_from_json(read_json_file(opt.input_path));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return DensityMatrix(std::move(m));
  }();
  const StateReport report = validate_state(rho);
  CommandResult result;
  result.doc = to_json(report);
  result.doc["checks"] = state_checks(report);
  result.doc["pass"] = all_pass(result.doc["checks"]);
  result.exit_code = result.doc["pass"].get<bool>() ? kExitOk : kExitContract;
  return result;
}

CommandResult cmd_state_dump(const Options& opt) {
  const DensityMatrix rho = build_vb_state();
  CommandResult result;
  result.doc = matrix_to_json(rho.matrix());
  if (opt.format != Format::json) {
    result.csv_header = {"row", "col", "re", "im"};
    for (std::size_t r = 0; r < kStateDim; ++r)
      for (std::size_t c = 0; c < kStateDim; ++c) {
        const Complex z = rho.matrix()(r, c);
        result.csv_rows.push_back(
            {std::to_string(r), std::to_string(c), fmt_number(z.real()), fmt_number(z.imag())});
      }
  }
  if (opt.format == Format::human) {
    Json rows = Json::object();
    for (std::size_t r = 0; r < kStateDim; ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < kStateDim; ++c) row.push_back(rho.matrix()(r, c).real());
      rows["row " + std::to_string(r) + " (re)"] = row;
    }
    result.doc = rows;
  }
  return result;
}

CommandResult cmd_bell_bounds(const Options& opt) {
  CommandResult result;
  if (opt.original) {
    if (!opt.table_path.empty()) throw UsageError("--table applies to the homogenized form only");
    const GeneralInequality ineq = sliwa5();
    const ClassicalExtrema ext = classical_extrema(ineq);
    const bool matches = ext.min == ineq.lower_bound && ext.max == ineq.upper_bound;
    result.doc = Json{{"form", "original"},
                      {"min", number(ext.min)},
                      {"max", number(ext.max)},
                      {"stated_lower_bound", number(ineq.lower_bound)},
                      {"stated_upper_bound", number(ineq.upper_bound)},
                      {"strategies", ext.strategies},
                      {"argmin", to_json(ext.argmin, 1)},
                      {"argmin_code", ext.argmin_code},
                      {"argmax", to_json(ext.argmax, 1)},
                      {"argmax_code", ext.argmax_code},
                      {"matches_stated_bounds", matches}};
    result.exit_code = matches ? kExitOk : kExitContract;
    return result;
  }
  const FullCorrelationInequality ineq = load_inequality(opt);
  const ClassicalExtrema ext = classical_extrema(ineq);
  const double worst = std::max(ext.max, -ext.min);
  const bool holds = worst <= ineq.bound() + 1e-9;
  result.doc = Json{{"form", "homogenized"},
                    {"min", number(ext.min)},
                    {"max", number(ext.max)},
                    {"stated_bound", number(ineq.bound())},
                    {"strategies", ext.strategies},
                    {"argmin", to_json(ext.argmin)},
                    {"argmin_code", ext.argmin_code},
                    {"argmax", to_json(ext.argmax)},
                    {"argmax_code", ext.argmax_code},
                    {"bound_holds", holds},
                    {"bound_tight", std::abs(worst - ineq.bound()) <= 1e-9}};
  result.exit_code = holds ? kExitOk : kExitContract;
  return result;
}

CommandResult cmd_bell_coefficients(const Options& opt) {
  const FullCorrelationInequality ineq = load_inequality(opt);
  CommandResult result;
  result.doc = to_json(ineq);
  result.doc["sum_abs"] = number(ineq.sum_abs());
  if (opt.table_path.empty()) {
    const auto formula = h05_inequality();
    const bool same = std::equal(formula.table().begin(), formula.table().end(), ineq.table().begin(),
                                 ineq.table().end());
    result.doc["formula_matches_homogenization"] = same;
    if (!same) result.exit_code = kExitContract;
  }
  result.csv_header = {"x1", "x2", "x3", "g"};
  for (std::size_t i = 0; i < ineq.table().size(); ++i) {
    const Settings x = ineq.settings_at(i);
    result.csv_rows.push_back({std::to_string(x[0]), std::to_string(x[1]), std::to_string(x[2]),
                               number(ineq.table()[i]).dump()});
  }
  return result;
}

CommandResult cmd_bell_quantum_value(const Options&) {
  const GameSetup setup = reference_setup();
  const auto terms = correlation_terms(setup.inequality, setup.state, setup.observables);
  const double s = quantum_value(setup.inequality, setup.state, setup.observables);
  const double s_original = quantum_value(sliwa5(), setup.state, setup.observables);

  CommandResult result;
  Json term_list = Json::array();
  result.csv_header = {"term", "x1", "x2", "x3", "g", "E"};
  for (const auto& t : terms) {
    term_list.push_back(Json{{"term", settings_label(t.x)},
                             {"x", settings_json(t.x)},
                             {"g", number(t.coefficient)},
                             {"E", t.correlation}});
    result.csv_rows.push_back({settings_label(t.x), std::to_string(t.x[0]), std::to_string(t.x[1]),
                               std::to_string(t.x[2]), number(t.coefficient).dump(),
                               fmt_number(t.correlation)});
  }
  result.doc = Json{{"S", s},
                    {"S_original", s_original},
                    {"bound", number(setup.inequality.bound())},
                    {"violation", s - setup.inequality.bound()},
                    {"terms", std::move(term_list)}};
  return result;
}

CommandResult cmd_game_exact(const Options& opt) {
  const FullCorrelationInequality ineq = load_inequality(opt);
  const double sum_abs = ineq.sum_abs();
  const ClassicalExtrema ext = classical_extrema(ineq);
  const double classical_max = std::max(ext.max, -ext.min);
  const OptimalClassical best = optimal_classical_strategy(ineq);

  const DensityMatrix rho = build_vb_state();
  const ObservableSet obs = measurement_observables();
  const double s = quantum_value(ineq, rho, obs);
  const double p_q = exact_success_quantum(s, sum_abs);
  const double p_c = exact_success_classical(classical_max, sum_abs);

  CommandResult result;
  result.doc = Json{{"sum_abs_g", number(sum_abs)},
                    {"classical_bound", number(classical_max)},
                    {"S", s},
                    {"p_c", p_c},
                    {"p_c_exact", best.success_exact ? Json(best.success_exact->str()) : Json(nullptr)},
                    {"p_q", p_q},
                    {"gap", p_q - p_c},
                    {"quantum_advantage", p_q > p_c},
                    {"optimal_strategy", to_json(best.strategy)},
                    {"optimal_strategy_code", best.code},
                    {"optimal_success", best.success}};
  // The strategy search and the Bell-bound enumeration must agree.
  if (std::abs(best.success - p_c) > 1e-12) result.exit_code = kExitContract;
  return result;
}

CommandResult cmd_game_describe(const Options& opt) {
  const FullCorrelationInequality ineq = load_inequality(opt);
  const InputDistribution q(ineq);
  const int m = ineq.settings();
  Json qj = Json::array();
  for (int x1 = 0; x1 < m; ++x1) {
    Json plane = Json::array();
    for (int x2 = 0; x2 < m; ++x2) {
      Json row = Json::array();
      for (int x3 = 0; x3 < m; ++x3) row.push_back(number(q({x1, x2, x3})));
      plane.push_back(std::move(row));
    }
    qj.push_back(std::move(plane));
  }
  CommandResult result;
  result.doc = Json{{"inequality", to_json(ineq)}, {"q", std::move(qj)}, {"bound", number(ineq.bound())}};
  result.csv_header = {"x1", "x2", "x3", "g", "q"};
  for (std::size_t i = 0; i < ineq.table().size(); ++i) {
    const Settings x = ineq.settings_at(i);
    result.csv_rows.push_back({std::to_string(x[0]), std::to_string(x[1]), std::to_string(x[2]),
                               number(ineq.table()[i]).dump(), fmt_number(q.probabilities()[i])});
  }
  return result;
}

CommandResult cmd_game_simulate(const Options& opt) {
  SimulationConfig config;
  try {
    config = {opt.shots, opt.seed, parse_protocol(opt.protocol), opt.shards};
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  CommandResult result;
  result.doc = to_json(run_protocol(config));
  return result;
}

CommandResult cmd_game_gap(const Options& opt, std::ostream& err) {
  if (opt.shots == 0) throw UsageError("--shots must be at least 1");
  if (opt.shards == 0) throw UsageError("--shards must be at least 1");
  const GapReport gap = gap_experiment(opt.shots, opt.seed, opt.shards);
  if (gap.underpowered) {
    err << "warning: " << opt.shots << " shots cannot resolve the gap at 4 sigma (need about "
        << static_cast<std::uint64_t>(std::ceil(gap.required_shots)) << ")\n";
  }
  CommandResult result;
  result.doc = to_json(gap);
  return result;
}

CommandResult cmd_reproduce_paper(const Options&) {
  const GeneralInequality original = sliwa5();
  const ClassicalExtrema ext_orig = classical_extrema(original);
  const FullCorrelationInequality hom = homogenize(original);
  const ClassicalExtrema ext_hom = classical_extrema(hom);
  const FullCorrelationInequality formula = h05_inequality();
  const bool tables_match =
      std::equal(formula.table().begin(), formula.table().end(), hom.table().begin(), hom.table().end());

  const GameSetup setup = reference_setup();
  const double s = quantum_value(hom, setup.state, setup.observables);
  const double s_orig = quantum_value(original, setup.state, setup.observables);
  const OptimalClassical best = optimal_classical_strategy(hom);
  const Rational pc_exact = best.success_exact.value();
  const double pc = pc_exact.value();
  const double pq = exact_success_quantum(s, hom.sum_abs());
  const StateReport state = validate_state(setup.state);

  Json checks = Json::array();
  checks.push_back(check("B_orig_min", ext_orig.min, -13, 0, ext_orig.min == -13));
  checks.push_back(check("B_orig_max", ext_orig.max, 3, 0, ext_orig.max == 3));
  checks.push_back(check("B_hom", ext_hom.max, 8, 0, ext_hom.max == 8 && ext_hom.min == -8));
  checks.push_back(check("coefficient_formula", tables_match ? 1 : 0, 1, 0, tables_match));
  checks.push_back(check("sum_abs_g", hom.sum_abs(), 22, 0, hom.sum_abs() == 22));
  checks.push_back(within("S", s, kReferenceS, kSTolerance));
  checks.push_back(within("S_original", s_orig, kReferenceSOriginal, kSTolerance));
  Json pc_check = check("P_C", pc, 15.0 / 22.0, 0, pc_exact == Rational{15, 22});
  pc_check["exact"] = pc_exact.str();
  checks.push_back(pc_check);
  checks.push_back(within("P_Q", pq, kReferencePQ, kPQTolerance));
  checks.push_back(check("P_Q_gt_P_C", pq - pc, 0, 0, pq > pc));
  checks.push_back(within("gap_analytic", (s - 8.0) / 44.0, kReferenceGap, kGapTolerance));
  for (auto& c : state_checks(state)) {
    c["name"] = "state_" + c["name"].get<std::string>();
    checks.push_back(c);
  }

  CommandResult result;
  result.doc = Json{{"B_orig_min", number(ext_orig.min)},
                    {"B_orig_max", number(ext_orig.max)},
                    {"B_hom", number(ext_hom.max)},
                    {"S", s},
                    {"P_C", pc},
                    {"P_C_exact", pc_exact.str()},
                    {"P_Q", pq},
                    {"checks", checks},
                    {"pass", all_pass(checks)}};
  result.csv_header = {"name", "value", "expected", "tolerance", "pass"};
  for (const auto& c : checks) {
    result.csv_rows.push_back({c["name"].get<std::string>(), fmt_number(c["value"].get<double>()),
                               fmt_number(c["expected"].get<double>()),
                               fmt_number(c["tolerance"].get<double>()),
                               c["pass"].get<bool>() ? "true" : "false"});
  }
  result.exit_code = result.doc["pass"].get<bool>() ? kExitOk : kExitContract;
  return result;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound-entanglement communication complexity toolkit", "bcc"};
  app.require_subcommand(1);
  Options opt;

  const std::map<std::string, Format> formats{
      {"human", Format::human}, {"json", Format::json}, {"csv", Format::csv}};
  app.add_option("--format", opt.format, "Output format: human, json or csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->capture_default_str();
  app.fallthrough();

  std::function<CommandResult()> command;
  const auto bind = [&](CLI::App* sub, auto fn) { sub->callback([&, fn] { command = [&, fn] { return fn(opt); }; }); };

  auto* state = app.add_subcommand("state", "Bound entangled state");
  state->require_subcommand(1);
  auto* validate = state->add_subcommand("validate", "Certificates: trace, positivity, symmetry, PPT");
  validate->add_option("--input", opt.input_path, "Validate a state read from a `state dump` JSON file");
  bind(validate, cmd_state_validate);
  bind(state->add_subcommand("dump", "Density matrix as row-major [re, im] pairs"), cmd_state_dump);

  auto* bell = app.add_subcommand("bell", "Bell inequality machinery");
  bell->require_subcommand(1);
  auto* bounds = bell->add_subcommand("bounds", "Classical extrema by strategy enumeration");
  auto* orig_flag = bounds->add_flag("--original", opt.original, "Sliwa #5 with lower-order terms");
  auto* hom_flag = bounds->add_flag("--homogenized", opt.homogenized, "Homogenized full-correlation form (default)");
  orig_flag->excludes(hom_flag);
  bounds->add_option("--table", opt.table_path, "Coefficient table JSON instead of the built-in one")
      ->excludes(orig_flag);
  bind(bounds, cmd_bell_bounds);
  bind(bell->add_subcommand("quantum-value", "Quantum value S and per-term correlations"),
       cmd_bell_quantum_value);
  auto* coeffs = bell->add_subcommand("coefficients", "The homogenized coefficient table g");
  coeffs->add_option("--table", opt.table_path, "Coefficient table JSON instead of the built-in one");
  bind(coeffs, cmd_bell_coefficients);

  auto* game = app.add_subcommand("game", "Communication complexity game");
  game->require_subcommand(1);
  auto* exact = game->add_subcommand("exact", "Exact classical and quantum success probabilities");
  exact->add_option("--table", opt.table_path, "Coefficient table JSON instead of the built-in one");
  bind(exact, cmd_game_exact);
  auto* describe = game->add_subcommand("describe", "Coefficient table, input distribution and bound");
  describe->add_option("--table", opt.table_path, "Coefficient table JSON instead of the built-in one");
  bind(describe, cmd_game_describe);
  auto* simulate = game->add_subcommand("simulate", "Monte Carlo run of one protocol");
  simulate->add_option("--protocol", opt.protocol, "classical or quantum")
      ->check(CLI::IsMember({"classical", "quantum"}))
      ->capture_default_str();
  simulate->add_option("--shots", opt.shots, "Number of shots")->capture_default_str();
  simulate->add_option("--seed", opt.seed, "RNG seed")->capture_default_str();
  simulate->add_option("--shards", opt.shards, "Parallel substreams")->capture_default_str();
  bind(simulate, cmd_game_simulate);
  auto* gap = game->add_subcommand("gap", "Quantum simulation against the exact classical optimum");
  gap->add_option("--shots", opt.shots, "Number of shots")->capture_default_str();
  gap->add_option("--seed", opt.seed, "RNG seed")->capture_default_str();
  gap->add_option("--shards", opt.shards, "Parallel substreams")->capture_default_str();
  gap->callback([&] { command = [&] { return cmd_game_gap(opt, err); }; });

  bind(app.add_subcommand("reproduce-paper", "All headline numbers with pass/fail flags"),
       cmd_reproduce_paper);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CommandResult result = command();
    emit(result, opt.format, out);
    return result.exit_code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitContract;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"bcc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bcc
