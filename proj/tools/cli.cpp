#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fdiv/bounds.hpp"
#include "fdiv/divergence.hpp"
#include "fdiv/error.hpp"
#include "fdiv/generator.hpp"
#include "fdiv/io.hpp"
#include "fdiv/pushforward.hpp"
#include "fdiv/sweeps.hpp"

namespace structdiv::cli {
namespace {

using Table = std::vector<std::vector<std::string>>;

constexpr double kOracleTolerance = 1e-12;

/// Raised for a detected property violation after the table is written.
struct Violation {
  std::string message;
};

struct Common {
  std::string circuit;
  std::string measure_p;
  std::string measure_q;
  std::string generators;
  std::string r_grid = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  std::string k_grid = "1,2,3,4";
  std::string n_grid = "1,2,3";
  std::string space = "theta";
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "csv";
  std::optional<double> tol;
  double merge_tol = PushforwardOptions{}.tol;
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& flag) {
  std::vector<T> values;
  std::size_t start = 0;
  while (start < text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    auto token = text.substr(start, comma - start);
    token.erase(0, token.find_first_not_of(' '));
    token.erase(token.find_last_not_of(' ') + 1);
    if (!token.empty()) {
      T v{};
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ArgumentError(flag + ": cannot parse '" + token + "'");
      }
      values.push_back(v);
    }
    start = comma + 1;
  }
  if (values.empty()) throw ArgumentError(flag + ": list is empty");
  return values;
}

std::uint64_t resolve_seed(const Common& c) {
  if (c.seed) return *c.seed;
  if (const char* env = std::getenv("FDIV_SEED"); env != nullptr && *env != '\0') {
    std::uint64_t v = 0;
    const std::string text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ArgumentError("FDIV_SEED: cannot parse '" + text + "'");
    }
    return v;
  }
  return kDefaultSeed;
}

std::vector<Domain> parse_spaces(const std::string& space) {
  if (space == "theta") return {Domain::ParameterSpace};
  if (space == "unitary") return {Domain::UnitaryGroup};
  if (space == "both") return {Domain::ParameterSpace, Domain::UnitaryGroup};
  throw ArgumentError("--space: expected theta, unitary or both");
}

std::string cell(double v) { return format_double(v); }
std::string cell(bool v) { return v ? "true" : "false"; }

void emit(const Common& c, std::ostream& out, const std::vector<std::string>& header,
          const Table& rows, const nlohmann::json& metadata = nullptr) {
  std::ostringstream buffer;
  if (c.format == "csv") {
    write_csv(buffer, header, rows);
  } else {
    nlohmann::json doc{{"rows", table_to_json(header, rows)}};
    if (!metadata.is_null()) doc["metadata"] = metadata;
    buffer << doc.dump(2) << '\n';
  }
  if (c.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(c.out, std::ios::binary);
    if (!file) throw ArgumentError("--out: cannot write '" + c.out + "'");
    file << buffer.str();
  }
}

void emit_reports(const Common& c, std::ostream& out,
                  const std::vector<BoundReport>& reports) {
  std::ostringstream buffer;
  if (c.format == "csv") {
    write_reports_csv(buffer, reports);
  } else {
    buffer << nlohmann::json{{"rows", reports_to_json(reports)}}.dump(2) << '\n';
  }
  if (c.out.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(c.out, std::ios::binary);
    if (!file) throw ArgumentError("--out: cannot write '" + c.out + "'");
    file << buffer.str();
  }
}

std::pair<DiscreteMeasure, DiscreteMeasure> load_pair(const Common& c) {
  if (c.measure_p.empty() || c.measure_q.empty()) {
    throw ArgumentError("--measure-p and --measure-q are required");
  }
  auto p = load_measure(c.measure_p);
  auto q = load_measure(c.measure_q);
  if (p.domain() != q.domain()) {
    throw ValidationError("measure files have different domains");
  }
  return {std::move(p), std::move(q)};
}

// --- divergence -------------------------------------------------------------

void cmd_divergence(const Common& c, std::ostream& out) {
  const auto [p, q] = load_pair(c);
  const auto generators = generators_from_list(c.generators);
  const double tv = total_variation(p, q);
  const double delta = triangular_discrimination(p, q);
  Table rows;
  for (const auto& g : generators) {
    rows.push_back({g.name(), cell(symmetric_f_divergence(g, p, q).value()), cell(tv),
                    cell(delta), cell(structural_divergence(g, p, q))});
  }
  const double minimum = min_structural_divergence(generators, p, q);
  rows.push_back({"registry_min", "", cell(tv), cell(delta), cell(minimum)});
  emit(c, out, {"generator", "sym_divergence", "total_variation", "triangular", "structural"},
       rows,
       nlohmann::json{{"registry_min", minimum},
                      {"registry_min_note",
                       "minimum over the listed generators; an upper bound on the "
                       "infimum over all admissible generators"}});
}

// --- tightness --------------------------------------------------------------

void cmd_tightness(const Common& c, bool with_gradient, std::ostream& out) {
  const auto r_grid = parse_list<double>(c.r_grid, "--r-grid");
  const auto k_grid = parse_list<int>(c.k_grid, "--k-grid");
  const auto n_grid = parse_list<int>(c.n_grid, "--n-grid");
  const auto generators = generators_from_list(c.generators);
  TightnessOptions options;
  options.spaces = parse_spaces(c.space);
  options.include_gradient = with_gradient;
  if (c.tol) options.tight_tolerance = *c.tol;
  const auto reports = tightness_sweep(r_grid, k_grid, generators, n_grid, options);
  emit_reports(c, out, reports);

  const auto worst = std::max_element(
      reports.begin(), reports.end(), [](const BoundReport& a, const BoundReport& b) {
        return std::abs(a.slack) < std::abs(b.slack);
      });
  const bool all_tight = std::all_of(reports.begin(), reports.end(),
                                     [](const BoundReport& r) { return r.tight; });
  if (!all_tight) {
    throw Violation{"non-tight row: worst |slack| = " + format_double(std::abs(worst->slack)) +
                    " (" + worst->generator + ", k=" + std::to_string(worst->k) +
                    ", n=" + std::to_string(worst->n) + ", r=" + format_double(worst->r) + ")"};
  }
}

// --- verify -----------------------------------------------------------------

std::vector<BoundReport> verify_files(const Common& c) {
  const auto problem = load_circuit(c.circuit);
  const auto [p, q] = load_pair(c);
  const auto generators = generators_from_list(c.generators);
  const auto k_grid = parse_list<int>(c.k_grid, "--k-grid");
  std::vector<BoundReport> reports;
  std::vector<DiscreteMeasure> pushed;
  if (p.domain() == Domain::ParameterSpace) {
    const std::vector<DiscreteMeasure> theta{p, q};
    PushforwardOptions options;
    options.tol = c.merge_tol;
    pushed = pushforward_joint(theta, problem.circuit, options);
  }
  for (const auto& g : generators) {
    if (p.domain() == Domain::ParameterSpace) {
      for (int j = 0; j < problem.circuit.arity(); ++j) {
        reports.push_back(check_gradient_bound(g, p, q, problem, j));
      }
    }
    for (int k : k_grid) {
      reports.push_back(check_moment_bound(g, p, q, problem, k));
      if (!pushed.empty()) {
        reports.push_back(check_moment_bound(g, pushed[0], pushed[1], problem, k));
      }
    }
  }
  sort_reports(reports);
  return reports;
}

void cmd_verify(const Common& c, int trials, std::ostream& out) {
  const double tolerance = c.tol.value_or(kSatisfiedTolerance);
  const auto violated = [tolerance](const BoundReport& r) { return r.slack < -tolerance; };

  if (!c.circuit.empty()) {
    const auto reports = verify_files(c);
    emit_reports(c, out, reports);
    const auto bad = std::count_if(reports.begin(), reports.end(), violated);
    if (bad > 0) throw Violation{std::to_string(bad) + " bound(s) violated"};
    return;
  }

  if (trials < 1) throw ArgumentError("--trials must be positive");
  SoundnessOptions options;
  options.instances = trials;
  options.seed = resolve_seed(c);
  const auto generators = generators_from_list(c.generators);
  auto reports = soundness_sweep(generators, options);
  const auto extra = sqrt_delta_sweep(options);
  reports.insert(reports.end(), extra.begin(), extra.end());

  struct Summary {
    int count = 0;
    int violations = 0;
    double min_slack = std::numeric_limits<double>::infinity();
  };
  std::map<std::tuple<std::string, std::string, std::string, int>, Summary> groups;
  for (const auto& r : reports) {
    auto& s = groups[{std::string(to_string(r.kind)), std::string(to_string(r.space)),
                      r.generator, r.k}];
    ++s.count;
    s.violations += violated(r) ? 1 : 0;
    s.min_slack = std::min(s.min_slack, r.slack);
  }
  Table rows;
  int total_violations = 0;
  for (const auto& [key, s] : groups) {
    const auto& [kind, space, generator, k] = key;
    rows.push_back({kind, space, generator, std::to_string(k), std::to_string(s.count),
                    std::to_string(s.violations), cell(s.min_slack)});
    total_violations += s.violations;
  }
  emit(c, out, {"kind", "space", "generator", "k", "count", "violations", "min_slack"}, rows,
       nlohmann::json{{"instances", trials}, {"seed", options.seed}});
  if (total_violations > 0) {
    throw Violation{std::to_string(total_violations) + " bound(s) violated"};
  }
}

// --- thresholds -------------------------------------------------------------

struct ThresholdArgs {
  std::optional<double> g_th;
  std::optional<double> delta;
  double e_bp = 0.0;
  std::optional<double> half_range;
  std::optional<double> op_norm;
  std::optional<double> divergence;
  int gate = 0;
};

void cmd_thresholds(const Common& c, const ThresholdArgs& a, std::ostream& out) {
  if (!a.g_th && !a.delta) throw ArgumentError("give --g-th and/or --delta");
  const auto k_grid = parse_list<int>(c.k_grid, "--k-grid");

  std::optional<CircuitProblem> problem;
  if (!c.circuit.empty()) problem = load_circuit(c.circuit);
  const double half_range =
      a.half_range ? *a.half_range
      : problem    ? spectral_summary(problem->circuit.generator(a.gate)).half_range
                   : throw ArgumentError("--half-range or --circuit is required");
  const double op_norm = a.op_norm ? *a.op_norm
                         : problem ? spectral_summary(problem->observable).op_norm
                                   : throw ArgumentError("--op-norm or --circuit is required");

  std::optional<std::pair<DiscreteMeasure, DiscreteMeasure>> measures;
  if (!c.measure_p.empty() || !c.measure_q.empty()) measures = load_pair(c);
  const auto generators = generators_from_list(c.generators);
  double divergence = a.divergence.value_or(0.0);
  if (!a.divergence && measures) {
    divergence = min_structural_divergence(generators, measures->first, measures->second);
  }

  const std::vector<std::string> header{"kind",    "generator", "k",
                                        "threshold", "actual_divergence", "verdict",
                                        "measured_deviation", "deviation_cap"};
  Table rows;
  const auto add = [&rows](const ThresholdReport& r, const std::string& generator, int k) {
    rows.push_back({std::string(to_string(r.kind)), generator, std::to_string(k),
                    cell(r.threshold), cell(r.actual_divergence), cell(r.verdict),
                    r.measured_deviation ? cell(*r.measured_deviation) : "",
                    r.deviation_cap ? cell(*r.deviation_cap) : ""});
  };
  if (a.g_th) {
    add(bp_divergence_threshold(*a.g_th, half_range, op_norm, a.e_bp, divergence),
        "registry_min", 0);
  }
  if (a.delta) {
    for (int k : k_grid) {
      add(cc_divergence_threshold(*a.delta, op_norm, k, divergence), "registry_min", k);
    }
  }
  if (problem && measures && a.g_th && a.delta) {
    for (const auto& g : generators) {
      for (int k : k_grid) {
        const auto result = noise_sufficiency_check(g, measures->first, measures->second,
                                                     *problem, a.gate, *a.g_th, *a.delta, k);
        add(result.gradient, g.name(), k);
        add(result.moment, g.name(), k);
      }
    }
  }
  emit(c, out, header, rows);
}

// --- asymptotic -------------------------------------------------------------

void cmd_asymptotic(const Common& c, double alpha, const std::string& steps_text,
                    std::ostream& out) {
  std::vector<GeneratorSpec> generators;
  if (c.generators.empty()) {
    for (auto& g : builtin_generators()) {
      if (g.is_smooth()) generators.push_back(std::move(g));
    }
  } else {
    generators = generators_from_list(c.generators);
  }
  const auto steps = parse_list<double>(steps_text, "--dalpha-grid");
  const auto rows_data = asymptotic_sweep(generators, bernoulli_measure, alpha, steps);
  Table rows;
  int outside = 0;
  for (const auto& r : rows_data) {
    const bool exact = r.generator == "triangular";
    const double allowed = exact ? 1e-12 : 10.0 * r.delta_alpha;
    const bool within = std::abs(r.ratio - 1.0) <= allowed;
    outside += within ? 0 : 1;
    rows.push_back({r.generator, cell(r.alpha), cell(r.delta_alpha), cell(r.structural),
                    cell(r.sqrt_delta), cell(r.ratio), cell(within)});
  }
  emit(c, out,
       {"generator", "alpha", "delta_alpha", "structural", "sqrt_delta", "ratio", "within_bound"},
       rows, nlohmann::json{{"family", "bernoulli"}});
  if (outside > 0) throw Violation{std::to_string(outside) + " ratio(s) outside the bound"};
}

// --- oracle -----------------------------------------------------------------

void cmd_oracle(const Common& c, const std::string& t_text, int trials, int max_support,
                std::ostream& out) {
  const auto t_grid = parse_list<double>(t_text, "--t-grid");
  const auto generators = generators_from_list(c.generators);
  const auto seed = resolve_seed(c);
  Table rows;
  int failures = 0;
  for (const auto& g : generators) {
    for (double t : t_grid) {
      const auto r = fixed_tv_oracle(g, t, trials, max_support, seed);
      const bool holds = r.min_found >= r.d_f_t - kOracleTolerance &&
                         std::abs(r.binary_value - r.d_f_t) <= kOracleTolerance;
      failures += holds ? 0 : 1;
      rows.push_back({g.name(), cell(t), cell(r.min_found), cell(r.d_f_t), cell(r.binary_value),
                      std::to_string(r.accepted), std::to_string(r.rejected), cell(holds)});
    }
  }
  emit(c, out,
       {"generator", "t", "min_found", "d_f_t", "binary_value", "accepted", "rejected", "holds"},
       rows, nlohmann::json{{"seed", seed}, {"trials", trials}});
  if (failures > 0) throw Violation{std::to_string(failures) + " oracle check(s) failed"};
}

void add_common(CLI::App* cmd, Common& c, bool files, bool grids) {
  if (files) {
    cmd->add_option("--circuit", c.circuit, "Circuit JSON file");
    cmd->add_option("--measure-p", c.measure_p, "Measure JSON file for P");
    cmd->add_option("--measure-q", c.measure_q, "Measure JSON file for Q");
    cmd->add_option("--merge-tol", c.merge_tol, "Distance under which unitaries are identified");
  }
  cmd->add_option("--generators", c.generators,
                  "Comma separated subset of tv,hellinger2,js,jeffreys,triangular");
  if (grids) {
    cmd->add_option("--r-grid", c.r_grid, "Comma separated r values in (0, 1]");
    cmd->add_option("--n-grid", c.n_grid, "Comma separated qubit counts");
    cmd->add_option("--space", c.space, "theta, unitary or both");
  }
  cmd->add_option("--k-grid", c.k_grid, "Comma separated moment orders");
  cmd->add_option("--seed", c.seed, "RNG seed (default 7, or FDIV_SEED)");
  cmd->add_option("--out", c.out, "Write the table to this file instead of stdout");
  cmd->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--tol", c.tol, "Pass/fail tolerance override");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structural f-divergence bounds for parameterised quantum circuits", "fdiv"};
  app.require_subcommand(1);

  Common common;
  auto* divergence = app.add_subcommand("divergence", "Divergences between two measure files");
  add_common(divergence, common, true, false);

  bool with_gradient = false;
  auto* tightness = app.add_subcommand("tightness", "Equality cases of the moment and gradient bounds");
  add_common(tightness, common, false, true);
  tightness->add_flag("--with-gradient", with_gradient, "Also emit gradient-bound rows");

  int trials = 1000;
  auto* verify = app.add_subcommand("verify", "Check the bounds on files or random instances");
  add_common(verify, common, true, false);
  verify->add_option("--trials", trials, "Random instances when no files are given");

  ThresholdArgs thresholds_args;
  auto* thresholds = app.add_subcommand("thresholds", "Necessary and sufficient divergence thresholds");
  add_common(thresholds, common, true, false);
  thresholds->add_option("--g-th", thresholds_args.g_th, "Gradient threshold g_th");
  thresholds->add_option("--delta", thresholds_args.delta, "Moment shift delta");
  thresholds->add_option("--e-bp", thresholds_args.e_bp, "E_BP[|d_j<O>|] of the reference measure");
  thresholds->add_option("--half-range", thresholds_args.half_range, "||H_j||_R");
  thresholds->add_option("--op-norm", thresholds_args.op_norm, "||O||_inf");
  thresholds->add_option("--divergence", thresholds_args.divergence, "Known D^str to compare against");
  thresholds->add_option("--gate", thresholds_args.gate, "Gate index j (0-based)");

  double alpha = 0.5;
  std::string dalpha = "1e-2,1e-3,1e-4";
  auto* asymptotic = app.add_subcommand("asymptotic", "D_f^str / sqrt(Delta) on the Bernoulli family");
  add_common(asymptotic, common, false, false);
  asymptotic->add_option("--alpha", alpha, "Base parameter of the family");
  asymptotic->add_option("--dalpha-grid", dalpha, "Comma separated step sizes");

  std::string t_grid = "0.1,0.3,0.5,0.7,0.9";
  int oracle_trials = 10000;
  int max_support = 6;
  auto* oracle = app.add_subcommand("oracle", "Random search for the fixed-TV divergence minimum");
  add_common(oracle, common, false, false);
  oracle->add_option("--t-grid", t_grid, "Comma separated total variation targets");
  oracle->add_option("--trials", oracle_trials, "Random pairs per target");
  oracle->add_option("--max-support", max_support, "Largest support size");

  std::vector<std::string> argv_tail(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());  // CLI11 expects reversed order
  try {
    app.parse(argv_tail);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fdiv: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (divergence->parsed()) {
      cmd_divergence(common, out);
    } else if (tightness->parsed()) {
      cmd_tightness(common, with_gradient, out);
    } else if (verify->parsed()) {
      cmd_verify(common, trials, out);
    } else if (thresholds->parsed()) {
      cmd_thresholds(common, thresholds_args, out);
    } else if (asymptotic->parsed()) {
      cmd_asymptotic(common, alpha, dalpha, out);
    } else if (oracle->parsed()) {
      cmd_oracle(common, t_grid, oracle_trials, max_support, out);
    }
  } catch (const Violation& v) {
    err << "fdiv: property violation: " << v.message << '\n';
    return kExitViolation;
  } catch (const ConsistencyError& e) {
    err << "fdiv: property violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const Error& e) {
    err << "fdiv: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "fdiv: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}

}  // namespace structdiv::cli
