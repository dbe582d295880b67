#include "qres_cli/app.hpp"

#include <charconv>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qres/dilation.hpp"
#include "qres/error.hpp"
#include "qres/quantifiers.hpp"
#include "qres_cli/report.hpp"
#include "qres_cli/statefile.hpp"
#include "qres_cli/verify.hpp"

#ifndef QRES_VERSION
#define QRES_VERSION "0.0.0"
#endif

namespace qres::cli {

namespace {

const std::vector<std::string> kQuantifiers{"info",        "coherence", "entanglement",
                                            "eof",         "discord",   "discord-sym",
                                            "irreality",   "rbn",       "generic"};

struct UnknownQuantifier : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "table";
  std::uint64_t seed = 0;
  double tol = kMonotonicityTol;

  std::string preset;
  std::string state_file;
  std::string quantifier = "info";
  std::string basis;
  std::string on = "A";
  std::string side = "A";
  std::string scope = "global";
  std::string grid;
  int restarts = -1;
  int samples = 0;
  std::string destroyer;
  std::string eps = "1";
  std::string suite = "all";
};

struct Loaded {
  QState state;
  std::string label;
};

// Warm starts carried between consecutive evaluations of a sweep.
struct Hints {
  std::optional<ObservableBasis> basis;
  std::optional<Context> context;
};

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }

Format parse_format(const std::string& f) {
  if (f == "table") return Format::Table;
  if (f == "json") return Format::Json;
  if (f == "csv") return Format::Csv;
  parse_error("format: expected table, json or csv");
}

Subsystem parse_side(const std::string& s, const char* field) {
  if (s == "A" || s == "a") return Subsystem::A;
  if (s == "B" || s == "b") return Subsystem::B;
  parse_error(std::string(field) + ": expected A or B");
}

Loaded load_state(const Options& o) {
  if (o.preset.empty() == o.state_file.empty()) parse_error("state: give exactly one of --preset or --state");
  if (!o.preset.empty()) return {preset(o.preset), o.preset};
  StateFile file = read_state_file(o.state_file);
  std::string label = file.label.empty() ? o.state_file : file.label;
  return {to_state(file), label};
}

SearchConfig search_config(const Options& o) {
  SearchConfig cfg;
  cfg.seed = o.seed;
  if (o.restarts >= 0) cfg.random_restarts = o.restarts;
  if (!o.grid.empty()) {
    const auto x = o.grid.find('x');
    int t = 0;
    int p = 0;
    const char* b = o.grid.data();
    const char* e = b + o.grid.size();
    if (x == std::string::npos || std::from_chars(b, b + x, t).ptr != b + x ||
        std::from_chars(b + x + 1, e, p).ptr != e || t < 2 || p < 2) {
      parse_error("grid: expected THETAxPHI with both at least 2, e.g. 61x121");
    }
    cfg.grid_theta = t;
    cfg.grid_phi = p;
  }
  return cfg;
}

// Where a basis-dependent quantifier or destroyer acts. "all" treats the
// whole space as one system.
bool whole_space(const Options& o, const QState& s) { return o.on == "all" || !s.dims().bipartite(); }

ObservableBasis resolve_basis(const Options& o, const QState& s, const std::string& name) {
  if (whole_space(o, s)) return parse_basis(name, s.dim(), Subsystem::A);
  const Subsystem side = parse_side(o.on, "on");
  return parse_basis(name, s.dims().of(side), side);
}

Context resolve_context(const std::string& name, const QState& s) {
  return Context{parse_basis(name, s.dims().a(), Subsystem::A), parse_basis(name, s.dims().b(), Subsystem::B)};
}

Fields diagnostics_fields(const SearchDiagnostics& d) {
  return {{"grid_points", static_cast<double>(d.grid_points)},
          {"evaluations", static_cast<double>(d.evaluations)},
          {"cache_hits", static_cast<double>(d.cache_hits)},
          {"starts", static_cast<double>(d.starts)},
          {"refine_iterations", static_cast<double>(d.refine_iterations)},
          {"grid_best", d.grid_best},
          {"second_best_gap", d.second_best_gap},
          {"flat", d.flat ? 1.0 : 0.0}};
}

void attach(Report& r, const QuantifierReport& q) {
  r.value = q.value.value;
  if (q.basis) r.basis = basis_rows(*q.basis);
  if (q.context) {
    r.context_a = basis_rows(q.context->a);
    r.context_b = basis_rows(q.context->b);
  }
  r.diagnostics = diagnostics_fields(q.diagnostics);
  for (const auto& c : q.checks) r.checks.push_back(c);
}

QuantifierReport evaluate(const QState& input, const Options& o, const SearchConfig& cfg, Hints& hints) {
  const std::string& name = o.quantifier;
  QuantifierReport q;
  q.name = name;

  if (name == "info") {
    q.value = information(input);
    q.checks.emplace_back("entropy", vn_entropy(input).value);
    if (input.dims().bipartite()) q.checks.emplace_back("mutual_information", mutual_information(input).value);
  } else if (name == "coherence" || name == "irreality") {
    const QState s = whole_space(o, input) ? flatten(input) : input;
    const ObservableBasis b = resolve_basis(o, s, o.basis.empty() ? "z" : o.basis);
    q.basis = b;
    if (name == "coherence") {
      q.value = coherence(s, b);
    } else {
      const IrrealityForms f = irreality_forms(s, b);
      q.value = irreality(s, b);
      q.checks = {{"entropy_gap", f.entropy_gap.value},
                  {"relative_entropy", f.relative_entropy.value},
                  {"local_plus_discord", f.local_plus_discord.value},
                  {"form_residual", f.max_residual()}};
      if (s.dims().bipartite()) q.checks.emplace_back("bound", irreality_bound(s, b).bound.value);
    }
  } else if (name == "entanglement") {
    const PureState psi = to_pure(input);
    const EntanglementForms f = entanglement_pure_forms(psi);
    q.value = clamp_nonnegative(f.shannon);
    q.basis = schmidt_observable(psi);
    q.checks = {{"via_information", f.via_information.value},
                {"via_mutual_information", f.via_mutual_information.value}};
  } else if (name == "eof") {
    q.value = eof_two_qubit(input);
    q.checks.emplace_back("concurrence", concurrence(input));
    if (o.samples > 0) {
      q.checks.emplace_back("ensemble_upper_bound", eof_ensemble_upper_bound(input, o.samples, o.seed).value);
    }
  } else if (name == "discord") {
    const Subsystem side = parse_side(o.side, "side");
    if (!o.basis.empty()) {
      if (!input.dims().bipartite()) throw Error(ErrorKind::NotBipartite, "discord needs a bipartite state");
      const ObservableBasis b = parse_basis(o.basis, input.dims().of(side), side);
      const DiscordForms f = discord_basis_forms(input, b);
      q.value = clamp_nonnegative(f.mutual_loss);
      q.basis = b;
      q.checks = {{"local_surplus", f.local_surplus.value},
                  {"monitored_surplus", f.monitored_surplus.value},
                  {"conditional_flow", f.conditional_flow.value},
                  {"form_residual", f.max_residual()}};
    } else {
      std::vector<ObservableBasis> h;
      if (hints.basis) h.push_back(*hints.basis);
      q = discord_oneway(input, side, cfg, h);
      hints.basis = q.basis;
    }
  } else if (name == "discord-sym" || name == "rbn") {
    if (!input.dims().bipartite()) throw Error(ErrorKind::NotBipartite, name + " needs a bipartite state");
    if (!o.basis.empty()) {
      const Context c = resolve_context(o.basis, input);
      q.context = c;
      if (name == "rbn") {
        const RbnForms f = rbn_contextual_forms(input, c);
        q.value = clamp_nonnegative(f.eta);
        q.checks = {{"discord_difference", f.discord_difference.value},
                    {"exchanged", f.exchanged.value},
                    {"form_residual", f.max_residual()}};
      } else {
        const SymmetricDiscordForms f = discord_symmetric_forms(input, c);
        q.value = clamp_nonnegative(f.mutual_loss);
        q.checks = {{"one_way_sum", f.one_way_sum.value},
                    {"three_process", f.three_process.value},
                    {"form_residual", f.max_residual()}};
      }
    } else {
      std::vector<Context> h;
      if (hints.context) h.push_back(*hints.context);
      q = name == "rbn" ? rbn(input, cfg, h) : discord_symmetric(input, cfg, h);
      hints.context = q.context;
    }
  } else if (name == "generic") {
    Scope scope = Scope::Global;
    if (o.scope == "A" || o.scope == "a") scope = Scope::A;
    else if (o.scope == "B" || o.scope == "b") scope = Scope::B;
    else if (o.scope != "global") parse_error("scope: expected A, B or global");
    q = generic_correlation(input, scope, cfg);
  } else {
    throw UnknownQuantifier("quantifier: unknown quantifier '" + name + "'");
  }
  q.name = name;
  return q;
}

void require_known_quantifier(const std::string& name) {
  if (std::find(kQuantifiers.begin(), kQuantifiers.end(), name) == kQuantifiers.end()) {
    throw UnknownQuantifier("quantifier: unknown quantifier '" + name + "'");
  }
}

Report base_report(const Options& o, const Loaded& l, const std::string& command) {
  Report r;
  r.version = std::string(version());
  r.seed = o.seed;
  r.command = command;
  r.label = l.label;
  r.dims_a = l.state.dims().a();
  r.dims_b = l.state.dims().b();
  return r;
}

// Destroyer spec: inc | phi-inc | pair | z | x | fourier | basis file, placed by --on.
// Returns the state the destroyer acts on (flattened for whole-space bases).
std::pair<Destroyer, QState> resolve_destroyer(const Options& o, const QState& s) {
  const std::string& d = o.destroyer.empty() ? o.basis : o.destroyer;
  if (d.empty()) parse_error("destroyer: missing (inc, pair, z, x, fourier or a basis file)");
  if (d == "inc" || d == "phi-inc") {
    if (!s.dims().bipartite()) throw Error(ErrorKind::NotBipartite, "destroyer inc needs a bipartite state");
    return {IncDestroyer{}, s};
  }
  if (d == "pair" || d == "phi-pair") {
    if (whole_space(o, s)) {
      const QState flat = flatten(s);
      return {PairIncompatibleDestroyer{Subsystem::A}, flat};
    }
    return {PairIncompatibleDestroyer{parse_side(o.on, "on")}, s};
  }
  const QState target = whole_space(o, s) ? flatten(s) : s;
  return {MeasureDestroyer{resolve_basis(o, target, d)}, target};
}

std::vector<double> parse_eps(const std::string& text) {
  auto num = [](const std::string& t) {
    try {
      std::size_t used = 0;
      const double v = std::stod(t, &used);
      if (used == t.size()) return v;
    } catch (const std::exception&) {
    }
    parse_error("eps: '" + t + "' is not a number");
  };
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) return {num(text)};
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) parse_error("eps: expected start:stop:steps");
  const double start = num(text.substr(0, c1));
  const double stop = num(text.substr(c1 + 1, c2 - c1 - 1));
  const double steps = num(text.substr(c2 + 1));
  if (steps < 1 || steps != std::floor(steps)) parse_error("eps: steps must be a positive integer");
  const int n = static_cast<int>(steps);
  std::vector<double> out;
  for (int k = 0; k < n; ++k) out.push_back(n == 1 ? start : start + (stop - start) * k / (n - 1));
  if (n > 1) out.back() = stop;
  return out;
}

int cmd_compute(const Options& o, std::ostream& out) {
  require_known_quantifier(o.quantifier);
  const Loaded l = load_state(o);
  Hints hints;
  const QuantifierReport q = evaluate(l.state, o, search_config(o), hints);
  Report r = base_report(o, l, "compute");
  r.quantifier = o.quantifier;
  attach(r, q);
  if (!q.basis && !q.context) r.diagnostics.clear();
  write_report(out, r, parse_format(o.format));
  return kOk;
}

int cmd_monitor(const Options& o, std::ostream& out, std::ostream& err) {
  require_known_quantifier(o.quantifier);
  const Loaded l = load_state(o);
  const auto [destroyer, target] = resolve_destroyer(o, l.state);
  const StateMap map = as_map(destroyer);
  const SearchConfig cfg = search_config(o);
  Options eval = o;
  if (std::holds_alternative<MeasureDestroyer>(destroyer) && o.basis.empty()) {
    // basis-dependent quantifiers follow the monitored basis by default
    eval.basis = o.destroyer;
  }

  Report r = base_report(o, l, "monitor");
  r.quantifier = o.quantifier;
  r.destroyer = describe(destroyer);
  r.columns = {"eps", "value_nats", "information_nats"};
  Hints hints;
  for (double e : parse_eps(o.eps)) {
    const QState m = monitoring(target, map, MonitoringStrength(e));
    const double v = evaluate(m, eval, cfg, hints).value.value;
    r.rows.push_back({e, v, information(m).value});
  }
  bool violated = false;
  for (std::size_t k = 1; k < r.rows.size(); ++k) {
    for (std::size_t c : {std::size_t{1}, std::size_t{2}}) {
      const double rise = r.rows[k][c] - r.rows[k - 1][c];
      if (rise > o.tol) {
        std::ostringstream w;
        w << r.columns[c] << " increases by " << std::setprecision(3) << rise << " between eps "
          << r.rows[k - 1][0] << " and " << r.rows[k][0];
        r.warnings.push_back(w.str());
        violated = true;
      }
    }
  }
  write_report(out, r, parse_format(o.format));
  if (violated) {
    for (const auto& w : r.warnings) err << "monotonicity violation: " << w << '\n';
    return kVerificationFailure;
  }
  return kOk;
}

int cmd_flow(const Options& o, std::ostream& out) {
  const Loaded l = load_state(o);
  const auto [destroyer, target] = resolve_destroyer(o, l.state);
  const std::vector<double> eps = parse_eps(o.eps);
  if (eps.size() != 1) parse_error("eps: flow takes a single value");
  const FlowLedger f = flow_ledger(target, destroyer, MonitoringStrength(eps.front()));
  Report r = base_report(o, l, "flow");
  r.destroyer = describe(destroyer);
  r.quantifier = "flow";
  r.value = f.delta_i_cond.value;
  r.ledger = {{"eps", eps.front()},
              {"d_x", static_cast<double>(f.d_x)},
              {"i_initial", f.i_initial.value},
              {"i_final", f.i_final.value},
              {"delta_i_x", f.delta_i_x.value},
              {"delta_i_xs_mutual", f.delta_i_xs_mutual.value},
              {"delta_i_cond", f.delta_i_cond.value},
              {"residual", f.residual.value},
              {"reduction_error", f.reduction_error}};
  write_report(out, r, parse_format(o.format));
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Format format = parse_format(o.format);
  const VerifySummary summary = run_verify(o.suite, o.samples > 0 ? o.samples : 20, o.seed);
  const bool ok = summary.all_passed();
  if (format == Format::Json) {
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : summary.results) {
      props.push_back({{"suite", p.suite},
                       {"property", p.property},
                       {"samples", p.samples},
                       {"worst", p.worst},
                       {"tolerance", p.tolerance},
                       {"passed", p.passed}});
    }
    const nlohmann::json doc{{"tool", "qres"},          {"version", version()},
                             {"seed", o.seed},          {"suite", o.suite},
                             {"properties", props},     {"passed", ok}};
    out << doc.dump(2) << '\n';
  } else if (format == Format::Csv) {
    out << "suite,property,samples,worst,tolerance,passed\n";
    for (const auto& p : summary.results) {
      out << p.suite << ",\"" << p.property << "\"," << p.samples << ',' << std::setprecision(6) << p.worst
          << ',' << p.tolerance << ',' << (p.passed ? "true" : "false") << '\n';
    }
  } else {
    out << "qres " << version() << "  verify " << o.suite << "  seed " << o.seed << '\n';
    int failed = 0;
    for (const auto& p : summary.results) {
      out << (p.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(12) << p.suite << std::setw(46)
          << p.property << " worst " << std::setprecision(3) << std::scientific << p.worst << "  tol "
          << p.tolerance << std::defaultfloat << "  n=" << p.samples << '\n';
      failed += p.passed ? 0 : 1;
    }
    out << (ok ? "all " : "") << summary.results.size() - static_cast<std::size_t>(failed) << "/"
        << summary.results.size() << " properties passed\n";
  }
  return ok ? kOk : kVerificationFailure;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch:
    case ErrorKind::NotBipartite:
    case ErrorKind::NotPure:
    case ErrorKind::WrongDimensions:
    case ErrorKind::DimensionUnsupported:
      return kDimensionError;
    case ErrorKind::UnknownPairing:
      return kUnknownQuantifier;
    default:
      return kParseError;
  }
}

void add_state_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--preset", o.preset, "bell | ghz2 | werner:p | product:a,b | maxmixed:d | maxmixed:AxB");
  cmd->add_option("--state", o.state_file, "state file (JSON: dims, matrix of [re, im], label)");
}

void add_search_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--grid", o.grid, "qubit search grid THETAxPHI (default 61x121)");
  cmd->add_option("--restarts", o.restarts, "random restarts for qudit searches (default 32)");
}

}  // namespace

std::string_view version() { return QRES_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Quantum resource quantifiers, monitoring sweeps and information-flow ledgers", "qres"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));
  app.add_option("--format", o.format, "output encoding: table | json | csv")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--seed", o.seed, "seed for every randomized step (default 0)");
  app.add_option("--tol", o.tol, "monotonicity tolerance for monitor sweeps (default 1e-8)");

  CLI::App* compute = app.add_subcommand("compute", "evaluate one quantifier on a state");
  add_state_options(compute, o);
  compute->add_option("--quantifier,-q", o.quantifier,
                      "info | coherence | entanglement | eof | discord | discord-sym | irreality | rbn | generic");
  compute->add_option("--basis", o.basis,
                      "z | x | fourier | basis file; optimized quantities are searched when omitted");
  compute->add_option("--on", o.on, "subsystem of the basis: A | B | all (default A)");
  compute->add_option("--side", o.side, "measured side for one-way discord: A | B");
  compute->add_option("--scope", o.scope, "generic correlation scope: A | B | global");
  compute->add_option("--samples", o.samples, "ensemble samples for the eof upper bound");
  add_search_options(compute, o);

  CLI::App* monitor = app.add_subcommand(
      "monitor", "sweep eps and report quantifier and information of Lambda_eps(rho).\n"
                 "CSV columns: eps,value_nats,information_nats");
  add_state_options(monitor, o);
  monitor->add_option("--destroyer,-d", o.destroyer, "inc | phi-inc | pair | z | x | fourier | basis file")->required();
  monitor->add_option("--eps", o.eps, "value or sweep start:stop:steps");
  monitor->add_option("--quantifier,-q", o.quantifier, "quantifier evaluated along the sweep (default info)");
  monitor->add_option("--basis", o.basis, "basis for the quantifier (defaults to the destroyer basis)");
  monitor->add_option("--on", o.on, "subsystem of the destroyer basis: A | B | all");
  monitor->add_option("--side", o.side, "measured side for one-way discord");
  monitor->add_option("--scope", o.scope, "generic correlation scope");
  add_search_options(monitor, o);

  CLI::App* flow = app.add_subcommand(
      "flow", "dilate the monitoring and print the information-flow ledger.\n"
              "CSV columns: section,name,value");
  add_state_options(flow, o);
  flow->add_option("--destroyer,-d", o.destroyer, "inc | phi-inc | pair | z | x | fourier | basis file")->required();
  flow->add_option("--eps", o.eps, "monitoring strength in [0, 1]");
  flow->add_option("--on", o.on, "subsystem of the destroyer basis: A | B | all");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the property suites.\nCSV columns: suite,property,samples,worst,tolerance,passed");
  verify->add_option("--suite", o.suite, "entropy | channels | dilation | quantifiers | optimize | all");
  verify->add_option("--samples", o.samples, "random samples per property (default 20)");

  for (CLI::App* sub : {compute, monitor, flow, verify}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  try {
    if (compute->parsed()) return cmd_compute(o, out);
    if (monitor->parsed()) return cmd_monitor(o, out, err);
    if (flow->parsed()) return cmd_flow(o, out);
    return cmd_verify(o, out);
  } catch (const UnknownQuantifier& e) {
    err << "error: " << e.what() << '\n';
    return kUnknownQuantifier;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  }
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace qres::cli
