#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "centralcfg/errors.hpp"
#include "centralcfg/geometry.hpp"
#include "io.hpp"
#include "sweep.hpp"

namespace centralcfg::cli {

namespace {

// Values such as "--++" or "-1.5" look like flags to the parser, so the
// options that take them are glued to their value first.
std::vector<std::string> glue_values(std::vector<std::string> args) {
  static const std::vector<std::string> glued{"--pattern", "--a", "--masses", "--exponents"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i + 1 < args.size() && std::find(glued.begin(), glued.end(), args[i]) != glued.end()) {
      out.push_back(args[i] + "=" + args[i + 1]);
      ++i;
    } else {
      out.push_back(args[i]);
    }
  }
  return out;
}

double parse_one_real(const std::string& text, const char* what) {
  const std::vector<double> values = parse_real_list(text);
  if (values.size() != 1) throw InvalidInput(std::string(what) + " takes a single number, got '" + text + "'");
  return values.front();
}

struct ToleranceFlags {
  double t_spread = dziobek::Tolerances{}.t_spread;
  double dziobek_fit = dziobek::Tolerances{}.dziobek_fit;
  double cayley_menger = dziobek::Tolerances{}.cayley_menger;
  double direct = dziobek::Tolerances{}.direct;
  std::vector<CLI::Option*> options;

  void attach(CLI::App* app) {
    options = {app->add_option("--tol-t-spread", t_spread, "t-spread acceptance tolerance"),
               app->add_option("--tol-dziobek", dziobek_fit, "Dziobek fit acceptance tolerance"),
               app->add_option("--tol-cayley-menger", cayley_menger, "Cayley-Menger acceptance tolerance"),
               app->add_option("--tol-direct", direct, "direct residual acceptance tolerance")};
  }
  bool any_set() const {
    return std::any_of(options.begin(), options.end(), [](CLI::Option* o) { return o->count() > 0; });
  }
  void apply(dziobek::Tolerances& t) const {
    if (options[0]->count()) t.t_spread = t_spread;
    if (options[1]->count()) t.dziobek_fit = dziobek_fit;
    if (options[2]->count()) t.cayley_menger = cayley_menger;
    if (options[3]->count()) t.direct = direct;
  }
  dziobek::Tolerances get() const {
    dziobek::Tolerances t;
    apply(t);
    return t;
  }
};

// Writes to the named file, or to `fallback` when the name is empty.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw InvalidInput("cannot write " + path);
  write(file);
}

void emit_json(const std::string& path, std::ostream& fallback, const json& doc) {
  emit(path, fallback, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
}

std::string default_pattern(std::size_t n) { return "--" + std::string(n >= 2 ? n - 2 : 0, '+'); }

std::string format_real(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

// ---- solve ---------------------------------------------------------------

struct SolveArgs {
  std::string masses;
  std::string a;
  std::string pattern;
  int n = 0;
  std::uint64_t seed = 0;
  int starts = 16;
  std::string out;
  std::string format = "json";
  ToleranceFlags tol;
};

json rejected_json(const dziobek::RejectedRoot& r) {
  return {{"deltas", r.deltas}, {"reason", r.reason}, {"residuals", residuals_json(r.residuals)}};
}

void write_solutions_csv(std::ostream& o, const std::vector<dziobek::CCSolution>& sols, std::size_t n) {
  o << "root";
  for (std::size_t i = 1; i <= n; ++i) o << ",delta" << i;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) o << ",s" << i << j;
  }
  o << ",t_spread,dziobek_fit,cayley_menger,direct,lambda_over_M,mu\n";
  for (std::size_t r = 0; r < sols.size(); ++r) {
    const auto& sol = sols[r];
    o << r + 1;
    for (double d : sol.deltas.values()) o << ',' << format_real(d);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) o << ',' << format_real(sol.distances(i, j));
    }
    for (double v : {sol.residuals.t_spread, sol.residuals.dziobek_fit, sol.residuals.cayley_menger,
                     sol.residuals.direct, sol.lambda_over_M, sol.mu}) {
      o << ',' << format_real(v);
    }
    o << '\n';
  }
}

int run_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  if (args.a.empty()) throw InvalidInput("--a is required");
  std::vector<double> m;
  if (!args.masses.empty()) {
    m = parse_real_list(args.masses);
    if (args.n != 0 && static_cast<std::size_t>(args.n) != m.size()) {
      throw InvalidInput("--n " + std::to_string(args.n) + " does not match " + std::to_string(m.size()) + " masses");
    }
  } else if (args.n > 0) {
    m.assign(static_cast<std::size_t>(args.n), 1.0);
  } else {
    throw InvalidInput("--masses or --n is required");
  }
  const MassVector masses(m);
  const Exponent exponent(parse_one_real(args.a, "--a"));
  const std::string pattern = args.pattern.empty() ? default_pattern(masses.size()) : args.pattern;

  dziobek::SolverOptions options;
  options.seed = args.seed;
  options.starts = args.starts;
  options.tolerances = args.tol.get();
  const dziobek::SolveOutcome outcome =
      dziobek::solve_all(masses, exponent, dziobek::parse_sign_pattern(pattern), options);

  std::string status = "accepted";
  int code = exit_ok;
  if (outcome.accepted.empty()) {
    status = outcome.spurious.empty() ? "no-convergence" : "spurious-only";
    code = outcome.spurious.empty() ? exit_no_convergence : exit_spurious_only;
  }

  if (args.format == "csv") {
    emit(args.out, out, [&](std::ostream& o) { write_solutions_csv(o, outcome.accepted, masses.size()); });
  } else {
    json doc;
    doc["status"] = status;
    doc["masses"] = m;
    doc["a"] = exponent.a();
    doc["pattern"] = pattern;
    doc["solutions"] = json::array();
    for (const auto& sol : outcome.accepted) {
      json j = solution_json(sol);
      if (masses.size() == 4 || masses.size() == 5) j["analysis"] = analysis_json(analysis::analyze(sol));
      doc["solutions"].push_back(std::move(j));
    }
    doc["rejected"] = json::array();
    for (const auto& r : outcome.spurious) doc["rejected"].push_back(rejected_json(r));
    doc["starts"] = json::array();
    for (const auto& s : outcome.starts) {
      doc["starts"].push_back({{"start", s.start_id},
                               {"iterations", s.iterations},
                               {"final_residual", s.final_residual},
                               {"outcome", s.outcome}});
    }
    doc["best_residual"] = outcome.best_residual;
    emit_json(args.out, out, doc);
  }
  if (code != exit_ok) err << "solve: " << status << '\n';
  return code;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string file;
  std::string a;
  std::string masses;
  std::string out;
  ToleranceFlags tol;
};

int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  if (args.a.empty()) throw InvalidInput("--a is required");
  const PositionsFile file = parse_positions(read_json_file(args.file));
  std::vector<double> m;
  if (!args.masses.empty()) {
    m = parse_real_list(args.masses);
  } else if (file.masses) {
    m = *file.masses;
  } else {
    throw InvalidInput("masses are required, either in the positions file or via --masses");
  }
  if (m.size() != file.points.size()) {
    throw DimensionMismatch(std::to_string(m.size()) + " masses for " + std::to_string(file.points.size()) +
                            " points");
  }
  const MassVector masses(m);
  const Exponent exponent(parse_one_real(args.a, "--a"));
  if (file.points.dim() != static_cast<int>(masses.size()) - 2) {
    throw DimensionMismatch("verify needs n points in dimension n-2");
  }
  const dziobek::Tolerances tolerances = args.tol.get();

  json doc;
  int code = exit_ok;
  try {
    const dziobek::CCSolution sol = dziobek::from_positions(file.points, masses, exponent, tolerances);
    const dziobek::ValidationReport report = dziobek::validate(sol, tolerances);
    doc["status"] = report.accepted ? "accepted" : "rejected";
    doc["accepted"] = report.accepted;
    doc["residuals"] = residuals_json(report.residuals);
    doc["lambda_over_M"] = report.lambda_over_M;
    doc["mu"] = report.mu;
    doc["failures"] = report.failures;
    doc["deltas"] = std::vector<double>(sol.deltas.values().begin(), sol.deltas.values().end());
    if (report.accepted && (masses.size() == 4 || masses.size() == 5)) {
      doc["analysis"] = analysis_json(analysis::analyze(sol));
    }
    if (!report.accepted) code = exit_rejected;
  } catch (const NotRealizable& e) {
    doc = {{"status", "rejected"}, {"accepted", false}, {"error", e.what()}};
    code = exit_rejected;
  } catch (const WrongRank& e) {
    doc = {{"status", "rejected"}, {"accepted", false}, {"error", e.what()}, {"nullity", e.nullity()}};
    code = exit_rejected;
  }
  emit_json(args.out, out, doc);
  if (code != exit_ok) err << "verify: configuration rejected\n";
  return code;
}

// ---- embed ---------------------------------------------------------------

struct EmbedArgs {
  std::string file;
  int dim = 0;
  std::string out;
};

int run_embed(const EmbedArgs& args, std::ostream& out, std::ostream& err) {
  const DistancesFile file = parse_distances(read_json_file(args.file));
  const SquaredDistanceMatrix s(file.s);
  int dim = args.dim;
  if (dim == 0) dim = file.dim.value_or(static_cast<int>(s.size()) - 2);
  if (dim < 1) throw InvalidInput("embedding dimension must be at least 1");
  try {
    const Configuration config = geometry::embed(s, dim);
    emit_json(args.out, out, positions_json(config, file.masses));
    return exit_ok;
  } catch (const NotRealizable& e) {
    emit_json(args.out, out,
              {{"status", "not-realizable"},
               {"error", e.what()},
               {"most_negative_eigenvalue", e.most_negative_eigenvalue()},
               {"excess_rank", e.excess_rank()}});
    err << "embed: " << e.what() << '\n';
    return exit_rejected;
  }
}

// ---- sweep ---------------------------------------------------------------

struct SweepArgs {
  std::string spec_file;
  std::string masses;
  std::string exponents;
  std::string pattern;
  std::uint64_t seed = 0;
  int starts = 16;
  int threads = 1;
  double symmetry_tolerance = 1e-7;
  std::string out;
  std::string summary;
  std::string plot;
  std::string format = "csv";
  ToleranceFlags tol;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* starts_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
  CLI::Option* symmetry_opt = nullptr;
};

std::vector<double> axis_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>()};
  if (j.is_string()) return parse_axis(j.get<std::string>());
  if (j.is_array()) {
    std::vector<double> values;
    for (const auto& v : j) {
      if (!v.is_number()) throw InvalidInput("mass axis arrays must hold numbers");
      values.push_back(v.get<double>());
    }
    return values;
  }
  throw InvalidInput("a mass axis must be a number, a string or an array");
}

// Comma-separated items, each a number, "lo:hi:step" or "x|y|z".
std::vector<std::vector<double>> parse_axes(const std::string& text) {
  std::vector<std::vector<double>> axes;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    axes.push_back(parse_axis(std::string_view(text).substr(start, end - start)));
    start = end + 1;
  }
  return axes;
}

SweepSpec spec_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("sweep spec must be a JSON object");
  SweepSpec spec;
  try {
    if (doc.contains("masses")) {
      for (const auto& axis : doc.at("masses")) spec.mass_axes.push_back(axis_from_json(axis));
    }
    if (doc.contains("mass_list")) spec.mass_list = doc.at("mass_list").get<std::vector<std::vector<double>>>();
    if (doc.contains("exponents")) {
      for (const auto& a : doc.at("exponents")) {
        const auto values = axis_from_json(a);
        spec.exponents.insert(spec.exponents.end(), values.begin(), values.end());
      }
    }
    spec.pattern = doc.value("pattern", std::string());
    if (doc.contains("tolerances")) {
      const json& t = doc.at("tolerances");
      spec.tolerances.t_spread = t.value("t_spread", spec.tolerances.t_spread);
      spec.tolerances.dziobek_fit = t.value("dziobek_fit", spec.tolerances.dziobek_fit);
      spec.tolerances.cayley_menger = t.value("cayley_menger", spec.tolerances.cayley_menger);
      spec.tolerances.direct = t.value("direct", spec.tolerances.direct);
    }
    spec.seed = doc.value("seed", spec.seed);
    spec.starts = doc.value("starts", spec.starts);
    spec.threads = doc.value("threads", spec.threads);
    spec.symmetry_tolerance = doc.value("symmetry_tolerance", spec.symmetry_tolerance);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed sweep spec: ") + e.what());
  }
  return spec;
}

int run_sweep_command(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  if (!args.spec_file.empty()) spec = spec_from_json(read_json_file(args.spec_file));
  if (!args.masses.empty()) {
    spec.mass_axes = parse_axes(args.masses);
    spec.mass_list.clear();
  }
  if (!args.exponents.empty()) {
    spec.exponents.clear();
    for (const auto& axis : parse_axes(args.exponents)) spec.exponents.insert(spec.exponents.end(), axis.begin(), axis.end());
  }
  if (!args.pattern.empty()) spec.pattern = args.pattern;
  if (args.seed_opt->count()) spec.seed = args.seed;
  if (args.starts_opt->count()) spec.starts = args.starts;
  if (args.threads_opt->count()) spec.threads = args.threads;
  if (args.symmetry_opt->count()) spec.symmetry_tolerance = args.symmetry_tolerance;
  args.tol.apply(spec.tolerances);
  if (spec.threads < 1) throw InvalidInput("--threads must be at least 1");
  if (spec.starts < 1) throw InvalidInput("--starts must be at least 1");

  const SweepResult result = run_sweep(spec);
  const std::size_t bodies = result.rows.front().point.masses.size();
  if (args.format == "json") {
    emit_json(args.out, out, rows_json(result.rows));
  } else {
    emit(args.out, out, [&](std::ostream& o) { write_csv(o, result.rows, bodies); });
  }
  if (!args.plot.empty()) emit(args.plot, out, [&](std::ostream& o) { write_plot_data(o, result.rows); });
  emit_json(args.summary, err, result.summary);
  return exit_ok;
}

// ---- propcheck -----------------------------------------------------------

struct PropcheckArgs {
  std::string lemma;
  std::int64_t samples = 0;
  std::uint64_t seed = 7;
  int threads = 1;
  int minimizer_runs = 100;
  std::string out;
};

int run_propcheck(const PropcheckArgs& args, std::ostream& out, std::ostream& err) {
  lemmas::PropertyOptions options;
  options.samples = args.samples;
  options.seed = args.seed;
  options.threads = args.threads;
  options.minimizer_runs = args.minimizer_runs;
  if (options.samples < 0) throw InvalidInput("--samples must be non-negative");
  if (options.threads < 1) throw InvalidInput("--threads must be at least 1");
  const lemmas::PropertyReport report = lemmas::run_property_check(args.lemma, options);
  emit_json(args.out, out, property_json(report));
  if (!report.pass) {
    err << "propcheck " << args.lemma << ": violated, min " << report.min_value << '\n';
    return exit_property_violation;
  }
  return exit_ok;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Central configurations of n bodies in dimension n-2", "centralcfg"};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve for the central configurations with a Dziobek sign pattern");
  solve_cmd->add_option("--masses", solve.masses, "comma-separated masses, e.g. 1,1,2,3");
  solve_cmd->add_option("--a", solve.a, "interaction exponent a < 0 (S = s^a)");
  solve_cmd->add_option("--pattern", solve.pattern, "sign pattern of Delta, e.g. --++");
  solve_cmd->add_option("--n", solve.n, "number of bodies (equal unit masses when --masses is absent)");
  solve_cmd->add_option("--seed", solve.seed, "seed of the start jitter");
  solve_cmd->add_option("--starts", solve.starts, "number of Newton starts")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--out", solve.out, "output file (default stdout)");
  solve_cmd->add_option("--format", solve.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  solve.tol.attach(solve_cmd);

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Validate a configuration given by positions");
  verify_cmd->add_option("positions", verify.file, "positions JSON file")->required();
  verify_cmd->add_option("--a", verify.a, "interaction exponent");
  verify_cmd->add_option("--masses", verify.masses, "masses, overriding the file");
  verify_cmd->add_option("--out", verify.out, "output file (default stdout)");
  verify.tol.attach(verify_cmd);

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Solve over a grid of masses and exponents");
  sweep_cmd->add_option("--spec", sweep.spec_file, "sweep spec JSON file");
  sweep_cmd->add_option("--masses", sweep.masses, "one axis per body: x, lo:hi:step or x|y|z, comma-separated");
  sweep_cmd->add_option("--a,--exponents", sweep.exponents, "exponent values or ranges, comma-separated");
  sweep_cmd->add_option("--pattern", sweep.pattern, "sign pattern of Delta");
  sweep.seed_opt = sweep_cmd->add_option("--seed", sweep.seed, "solver seed");
  sweep.starts_opt = sweep_cmd->add_option("--starts", sweep.starts, "Newton starts per point");
  sweep.threads_opt = sweep_cmd->add_option("--threads", sweep.threads, "worker threads");
  sweep.symmetry_opt = sweep_cmd->add_option("--symmetry-tol", sweep.symmetry_tolerance, "symmetry tolerance");
  sweep_cmd->add_option("--out", sweep.out, "rows file (default stdout)");
  sweep_cmd->add_option("--summary", sweep.summary, "summary JSON file (default stderr)");
  sweep_cmd->add_option("--plot", sweep.plot, "asymmetry-vs-mass-gap data file");
  sweep_cmd->add_option("--format", sweep.format, "csv or json")->check(CLI::IsMember({"json", "csv"}));
  sweep.tol.attach(sweep_cmd);

  PropcheckArgs prop;
  CLI::App* prop_cmd = app.add_subcommand("propcheck", "Run a property suite: lemma1, lemma2, lemma3 or laguerre");
  prop_cmd->add_option("lemma", prop.lemma, "suite id")->required();
  prop_cmd->add_option("--samples", prop.samples, "sample count (0 = suite default)");
  prop_cmd->add_option("--seed", prop.seed, "seed");
  prop_cmd->add_option("--threads", prop.threads, "worker threads");
  prop_cmd->add_option("--minimizer-runs", prop.minimizer_runs, "minimizer runs (lemma2)");
  prop_cmd->add_option("--out", prop.out, "output file (default stdout)");

  EmbedArgs embed;
  CLI::App* embed_cmd = app.add_subcommand("embed", "Embed a squared-distance matrix");
  embed_cmd->add_option("distances", embed.file, "distances JSON file")->required();
  embed_cmd->add_option("--dim", embed.dim, "target dimension (default n-2)");
  embed_cmd->add_option("--out", embed.out, "output file (default stdout)");

  std::vector<std::string> argv = glue_values(std::move(args));
  std::reverse(argv.begin(), argv.end());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid_input;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve, out, err);
    if (verify_cmd->parsed()) return run_verify(verify, out, err);
    if (sweep_cmd->parsed()) return run_sweep_command(sweep, out, err);
    if (prop_cmd->parsed()) return run_propcheck(prop, out, err);
    if (embed_cmd->parsed()) return run_embed(embed, out, err);
  } catch (const Error& e) {
    out << json{{"status", "invalid-input"}, {"error", e.what()}}.dump(2) << '\n';
    err << "error: " << e.what() << '\n';
    return exit_invalid_input;
  }
  return exit_invalid_input;
}

}  // namespace centralcfg::cli
