#include "spcart/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spcart/bounds.hpp"
#include "spcart/csv.hpp"
#include "spcart/datasets.hpp"
#include "spcart/errors.hpp"
#include "spcart/power.hpp"
#include "spcart/spcart.hpp"

namespace spcart::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Argument error raised by the CLI layer itself, already in flag terms.
struct FlagError : ArgumentError {
  using ArgumentError::ArgumentError;
};

const std::map<std::string, std::string>& parameter_flags() {
  static const std::map<std::string, std::string> flags{
      {"lambda", "--lambda"},       {"r", "--r"},
      {"k", "--r"},                 {"max_iterations", "--max-iter"},
      {"rel_change_tol", "--tol"},  {"random_restarts", "--restarts"},
      {"input", "--input"},         {"n", "--n"},
      {"decay", "--decay"},         {"rows", "--input"},
      {"mode", "--method"},         {"X", "--input"},
  };
  return flags;
}

std::string flag_for(const std::string& parameter) {
  if (parameter.rfind("--", 0) == 0) return parameter;
  const auto& flags = parameter_flags();
  const auto it = flags.find(parameter);
  return it != flags.end() ? it->second : "--" + parameter;
}

void emit_error(std::ostream& err, const std::string& kind, const std::string& flag,
                const std::string& domain, const std::string& message) {
  json line;
  line["error"] = kind;
  line["flag"] = flag;
  line["domain"] = domain;
  line["message"] = message;
  err << line.dump() << '\n';
}

struct Options {
  std::string input;
  std::string input_kind;
  bool no_center = false;
  bool remove_dc = false;
  std::string method = "spcart";
  std::vector<std::string> methods;
  std::string trunc = "l0";
  std::string lambda = "1/sqrt(p)";
  std::vector<std::string> lambdas;
  long long r = 0;
  std::string adaptive = "true";
  std::uint64_t seed = 0;
  int max_iter = 200;
  double tol = 0.01;
  int restarts = 0;
  std::string artificial = "sqrt";
  std::string output;
  std::string format = "jsonl";
  int trials = 500;
  std::string model = "synthetic";
  long long n = 0;
  long long p = 50;
  double decay = 0.7;
  long long decay_n = 100;
};

struct LoadedInput {
  MatrixInput input;
  std::string label;
};

LoadedInput load_input(const Options& o) {
  if (o.input.empty())
    throw FlagError("--input", "CSV path or one of pitprops, synthetic, decaying",
                    "no input given");
  std::string kind = o.input_kind;
  if (!kind.empty() && kind != "data" && kind != "covariance")
    throw FlagError("--input-kind", "data or covariance", "got '" + kind + "'");

  if (o.input == "pitprops" || o.input == "synthetic") {
    if (kind == "data")
      throw FlagError("--input-kind", "covariance for builtin " + o.input,
                      "builtin is a covariance matrix");
    Matrix c = o.input == "pitprops" ? load_pitprops() : synthetic_covariance();
    return {MatrixInput::covariance(std::move(c)), o.input};
  }
  if (o.input == "decaying") {
    if (kind == "covariance")
      throw FlagError("--input-kind", "data for builtin decaying", "builtin is a data matrix");
    if (o.decay_n < o.p || o.p < 1)
      throw FlagError("--decay-n", "decay-n >= p >= 1", "got n=" + std::to_string(o.decay_n));
    return {MatrixInput::data(decaying_spectrum_data(o.decay_n, o.p, o.decay, o.seed)),
            "decaying"};
  }

  CsvMatrix csv;
  try {
    csv = read_matrix_csv(o.input);
  } catch (const InputError& e) {
    throw InputError(std::string("--input: ") + e.what());
  }
  if (kind == "covariance") return {MatrixInput::covariance(std::move(csv.values)), o.input};
  Matrix a = std::move(csv.values);
  if (o.remove_dc) a = remove_dc(a);
  if (!o.no_center) a = center_columns(a).matrix;
  return {MatrixInput::data(std::move(a)), o.input};
}

}  // namespace

double resolve_lambda(const std::string& token, TruncationKind kind, Eigen::Index p) {
  std::string compact;
  for (char ch : token)
    if (ch != ' ') compact += ch;
  if (compact == "1/sqrt(p)") {
    if (kind != TruncationKind::HardThreshold && kind != TruncationKind::SoftThreshold)
      throw FlagError("--lambda", "number (1/sqrt(p) applies to l0/l1 only)",
                      "1/sqrt(p) given for T-" + std::string(to_string(kind)));
    return 1.0 / std::sqrt(static_cast<double>(p));
  }
  double value = 0.0;
  const char* first = compact.data();
  const char* last = first + compact.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (compact.empty() || ec != std::errc() || ptr != last)
    throw FlagError("--lambda", "decimal number or 1/sqrt(p)", "cannot parse '" + token + "'");
  return value;
}

namespace {

struct MethodRun {
  std::string method;
  bool adaptive = true;
  double lambda = 0;
  FitReport report;
  double wall_time = 0;
};

struct TruncationChoice {
  TruncationKind kind;
  bool adaptive;
};

bool parse_bool_flag(const std::string& flag, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw FlagError(flag, "true or false", "got '" + value + "'");
}

void validate_method(const std::string& method) {
  static const std::vector<std::string> known{"spcart", "rsvd-gp", "rsvd-gpb", "st", "pca"};
  if (std::find(known.begin(), known.end(), method) == known.end())
    throw FlagError("--method", "one of spcart, rsvd-gp, rsvd-gpb, st, pca",
                    "unknown method '" + method + "'");
}

void validate_lambda(const Options& o, const std::string& method, const TruncationSpec& spec,
                     bool adaptive, Eigen::Index p) {
  if (method == "pca") return;
  const bool raw = !adaptive && (method == "rsvd-gp" || method == "rsvd-gpb") &&
                   (spec.kind == TruncationKind::HardThreshold ||
                    spec.kind == TruncationKind::SoftThreshold);
  if (raw) {
    if (!(spec.lambda >= 0.0) || !std::isfinite(spec.lambda))
      throw FlagError("--lambda", "[0, inf) for raw thresholds",
                      "got " + std::to_string(spec.lambda));
    return;
  }
  try {
    spec.validate(p);
  } catch (const ArgumentError& e) {
    throw FlagError("--lambda", e.domain(),
                    "value " + std::to_string(spec.lambda) + " invalid for --trunc " + o.trunc);
  }
}

FitReport run_method(const MatrixInput& input, const Options& o, const std::string& method,
                     const TruncationSpec& spec, bool adaptive) {
  const Eigen::Index r = static_cast<Eigen::Index>(o.r);
  if (method == "spcart") {
    SpcartConfig cfg;
    cfg.r = r;
    cfg.truncation = spec;
    cfg.max_iterations = o.max_iter;
    cfg.rel_change_tol = o.tol;
    cfg.random_restarts = o.restarts;
    cfg.seed = o.seed;
    return spcart_fit(input, cfg);
  }
  if (method == "st" || method == "pca") {
    FitReport rep;
    rep.pca = pca_loadings(input, r);
    if (method == "st") {
      if (spec.kind != TruncationKind::HardThreshold)
        throw FlagError("--trunc", "l0 for method st", "simple thresholding is hard thresholding");
      rep.loadings = simple_thresholding(input, r, spec.lambda);
    } else {
      rep.loadings = rep.pca.loadings;
    }
    rep.rotation = Matrix::Identity(r, r);
    rep.iterations = 1;
    rep.converged = true;
    rep.final_metrics = compute_metrics(input, rep.loadings);
    return rep;
  }
  PowerConfig cfg;
  cfg.r = r;
  cfg.truncation = spec;
  cfg.adaptive = adaptive;
  cfg.max_iterations = o.max_iter;
  cfg.rel_change_tol = o.tol;
  if (method == "rsvd-gp") {
    cfg.mode = PowerConfig::Mode::Deflation;
    return rsvd_gp_fit(input, cfg);
  }
  cfg.mode = PowerConfig::Mode::Block;
  if (input.is_data()) return rsvd_gpb_fit(input, cfg);
  if (o.artificial != "sqrt" && o.artificial != "literal")
    throw FlagError("--artificial", "sqrt or literal", "got '" + o.artificial + "'");
  const ArtificialMode mode =
      o.artificial == "literal" ? ArtificialMode::LiteralInverseSqrt : ArtificialMode::SquareRoot;
  FitReport rep =
      rsvd_gpb_fit(MatrixInput::data(artificial_data_from_covariance(input.matrix(), mode)), cfg);
  rep.final_metrics = compute_metrics(input, rep.loadings);
  return rep;
}

MethodRun timed_run(const MatrixInput& input, const Options& o, const std::string& method,
                    const TruncationSpec& spec, bool adaptive) {
  const auto start = std::chrono::steady_clock::now();
  MethodRun run{method, adaptive, spec.lambda, run_method(input, o, method, spec, adaptive), 0.0};
  run.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

json metrics_record(const std::string& command, const std::string& input_label,
                    const std::string& trunc, Eigen::Index r, const MethodRun& run) {
  const MetricsSnapshot& m = run.report.final_metrics;
  json j;
  j["command"] = command;
  j["input"] = input_label;
  j["method"] = run.method;
  j["adaptive"] = run.adaptive;
  j["trunc"] = trunc;
  j["lambda"] = run.lambda;
  j["r"] = r;
  j["SP"] = m.sp_mean;
  j["STD"] = m.sp_std;
  j["sp_worst"] = m.sp_worst;
  j["NOR"] = m.nor;
  j["EV"] = m.ev;
  j["CPEV"] = m.cpev;
  j["NZ"] = m.nz();
  j["cardinalities"] = m.per_column_cardinality;
  j["iterations"] = run.report.iterations;
  j["converged"] = run.report.converged;
  j["warnings"] = run.report.warnings;
  j["wall_time"] = run.wall_time;
  return j;
}

std::string csv_cell(const json& v) {
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, d, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
  }
  if (v.is_null()) return "inf";
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return quoted + "\"";
    }
    return s;
  }
  if (v.is_array()) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ' ';
      s += csv_cell(v[i]);
    }
    return csv_cell(json(s));
  }
  return v.dump();
}

std::string render(const std::vector<json>& rows, const std::string& format) {
  std::string out;
  if (format == "jsonl") {
    for (const auto& row : rows) out += row.dump() + "\n";
    return out;
  }
  if (rows.empty()) return out;
  bool first = true;
  for (const auto& [key, _] : rows.front().items()) {
    if (!first) out += ',';
    out += key;
    first = false;
  }
  out += '\n';
  for (const auto& row : rows) {
    first = true;
    for (const auto& [_, value] : row.items()) {
      if (!first) out += ',';
      out += csv_cell(value);
      first = false;
    }
    out += '\n';
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("--output: cannot write '" + path.string() + "'");
  f << text;
}

std::string output_prefix(const Options& o, const std::string& command) {
  if (!o.output.empty()) return o.output;
  const char* dir = std::getenv(kOutputDirEnv);
  return (fs::path(dir != nullptr && *dir ? dir : ".") / ("spcart-" + command)).string();
}

std::string extension(const std::string& format) { return format == "csv" ? ".csv" : ".jsonl"; }

void print_warnings(std::ostream& err, const MethodRun& run) {
  for (const auto& w : run.report.warnings) err << "warning: " << run.method << ": " << w << '\n';
}

std::vector<std::string> loading_header(Eigen::Index r) {
  std::vector<std::string> h;
  for (Eigen::Index j = 0; j < r; ++j) h.push_back("x" + std::to_string(j + 1));
  return h;
}

void check_common(const Options& o) {
  if (o.r < 1) throw FlagError("--r", "integer >= 1", "got " + std::to_string(o.r));
  if (o.max_iter < 1)
    throw FlagError("--max-iter", "integer >= 1", "got " + std::to_string(o.max_iter));
  if (!(o.tol > 0.0)) throw FlagError("--tol", "> 0", "got " + std::to_string(o.tol));
  if (o.restarts < 0)
    throw FlagError("--restarts", "integer >= 0", "got " + std::to_string(o.restarts));
  if (o.format != "csv" && o.format != "jsonl")
    throw FlagError("--format", "csv or jsonl", "got '" + o.format + "'");
}

int cmd_fit(const Options& o, std::ostream& out, std::ostream& err) {
  check_common(o);
  validate_method(o.method);
  const TruncationKind kind = parse_truncation_kind(o.trunc);
  const bool adaptive = parse_bool_flag("--adaptive", o.adaptive);
  const LoadedInput in = load_input(o);
  const Eigen::Index p = in.input.variables();
  const TruncationSpec spec{kind, o.method == "pca" ? 0.0 : resolve_lambda(o.lambda, kind, p)};
  validate_lambda(o, o.method, spec, adaptive, p);

  const MethodRun run = timed_run(in.input, o, o.method, spec, adaptive);
  print_warnings(err, run);
  const std::string prefix = output_prefix(o, "fit");
  write_text(prefix + ".loadings.csv",
             format_matrix_csv(run.report.loadings, loading_header(run.report.loadings.cols())));
  const json record = metrics_record("fit", in.label, o.trunc, o.r, run);
  const std::string text = render({record}, o.format);
  write_text(prefix + ".metrics" + extension(o.format), text);
  out << text;
  return kExitOk;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  check_common(o);
  const TruncationKind kind = parse_truncation_kind(o.trunc);
  std::vector<std::string> methods = o.methods.empty() ? std::vector<std::string>{o.method}
                                                        : o.methods;
  for (const auto& m : methods) validate_method(m);
  std::vector<bool> adaptive_modes;
  if (o.adaptive == "both")
    adaptive_modes = {true, false};
  else
    adaptive_modes = {parse_bool_flag("--adaptive", o.adaptive)};
  const std::vector<std::string> tokens =
      o.lambdas.empty() ? std::vector<std::string>{o.lambda} : o.lambdas;

  const LoadedInput in = load_input(o);
  const Eigen::Index p = in.input.variables();

  struct Cell {
    std::string label;
    std::string method;
    bool adaptive;
    TruncationSpec spec;
  };
  std::vector<Cell> cells;
  for (const auto& method : methods) {
    const bool power = method == "rsvd-gp" || method == "rsvd-gpb";
    for (bool adaptive : adaptive_modes) {
      if (!power && !adaptive) continue;
      const std::string label = power && !adaptive ? method + ":raw" : method;
      if (method == "pca") {
        cells.push_back({label, method, true, {kind, 0.0}});
        continue;
      }
      for (const auto& token : tokens) {
        const TruncationSpec spec{kind, resolve_lambda(token, kind, p)};
        validate_lambda(o, method, spec, adaptive, p);
        cells.push_back({label, method, adaptive, spec});
      }
    }
  }
  std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.label != b.label) return a.label < b.label;
    return a.spec.lambda < b.spec.lambda;
  });
  cells.erase(std::unique(cells.begin(), cells.end(),
                          [](const Cell& a, const Cell& b) {
                            return a.label == b.label && a.spec.lambda == b.spec.lambda;
                          }),
              cells.end());

  std::vector<json> rows;
  for (const auto& cell : cells) {
    MethodRun run = timed_run(in.input, o, cell.method, cell.spec, cell.adaptive);
    run.method = cell.label;
    print_warnings(err, run);
    json row = metrics_record("compare", in.label, o.trunc, o.r, run);
    row.erase("warnings");
    rows.push_back(std::move(row));
  }
  const std::string text = render(rows, o.format);
  write_text(output_prefix(o, "compare") + ".compare" + extension(o.format), text);
  out << text;
  return kExitOk;
}

json bound_record(const BoundReport& b) {
  json j;
  j["name"] = b.name;
  j["lo"] = b.theoretical.lo;
  j["hi"] = std::isinf(b.theoretical.hi) ? json(nullptr) : json(b.theoretical.hi);
  j["empirical"] = b.empirical;
  j["satisfied"] = b.satisfied;
  j["applicable"] = b.applicable;
  j["vacuous"] = b.vacuous;
  j["informational"] = b.informational;
  j["lambda"] = b.context.lambda;
  j["p"] = b.context.p;
  j["r"] = b.context.r;
  j["trunc"] = b.context.kind ? std::string(to_string(*b.context.kind)) : std::string("-");
  j["note"] = b.note;
  return j;
}

int cmd_bounds(const Options& o, std::ostream& out, std::ostream& err) {
  check_common(o);
  validate_method(o.method);
  if (o.trials < 0) throw FlagError("--trials", "integer >= 0", "got " + std::to_string(o.trials));
  const TruncationKind kind = parse_truncation_kind(o.trunc);
  const bool adaptive = parse_bool_flag("--adaptive", o.adaptive);
  const LoadedInput in = load_input(o);
  const Eigen::Index p = in.input.variables();
  const TruncationSpec spec{kind, o.method == "pca" ? 0.0 : resolve_lambda(o.lambda, kind, p)};
  validate_lambda(o, o.method, spec, adaptive, p);

  const MethodRun run = timed_run(in.input, o, o.method, spec, adaptive);
  print_warnings(err, run);

  std::vector<json> rows;
  if (run.report.rotation) {
    for (const auto& b : verify_fit(in.input, run.report, spec)) rows.push_back(bound_record(b));
  } else {
    const PcaBasis pca = pca_loadings(in.input, static_cast<Eigen::Index>(o.r));
    BoundReport b = ev_dmin_bound(in.input, run.report.loadings, pca.loadings);
    b.context.kind = kind;
    b.context.lambda = spec.lambda;
    b.note += " (only the basis-independent bound applies to " + o.method + ")";
    rows.push_back(bound_record(b));
  }
  if (o.trials > 0) {
    const DminContainment mc =
        ev_dmin_containment(in.input, static_cast<Eigen::Index>(o.r), o.trials, o.seed);
    BoundReport b;
    b.name = "ev_dmin_montecarlo";
    b.theoretical = {0.0, 0.0};
    b.empirical = mc.violations;
    b.satisfied = mc.violations == 0;
    b.context = {spec.lambda, p, static_cast<Eigen::Index>(o.r), kind};
    b.note = std::to_string(mc.trials) + " random unit-column X; violations counted";
    rows.push_back(bound_record(b));
  }
  const std::string text = render(rows, o.format);
  write_text(output_prefix(o, "bounds") + ".bounds" + extension(o.format), text);
  out << text;
  return kExitOk;
}

int cmd_synth(const Options& o, std::ostream& out, std::ostream&) {
  const std::string prefix = output_prefix(o, "synth");
  const std::string seed = "seed=" + std::to_string(o.seed);
  if (o.n < 0) throw FlagError("--n", "integer >= 0", "got " + std::to_string(o.n));
  if (o.model == "synthetic") {
    const Matrix c = synthetic_covariance();
    write_matrix_csv(c, prefix + ".covariance.csv", {},
                     {"model=synthetic three-factor covariance (analytic)", seed});
    out << prefix << ".covariance.csv\n";
    if (o.n > 0) {
      const Matrix a = synthetic_samples(o.n, o.seed);
      write_matrix_csv(a, prefix + ".data.csv", {},
                       {"model=synthetic three-factor samples n=" + std::to_string(o.n), seed});
      out << prefix << ".data.csv\n";
    }
    return kExitOk;
  }
  if (o.model == "decaying") {
    const long long n = o.n > 0 ? o.n : o.decay_n;
    if (o.p < 1 || n < o.p)
      throw FlagError("--n", "n >= p >= 1", "got n=" + std::to_string(n) + ", p=" + std::to_string(o.p));
    const Matrix a = decaying_spectrum_data(n, o.p, o.decay, o.seed);
    std::ostringstream desc;
    desc << "model=decaying spectrum n=" << n << " p=" << o.p << " decay=" << o.decay;
    write_matrix_csv(a, prefix + ".data.csv", {}, {desc.str(), seed});
    write_matrix_csv(a.transpose() * a, prefix + ".covariance.csv", {}, {desc.str() + " (A^T A)", seed});
    out << prefix << ".data.csv\n" << prefix << ".covariance.csv\n";
    return kExitOk;
  }
  throw FlagError("--model", "synthetic or decaying", "got '" + o.model + "'");
}

void add_options(CLI::App& app, Options& o) {
  app.add_option("--input", o.input, "CSV path or builtin: pitprops, synthetic, decaying");
  app.add_option("--input-kind", o.input_kind, "data or covariance (CSV default: data)");
  app.add_flag("--no-center", o.no_center, "do not center data columns");
  app.add_flag("--remove-dc", o.remove_dc, "subtract each row's mean before centering");
  app.add_option("--method", o.method, "spcart, rsvd-gp, rsvd-gpb, st, pca");
  app.add_option("--methods", o.methods, "compare: methods to run")->delimiter(',');
  app.add_option("--trunc", o.trunc, "l0, l1, sp, en");
  app.add_option("--lambda", o.lambda, "truncation parameter or 1/sqrt(p)");
  app.add_option("--lambdas", o.lambdas, "compare: comma-separated lambda sweep")->delimiter(',');
  app.add_option("--r", o.r, "number of loadings");
  app.add_option("--adaptive", o.adaptive, "power methods: true, false (compare: both)");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--max-iter", o.max_iter, "iteration cap");
  app.add_option("--tol", o.tol, "relative-change tolerance");
  app.add_option("--restarts", o.restarts, "spcart: random-rotation restarts");
  app.add_option("--artificial", o.artificial, "rsvd-gpb on covariance: sqrt or literal");
  app.add_option("--output", o.output, "output path prefix");
  app.add_option("--format", o.format, "csv or jsonl");
  app.add_option("--trials", o.trials, "bounds: Monte-Carlo trials for EVdmin");
  app.add_option("--model", o.model, "synth: synthetic or decaying");
  app.add_option("--n", o.n, "synth: sample count");
  app.add_option("--p", o.p, "decaying: variables");
  app.add_option("--decay", o.decay, "decaying: singular value ratio");
  app.add_option("--decay-n", o.decay_n, "decaying builtin: sample count");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse PCA by rotation and truncation", "spcart"};
  Options o;
  add_options(app, o);
  app.set_config("--config", "", "key=value file mirroring the flags");
  app.require_subcommand(1, 1);
  CLI::App* fit = app.add_subcommand("fit", "fit one method and write loadings + metrics");
  CLI::App* compare = app.add_subcommand("compare", "sweep methods x lambda");
  CLI::App* bounds = app.add_subcommand("bounds", "compare a fit with the theoretical bounds");
  CLI::App* synth = app.add_subcommand("synth", "write synthetic datasets");
  for (CLI::App* sub : {fit, compare, bounds, synth}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "argument", "-", "see --help", e.what());
    return kExitArgument;
  }

  try {
    if (fit->parsed()) return cmd_fit(o, out, err);
    if (compare->parsed()) return cmd_compare(o, out, err);
    if (bounds->parsed()) return cmd_bounds(o, out, err);
    return cmd_synth(o, out, err);
  } catch (const ArgumentError& e) {
    emit_error(err, "argument", flag_for(e.parameter()), e.domain(), e.what());
    return kExitArgument;
  } catch (const DataIntegrityError& e) {
    emit_error(err, "data-integrity", "--input", "bundled data matching its checksum", e.what());
    return kExitData;
  } catch (const InputError& e) {
    emit_error(err, "data", "--input",
               "readable finite CSV matrix (symmetric PSD for covariance) or builtin", e.what());
    return kExitData;
  } catch (const DegeneracyError& e) {
    emit_error(err, "degenerate", "--r", "r within the numerical rank of the input", e.what());
    return kExitDegenerate;
  } catch (const fs::filesystem_error& e) {
    emit_error(err, "data", "--output", "writable path", e.what());
    return kExitData;
  }
}

}  // namespace spcart::cli
