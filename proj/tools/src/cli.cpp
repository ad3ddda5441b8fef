#include "annulus/cli/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "annulus/cli/verify.hpp"
#include "annulus/critical.hpp"
#include "annulus/green.hpp"
#include "annulus/oracle.hpp"

namespace annulus::cli {

namespace {

using json = nlohmann::ordered_json;

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  int n = 3;
  double a = 0.5;
  double tol = 1e-12;
  int max_terms = 100000;
  std::string format;
  std::string out_path;
  std::uint64_t seed = VerifyOptions{}.seed;

  TruncationPolicy policy() const {
    TruncationPolicy p;
    p.abs_tol = tol;
    p.max_terms = max_terms;
    return p;
  }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

struct Rendered {
  json doc = json::object();
  Table table;
  int exit_code = kSuccess;
};

// Non-finite values stay doubles: the JSON writer emits null, CSV prints inf/nan.
json num(double v) { return json(v); }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + csv_cell(v[i]);
    return s;
  }
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
}

// Single-record table from the scalar fields of an object.
Table record_table(const json& doc) {
  Table t;
  std::vector<json> row;
  for (const auto& [key, value] : doc.items()) {
    if (value.is_object()) {
      for (const auto& [k2, v2] : value.items()) {
        t.columns.push_back(key + "_" + k2);
        row.push_back(v2);
      }
    } else {
      t.columns.push_back(key);
      row.push_back(value);
    }
  }
  t.rows.push_back(std::move(row));
  return t;
}

json eval_json(const EvalResult& e) {
  return json{{"value", num(e.value)},
              {"terms_used", e.terms_used},
              {"tail_bound", num(e.tail_bound)},
              {"converged", e.converged}};
}

Point parse_point(const std::string& text, int n, const char* what) {
  std::vector<double> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ValidationError(std::string(what) + ": cannot parse coordinate '" + item + "'");
    }
    if (used != item.size() || !std::isfinite(v)) {
      throw ValidationError(std::string(what) + ": cannot parse coordinate '" + item + "'");
    }
    coords.push_back(v);
  }
  if (coords.size() != static_cast<std::size_t>(n)) {
    std::ostringstream msg;
    msg << what << ": expected " << n << " comma-separated coordinates, got " << coords.size();
    throw ValidationError(msg.str());
  }
  return Point(std::move(coords));
}

json point_json(const Point& p) {
  json arr = json::array();
  for (double c : p.coords()) arr.push_back(c);
  return arr;
}

// --------------------------------------------------------------------------

Rendered eval_green(const RunConfig& cfg, const std::string& xs, const std::string& ys) {
  const AnnulusGeometry geom(cfg.n, cfg.a);
  geom.require_series_dimension("eval-green");
  const Point x = parse_point(xs, cfg.n, "x");
  const Point y = parse_point(ys, cfg.n, "y");
  const TruncationPolicy policy = cfg.policy();
  const EvalResult g = green::green_eval(geom, x, y, policy);

  Rendered out;
  out.doc["n"] = cfg.n;
  out.doc["a"] = cfg.a;
  out.doc["x"] = point_json(x);
  out.doc["y"] = point_json(y);
  out.doc["series"] = eval_json(g);
  bool converged = g.converged;
  const double r = geom.closed_radius(x);
  const double s = geom.closed_radius(y);
  if (r != s) {
    const EvalResult p = green::green_piecewise_eval(geom, x, y, policy);
    out.doc["piecewise"] = eval_json(p);
    out.doc["paths_difference"] = num(std::abs(g.value - p.value));
    converged = converged && p.converged;
  }
  out.table = record_table(out.doc);
  if (!converged) out.exit_code = kNonConvergence;
  return out;
}

Rendered eval_robin(const RunConfig& cfg, const std::vector<double>& radii) {
  const AnnulusGeometry geom(cfg.n, cfg.a);
  const TruncationPolicy policy = cfg.policy();
  Rendered out;
  out.doc["n"] = cfg.n;
  out.doc["a"] = cfg.a;
  out.doc["records"] = json::array();
  out.table.columns = {"r", "R_A", "tail_bound", "terms_used", "gradient", "gradient_tail_bound",
                       "converged"};
  for (double r : radii) {
    if (!(r > cfg.a && r < 1.0)) {
      std::ostringstream msg;
      msg << "radius " << r << " outside the open interval (a, 1)";
      throw ValidationError(msg.str());
    }
    const EvalResult R = cfg.n == 2 ? green::robin2d_eval(cfg.a, r, policy) : green::robin_eval(geom, r, policy);
    const EvalResult f = critical::radial_gradient(geom, r, policy);
    const bool ok = R.converged && f.converged;
    out.doc["records"].push_back(json{{"r", r},
                                      {"R_A", num(R.value)},
                                      {"tail_bound", num(R.tail_bound)},
                                      {"terms_used", R.terms_used},
                                      {"gradient", num(f.value)},
                                      {"gradient_tail_bound", num(f.tail_bound)},
                                      {"converged", ok}});
    out.table.rows.push_back({r, num(R.value), num(R.tail_bound), R.terms_used, num(f.value),
                              num(f.tail_bound), ok});
    if (!ok) out.exit_code = kNonConvergence;
  }
  return out;
}

Rendered critical_point(const RunConfig& cfg, double solver_tol) {
  const AnnulusGeometry geom(cfg.n, cfg.a);
  const TruncationPolicy policy = cfg.policy();
  const critical::CriticalPointReport rep = critical::find_critical_point(geom, policy, solver_tol);
  Rendered out;
  json& d = out.doc;
  d["n"] = cfg.n;
  d["a"] = cfg.a;
  d["r0"] = rep.r0;
  d["bracket_lo"] = rep.lo;
  d["bracket_hi"] = rep.hi;
  d["residual"] = rep.residual;
  d["solver_tol"] = rep.solver_tol;
  d["second_derivative"] = rep.second_derivative;
  d["second_derivative_uncertainty"] = rep.second_derivative_uncertainty;
  d["second_derivative_fd"] = rep.second_derivative_fd;
  d["second_derivative_sign"] = rep.second_derivative_sign;
  d["nondegenerate"] = rep.nondegenerate;
  d["agrees_with_stated_convexity"] = rep.agrees_with_stated_convexity;
  d["newton_r0"] = rep.newton_r0;
  d["methods_agree"] = rep.methods_agree;
  if (cfg.n >= 3) {
    const double root = critical::c3_root(geom, policy, solver_tol);
    d["c3_root"] = root;
    d["c3_difference"] = std::abs(root - rep.r0);
  } else {
    d["c3_root"] = nullptr;
    d["c3_difference"] = nullptr;
  }
  const critical::SignChangeWitness w = critical::sign_change_witness(geom, policy);
  d["witness_points"] = w.points;
  d["witness_sign_changes"] = w.sign_changes;
  d["method"] = rep.method;
  d["evaluations"] = rep.evaluations;
  out.table = record_table(d);
  if (w.sign_changes != 1) out.exit_code = kVerificationFailure;
  return out;
}

Rendered verify(const RunConfig& cfg, const std::vector<std::string>& only) {
  VerifyOptions options;
  options.policy = cfg.policy();
  options.seed = cfg.seed;
  std::vector<const SuiteInfo*> selected;
  if (only.empty()) {
    for (const SuiteInfo& s : verification_suites()) selected.push_back(&s);
  } else {
    for (const std::string& key : only) {
      try {
        selected.push_back(&find_suite(key));
      } catch (const DomainError& e) {
        throw ValidationError(e.what());
      }
    }
  }

  Rendered out;
  out.doc["seed"] = cfg.seed;
  out.doc["policy"] = json{{"abs_tol", options.policy.abs_tol}, {"max_terms", options.policy.max_terms}};
  out.doc["suites"] = json::array();
  out.table.columns = {"id", "suite", "passed", "checks", "failures", "worst_ratio", "worst_check"};
  int failed = 0;
  for (const SuiteInfo* s : selected) {
    const SuiteResult r = run_suite(*s, options);
    failed += r.passed() ? 0 : 1;
    out.doc["suites"].push_back(json{{"id", r.id},
                                     {"suite", r.name},
                                     {"title", r.title},
                                     {"passed", r.passed()},
                                     {"checks", r.checks},
                                     {"failures", r.failures},
                                     {"worst_ratio", num(r.worst_ratio)},
                                     {"worst_check", r.worst_check},
                                     {"notes", r.notes}});
    out.table.rows.push_back(
        {r.id, r.name, r.passed(), r.checks, r.failures, num(r.worst_ratio), r.worst_check});
  }
  out.doc["suites_failed"] = failed;
  out.doc["passed"] = failed == 0;
  if (failed > 0) out.exit_code = kVerificationFailure;
  return out;
}

struct GridSpec {
  int points = 200;
  double lo = std::nan("");
  double hi = std::nan("");
  int mode = 0;
  double s = std::nan("");
  std::string y;
};

std::vector<double> uniform_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  for (int i = 0; i < points; ++i) g[i] = i == points - 1 ? hi : lo + i * (hi - lo) / (points - 1);
  return g;
}

Rendered export_grid(const RunConfig& cfg, const std::string& quantity, GridSpec spec) {
  const AnnulusGeometry geom(cfg.n, cfg.a);
  const TruncationPolicy policy = cfg.policy();
  const double a = cfg.a;
  if (spec.points < 2) throw ValidationError("grid needs at least 2 points");
  const bool open = quantity == "robin" || quantity == "gradient";
  if (std::isnan(spec.lo)) spec.lo = open ? a + critical::default_standoff(a) : a;
  if (std::isnan(spec.hi)) spec.hi = open ? 1.0 - critical::default_standoff(a) : 1.0;
  if (!(spec.lo < spec.hi)) throw ValidationError("grid requires lo < hi");
  if (open ? !(spec.lo > a && spec.hi < 1.0) : !(spec.lo >= a && spec.hi <= 1.0)) {
    std::ostringstream msg;
    msg << "grid [" << spec.lo << ", " << spec.hi << "] outside " << (open ? "(a, 1)" : "[a, 1]");
    throw ValidationError(msg.str());
  }

  Rendered out;
  out.doc["quantity"] = quantity;
  out.doc["n"] = cfg.n;
  out.doc["a"] = cfg.a;
  bool all_converged = true;

  if (quantity == "robin" || quantity == "gradient") {
    out.table.columns = quantity == "robin"
                            ? std::vector<std::string>{"r", "R_A", "tail_bound", "gradient",
                                                       "gradient_tail_bound", "converged"}
                            : std::vector<std::string>{"r", "gradient", "tail_bound", "f_prime",
                                                       "f_prime_tail_bound", "converged"};
    for (double r : uniform_grid(spec.lo, spec.hi, spec.points)) {
      const EvalResult f = critical::radial_gradient(geom, r, policy);
      EvalResult other;
      if (quantity == "robin") {
        other = cfg.n == 2 ? green::robin2d_eval(a, r, policy) : green::robin_eval(geom, r, policy);
      } else if (cfg.n == 2) {
        const EvalResult d1 = green::robin2d_first(a, r, policy);
        const EvalResult d2 = green::robin2d_second(a, r, policy);
        other = {d1.value + r * d2.value, d1.terms_used + d2.terms_used, d1.tail_bound + r * d2.tail_bound,
                 d1.converged && d2.converged};
      } else {
        other = green::f_prime_eval(geom, r, policy);
      }
      const bool ok = f.converged && other.converged;
      all_converged = all_converged && ok;
      if (quantity == "robin") {
        out.table.rows.push_back({r, num(other.value), num(other.tail_bound), num(f.value), num(f.tail_bound), ok});
      } else {
        out.table.rows.push_back({r, num(f.value), num(f.tail_bound), num(other.value), num(other.tail_bound), ok});
      }
    }
  } else if (quantity == "green-slice") {
    geom.require_series_dimension("green-slice");
    Point y;
    if (spec.y.empty()) {
      std::vector<double> c(cfg.n, 0.0);
      c[1] = 0.5 * (1.0 + a);
      y = Point(std::move(c));
    } else {
      y = parse_point(spec.y, cfg.n, "y");
    }
    if (!geom.in_closure(y)) throw ValidationError("y must lie in the closed annulus");
    out.doc["y"] = point_json(y);
    out.table.columns = {"t", "G", "tail_bound", "terms_used", "converged"};
    // Along the diameter through e_1: t in [-hi, -lo] and [lo, hi].
    std::vector<double> ts;
    for (double t : uniform_grid(spec.lo, spec.hi, spec.points)) ts.push_back(-t);
    std::reverse(ts.begin(), ts.end());
    for (double t : uniform_grid(spec.lo, spec.hi, spec.points)) ts.push_back(t);
    for (double t : ts) {
      const EvalResult g = green::green_eval(geom, Point::on_axis(cfg.n, t), y, policy);
      all_converged = all_converged && g.converged;
      out.table.rows.push_back({t, num(g.value), num(g.tail_bound), g.terms_used, g.converged});
    }
  } else if (quantity == "modal-coefficient") {
    geom.require_series_dimension("modal-coefficient");
    if (spec.mode < 0) throw ValidationError("mode must be >= 0");
    if (std::isnan(spec.s)) spec.s = 0.5 * (1.0 + a);
    if (!(spec.s >= a && spec.s <= 1.0)) throw ValidationError("s must lie in [a, 1]");
    out.doc["m"] = spec.mode;
    out.doc["s"] = spec.s;
    out.table.columns = {"r", "modal_coefficient", "tail_bound", "oracle", "oracle_difference"};
    for (double r : uniform_grid(spec.lo, spec.hi, spec.points)) {
      const double gamma = green::modal_coefficient(geom, spec.mode, r, spec.s);
      const double ref = oracle::modal_green_analytic(cfg.n, spec.mode, a, r, spec.s) / geom.omega();
      // Closed form: nothing is truncated.
      out.table.rows.push_back({r, gamma, 0.0, ref, std::abs(gamma - ref)});
    }
  } else {
    throw ValidationError("unknown quantity '" + quantity +
                          "' (expected green-slice, robin, gradient or modal-coefficient)");
  }

  out.doc["columns"] = out.table.columns;
  json rows = json::array();
  for (const auto& row : out.table.rows) {
    json rec = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) rec[out.table.columns[i]] = row[i];
    rows.push_back(std::move(rec));
  }
  out.doc["rows"] = std::move(rows);
  if (!all_converged) out.exit_code = kNonConvergence;
  return out;
}

// --------------------------------------------------------------------------

void emit(const Rendered& r, const std::string& format, std::ostream& os) {
  if (format == "csv") {
    write_csv(r.table, os);
  } else {
    os << r.doc.dump(2) << '\n';
  }
}

int report_error(const std::string& kind, const std::string& message, int code,
                 const std::string& format, std::ostream& out, std::ostream& err) {
  err << "annulus: " << message << '\n';
  if (format == "json") {
    const json doc{{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code}};
    out << doc.dump(2) << '\n';
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Green function, Robin function and critical radius of the annulus a < |x| < 1",
               "annulus"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--n", cfg.n, "Space dimension (>= 2)")->capture_default_str();
  app.add_option("--a", cfg.a, "Inner radius, 0 < a < 1")->capture_default_str();
  app.add_option("--tol", cfg.tol, "Absolute tail tolerance for every series")->capture_default_str();
  app.add_option("--max-terms", cfg.max_terms, "Series term budget")->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out_path, "Write output to this file instead of stdout");

  std::string xs;
  std::string ys;
  auto* green_cmd = app.add_subcommand("eval-green", "Evaluate G(x, y) by both series");
  green_cmd->add_option("x", xs, "Comma-separated coordinates")->required();
  green_cmd->add_option("y", ys, "Comma-separated coordinates")->required();

  std::vector<double> radii;
  auto* robin_cmd = app.add_subcommand("eval-robin", "Evaluate R(r) and r R'(r)");
  robin_cmd->add_option("r", radii, "Radii in (a, 1)")->required();

  double solver_tol = 1e-10;
  auto* crit_cmd = app.add_subcommand("critical-point", "Locate the critical radius r0");
  crit_cmd->add_option("--solver-tol", solver_tol, "Residual tolerance on r R'(r0)")->capture_default_str();

  std::vector<std::string> only;
  auto* verify_cmd = app.add_subcommand("verify", "Run the randomized verification suites");
  verify_cmd->add_option("--seed", cfg.seed, "Seed for the randomized checks")->capture_default_str();
  verify_cmd->add_option("--only", only, "Suite names or ids to run")->delimiter(',');

  std::string quantity;
  GridSpec spec;
  auto* export_cmd = app.add_subcommand("export-grid", "Tabulate a quantity on a grid");
  export_cmd->add_option("quantity", quantity, "green-slice, robin, gradient or modal-coefficient")->required();
  export_cmd->add_option("--points", spec.points, "Grid points (per side for green-slice)")->capture_default_str();
  export_cmd->add_option("--lo", spec.lo, "Lower radius of the grid");
  export_cmd->add_option("--hi", spec.hi, "Upper radius of the grid");
  export_cmd->add_option("--m", spec.mode, "Mode for modal-coefficient")->capture_default_str();
  export_cmd->add_option("--s", spec.s, "Fixed second radius for modal-coefficient");
  export_cmd->add_option("--y", spec.y, "Fixed source point for green-slice");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    return report_error("validation", e.what(), kValidationError, cfg.format, out, err);
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.format.empty()) cfg.format = cfg.command == "export-grid" ? "csv" : "json";

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) {
      return report_error("validation", "cannot open output file '" + cfg.out_path + "'",
                          kValidationError, cfg.format, out, err);
    }
    sink = &file;
  }

  try {
    if (cfg.n < 2) throw ValidationError("--n must be >= 2");
    const AnnulusGeometry check(cfg.n, cfg.a);
    cfg.policy().validate();
    if (!(solver_tol > 0.0)) throw ValidationError("--solver-tol must be positive");

    Rendered r;
    if (cfg.command == "eval-green") {
      r = eval_green(cfg, xs, ys);
    } else if (cfg.command == "eval-robin") {
      r = eval_robin(cfg, radii);
    } else if (cfg.command == "critical-point") {
      r = critical_point(cfg, solver_tol);
    } else if (cfg.command == "verify") {
      r = verify(cfg, only);
    } else {
      r = export_grid(cfg, quantity, spec);
    }
    emit(r, cfg.format, *sink);
    if (r.exit_code == kNonConvergence) err << "annulus: a series did not reach the requested tolerance\n";
    if (r.exit_code == kVerificationFailure) err << "annulus: verification failed\n";
    return r.exit_code;
  } catch (const ValidationError& e) {
    return report_error("validation", e.what(), kValidationError, cfg.format, *sink, err);
  } catch (const DomainError& e) {
    return report_error("validation", e.what(), kValidationError, cfg.format, *sink, err);
  } catch (const critical::MultipleRootsError& e) {
    return report_error("verification", e.what(), kVerificationFailure, cfg.format, *sink, err);
  } catch (const ConvergenceError& e) {
    return report_error("convergence", e.what(), kNonConvergence, cfg.format, *sink, err);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), kVerificationFailure, cfg.format, *sink, err);
  }
}

}  // namespace annulus::cli
