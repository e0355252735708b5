#include "ecc_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecc/closed_form.hpp"
#include "ecc/coulomb_model.hpp"
#include "ecc/errors.hpp"
#include "ecc/polynomial.hpp"
#include "ecc/verification.hpp"

namespace ecc::cli {

using nlohmann::json;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct BadArguments : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A table cell: a number, an integer, or empty.
struct Cell {
  enum class Kind { Empty, Integer, Real, Text } kind = Kind::Empty;
  long long i = 0;
  double r = 0.0;
  std::string s;

  static Cell integer(long long v) { return {Kind::Integer, v, 0.0, {}}; }
  static Cell real(double v) { return {Kind::Real, 0, v, {}}; }
  static Cell text(std::string v) { return {Kind::Text, 0, 0.0, std::move(v)}; }
  static Cell empty() { return {}; }

  [[nodiscard]] std::string csv() const {
    switch (kind) {
      case Kind::Integer: return std::to_string(i);
      case Kind::Real: return format_number(r);
      case Kind::Text: return csv_field(s);
      case Kind::Empty: break;
    }
    return "";
  }
  [[nodiscard]] json to_json() const {
    switch (kind) {
      case Kind::Integer: return i;
      case Kind::Real: return std::isfinite(r) ? json(r) : json(nullptr);
      case Kind::Text: return s;
      case Kind::Empty: break;
    }
    return nullptr;
  }
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

json make_manifest(const std::string& command, const json& parameters) {
  json m;
  m["command"] = command;
  m["parameters"] = parameters;
  m["config_hash"] = fnv1a_hex(command + "\n" + parameters.dump());
  m["version"] = kVersion;
  // Reproducible builds convention; omitted otherwise so output stays byte-identical.
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    char* end = nullptr;
    const long long secs = std::strtoll(epoch, &end, 10);
    if (end != nullptr && *end == '\0' && secs >= 0) {
      const std::time_t tt = static_cast<std::time_t>(secs);
      std::tm tm{};
      gmtime_r(&tt, &tm);
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
      m["timestamp"] = buf;
    }
  }
  return m;
}

std::string render_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << csv_field(t.header[i]);
  os << "\r\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i].csv();
    os << "\r\n";
  }
  return os.str();
}

std::string render_json(const Table& t, const json& manifest) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.header[i]] = row[i].to_json();
    rows.push_back(std::move(obj));
  }
  json doc;
  doc["manifest"] = manifest;
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  if (!f.flush()) throw std::runtime_error("write to '" + path + "' failed");
}

// CSV or JSON to stdout or a file. A CSV file gets a sidecar manifest.
void emit(const Table& t, const json& manifest, bool as_json, const std::string& out_path,
          std::ostream& out) {
  if (as_json) {
    const std::string doc = render_json(t, manifest);
    if (out_path.empty()) {
      out << doc;
    } else {
      write_file(out_path, doc);
    }
    return;
  }
  const std::string csv = render_csv(t);
  if (out_path.empty()) {
    out << csv;
  } else {
    write_file(out_path, csv);
    write_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
  }
}

int thread_count() {
  const char* env = std::getenv("ECC_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 1 || v > 1024) {
    throw BadArguments("ECC_THREADS must be an integer in [1, 1024]");
  }
  return static_cast<int>(v);
}

// ---- exceptional ----------------------------------------------------------

struct ExceptionalOptions {
  double k = 0.0;
  bool numeric = false;
  bool closed_form = false;
  bool both = false;
  double tol = 1e-6;
  double t_min = -40.0;
  double t_max = 40.0;
  double bisect_tol = 1e-9;
  bool json = false;
  bool csv = false;
};

int cmd_exceptional(const ExceptionalOptions& o, std::ostream& out, std::ostream& err) {
  if (!(o.k > 0.0) || !std::isfinite(o.k)) throw BadArguments("--k must be positive");
  if (!(o.tol > 0.0)) throw BadArguments("--tol must be positive");
  const bool want_numeric = o.numeric || o.both || !o.closed_form;
  const bool want_closed = o.closed_form || o.both || !o.numeric;
  const bool compare = want_numeric && want_closed;

  ShootingConfig cfg;
  cfg.t_min = o.t_min;
  cfg.t_max = o.t_max;
  cfg.bisect_tol = o.bisect_tol;
  cfg.threads = thread_count();
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw BadArguments(e.what());
  }

  std::optional<ExceptionalValues> closed;
  std::optional<ExceptionalValues> numeric;
  if (want_closed) closed = exceptional_values(o.k);
  if (want_numeric) numeric = find_exceptional_numeric(o.k, cfg);

  json warnings = json::array();
  if (numeric) {
    for (const auto& w : numeric->warnings) warnings.push_back(w);
    for (const auto& b : numeric->boundary_uncertain) {
      warnings.push_back("possible root for m = " + std::to_string(b.m) + " beyond c = " +
                         format_number(b.c_edge));
    }
  }
  for (const auto& w : warnings) err << "warning: " << w.get<std::string>() << "\n";

  Table t{{"m", "c_closed", "c_numeric", "abs_diff"}, {}};
  const std::size_t rows = std::max(closed ? closed->size() : 0, numeric ? numeric->size() : 0);
  bool ok = true;
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<Cell> row{Cell::integer(static_cast<long long>(i)), Cell::empty(), Cell::empty(),
                          Cell::empty()};
    const bool has_c = closed && i < closed->size();
    const bool has_n = numeric && i < numeric->size();
    if (has_c) row[1] = Cell::real(closed->entries[i].c);
    if (has_n) row[2] = Cell::real(numeric->entries[i].c);
    if (has_c && has_n) {
      const double d = std::abs(closed->entries[i].c - numeric->entries[i].c);
      row[3] = Cell::real(d);
      ok = ok && d <= o.tol;
    } else if (compare) {
      ok = false;  // count mismatch
    }
    t.rows.push_back(std::move(row));
  }

  json params = {{"k", o.k},
                 {"mode", compare ? "both" : (want_numeric ? "numeric" : "closed-form")},
                 {"tol", o.tol},
                 {"t_min", o.t_min},
                 {"t_max", o.t_max},
                 {"bisect_tol", o.bisect_tol}};
  json manifest = make_manifest("exceptional", params);
  manifest["warnings"] = warnings;
  emit(t, manifest, o.json, "", out);
  if (compare && !ok) {
    err << "error: numeric and closed-form exceptional values disagree\n";
    return kExitNumericalFailure;
  }
  return kExitOk;
}

// ---- scan -----------------------------------------------------------------

struct ScanOptions {
  std::string k_from;
  std::string k_to;
  std::string k_step;
  std::string out;
  bool json = false;
};

Rational parse_positive(const std::string& text, const char* flag, bool allow_zero = false) {
  Rational r;
  try {
    r = parse_rational(text);
  } catch (const DomainError&) {
    throw BadArguments(std::string(flag) + ": not a number: '" + text + "'");
  }
  if (r < 0 || (!allow_zero && r == 0)) throw BadArguments(std::string(flag) + " must be positive");
  return r;
}

int cmd_scan(const ScanOptions& o, std::ostream& out) {
  const Rational from = parse_positive(o.k_from, "--k-from");
  const Rational to = parse_positive(o.k_to, "--k-to");
  const Rational step = parse_positive(o.k_step, "--k-step");
  if (from > to) throw BadArguments("empty range: --k-from exceeds --k-to");
  if (to > Rational(10'000'000)) throw BadArguments("--k-to must not exceed 1e7");
  // Grid points k_i = from + i step, computed exactly and rounded once.
  const Rational span = (to - from) / step;
  const auto count_big = boost::multiprecision::numerator(span) / boost::multiprecision::denominator(span) + 1;
  if (count_big > 1'000'000) throw BadArguments("scan would produce more than 1e6 rows");
  const auto count = static_cast<std::size_t>(count_big);

  std::vector<double> ks(count);
  for (std::size_t i = 0; i < count; ++i) {
    ks[i] = to_double(from + step * Rational(static_cast<long long>(i)));
  }
  std::vector<ExceptionalValues> results(count);
  const int threads = std::min<int>(thread_count(), static_cast<int>(count));
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = static_cast<std::size_t>(w); i < count; i += static_cast<std::size_t>(threads)) {
          results[i] = exceptional_values(ks[i]);
        }
      });
    }
  }

  std::size_t max_n = 0;
  for (const auto& r : results) max_n = std::max(max_n, r.size());
  Table t;
  t.header = {"k", "N"};
  for (std::size_t n = 0; n < max_n; ++n) t.header.push_back("c" + std::to_string(n));
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Cell> row{Cell::real(ks[i]), Cell::integer(static_cast<long long>(results[i].size()))};
    for (std::size_t n = 0; n < max_n; ++n) {
      row.push_back(n < results[i].size() ? Cell::real(results[i].entries[n].c) : Cell::empty());
    }
    t.rows.push_back(std::move(row));
  }
  const json params = {{"k_from", o.k_from}, {"k_to", o.k_to}, {"k_step", o.k_step}};
  emit(t, make_manifest("scan", params), o.json, o.out, out);
  return kExitOk;
}

// ---- verify ---------------------------------------------------------------

struct VerifyOptions {
  std::string suite = "all";
  std::optional<int> level;
  bool json = false;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  if (!is_suite(o.suite)) throw BadArguments("unknown suite '" + o.suite + "'");
  if (o.level && *o.level < 1) throw BadArguments("--level must be at least 1");
  const auto results = run_suite(o.suite, o.level);
  const bool ok = all_passed(results);
  if (o.json) {
    Table t{{"suite", "name", "passed", "measured", "tolerance"}, {}};
    json rows = json::array();
    for (const auto& r : results) {
      rows.push_back({{"suite", r.suite},
                      {"name", r.name},
                      {"passed", r.passed},
                      {"measured", r.measured},
                      {"tolerance", r.tolerance}});
    }
    json params = {{"suite", o.suite}};
    if (o.level) params["level"] = *o.level;
    json manifest = make_manifest("verify", params);
    manifest["all_passed"] = ok;
    json doc;
    doc["manifest"] = manifest;
    doc["rows"] = rows;
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      out << (r.passed ? "PASS " : "FAIL ") << r.suite << "/" << r.name
          << " measured=" << format_number(r.measured) << " tolerance=" << format_number(r.tolerance)
          << "\n";
    }
    out << (ok ? "all checks passed" : "some checks failed") << " (" << results.size() << ")\n";
  }
  if (!ok) {
    err << "error: verification failed\n";
    return kExitNumericalFailure;
  }
  return kExitOk;
}

// ---- angle ----------------------------------------------------------------

struct AngleOptions {
  double k = 0.0;
  double c = 0.0;
  double t_min = -40.0;
  double t_max = 40.0;
  long samples = 201;
  std::string out;
  bool json = false;
};

int cmd_angle(const AngleOptions& o, std::ostream& out) {
  if (o.samples < 1) throw BadArguments("--samples must be at least 1");
  if (o.samples > 10'000'000) throw BadArguments("--samples too large");
  if (!(o.t_min < o.t_max)) throw BadArguments("--t-min must be below --t-max");
  ShootingConfig cfg;
  cfg.t_min = o.t_min;
  cfg.t_max = o.t_max;
  const ModelParams p{o.k, o.c};
  AsymptoticAngles limits;
  try {
    cfg.validate();
    limits = asymptotic_angles(p);
  } catch (const DomainError& e) {
    throw BadArguments(e.what());
  }
  std::vector<double> ts(static_cast<std::size_t>(o.samples));
  for (long i = 0; i < o.samples; ++i) {
    ts[static_cast<std::size_t>(i)] =
        o.samples == 1 ? o.t_min : o.t_min + (o.t_max - o.t_min) * static_cast<double>(i) / (o.samples - 1);
  }
  std::vector<double> phi0;
  std::vector<double> phi_inf;
  try {
    phi0 = theta0_at(p, ts, cfg);
    phi_inf = theta_inf_at(p, ts, cfg);
  } catch (const DomainError& e) {
    throw BadArguments(e.what());
  }

  Table t{{"t", "phi0", "phi_inf"}, {}};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    t.rows.push_back({Cell::real(ts[i]), Cell::real(phi0[i]), Cell::real(phi_inf[i])});
  }
  const json params = {{"k", o.k}, {"c", o.c}, {"t_min", o.t_min}, {"t_max", o.t_max}, {"samples", o.samples}};
  json manifest = make_manifest("angle", params);
  manifest["theta_minus"] = limits.theta_minus;
  manifest["theta_plus"] = limits.theta_plus;
  manifest["t_mid"] = cfg.matching_point(o.k);
  emit(t, manifest, o.json, o.out, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exceptional values of a Coulomb-type Dirac model: closed form, shooting, verification", "ecc"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ExceptionalOptions ex;
  auto* sub_ex = app.add_subcommand("exceptional", "Exceptional values for one k");
  sub_ex->add_option("--k", ex.k, "Coupling k > 0")->required();
  auto* f_num = sub_ex->add_flag("--numeric", ex.numeric, "Shooting only");
  auto* f_cf = sub_ex->add_flag("--closed-form", ex.closed_form, "Closed form only");
  auto* f_both = sub_ex->add_flag("--both", ex.both, "Both, compared (default)");
  f_num->excludes(f_cf)->excludes(f_both);
  f_cf->excludes(f_both);
  sub_ex->add_option("--tol", ex.tol, "Agreement tolerance")->capture_default_str();
  sub_ex->add_option("--t-min", ex.t_min, "Left end of the shooting interval")->capture_default_str();
  sub_ex->add_option("--t-max", ex.t_max, "Right end of the shooting interval")->capture_default_str();
  sub_ex->add_option("--bisect-tol", ex.bisect_tol, "Bisection width in c")->capture_default_str();
  auto* f_json = sub_ex->add_flag("--json", ex.json, "JSON output");
  auto* f_csv = sub_ex->add_flag("--csv", ex.csv, "CSV output (default)");
  f_json->excludes(f_csv);

  ScanOptions sc;
  auto* sub_scan = app.add_subcommand("scan", "Closed-form count and values over a k grid");
  sub_scan->add_option("--k-from", sc.k_from, "First k (decimal or p/q)")->required();
  sub_scan->add_option("--k-to", sc.k_to, "Last k")->required();
  sub_scan->add_option("--k-step", sc.k_step, "Step")->required();
  sub_scan->add_option("--out", sc.out, "Output file (stdout if absent)");
  sub_scan->add_flag("--json", sc.json, "JSON output");

  VerifyOptions ve;
  auto* sub_ver = app.add_subcommand("verify", "Run invariant suites");
  sub_ver->add_option("--suite", ve.suite, "prufer|factorization|ladder|all")->capture_default_str();
  sub_ver->add_option("--level", ve.level, "Highest j (factorization) or n (ladder)");
  sub_ver->add_flag("--json", ve.json, "JSON report");

  AngleOptions an;
  auto* sub_ang = app.add_subcommand("angle", "Sample the two shooting angles");
  sub_ang->add_option("--k", an.k, "Coupling k > 0")->required();
  sub_ang->add_option("--c", an.c, "c in (-k, 0)")->required();
  sub_ang->add_option("--t-min", an.t_min)->capture_default_str();
  sub_ang->add_option("--t-max", an.t_max)->capture_default_str();
  sub_ang->add_option("--samples", an.samples)->capture_default_str();
  sub_ang->add_option("--out", an.out, "Output file (stdout if absent)");
  sub_ang->add_flag("--json", an.json, "JSON output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadArguments;
  }

  try {
    if (*sub_ex) return cmd_exceptional(ex, out, err);
    if (*sub_scan) return cmd_scan(sc, out);
    if (*sub_ver) return cmd_verify(ve, out, err);
    if (*sub_ang) return cmd_angle(an, out);
  } catch (const BadArguments& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  } catch (const IntegrationError& e) {
    err << "error: integration failed (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  return kExitBadArguments;
}

}  // namespace ecc::cli
