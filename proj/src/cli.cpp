#include "cvpqc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include "cvpqc/distances.hpp"
#include "cvpqc/ensembles.hpp"
#include "cvpqc/holevo.hpp"
#include "cvpqc/optimizer.hpp"
#include "cvpqc/verify.hpp"

namespace cvpqc::cli {

namespace {

using Cell = std::variant<std::monostate, double, long long, bool, std::string>;
using Row = std::vector<Cell>;

struct RowFailure {
  std::size_t row = 0;
  std::string message;
  int code = kInternalError;
};

struct Table {
  Table(std::string command_, std::vector<std::string> columns_)
      : command(std::move(command_)), columns(std::move(columns_)) {}

  std::string command;
  std::vector<std::string> columns;
  std::vector<Row> rows;
  std::vector<RowFailure> failures;
  std::vector<std::size_t> dims;  // truncation dimensions used, for provenance
};

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const PreconditionError*>(&e) || dynamic_cast<const CutoffError*>(&e) ||
      dynamic_cast<const RangeError*>(&e) || dynamic_cast<const CLI::ParseError*>(&e))
    return kInvalidInput;
  return kInternalError;
}

std::string format_double(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

std::string csv_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "1" : "0"; }
    std::string operator()(const std::string& v) const {
      if (v.find_first_of(",\"\n") == std::string::npos) return v;
      std::string quoted = "\"";
      for (char ch : v) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return quoted + '"';
    }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::json json_cell(const Cell& cell) {
  struct Visitor {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(double v) const { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }
    nlohmann::json operator()(long long v) const { return v; }
    nlohmann::json operator()(bool v) const { return v; }
    nlohmann::json operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const Row& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table) {
  nlohmann::json doc;
  doc["command"] = table.command;
  doc["version"] = kVersion;
  doc["columns"] = table.columns;
  doc["rows"] = nlohmann::json::array();
  for (const Row& row : table.rows) {
    nlohmann::json object = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) object[table.columns[i]] = json_cell(row[i]);
    doc["rows"].push_back(std::move(object));
  }
  doc["errors"] = nlohmann::json::array();
  for (const RowFailure& f : table.failures)
    doc["errors"].push_back({{"row", f.row}, {"message", f.message}, {"exit_code", f.code}});
  out << doc.dump(2) << '\n';
}

// Evaluates every job concurrently and returns the rows in input order. A
// job that throws yields its key cells followed by empty cells, and the
// failure is recorded against that row.
void fill_rows(Table& table, const std::vector<Row>& keys, const std::function<Row(std::size_t)>& job) {
  std::vector<std::future<Row>> futures;
  futures.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) futures.push_back(std::async(std::launch::async, job, i));
  for (std::size_t i = 0; i < keys.size(); ++i) {
    try {
      table.rows.push_back(futures[i].get());
    } catch (const std::exception& e) {
      Row row = keys[i];
      row.resize(table.columns.size());
      table.rows.push_back(std::move(row));
      table.failures.push_back({i, e.what(), exit_code_for(e)});
    }
  }
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  return s.substr(begin, s.find_last_not_of(" \t") - begin + 1);
}

double parse_number(const std::string& text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto result = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || result.ec != std::errc() || result.ptr != t.data() + t.size() || !std::isfinite(value))
    throw PreconditionError("invalid number '" + text + "' in grid");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, sep)) parts.push_back(part);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double tolerance_from_environment() {
  const char* env = std::getenv("CVPQC_EPS");
  if (!env) return SeriesTolerance{}.eps_abs;
  const double eps = parse_number(env);
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("CVPQC_EPS must lie in (0, 1)");
  return eps;
}

struct Common {
  std::string output;
  std::string format = "csv";
  std::string json_log;
  std::uint64_t seed = kDefaultSeed;
};

void require_positive(const std::vector<double>& values, const char* name) {
  for (double v : values) require(v > 0.0, std::string("--") + name + " values must be positive");
}

Row key_row(std::initializer_list<Cell> cells) { return Row(cells); }

// ---- command implementations ------------------------------------------

struct DistanceArgs {
  std::string b, N;
  bool with_oracle = false;
  double tail_budget = 1e-12;
};

Table distance_table(const DistanceArgs& a, const SeriesTolerance& tol) {
  const auto bs = parse_grid(a.b);
  const auto ns = parse_int_grid(a.N);
  require_positive(bs, "b");
  for (int n : ns) require(n >= 1, "--N values must be >= 1");
  require(a.tail_budget > 0.0 && a.tail_budget < 1.0, "--tail-budget must lie in (0, 1)");

  Table t{"distance", {"b", "N", "d2_exact", "d2_guess", "d2_numeric", "tr_unit2", "tr_cross", "tr_phi2"}};
  std::vector<Row> keys;
  std::vector<std::pair<double, int>> points;
  for (double b : bs)
    for (int n : ns) {
      keys.push_back(key_row({b, static_cast<long long>(n)}));
      points.emplace_back(b, n);
    }
  fill_rows(t, keys, [&](std::size_t i) {
    auto [b, n] = points[i];
    DistanceReport r = hs2_exact(b, n, tol);
    Cell numeric;
    if (a.with_oracle) {
      attach_numeric_oracle(r, a.tail_budget);
      numeric = *r.d2_numeric;
    }
    return Row{b, static_cast<long long>(n), r.d2_exact, r.d2_guess, numeric, r.tr_unit2, r.tr_cross, r.tr_phi2};
  });
  if (a.with_oracle) {
    for (double b : bs) t.dims.push_back(CutoffPolicy{a.tail_budget, b}.dim());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const Row& row = t.rows[i];
      if (!std::holds_alternative<double>(row[4])) continue;
      const double gap = std::abs(std::get<double>(row[2]) - std::get<double>(row[4]));
      if (gap > 1e-8)
        t.failures.push_back({i, "analytic and matrix distances disagree by " + format_double(gap), kInternalError});
    }
  }
  return t;
}

struct KeybitsArgs {
  std::string b = "2", N;
};

Table keybits_table(const KeybitsArgs& a, const SeriesTolerance& tol) {
  const auto bs = parse_grid(a.b);
  const auto ns = parse_int_grid(a.N);
  require_positive(bs, "b");
  for (int n : ns) require(n >= 1, "--N values must be >= 1");
  Table t{"keybits", {"b", "N", "key_count", "key_bits_exact", "d_hs", "key_bits_estimate"}};
  std::vector<Row> keys;
  std::vector<std::pair<double, int>> points;
  for (double b : bs)
    for (int n : ns) {
      keys.push_back(key_row({b, static_cast<long long>(n)}));
      points.emplace_back(b, n);
    }
  fill_rows(t, keys, [&](std::size_t i) {
    auto [b, n] = points[i];
    const double d = std::sqrt(hs2_exact(b, n, tol).d2_exact);
    return Row{b, static_cast<long long>(n), static_cast<long long>(ChannelSpec{b, n}.key_count()),
               key_bits_exact(n), d, key_bits(d)};
  });
  return t;
}

struct SimplifiedArgs {
  std::string b = "2", p, r;
};

Table simplified_table(const SimplifiedArgs& a, const SeriesTolerance& tol) {
  const auto bs = parse_grid(a.b);
  const auto ps = parse_int_grid(a.p);
  const auto rs = parse_grid(a.r);
  require_positive(bs, "b");
  require_positive(rs, "r");
  for (int p : ps) require(p >= 1, "--p values must be >= 1");
  Table t{"simplified", {"b", "p", "r", "d2"}};
  std::vector<Row> keys;
  struct Point {
    double b;
    int p;
    double r;
  };
  std::vector<Point> points;
  for (double b : bs)
    for (int p : ps)
      for (double r : rs) {
        keys.push_back(key_row({b, static_cast<long long>(p), r}));
        points.push_back({b, p, r});
      }
  fill_rows(t, keys, [&](std::size_t i) {
    const Point& pt = points[i];
    return Row{pt.b, static_cast<long long>(pt.p), pt.r, hs2_simplified(pt.b, pt.p, pt.r, tol)};
  });
  return t;
}

Table rmin_table(const std::string& command, const std::vector<double>& bs, const SeriesTolerance& tol) {
  require_positive(bs, "b");
  Table t{command, {"b", "r_min", "residual", "method", "grid_r_min"}};
  std::vector<Row> keys;
  for (double b : bs) keys.push_back(key_row({b}));
  fill_rows(t, keys, [&](std::size_t i) {
    const RminResult r = find_rmin(bs[i], tol);
    return Row{r.b, r.r_min, r.residual, std::string(to_string(r.method)), r.grid_r_min};
  });
  return t;
}

struct SaturationArgs {
  double b = 2.0;
  int p_max = 20;
  double saturation_tol = kDefaultSaturationTol;
};

Table saturation_table(const SaturationArgs& a, const SeriesTolerance& tol) {
  require(a.b > 0.0, "--b must be positive");
  require(a.p_max >= 1, "--p-max must be >= 1");
  require(a.saturation_tol > 0.0, "--saturation-tol must be positive");
  const SaturationResult s = saturation_sweep(a.b, a.p_max, tol, a.saturation_tol);
  Table t{"saturation", {"b", "p", "r_min", "d2_min", "saturated"}};
  for (const SaturationPoint& pt : s.curve)
    t.rows.push_back({s.b, static_cast<long long>(pt.p), pt.r, pt.d2, s.p_sat > 0 && pt.p >= s.p_sat});
  return t;
}

struct HolevoArgs {
  std::string b;
  int radial_order = QuadratureSettings{}.radial_order;
  int angular_points = QuadratureSettings{}.angular_points;
  double tail_budget = 1e-10;
  bool diagnostics = false;
};

Table holevo_table(const std::string& command, const std::vector<double>& bs, const HolevoArgs& a) {
  require_positive(bs, "b");
  require(a.radial_order >= 2, "--radial-order must be >= 2");
  require(a.angular_points >= 4, "--angular-points must be >= 4");
  require(a.tail_budget > 0.0 && a.tail_budget < 1.0, "--tail-budget must lie in (0, 1)");
  Table t{command, {"b", "chi_bits", "quad_error", "dim"}};
  if (a.diagnostics) {
    t.columns.push_back("captured_mass");
    t.columns.push_back("odd_power_mass");
  }
  const QuadratureSettings quad{a.radial_order, a.angular_points};
  const HolevoCurve curve = holevo_curve(bs, quad, a.tail_budget);
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    const HolevoSample& s = curve.samples[i];
    Row row{s.b};
    if (s.error) {
      row.resize(t.columns.size());
      t.failures.push_back({i, *s.error, kInternalError});
    } else {
      row.insert(row.end(), {s.chi_bits, s.spectrum.quad_error, static_cast<long long>(s.spectrum.dim)});
      if (a.diagnostics) row.insert(row.end(), {s.spectrum.captured_mass, s.spectrum.odd_power_mass});
      t.dims.push_back(s.spectrum.dim);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct Fig1aArgs {
  double b = 2.0;
  int p_max = 20;
  int r_points = 100;
};

// D^2(r) on a uniform r grid for each p, plus the refined minimum of each
// curve flagged with is_min.
Table fig1a_table(const Fig1aArgs& a, const SeriesTolerance& tol) {
  require(a.b > 0.0, "--b must be positive");
  require(a.p_max >= 1, "--p-max must be >= 1");
  require(a.r_points >= 2, "--r-points must be >= 2");
  Table t{"fig1a", {"b", "p", "r", "d2", "is_min"}};
  std::vector<Row> keys;
  for (int p = 1; p <= a.p_max; ++p) keys.push_back(key_row({a.b, static_cast<long long>(p)}));

  std::vector<std::future<std::vector<Row>>> futures;
  for (int p = 1; p <= a.p_max; ++p)
    futures.push_back(std::async(std::launch::async, [&, p] {
      std::vector<Row> rows;
      const GridMinimum best = grid_minimize(a.b, p, tol);
      bool placed = false;
      for (int k = 1; k <= a.r_points; ++k) {
        const double r = a.b * k / a.r_points;
        if (!placed && best.r <= r) {
          rows.push_back({a.b, static_cast<long long>(p), best.r, best.d2, true});
          placed = true;
        }
        rows.push_back({a.b, static_cast<long long>(p), r, hs2_simplified(a.b, p, r, tol), false});
      }
      if (!placed) rows.push_back({a.b, static_cast<long long>(p), best.r, best.d2, true});
      return rows;
    }));
  for (std::size_t i = 0; i < futures.size(); ++i) {
    try {
      for (Row& row : futures[i].get()) t.rows.push_back(std::move(row));
    } catch (const std::exception& e) {
      Row row = keys[i];
      row.resize(t.columns.size());
      t.failures.push_back({t.rows.size(), e.what(), exit_code_for(e)});
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table verify_table(const std::vector<CheckResult>& results) {
  Table t{"verify", {"suite", "name", "passed", "detail"}};
  for (const CheckResult& r : results) t.rows.push_back({r.suite, r.name, r.passed, r.detail});
  return t;
}

nlohmann::json provenance(const std::string& command, const std::vector<std::string>& args, const Common& common,
                          const SeriesTolerance& tol, const Table* table) {
  nlohmann::json log;
  log["program"] = "cvpqc";
  log["version"] = kVersion;
  log["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                 std::to_string(EIGEN_MINOR_VERSION);
  log["compiler"] = __VERSION__;
  log["command"] = command;
  log["arguments"] = args;
  log["eps_abs"] = tol.eps_abs;
  log["max_terms"] = tol.max_terms;
  log["seed"] = common.seed;
  if (table) {
    log["rows"] = table->rows.size();
    log["failed_rows"] = table->failures.size();
    log["dims"] = table->dims;
  }
  return log;
}

// Sends output to -o or `out`; returns false on I/O failure.
bool emit(const Common& common, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (common.output.empty()) {
    body(out);
    return static_cast<bool>(out);
  }
  std::ofstream file(common.output);
  if (!file) return false;
  body(file);
  return static_cast<bool>(file);
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> values;
  for (const std::string& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      values.push_back(parse_number(parts[0]));
    } else if (parts.size() == 3) {
      const double start = parse_number(parts[0]), stop = parse_number(parts[1]), step = parse_number(parts[2]);
      require(step > 0.0, "grid step must be positive in '" + item + "'");
      require(stop >= start, "grid stop must not precede start in '" + item + "'");
      const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
      require(count < 1'000'000, "grid '" + item + "' is too long");
      for (long long k = 0; k <= count; ++k) values.push_back(start + static_cast<double>(k) * step);
    } else {
      throw PreconditionError("grid item '" + item + "' is neither a number nor start:stop:step");
    }
  }
  require(!values.empty(), "empty grid");
  return values;
}

std::vector<int> parse_int_grid(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_grid(text)) {
    require(v == std::floor(v) && std::abs(v) < 1e9, "integer grid contains non-integer " + format_double(v));
    out.push_back(static_cast<int>(v));
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuous-variable private quantum channel numerics"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  app.add_option("-o,--output", common.output, "Write results to this file instead of stdout");
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--json-log", common.json_log, "Write run provenance (versions, tolerances, dims) as JSON");
  app.add_option("--seed", common.seed, "Seed for Monte Carlo checks");

  DistanceArgs distance;
  auto* distance_cmd = app.add_subcommand("distance", "Exact and estimated HS distance between I_b and Phi_N");
  distance_cmd->add_option("--b", distance.b, "Disk radius grid")->required();
  distance_cmd->add_option("--N", distance.N, "Key-size grid")->required();
  distance_cmd->add_flag("--with-oracle", distance.with_oracle, "Also compute the truncated-matrix distance");
  distance_cmd->add_option("--tail-budget", distance.tail_budget, "Cutoff tail budget for the matrix oracle");

  KeybitsArgs keybits;
  auto* keybits_cmd = app.add_subcommand("keybits", "Exact key bits versus the distance-based estimate");
  keybits_cmd->add_option("--b", keybits.b, "Disk radius grid");
  keybits_cmd->add_option("--N", keybits.N, "Key-size grid")->required();

  SimplifiedArgs simplified;
  auto* simplified_cmd = app.add_subcommand("simplified", "HS distance of the phase-shift protocol");
  simplified_cmd->add_option("--b", simplified.b, "Disk radius grid");
  simplified_cmd->add_option("--p", simplified.p, "Phase-shift count grid")->required();
  simplified_cmd->add_option("--r", simplified.r, "Circle radius grid")->required();

  std::string rmin_b;
  auto* rmin_cmd = app.add_subcommand("rmin", "Optimal circle radius for large p");
  rmin_cmd->add_option("--b", rmin_b, "Disk radius grid")->required();

  SaturationArgs saturation;
  auto* saturation_cmd = app.add_subcommand("saturation", "Minimum D^2 over r for p = 1..p_max");
  saturation_cmd->add_option("--b", saturation.b, "Disk radius");
  saturation_cmd->add_option("--p-max", saturation.p_max, "Largest phase-shift count");
  saturation_cmd->add_option("--saturation-tol", saturation.saturation_tol, "Gap to the p_max minimum");

  HolevoArgs holevo;
  auto* holevo_cmd = app.add_subcommand("holevo", "Holevo bound of the disk ensemble");
  holevo_cmd->add_option("--b", holevo.b, "Disk radius grid")->required();
  holevo_cmd->add_option("--radial-order", holevo.radial_order, "Gauss-Legendre order");
  holevo_cmd->add_option("--angular-points", holevo.angular_points, "Angular trapezoid points");
  holevo_cmd->add_option("--tail-budget", holevo.tail_budget, "Cutoff tail budget");
  holevo_cmd->add_flag("--diagnostics", holevo.diagnostics, "Add captured_mass and odd_power_mass columns");

  std::string figure;
  std::string b_grid;
  Fig1aArgs fig1a;
  HolevoArgs fig2;
  auto* figures_cmd = app.add_subcommand("figures", "Figure data: fig1a, fig1b, fig2");
  figures_cmd->add_option("which", figure, "Figure")->required()->check(CLI::IsMember({"fig1a", "fig1b", "fig2"}));
  figures_cmd->add_option("--b-grid", b_grid, "Radius grid for fig1b and fig2");
  figures_cmd->add_option("--b", fig1a.b, "Disk radius for fig1a");
  figures_cmd->add_option("--p-max", fig1a.p_max, "Largest p for fig1a");
  figures_cmd->add_option("--r-points", fig1a.r_points, "r grid points per curve for fig1a");
  figures_cmd->add_option("--radial-order", fig2.radial_order, "Gauss-Legendre order for fig2");
  figures_cmd->add_option("--angular-points", fig2.angular_points, "Angular trapezoid points for fig2");

  std::string suite;
  bool quick = false;
  auto* verify_cmd = app.add_subcommand("verify", "Run the self-check suites");
  verify_cmd->add_option("suite", suite, "identities | oracles | limits | all")
      ->required()
      ->check(CLI::IsMember({"identities", "oracles", "limits", "all"}));
  verify_cmd->add_flag("--quick", quick, "Reduced grids");

  std::vector<const char*> argv{"cvpqc"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  SeriesTolerance tol;
  try {
    tol.eps_abs = tolerance_from_environment();
    tol.validate();

    std::optional<Table> table;
    int verify_code = kSuccess;
    if (command == "distance") {
      table = distance_table(distance, tol);
    } else if (command == "keybits") {
      table = keybits_table(keybits, tol);
    } else if (command == "simplified") {
      table = simplified_table(simplified, tol);
    } else if (command == "rmin") {
      table = rmin_table("rmin", parse_grid(rmin_b), tol);
    } else if (command == "saturation") {
      table = saturation_table(saturation, tol);
    } else if (command == "holevo") {
      table = holevo_table("holevo", parse_grid(holevo.b), holevo);
    } else if (command == "figures") {
      if (figure == "fig1a") table = fig1a_table(fig1a, tol);
      if (figure == "fig1b") table = rmin_table("fig1b", parse_grid(b_grid.empty() ? "0.25:7:0.25" : b_grid), tol);
      if (figure == "fig2")
        table = holevo_table("fig2", parse_grid(b_grid.empty() ? "0.001,0.25:4:0.25" : b_grid), fig2);
    } else if (command == "verify") {
      const auto results = run_verify(parse_verify_suite(suite), {quick, common.seed});
      table = verify_table(results);
      const bool ok = emit(common, out, [&](std::ostream& os) {
        if (common.format == "json")
          write_json(os, *table);
        else
          print_report(os, results);
      });
      if (!ok) {
        err << "error: cannot write " << common.output << '\n';
        return kInvalidInput;
      }
      for (const CheckResult& r : results)
        if (!r.passed) {
          err << "failed check: " << r.suite << '/' << r.name << '\n';
          verify_code = kVerifyFailed;
        }
    }

    if (command != "verify") {
      const bool ok = emit(common, out, [&](std::ostream& os) {
        if (common.format == "json")
          write_json(os, *table);
        else
          write_csv(os, *table);
      });
      if (!ok) {
        err << "error: cannot write " << common.output << '\n';
        return kInvalidInput;
      }
    }

    if (!common.json_log.empty()) {
      std::ofstream log(common.json_log);
      log << provenance(command, args, common, tol, &*table).dump(2) << '\n';
      if (!log) {
        err << "error: cannot write " << common.json_log << '\n';
        return kInvalidInput;
      }
    }

    int code = verify_code;
    for (const RowFailure& f : table->failures) {
      err << "error: row " << f.row << ": " << f.message << '\n';
      code = std::max(code, f.code);
    }
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace cvpqc::cli
