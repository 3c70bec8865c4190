#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bfzeta/acceptance.hpp"
#include "bfzeta/anosov_orbits.hpp"
#include "bfzeta/bv_gauge.hpp"
#include "bfzeta/errors.hpp"
#include "bfzeta/random_complexes.hpp"
#include "bfzeta/ruelle_zeta.hpp"
#include "bfzeta/twisted_complex.hpp"

namespace bfzeta::cli {

namespace {

using json = nlohmann::ordered_json;

const char* const kKeys[] = {"complex", "space", "orbits", "theta", "phi", "matrix", "roof", "sigma", "J",
                             "lambda_start", "lambda_stop", "lambda_steps", "lambda_imag", "degrees", "closed_form",
                             "fried", "samples", "seed", "family", "scale", "deviation_tol", "out", "format"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double to_double(const std::string& key, const std::string& s, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw ParseError(line, "key '" + key + "': expected a real number, got '" + s + "'");
  }
  return v;
}

long to_long(const std::string& key, const std::string& s, int line) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParseError(line, "key '" + key + "': expected an integer, got '" + s + "'");
  return v;
}

// Accepts a number or c*pi/d with optional c and d, e.g. pi, -pi/2, 2pi/3.
double to_angle(const std::string& key, const std::string& s, int line) {
  const auto at = s.find("pi");
  if (at == std::string::npos) return to_double(key, s, line);
  std::string coef = s.substr(0, at), rest = s.substr(at + 2);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  double c = coef.empty() ? 1.0 : coef == "-" ? -1.0 : coef == "+" ? 1.0 : to_double(key, coef, line);
  if (!rest.empty()) {
    if (rest[0] != '/') throw ParseError(line, "key '" + key + "': malformed angle '" + s + "'");
    const double d = to_double(key, rest.substr(1), line);
    if (d == 0.0) throw ValidationError(line, key, "division by zero in '" + s + "'");
    c /= d;
  }
  return c * std::numbers::pi;
}

bool to_bool(const std::string& key, const std::string& s, int line) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ParseError(line, "key '" + key + "': expected true or false, got '" + s + "'");
}

std::vector<std::string> split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json jnum(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

TwistedComplex load_complex(const RunConfig& c, std::string& context) {
  if (!c.complex_path.empty()) {
    context = c.complex_path;
    auto tc = build_from_file(read_complex_file(c.complex_path));
    context.clear();
    return tc;
  }
  if (c.space == "circle") return circle_complex(c.theta);
  if (c.space == "torus") return torus_complex(c.theta, c.phi);
  const int m[2][2] = {{int(c.matrix[0]), int(c.matrix[1])}, {int(c.matrix[2]), int(c.matrix[3])}};
  return mapping_torus_complex(m, c.theta);
}

ToralAutomorphism automorphism(const RunConfig& c) {
  const int m[2][2] = {{int(c.matrix[0]), int(c.matrix[1])}, {int(c.matrix[2]), int(c.matrix[3])}};
  return ToralAutomorphism::from(m, c.roof);
}

std::string format_of(const RunConfig& c) { return c.format.empty() ? "csv" : c.format; }

// ---------------------------------------------------------------- torsion

int cmd_torsion(const RunConfig& c, std::ostream& out, std::string& context) {
  const auto tc = load_complex(c, context);
  const auto betti = betti_numbers(tc);
  const bool csv = format_of(c) == "csv";
  json j;
  if (csv) {
    out << "quantity,value\n";
    out << "top_degree," << tc.top_degree() << '\n';
    for (std::size_t k = 0; k < betti.size(); ++k) out << "beta_" << k << ',' << betti[k] << '\n';
  } else {
    j["top_degree"] = tc.top_degree();
    j["betti"] = betti;
  }
  try {
    require_acyclic(tc);
  } catch (const NotAcyclic& e) {
    if (!csv) {
      j["error"] = e.what();
      out << j.dump(2) << '\n';
    }
    throw;
  }
  const auto t = analytic_torsion_report(tc, c.sigma);
  const double z = schwarz_partition(tc, c.sigma);
  const auto rel = det_relations_report(tc);
  const double tau_laplacian = std::exp(c.sigma * t.log_laplacian), tau_coexact = std::exp(c.sigma * t.log_coexact);
  if (csv) {
    out << "sigma," << c.sigma << '\n';
    out << "tau_laplacian," << num(tau_laplacian) << '\n';
    out << "tau_coexact," << num(tau_coexact) << '\n';
    out << "z_schwarz," << num(z) << '\n';
    out << "relation1," << num(rel.max_relation1()) << '\n';
    out << "relation2," << (rel.duality ? num(rel.max_relation2()) : std::string("n/a")) << '\n';
    out << "relation3," << num(rel.max_relation3()) << '\n';
  } else {
    j["sigma"] = c.sigma;
    j["tau_laplacian"] = jnum(tau_laplacian);
    j["tau_coexact"] = jnum(tau_coexact);
    j["z_schwarz"] = jnum(z);
    j["relation1"] = jnum(rel.max_relation1());
    j["relation2"] = rel.duality ? jnum(rel.max_relation2()) : json(nullptr);
    j["relation3"] = jnum(rel.max_relation3());
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bf

std::function<Contraction(double)> contraction_family(const RunConfig& c, const TwistedComplex& tc) {
  const Contraction base = hodge_contraction(tc);
  if (c.family == "shrink") {
    return [base](double t) {
      std::vector<Matrix> iota;
      for (const auto& m : base.iota) iota.push_back((1.0 - t) * m);
      return Contraction::from_iota(std::move(iota));
    };
  }
  Rng rng(c.seed);
  return unitary_family(base, random_antihermitian(rng, tc, c.scale));
}

int cmd_bf(const RunConfig& c, std::ostream& out, std::string& context) {
  const auto tc = load_complex(c, context);
  const auto fs = build_bf_fields(tc);
  const double tau = analytic_torsion(tc, c.sigma);
  const double z_metric = partition_function(fs, metric_gauge(fs), c.sigma).value;
  const auto family = contraction_family(c, tc);
  double z_contraction = 0.0;
  try {
    z_contraction = partition_function(fs, contraction_gauge(fs, family(0.0)), c.sigma).value;
  } catch (const DegenerateContraction& e) {
    throw DegenerateContraction(e.what(), 0, 0.0);
  }
  const auto scan = homotopy_scan(fs, family, c.samples, c.sigma);
  const double gauge_error = std::max(std::abs(z_metric / tau - 1.0), std::abs(z_contraction / tau - 1.0));
  const bool ok = gauge_error <= c.deviation_tol && scan.max_deviation <= c.deviation_tol;
  if (format_of(c) == "csv") {
    out << "quantity,value\n";
    out << "sigma," << c.sigma << '\n';
    out << "torsion," << num(tau) << '\n';
    out << "z_metric," << num(z_metric) << '\n';
    out << "z_contraction," << num(z_contraction) << '\n';
    out << "family," << c.family << '\n';
    out << "samples," << c.samples << '\n';
    out << "max_deviation," << num(scan.max_deviation) << '\n';
    out << "status," << (ok ? "ok" : "deviation_exceeds_tolerance") << '\n';
    out << '\n' << "t,z,phase,isotropy,cross_min_singular\n";
    for (const auto& r : scan.rows) {
      out << num(r.t) << ',' << num(r.value) << ',' << num(r.phase) << ',' << num(r.isotropy) << ','
          << num(r.cross_min_singular) << '\n';
    }
  } else {
    json j;
    j["sigma"] = c.sigma;
    j["torsion"] = jnum(tau);
    j["z_metric"] = jnum(z_metric);
    j["z_contraction"] = jnum(z_contraction);
    j["family"] = c.family;
    j["samples"] = c.samples;
    j["max_deviation"] = jnum(scan.max_deviation);
    j["status"] = ok ? "ok" : "deviation_exceeds_tolerance";
    json rows = json::array();
    for (const auto& r : scan.rows) {
      rows.push_back({{"t", jnum(r.t)}, {"z", jnum(r.value)}, {"phase", jnum(r.phase)}, {"isotropy", jnum(r.isotropy)},
                      {"cross_min_singular", jnum(r.cross_min_singular)}});
    }
    j["scan"] = rows;
    out << j.dump(2) << '\n';
  }
  return ok ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------- zeta

std::vector<cplx> lambda_grid(const RunConfig& c) {
  std::vector<cplx> grid;
  for (int i = 0; i < c.lambda_steps; ++i) {
    const double re = c.lambda_steps == 1 ? c.lambda_start
                                          : c.lambda_start + (c.lambda_stop - c.lambda_start) * i / (c.lambda_steps - 1);
    grid.emplace_back(re, c.lambda_imag);
  }
  return grid;
}

int cmd_zeta(const RunConfig& c, std::ostream& out, std::string& context) {
  std::vector<ZetaRow> rows;
  if (c.closed_form) {
    if (!c.orbits_path.empty()) throw ShapeMismatch("closed_form needs a matrix, not an orbit file");
    const auto t = automorphism(c);
    for (cplx lambda : lambda_grid(c)) {
      const auto z = closed_form_suspension(t, c.theta, lambda);
      for (int k : c.degrees) {
        ZetaRow row{{lambda, k, closed_form_log(z, k), 0, 0.0, 0.0}, false, ""};
        if (!std::isfinite(row.eval.value.real()) || !std::isfinite(row.eval.value.imag())) {
          row.flagged = true;
          row.note = "zero_or_pole";
        }
        rows.push_back(row);
      }
    }
  } else {
    OrbitSpectrum s;
    if (!c.orbits_path.empty()) {
      context = c.orbits_path;
      s = load_orbit_spectrum(c.orbits_path);
      context.clear();
    } else {
      s = enumerate_primitive_orbits(automorphism(c), c.J);
    }
    for (cplx lambda : lambda_grid(c)) {
      for (int k : c.degrees) {
        ZetaRow row;
        row.eval.lambda = lambda;
        row.eval.k = k;
        row.eval.truncation = c.J;
        try {
          row.eval = k == kFullZeta ? log_zeta_full(s, c.theta, lambda, c.J) : log_zeta_k(s, c.theta, lambda, k, c.J);
        } catch (const DivergentRegion&) {
          row.flagged = true;
          row.note = "divergent";
        }
        rows.push_back(row);
      }
    }
  }

  struct Fried {
    double inverse_zeta0, tau, residual;
  };
  std::optional<Fried> fried;
  if (c.fried) {
    if (!c.orbits_path.empty()) throw ShapeMismatch("the Fried summary needs a matrix, not an orbit file");
    const auto t = automorphism(c);
    const int m[2][2] = {{int(c.matrix[0]), int(c.matrix[1])}, {int(c.matrix[2]), int(c.matrix[3])}};
    fried = Fried{1.0 / std::abs(closed_form_suspension(t, c.theta, 0.0).full),
                  analytic_torsion(mapping_torus_complex(m, c.theta), c.sigma), fried_residual(t, c.theta, c.sigma)};
  }

  if (format_of(c) == "csv") {
    write_zeta_csv(out, rows);
    if (fried) {
      out << "# fried theta=" << num(c.theta) << " sigma=" << c.sigma << " inverse_abs_zeta_0=" << num(fried->inverse_zeta0)
          << " torsion=" << num(fried->tau) << " residual=" << num(fried->residual) << '\n';
    }
  } else {
    json j;
    json list = json::array();
    for (const auto& r : rows) {
      const auto& e = r.eval;
      json row;
      row["re_lambda"] = jnum(e.lambda.real());
      row["im_lambda"] = jnum(e.lambda.imag());
      row["k"] = e.k == kFullZeta ? json("full") : json(e.k);
      row["re_log_zeta"] = r.flagged ? json(nullptr) : jnum(e.value.real());
      row["im_log_zeta"] = r.flagged ? json(nullptr) : jnum(e.value.imag());
      row["tail_bound"] = r.flagged ? json(nullptr) : jnum(e.tail_bound);
      row["J"] = e.truncation;
      row["status"] = r.flagged ? r.note : "ok";
      list.push_back(row);
    }
    j["rows"] = list;
    if (fried) {
      j["fried"] = {{"theta", jnum(c.theta)},
                    {"sigma", c.sigma},
                    {"inverse_abs_zeta_0", jnum(fried->inverse_zeta0)},
                    {"torsion", jnum(fried->tau)},
                    {"residual", jnum(fried->residual)}};
    }
    out << j.dump(2) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- orbits

int cmd_orbits(const RunConfig& c, std::ostream& out) {
  const auto s = enumerate_primitive_orbits(automorphism(c), c.J);
  const std::string format = c.format.empty() ? "spectrum" : c.format;
  if (format == "spectrum") {
    write_orbit_spectrum(out, s, c.theta);
    return kExitOk;
  }
  if (format == "csv") {
    out << "length,primitive,re_holonomy,im_holonomy,eig1,eig2,count\n";
    for (const auto& r : s.records) {
      const cplx h = r.twist(c.theta);
      out << num(r.length) << ',' << (r.primitive ? 1 : 0) << ',' << num(h.real()) << ',' << num(h.imag()) << ','
          << num(r.eig1) << ',' << num(r.eig2) << ',' << r.count << '\n';
    }
    return kExitOk;
  }
  json list = json::array();
  for (const auto& r : s.records) {
    const cplx h = r.twist(c.theta);
    list.push_back({{"length", jnum(r.length)},
                    {"primitive", r.primitive},
                    {"re_holonomy", jnum(h.real())},
                    {"im_holonomy", jnum(h.imag())},
                    {"eig1", jnum(r.eig1)},
                    {"eig2", jnum(r.eig2)},
                    {"count", r.count.str()}});
  }
  out << json{{"records", list}}.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const RunConfig& c, std::ostream& out) {
  bool all = true;
  json list = json::array();
  const bool csv = format_of(c) == "csv";
  for (int id = 1; id <= kAcceptanceCriteria; ++id) {
    const auto r = run_criterion(id);
    all = all && r.passed;
    if (csv) {
      out << format_criterion(r) << std::endl;
    } else {
      list.push_back({{"id", r.id},
                      {"title", r.title},
                      {"passed", r.passed},
                      {"metric", jnum(r.metric)},
                      {"tolerance", jnum(r.tolerance)},
                      {"seconds", jnum(r.seconds)},
                      {"time_limit", jnum(r.time_limit)},
                      {"detail", r.detail}});
    }
  }
  if (!csv) out << json{{"criteria", list}, {"passed", all}}.dump(2) << '\n';
  return all ? kExitOk : kExitVerification;
}

void validate(const RunConfig& c) {
  const std::string format = format_of(c);
  if (format != "csv" && format != "json" && !(format == "spectrum" && c.command == "orbits")) {
    throw ValidationError(0, "format", "unsupported format '" + format + "'");
  }
}

}  // namespace

void apply_setting(RunConfig& c, const std::string& key, const std::string& raw, int line) {
  const std::string value = trim(raw);
  if (key == "complex") {
    c.complex_path = value;
  } else if (key == "space") {
    if (value != "circle" && value != "torus" && value != "mapping_torus") {
      throw ValidationError(line, key, "expected circle, torus or mapping_torus, got '" + value + "'");
    }
    c.space = value;
  } else if (key == "orbits") {
    c.orbits_path = value;
  } else if (key == "theta") {
    c.theta = to_angle(key, value, line);
  } else if (key == "phi") {
    c.phi = to_angle(key, value, line);
  } else if (key == "matrix") {
    const auto parts = split(value);
    if (parts.size() != 4) throw ParseError(line, "key 'matrix': expected four integers a b c d");
    for (int i = 0; i < 4; ++i) {
      c.matrix[i] = to_long(key, parts[i], line);
      if (std::abs(c.matrix[i]) > 1000000) throw ValidationError(line, key, "entries must stay below 10^6 in size");
    }
  } else if (key == "roof") {
    c.roof = to_double(key, value, line);
    if (!(c.roof > 0.0)) throw ValidationError(line, key, "roof must be positive");
  } else if (key == "sigma") {
    const long s = to_long(key, value, line);
    if (s != 1 && s != -1) throw ValidationError(line, key, "sigma must be +1 or -1");
    c.sigma = int(s);
  } else if (key == "J") {
    const long j = to_long(key, value, line);
    if (j < 1 || j > 100000) throw ValidationError(line, key, "J must lie in [1, 100000]");
    c.J = int(j);
  } else if (key == "lambda_start") {
    c.lambda_start = to_double(key, value, line);
  } else if (key == "lambda_stop") {
    c.lambda_stop = to_double(key, value, line);
  } else if (key == "lambda_imag") {
    c.lambda_imag = to_double(key, value, line);
  } else if (key == "lambda_steps") {
    const long n = to_long(key, value, line);
    if (n < 1 || n > 1000000) throw ValidationError(line, key, "the lambda grid must have at least one point");
    c.lambda_steps = int(n);
  } else if (key == "degrees") {
    const auto parts = split(value);
    if (parts.empty()) throw ValidationError(line, key, "at least one degree is required");
    c.degrees.clear();
    for (const auto& p : parts) {
      if (p == "full") {
        c.degrees.push_back(kFullZeta);
        continue;
      }
      const long k = to_long(key, p, line);
      if (k < 0 || k > 2) throw ValidationError(line, key, "degrees are 0, 1, 2 or full");
      c.degrees.push_back(int(k));
    }
  } else if (key == "closed_form") {
    c.closed_form = to_bool(key, value, line);
  } else if (key == "fried") {
    c.fried = to_bool(key, value, line);
  } else if (key == "samples") {
    const long n = to_long(key, value, line);
    if (n < 2 || n > 100000) throw ValidationError(line, key, "samples must lie in [2, 100000]");
    c.samples = int(n);
  } else if (key == "seed") {
    const long s = to_long(key, value, line);
    if (s < 0) throw ValidationError(line, key, "seed must be non-negative");
    c.seed = static_cast<unsigned long>(s);
  } else if (key == "family") {
    if (value != "unitary" && value != "shrink") throw ValidationError(line, key, "expected unitary or shrink");
    c.family = value;
  } else if (key == "scale") {
    c.scale = to_double(key, value, line);
    if (!(c.scale > 0.0)) throw ValidationError(line, key, "scale must be positive");
  } else if (key == "deviation_tol") {
    c.deviation_tol = to_double(key, value, line);
    if (!(c.deviation_tol > 0.0)) throw ValidationError(line, key, "tolerances must be positive");
  } else if (key == "out") {
    c.out = value;
  } else if (key == "format") {
    c.format = value;
  } else {
    throw ParseError(line, "unknown key '" + key + "'");
  }
}

void read_config(std::istream& in, RunConfig& c) {
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    if (trim(raw).empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) throw ParseError(number, "expected key = value");
    const std::string key = trim(raw.substr(0, eq));
    if (key.empty()) throw ParseError(number, "missing key before '='");
    apply_setting(c, key, raw.substr(eq + 1), number);
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Torsion, BF partition functions and Ruelle zeta functions of twisted complexes and toral suspensions"};
  app.require_subcommand(1);
  std::string config_path;
  std::vector<std::pair<std::string, CLI::Option*>> flags;
  std::map<std::string, std::string> values;
  for (const char* key : kKeys) values[key];

  struct Flag {
    const char* name;
    const char* key;
    const char* help;
  };
  const Flag common[] = {{"--out", "out", "write output to PATH instead of stdout"},
                         {"--format", "format", "csv or json (orbits also: spectrum)"}};
  const Flag complex_flags[] = {{"--complex", "complex", "complex file"},
                                {"--space", "space", "circle, torus or mapping_torus"},
                                {"--theta", "theta", "twist angle, e.g. pi or 2pi/3"},
                                {"--sigma", "sigma", "torsion convention, +1 or -1"}};
  const Flag zeta_flags[] = {{"--theta", "theta", "twist angle"},
                             {"--J", "J", "orbit truncation period"},
                             {"--sigma", "sigma", "torsion convention for the Fried line"},
                             {"--lambda-start", "lambda_start", "first real part"},
                             {"--lambda-stop", "lambda_stop", "last real part"},
                             {"--lambda-steps", "lambda_steps", "number of grid points"}};

  std::vector<std::pair<CLI::App*, std::string>> subs;
  auto add_sub = [&](const std::string& name, const std::string& help, std::initializer_list<const Flag*> groups,
                     std::initializer_list<std::size_t> sizes) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "key=value configuration file");
    auto size = sizes.begin();
    for (const Flag* group : groups) {
      for (std::size_t i = 0; i < *size; ++i) {
        flags.emplace_back(group[i].key, sub->add_option(group[i].name, values[group[i].key], group[i].help));
      }
      ++size;
    }
    for (const auto& f : common) flags.emplace_back(f.key, sub->add_option(f.name, values[f.key], f.help));
    subs.emplace_back(sub, name);
  };
  add_sub("torsion", "Betti numbers, analytic torsion, Schwarz partition function and determinant relations",
          {complex_flags}, {std::size(complex_flags)});
  add_sub("bf", "BF partition function in the metric and contraction gauges, homotopy scan", {complex_flags},
          {std::size(complex_flags)});
  add_sub("zeta", "log zeta over a lambda grid from periodic orbits or closed forms", {zeta_flags}, {std::size(zeta_flags)});
  add_sub("orbits", "Primitive periodic orbits of a toral automorphism suspension", {zeta_flags}, {2});
  add_sub("verify", "Run the acceptance suite", {}, {});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  RunConfig c;
  for (const auto& [sub, name] : subs) {
    if (sub->parsed()) c.command = name;
  }
  std::string context;
  try {
    if (!config_path.empty()) {
      context = config_path;
      std::ifstream in(config_path);
      if (!in) throw ParseError(0, "cannot open config file");
      read_config(in, c);
      context.clear();
    }
    for (const auto& [key, opt] : flags) {
      if (opt->count() > 0) apply_setting(c, key, values[key], 0);
    }
    validate(c);

    std::ofstream file;
    std::ostream* sink = &out;
    if (!c.out.empty()) {
      file.open(c.out, std::ios::binary);
      if (!file) throw ParseError(0, "cannot open output file '" + c.out + "'");
      sink = &file;
    }
    if (c.command == "torsion") return cmd_torsion(c, *sink, context);
    if (c.command == "bf") return cmd_bf(c, *sink, context);
    if (c.command == "zeta") return cmd_zeta(c, *sink, context);
    if (c.command == "orbits") return cmd_orbits(c, *sink);
    return cmd_verify(c, *sink);
  } catch (const ParseError& e) {
    err << (context.empty() ? "" : context + ": ") << e.what() << '\n';
    return kExitParse;
  } catch (const DomainError& e) {
    err << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace bfzeta::cli
