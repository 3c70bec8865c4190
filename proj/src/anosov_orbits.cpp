#include "bfzeta/anosov_orbits.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <tuple>

#include "bfzeta/errors.hpp"

namespace bfzeta {

namespace {

using Mat2 = std::array<std::array<BigInt, 2>, 2>;

Mat2 multiply(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  }
  return r;
}

Mat2 power(const ToralAutomorphism& t, int j) {
  Mat2 base, result;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      base[i][k] = t.a[i][k];
      result[i][k] = i == k ? 1 : 0;
    }
  }
  for (int e = j; e > 0; e >>= 1) {
    if (e & 1) result = multiply(result, base);
    base = multiply(base, base);
  }
  return result;
}

int moebius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

void require_period(int j) {
  if (j < 1) throw ShapeMismatch("period must be positive");
}

double parse_real(const std::string& s, int line, const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected a real number for " + field + ", got '" + s + "'");
  }
  if (used != s.size()) throw ParseError(line, "expected a real number for " + field + ", got '" + s + "'");
  return v;
}

auto record_key(const OrbitRecord& r) {
  return std::make_tuple(r.length, !r.primitive, r.holonomy.real(), r.holonomy.imag(), r.eig1, r.eig2);
}

}  // namespace

ToralAutomorphism ToralAutomorphism::from(const int m[2][2], double roof) {
  ToralAutomorphism t;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) t.a[i][j] = m[i][j];
  }
  t.roof = roof;
  if (std::abs(t.det()) != 1) throw NotHyperbolic("determinant must be +1 or -1");
  if (std::abs(t.trace()) <= 2) throw NotHyperbolic("|trace| must exceed 2");
  if (!(roof > 0.0) || !std::isfinite(roof)) throw NotHyperbolic("roof must be positive");
  return t;
}

double ToralAutomorphism::mu() const {
  const double tr = static_cast<double>(trace());
  const double disc = std::sqrt(tr * tr - 4.0 * static_cast<double>(det()));
  return 0.5 * (tr + std::copysign(disc, tr));
}

double ToralAutomorphism::nu() const { return static_cast<double>(det()) / mu(); }

BigInt trace_power(const ToralAutomorphism& t, int j) {
  require_period(j);
  const Mat2 p = power(t, j);
  return p[0][0] + p[1][1];
}

BigInt count_fixed_points(const ToralAutomorphism& t, int j) {
  require_period(j);
  const Mat2 p = power(t, j);
  const BigInt d = (p[0][0] - 1) * (p[1][1] - 1) - p[0][1] * p[1][0];
  return d < 0 ? BigInt(-d) : d;
}

std::vector<BigInt> primitive_counts(const ToralAutomorphism& t, int j_max) {
  std::vector<BigInt> fix(j_max + 1), n(j_max + 1);
  for (int j = 1; j <= j_max; ++j) fix[j] = count_fixed_points(t, j);
  for (int j = 1; j <= j_max; ++j) {
    BigInt sum = 0;
    for (int d = 1; d <= j; ++d) {
      if (j % d == 0) sum += moebius(j / d) * fix[d];
    }
    n[j] = sum / j;
  }
  return n;
}

cplx OrbitRecord::twist(double theta) const {
  return winding ? holonomy * std::polar(1.0, theta * winding) : holonomy;
}

OrbitSpectrum enumerate_primitive_orbits(const ToralAutomorphism& t, int j_max) {
  require_period(j_max);
  const auto n = primitive_counts(t, j_max);
  const double mu = t.mu(), nu = t.nu();
  OrbitSpectrum s;
  for (int j = 1; j <= j_max; ++j) {
    if (n[j] == 0) continue;
    OrbitRecord r;
    r.period = j;
    r.length = j * t.roof;
    r.winding = j;
    r.eig1 = std::pow(mu, j);
    r.eig2 = std::pow(nu, j);
    r.count = n[j];
    s.records.push_back(r);
  }
  TailModel tail;
  tail.roof = t.roof;
  tail.complete_through = j_max;
  tail.growth = {1.0, std::abs(mu), 1.0};
  tail.constant = {1.0, 2.0, 1.0};
  tail.full_growth = std::abs(mu);
  tail.full_constant = 4.0;
  s.tail = tail;
  return s;
}

PoincareData poincare_data(double eig1, double eig2, int j, int k) {
  require_period(j);
  if (k < 0 || k > 2) throw ShapeMismatch("form degree must lie in [0, 2]");
  const long double e1 = std::pow(static_cast<long double>(eig1), j);
  const long double e2 = std::pow(static_cast<long double>(eig2), j);
  const long double traces[3] = {1.0L, e1 + e2, e1 * e2};
  const long double det = (1.0L - e1) * (1.0L - e2);
  const long double alternating = traces[0] - traces[1] + traces[2];
  PoincareData out;
  out.trace = static_cast<double>(traces[k]);
  out.det_i_minus_p = static_cast<double>(det);
  out.identity_residual = static_cast<double>(std::abs(alternating + std::abs(det)) / std::max(1.0L, std::abs(det)));
  return out;
}

PoincareData poincare_data(const ToralAutomorphism& t, int j, int k) { return poincare_data(t.mu(), t.nu(), j, k); }

OrbitSpectrum read_orbit_spectrum(std::istream& in) {
  std::vector<OrbitRecord> records;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 7) throw ParseError(line, "expected 7 fields, got " + std::to_string(tok.size()));

    OrbitRecord r;
    r.length = parse_real(tok[0], line, "length");
    if (!(r.length > 0.0) || !std::isfinite(r.length)) throw ValidationError(line, "length", "must be positive");
    if (tok[1] != "0" && tok[1] != "1") throw ValidationError(line, "primitive_flag", "must be 0 or 1");
    r.primitive = tok[1] == "1";
    r.holonomy = cplx(parse_real(tok[2], line, "holonomy_re"), parse_real(tok[3], line, "holonomy_im"));
    if (std::abs(std::abs(r.holonomy) - 1.0) > 1e-9) throw ValidationError(line, "holonomy", "must have modulus 1");
    r.eig1 = parse_real(tok[4], line, "eig1");
    r.eig2 = parse_real(tok[5], line, "eig2");
    for (double e : {r.eig1, r.eig2}) {
      if (!std::isfinite(e) || std::abs(std::abs(e) - 1.0) < 1e-12 || e == 0.0) {
        throw ValidationError(line, "eig", "eigenvalues must be finite and off the unit circle");
      }
    }
    if (std::abs(std::abs(r.eig1 * r.eig2) - 1.0) > 1e-9) throw ValidationError(line, "eig", "eigenvalue product must be +1 or -1");
    if (tok[6].find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError(line, "expected a non-negative integer count, got '" + tok[6] + "'");
    }
    r.count = BigInt(tok[6]);
    if (r.count < 1) throw ValidationError(line, "count", "must be at least 1");
    records.push_back(r);
  }

  std::stable_sort(records.begin(), records.end(),
                   [](const OrbitRecord& a, const OrbitRecord& b) { return record_key(a) < record_key(b); });
  OrbitSpectrum s;
  for (const auto& r : records) {
    if (!s.records.empty() && record_key(s.records.back()) == record_key(r)) {
      s.records.back().count += r.count;
    } else {
      s.records.push_back(r);
    }
  }
  return s;
}

OrbitSpectrum load_orbit_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  return read_orbit_spectrum(in);
}

void write_orbit_spectrum(std::ostream& out, const OrbitSpectrum& s, double theta) {
  std::vector<OrbitRecord> rows;
  for (const auto& r : s.records) {
    OrbitRecord w = r;
    w.holonomy = r.twist(theta);
    w.winding = 0;
    rows.push_back(w);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const OrbitRecord& a, const OrbitRecord& b) { return record_key(a) < record_key(b); });
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  out << "# length primitive_flag holonomy_re holonomy_im eig1 eig2 count\n";
  for (const auto& r : rows) {
    out << r.length << ' ' << (r.primitive ? 1 : 0) << ' ' << r.holonomy.real() << ' ' << r.holonomy.imag() << ' '
        << r.eig1 << ' ' << r.eig2 << ' ' << r.count << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace bfzeta
