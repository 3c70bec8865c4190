#include "bfzeta/ruelle_zeta.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "bfzeta/errors.hpp"
#include "bfzeta/twisted_complex.hpp"

namespace bfzeta {

namespace {

constexpr int kMaxIterates = 100000;
constexpr double kIterateCutoff = 1e-20;
// Allowance for floating-point summation, added to every tail bound.
constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();

void require_degree(int k) {
  if (k < 0 || k > 2) throw ShapeMismatch("form degree must lie in [0, 2]");
}

bool included(const OrbitRecord& r, const OrbitSpectrum& s, int truncation) {
  if (!r.primitive) return false;
  if (s.tail && r.period > truncation) return false;
  return true;
}

void require_truncation(const OrbitSpectrum& s, int truncation) {
  if (truncation < 1) throw ShapeMismatch("truncation must be positive");
  if (s.tail && truncation > s.tail->complete_through) {
    throw ShapeMismatch("spectrum is complete only through period " + std::to_string(s.tail->complete_through));
  }
}

double geometric_tail(double constant, double growth, double roof, cplx lambda, int truncation) {
  const double q = growth * std::exp(-lambda.real() * roof);
  if (!(q < 1.0)) {
    std::ostringstream os;
    os << std::setprecision(6) << "orbit sum diverges at Re lambda = " << lambda.real() << " (ratio " << q << ")";
    throw DivergentRegion(os.str());
  }
  return constant * std::pow(q, truncation + 1) / ((truncation + 1) * (1.0 - q));
}

// Σ_j term(j) for one record with term(j) = weight(j) x^j ρ^j tr ∧^k P^j / |det(I - P^j)|.
struct Iterates {
  cplx value = 0.0;
  double remainder = 0.0;
  double magnitude = 0.0;
};

Iterates sum_iterates(const OrbitRecord& r, double theta, cplx lambda, int k, const std::function<cplx(int)>& weight) {
  const cplx x = r.twist(theta) * std::exp(-lambda * r.length);
  const double ax = std::abs(x);
  if (!(ax < 1.0)) throw DivergentRegion("orbit of length " + std::to_string(r.length) + " has |e^{-lambda l}| >= 1");
  Iterates out;
  cplx xj = 1.0;
  double axj = 1.0;
  for (int j = 1; j <= kMaxIterates; ++j) {
    xj *= x;
    axj *= ax;
    const PoincareData p = poincare_data(r.eig1, r.eig2, j, k);
    const cplx term = weight(j) * xj * (p.trace / std::abs(p.det_i_minus_p));
    out.value += term;
    out.magnitude += std::abs(term);
    if (axj < kIterateCutoff) {
      out.remainder = 2.0 * std::abs(term) * ax / (1.0 - ax);
      return out;
    }
  }
  throw DivergentRegion("iterate series did not reach roundoff");
}

// log(1 - x) without cancellation for small |x|.
cplx log_one_minus(cplx x) {
  return {0.5 * std::log1p(std::norm(x) - 2.0 * x.real()), std::atan2(-x.imag(), 1.0 - x.real())};
}

double count_of(const OrbitRecord& r) { return r.count.convert_to<double>(); }

}  // namespace

ZetaEvaluation log_zeta_k(const OrbitSpectrum& s, double theta, cplx lambda, int k, int truncation) {
  require_degree(k);
  require_truncation(s, truncation);
  ZetaEvaluation e{lambda, k, 0.0, truncation, 0.0, 0.0};
  if (s.tail) e.tail_bound = geometric_tail(s.tail->constant[k], s.tail->growth[k], s.tail->roof, lambda, truncation);
  double magnitude = 0.0;
  for (const auto& r : s.records) {
    if (!included(r, s, truncation)) continue;
    const auto it = sum_iterates(r, theta, lambda, k, [](int j) { return cplx(1.0 / j); });
    e.value -= count_of(r) * it.value;
    e.tail_bound += count_of(r) * it.remainder;
    magnitude += count_of(r) * it.magnitude;
  }
  e.tail_bound += kRoundoff * (1.0 + magnitude);
  return e;
}

ZetaEvaluation log_zeta_full(const OrbitSpectrum& s, double theta, cplx lambda, int truncation) {
  require_truncation(s, truncation);
  ZetaEvaluation e{lambda, kFullZeta, 0.0, truncation, 0.0, 0.0};
  if (s.tail) e.tail_bound = geometric_tail(s.tail->full_constant, s.tail->full_growth, s.tail->roof, lambda, truncation);
  double magnitude = 0.0;
  for (const auto& r : s.records) {
    if (!included(r, s, truncation)) continue;
    const cplx x = r.twist(theta) * std::exp(-lambda * r.length);
    if (!(std::abs(x) < 1.0)) throw DivergentRegion("orbit of length " + std::to_string(r.length) + " has |e^{-lambda l}| >= 1");
    const cplx term = count_of(r) * log_one_minus(x);
    e.value += term;
    magnitude += std::abs(term);
  }
  e.tail_bound += kRoundoff * (1.0 + magnitude);
  return e;
}

double decomposition_residual(const OrbitSpectrum& s, double theta, cplx lambda, int truncation) {
  cplx alternating = 0.0;
  for (int k = 0; k <= 2; ++k) alternating += (k % 2 ? -1.0 : 1.0) * log_zeta_k(s, theta, lambda, k, truncation).value;
  return std::abs(-log_zeta_full(s, theta, lambda, truncation).value - alternating);
}

double BumpFunction::operator()(double t) const {
  const double u = (t - center) / width;
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

cplx flat_trace_pairing(const OrbitSpectrum& s, double theta, int k, const BumpFunction& phi) {
  require_degree(k);
  if (!(phi.width > 0.0)) throw SupportTooWide("bump width must be positive");
  const double lo = phi.center - phi.width, hi = phi.center + phi.width;
  if (!(lo > 0.0)) throw SupportTooWide("test function support reaches t <= 0");
  if (s.tail && hi > (s.tail->complete_through + 1) * s.tail->roof) {
    throw ShapeMismatch("test function support extends past the enumerated periods");
  }
  cplx sum = 0.0;
  for (const auto& r : s.records) {
    if (!r.primitive) continue;
    const cplx rho = r.twist(theta);
    for (int j = static_cast<int>(std::floor(lo / r.length)) + 1; j * r.length < hi; ++j) {
      if (j < 1) continue;
      const double v = phi(j * r.length);
      if (v == 0.0) continue;
      const PoincareData p = poincare_data(r.eig1, r.eig2, j, k);
      sum += count_of(r) * r.length * v * std::pow(rho, j) * (p.trace / std::abs(p.det_i_minus_p));
    }
  }
  return sum;
}

cplx mellin_F_orbits(const OrbitSpectrum& s, double theta, cplx lambda, int k, double sv, int truncation) {
  require_degree(k);
  require_truncation(s, truncation);
  if (!(sv > -1.0)) throw DivergentRegion("Mellin orbit sum needs s > -1");
  cplx sum = 0.0;
  for (const auto& r : s.records) {
    if (!included(r, s, truncation)) continue;
    const double l = r.length;
    const auto it = sum_iterates(r, theta, lambda, k, [&](int j) { return cplx(l * std::pow(j * l, sv - 1.0)); });
    sum += count_of(r) * it.value;
  }
  // 1/Γ(s) = s/Γ(1+s) stays finite through s = 0.
  return sum * (sv / std::tgamma(1.0 + sv));
}

ZetaEvaluation mellin_log_zeta(const OrbitSpectrum& s, double theta, cplx lambda, int k, int truncation) {
  ZetaEvaluation e = log_zeta_k(s, theta, lambda, k, truncation);
  const Derivative d =
      richardson_derivative_at_zero([&](double sv) { return mellin_F_orbits(s, theta, lambda, k, sv, truncation); });
  e.value = -d.value;
  e.method_error = d.error_estimate;
  return e;
}

SuspensionZeta closed_form_suspension(const ToralAutomorphism& t, double theta, cplx lambda) {
  const cplx z = std::exp(cplx(0.0, theta) - lambda * t.roof);
  const double mu = t.mu(), nu = t.nu(), det = static_cast<double>(t.det());
  const double eps = mu > 0 ? 1.0 : -1.0;
  SuspensionZeta out;
  out.zeta0 = 1.0 - z;
  out.zeta1 = (1.0 - z * mu) * (1.0 - z * nu);
  out.zeta2 = 1.0 - z * det;
  out.full = (1.0 - eps * z * mu) * (1.0 - eps * z * nu) / ((1.0 - eps * z) * (1.0 - eps * z * det));
  out.log0 = std::log(1.0 - z);
  out.log1 = std::log(1.0 - z * mu) + std::log(1.0 - z * nu);
  out.log2 = std::log(1.0 - z * det);
  out.log_full = std::log(1.0 - eps * z * mu) + std::log(1.0 - eps * z * nu) - std::log(1.0 - eps * z) -
                 std::log(1.0 - eps * z * det);
  return out;
}

cplx closed_form_log(const SuspensionZeta& z, int k) {
  switch (k) {
    case 0: return z.log0;
    case 1: return z.log1;
    case 2: return z.log2;
    case kFullZeta: return z.log_full;
    default: throw ShapeMismatch("form degree must lie in [0, 2] or be the full zeta");
  }
}

double fried_residual(const ToralAutomorphism& t, double theta, int sigma) {
  if (std::abs(1.0 - std::polar(1.0, theta)) < 1e-12) throw NotAcyclic("theta in 2 pi Z leaves the mapping torus non-acyclic");
  if (sigma != 1 && sigma != -1) throw ShapeMismatch("sigma must be +1 or -1");
  const int m[2][2] = {{static_cast<int>(t.a[0][0]), static_cast<int>(t.a[0][1])},
                       {static_cast<int>(t.a[1][0]), static_cast<int>(t.a[1][1])}};
  const double tau = analytic_torsion(mapping_torus_complex(m, theta), sigma);
  const double zeta0 = std::abs(closed_form_suspension(t, theta, 0.0).full);
  return std::abs(std::pow(tau, -sigma) / zeta0 - 1.0);
}

void write_zeta_csv(std::ostream& out, const std::vector<ZetaRow>& rows) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  out << "re_lambda,im_lambda,k,re_log_zeta,im_log_zeta,tail_bound,J,status\n";
  for (const auto& row : rows) {
    const auto& e = row.eval;
    out << e.lambda.real() << ',' << e.lambda.imag() << ',';
    if (e.k == kFullZeta) {
      out << "full";
    } else {
      out << e.k;
    }
    out << ',';
    if (row.flagged) {
      out << "nan,nan,inf";
    } else {
      out << e.value.real() << ',' << e.value.imag() << ',' << e.tail_bound;
    }
    out << ',' << e.truncation << ',' << (row.flagged ? row.note : std::string("ok")) << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace bfzeta
