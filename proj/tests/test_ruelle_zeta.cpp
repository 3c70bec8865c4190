#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"

#include "bfzeta/errors.hpp"
#include "bfzeta/ruelle_zeta.hpp"
#include "bfzeta/twisted_complex.hpp"

using namespace bfzeta;
using std::numbers::pi;

namespace {

const int kCat[2][2] = {{2, 1}, {1, 1}};
const int kNegative[2][2] = {{-2, 1}, {1, -1}};

OrbitSpectrum cat_spectrum(int j = 40) { return enumerate_primitive_orbits(ToralAutomorphism::from(kCat), j); }

OrbitSpectrum parse(const std::string& text) {
  std::istringstream in(text);
  return read_orbit_spectrum(in);
}

// Independent resummation: log ζ_k = -Σ_m z^m tr ∧^k A^m / m over all periodic points.
cplx periodic_point_series(const ToralAutomorphism& t, double theta, cplx lambda, int k, int terms) {
  const cplx z = std::exp(cplx(0.0, theta) - lambda * t.roof);
  cplx sum = 0.0, zm = 1.0;
  for (int m = 1; m <= terms; ++m) {
    zm *= z;
    const double tr = k == 1 ? trace_power(t, m).convert_to<double>() : (k == 0 ? 1.0 : std::pow(double(t.det()), m));
    sum -= zm * tr / double(m);
  }
  return sum;
}

}  // namespace

TEST_CASE("k-form zeta examples") {
  const auto s = cat_spectrum();
  auto e = log_zeta_k(s, 0.0, 1.0, 0, 40);
  CHECK(e.value.real() == doctest::Approx(-0.45868).epsilon(1e-5));
  CHECK(std::abs(e.value - std::log(1.0 - std::exp(-1.0))) <= e.tail_bound);
  CHECK(e.tail_bound < 1e-13);

  for (double lambda : {1.0, 2.5}) {
    CHECK(std::abs(log_zeta_k(s, 0.7, lambda, 2, 40).value - log_zeta_k(s, 0.7, lambda, 0, 40).value) < 1e-15);
  }

  const auto cat = ToralAutomorphism::from(kCat);
  const auto closed = closed_form_suspension(cat, pi, 3.0);
  const auto k1 = log_zeta_k(s, pi, 3.0, 1, 40);
  CHECK(std::abs(k1.value - closed.log1) <= k1.tail_bound);
  CHECK(std::abs(k1.value - periodic_point_series(cat, pi, 3.0, 1, 60)) < 1e-14);

  CHECK_THROWS_AS(log_zeta_k(s, 0.0, 0.5, 1, 40), DivergentRegion);
  CHECK_THROWS_AS(log_zeta_k(s, 0.0, 2.0, 3, 40), ShapeMismatch);
  CHECK_THROWS_AS(log_zeta_k(s, 0.0, 2.0, 0, 41), ShapeMismatch);
}

TEST_CASE("full zeta and the decomposition identity") {
  const auto s = cat_spectrum(30);
  const auto full = log_zeta_full(s, 0.0, 3.0, 30);
  CHECK(std::isfinite(full.value.real()));
  const auto closed = closed_form_suspension(ToralAutomorphism::from(kCat), 0.0, 3.0);
  CHECK(std::abs(full.value - closed.log_full) <= full.tail_bound);
  for (cplx lambda : {cplx(2.0), cplx(3.0), cplx(3.0, 2.0)}) {
    for (double theta : {0.0, 1.0, pi}) CHECK(decomposition_residual(s, theta, lambda, 30) < 1e-12);
  }

  const double lambda = 1.3;
  const auto one = parse("1.5 1 1 0 3 0.3333333333333333 1\n");
  CHECK(std::abs(log_zeta_full(one, 0.0, lambda, 1).value - std::log1p(-std::exp(-lambda * 1.5))) < 1e-16);
  CHECK(log_zeta_full(one, 0.0, lambda, 1).tail_bound < 1e-13);

  const auto two = parse("1.5 1 1 0 3 0.3333333333333333 1\n2.25 1 0 1 -4 -0.25 1\n");
  const cplx hand = std::log((1.0 - std::exp(-lambda * 1.5)) * (1.0 - cplx(0.0, 1.0) * std::exp(-lambda * 2.25)));
  CHECK(std::abs(log_zeta_full(two, 0.0, lambda, 1).value - hand) < 1e-15);
  CHECK(decomposition_residual(parse("1.5 1 1 0 3 0.3333333333333333 2\n2.25 1 0 1 4 0.25 1\n"), 0.0, lambda, 1) < 1e-10);

  // Non-primitive records never enter the product.
  const auto with_iterate = parse("1.5 1 1 0 3 0.3333333333333333 1\n3 0 1 0 9 0.1111111111111111 1\n");
  CHECK(log_zeta_full(with_iterate, 0.0, lambda, 1).value == log_zeta_full(one, 0.0, lambda, 1).value);
}

TEST_CASE("Euler products converge to the closed forms within the certified tail") {
  const auto s = cat_spectrum();
  const auto cat = ToralAutomorphism::from(kCat);
  for (double theta : {0.0, pi / 2, pi}) {
    for (cplx lambda : {cplx(3.0), cplx(3.0, 1.5), cplx(4.5, -2.0)}) {
      const auto closed = closed_form_suspension(cat, theta, lambda);
      for (int k = 0; k <= 2; ++k) {
        const auto e = log_zeta_k(s, theta, lambda, k, 40);
        const double err = std::abs(e.value - closed_form_log(closed, k));
        CHECK(err <= e.tail_bound);
        CHECK(err < 1e-8);
      }
    }
    // Short truncations still respect the certificate.
    for (int j : {2, 5, 10}) {
      for (int k = 0; k <= 2; ++k) {
        const auto e = log_zeta_k(s, theta, 1.5, k, j);
        CHECK(std::abs(e.value - closed_form_log(closed_form_suspension(cat, theta, 1.5), k)) <= e.tail_bound);
      }
      const auto f = log_zeta_full(s, theta, 1.5, j);
      CHECK(std::abs(f.value - closed_form_suspension(cat, theta, 1.5).log_full) <= f.tail_bound);
    }
  }
}

TEST_CASE("flat trace pairing") {
  const auto s = cat_spectrum(12);
  CHECK(std::abs(flat_trace_pairing(s, 0.0, 0, {1.0, 0.1}) - 1.0) < 1e-14);
  CHECK(std::abs(flat_trace_pairing(s, 0.0, 0, {1.5, 0.2})) == 0.0);
  // Direct enumeration at t = 2: (primitive period 1, second iterate) plus two primitive period-2 orbits.
  const double det2 = 5.0;
  const double oracle = 1.0 * 1.0 / det2 + 2.0 * 2.0 / det2;
  CHECK(std::abs(flat_trace_pairing(s, 0.0, 0, {2.0, 0.1}) - oracle) < 1e-14);
  CHECK(oracle == doctest::Approx(1.0));
  // Off-peak sampling scales by the bump height.
  const BumpFunction wide{1.05, 0.1};
  CHECK(std::abs(flat_trace_pairing(s, 0.0, 0, wide) - wide(1.0)) < 1e-14);
  // k = 1 at t = 1: weight tr P / |det(I - P)| = 3.
  CHECK(std::abs(flat_trace_pairing(s, 0.0, 1, {1.0, 0.1}) - 3.0) < 1e-13);
  // Twist: ρ = e^{iθ} on the period-one orbit.
  CHECK(std::abs(flat_trace_pairing(s, 0.4, 0, {1.0, 0.1}) - std::polar(1.0, 0.4)) < 1e-14);

  CHECK_THROWS_AS(flat_trace_pairing(s, 0.0, 0, {0.05, 0.1}), SupportTooWide);
  CHECK_THROWS_AS(flat_trace_pairing(s, 0.0, 0, {12.5, 1.0}), ShapeMismatch);
}

TEST_CASE("Mellin route to log zeta") {
  const auto s = cat_spectrum();
  const auto cat = ToralAutomorphism::from(kCat);
  const auto m0 = mellin_log_zeta(s, 0.0, 2.0, 0, 40);
  CHECK(std::abs(m0.value - std::log(1.0 - std::exp(-2.0))) < 1e-8);
  const auto m1 = mellin_log_zeta(s, 0.0, 4.0, 1, 40);
  CHECK(std::abs(m1.value - closed_form_suspension(cat, 0.0, 4.0).log1) < 1e-8);
  for (double sv : {-0.5, -0.1, 0.0, 0.3, 1.0, 2.0}) {
    const cplx f = mellin_F_orbits(s, 0.0, 2.5, 1, sv, 40);
    CHECK(f.imag() == 0.0);
  }
  CHECK(mellin_F_orbits(s, 0.0, 2.5, 1, 0.0, 40) == 0.0);
  for (double theta : {0.0, pi / 2, pi}) {
    for (cplx lambda : {cplx(3.0), cplx(3.5, 1.0)}) {
      for (int k = 0; k <= 2; ++k) {
        CHECK(std::abs(mellin_log_zeta(s, theta, lambda, k, 40).value - log_zeta_k(s, theta, lambda, k, 40).value) < 1e-8);
      }
    }
  }
  CHECK_THROWS_AS(mellin_F_orbits(s, 0.0, 2.0, 0, -1.5, 40), DivergentRegion);
}

TEST_CASE("closed-form suspension zeta") {
  const auto cat = ToralAutomorphism::from(kCat);
  const auto at_zero = closed_form_suspension(cat, pi, 0.0);
  CHECK(std::abs(1.0 / std::abs(at_zero.full) - 0.8) < 1e-14);
  const double mu = cat.mu();
  CHECK(std::abs(std::abs(at_zero.zeta1) - (2.0 + mu + 1.0 / mu)) < 1e-13);
  CHECK(std::abs(at_zero.full - at_zero.zeta1 / (at_zero.zeta0 * at_zero.zeta2)) < 1e-15);

  CHECK(std::abs(closed_form_suspension(cat, 0.0, 1e-9).zeta0) < 1e-8);

  // Negative trace: the resummed product follows the sign of μ.
  const auto neg = ToralAutomorphism::from(kNegative);
  const auto ns = enumerate_primitive_orbits(neg, 40);
  for (cplx lambda : {cplx(3.0), cplx(3.2, 0.7)}) {
    const auto closed = closed_form_suspension(neg, 0.9, lambda);
    const auto e = log_zeta_full(ns, 0.9, lambda, 40);
    CHECK(std::abs(e.value - closed.log_full) <= e.tail_bound);
    for (int k = 0; k <= 2; ++k) {
      CHECK(std::abs(log_zeta_k(ns, 0.9, lambda, k, 40).value - closed_form_log(closed, k)) < 1e-12);
    }
  }
  CHECK(decomposition_residual(ns, 0.9, 3.0, 40) > 1e-3);

  const int parabolic[2][2] = {{1, 1}, {0, 1}};
  CHECK_THROWS_AS(closed_form_suspension(ToralAutomorphism::from(parabolic), 0.0, 1.0), NotHyperbolic);
}

TEST_CASE("discrete Fried identity") {
  const int trace3[2][2] = {{2, 1}, {1, 1}};
  const int trace4[2][2] = {{3, 1}, {2, 1}};
  const int trace5[2][2] = {{3, 2}, {1, 1}};
  const int trace10[2][2] = {{9, 8}, {1, 1}};
  for (const auto* a : {&trace3, &trace4, &trace5, &trace10}) {
    const auto t = ToralAutomorphism::from(*a);
    for (double theta : {pi / 2, 2 * pi / 3, pi, 0.3}) {
      CHECK(fried_residual(t, theta, 1) < 1e-10);
      CHECK(fried_residual(t, theta, -1) < 1e-10);
    }
  }
  // Anchor: |ζ(0)|^{-1} = 4/5 against τ = 4/5 (σ = +1) or 5/4 (σ = -1).
  const auto cat = ToralAutomorphism::from(kCat);
  CHECK(std::abs(analytic_torsion(mapping_torus_complex(kCat, pi), 1) - 0.8) < 1e-12);
  CHECK(std::abs(analytic_torsion(mapping_torus_complex(kCat, pi), -1) - 1.25) < 1e-12);
  CHECK_THROWS_AS(fried_residual(cat, 0.0), NotAcyclic);
  CHECK_THROWS_AS(fried_residual(cat, 2 * pi), NotAcyclic);

  // With μ < 0 the product at θ matches the torsion at θ + π instead.
  const auto neg = ToralAutomorphism::from(kNegative);
  for (double theta : {pi / 2, 2 * pi / 3, 0.3}) {
    const double inverse_zeta = 1.0 / std::abs(closed_form_suspension(neg, theta, 0.0).full);
    CHECK(std::abs(inverse_zeta - analytic_torsion(mapping_torus_complex(kNegative, theta + pi), 1)) < 1e-10);
  }
  CHECK(fried_residual(neg, 2 * pi / 3) > 1e-3);
}

TEST_CASE("zeta grid CSV") {
  const auto s = cat_spectrum();
  std::vector<ZetaRow> rows;
  rows.push_back({log_zeta_k(s, 0.0, 2.0, 0, 40), false, ""});
  ZetaEvaluation bad;
  bad.lambda = 0.5;
  bad.k = 1;
  bad.truncation = 40;
  rows.push_back({bad, true, "divergent"});
  rows.push_back({log_zeta_full(s, 0.0, 2.0, 40), false, ""});
  std::ostringstream out;
  write_zeta_csv(out, rows);
  std::istringstream in(out.str());
  std::string header, first, second, third;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  std::getline(in, third);
  CHECK(header == "re_lambda,im_lambda,k,re_log_zeta,im_log_zeta,tail_bound,J,status");
  CHECK(first.rfind("2,0,0,-0.14541345786885906,", 0) == 0);
  CHECK(second == "0.5,0,1,nan,nan,inf,40,divergent");
  CHECK(third.rfind("2,0,full,", 0) == 0);
}
