#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"

#include "bfzeta/anosov_orbits.hpp"
#include "bfzeta/errors.hpp"

using namespace bfzeta;

namespace {

const int kCat[2][2] = {{2, 1}, {1, 1}};
const int kNegative[2][2] = {{-2, 1}, {1, -1}};
const int kFlip[2][2] = {{3, 1}, {1, 0}};

using i64 = long long;

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i64 ceil_div(i64 a, i64 b) { return -floor_div(-a, b); }

// Integers n with lo ≤ a n + c ≤ hi, as [first, last]; empty when first > last.
std::pair<i64, i64> solve_range(i64 a, i64 c, i64 lo, i64 hi) {
  constexpr i64 big = std::numeric_limits<i64>::max() / 4;
  if (a == 0) return (lo <= c && c <= hi) ? std::pair{-big, big} : std::pair{i64{1}, i64{0}};
  if (a > 0) return {ceil_div(lo - c, a), floor_div(hi - c, a)};
  return {ceil_div(hi - c, a), floor_div(lo - c, a)};
}

// Fixed points of A^j on the torus: lattice points n with (A^j - I)^{-1} n ∈ [0,1)², counted row by row.
i64 lattice_fixed_points(const int a[2][2], int j) {
  i64 p[2][2] = {{1, 0}, {0, 1}};
  for (int step = 0; step < j; ++step) {
    i64 q[2][2];
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) q[r][c] = p[r][0] * a[0][c] + p[r][1] * a[1][c];
    }
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) p[r][c] = q[r][c];
    }
  }
  const i64 m00 = p[0][0] - 1, m01 = p[0][1], m10 = p[1][0], m11 = p[1][1] - 1;
  const i64 det = m00 * m11 - m01 * m10;
  REQUIRE(det != 0);
  const i64 adj[2][2] = {{m11, -m01}, {-m10, m00}};
  // 0 ≤ adj·n / det < 1, i.e. an integer interval for adj·n.
  const i64 lo = det > 0 ? 0 : det + 1, hi = det > 0 ? det - 1 : 0;
  const i64 ys[4] = {0, m10, m11, m10 + m11};
  const i64 y_min = *std::min_element(ys, ys + 4), y_max = *std::max_element(ys, ys + 4);
  i64 count = 0;
  for (i64 y = y_min; y <= y_max; ++y) {
    auto r0 = solve_range(adj[0][0], adj[0][1] * y, lo, hi);
    auto r1 = solve_range(adj[1][0], adj[1][1] * y, lo, hi);
    const i64 first = std::max(r0.first, r1.first), last = std::min(r0.second, r1.second);
    if (last >= first) count += last - first + 1;
  }
  return count;
}

}  // namespace

TEST_CASE("toral automorphisms") {
  const auto cat = ToralAutomorphism::from(kCat);
  CHECK(cat.trace() == 3);
  CHECK(cat.det() == 1);
  CHECK(std::abs(cat.mu() - (3.0 + std::sqrt(5.0)) / 2.0) < 1e-15);
  CHECK(std::abs(cat.mu() * cat.nu() - 1.0) < 1e-15);
  const auto neg = ToralAutomorphism::from(kNegative);
  CHECK(neg.mu() < -1.0);
  CHECK(std::abs(neg.mu() * neg.nu() - 1.0) < 1e-15);
  const auto flip = ToralAutomorphism::from(kFlip);
  CHECK(std::abs(flip.mu() * flip.nu() + 1.0) < 1e-15);

  const int parabolic[2][2] = {{1, 1}, {0, 1}};
  const int singular[2][2] = {{2, 0}, {0, 1}};
  CHECK_THROWS_AS(ToralAutomorphism::from(parabolic), NotHyperbolic);
  CHECK_THROWS_AS(ToralAutomorphism::from(singular), NotHyperbolic);
  CHECK_THROWS_AS(ToralAutomorphism::from(kCat, -1.0), NotHyperbolic);
}

TEST_CASE("Lefschetz counts against the lattice oracle") {
  const auto cat = ToralAutomorphism::from(kCat);
  CHECK(count_fixed_points(cat, 1) == 1);
  CHECK(count_fixed_points(cat, 2) == 5);
  CHECK(count_fixed_points(cat, 3) == 16);
  for (const auto* a : {&kCat, &kNegative, &kFlip}) {
    const auto t = ToralAutomorphism::from(*a);
    for (int j = 1; j <= 12; ++j) CHECK(count_fixed_points(t, j) == lattice_fixed_points(*a, j));
  }
  CHECK_THROWS_AS(count_fixed_points(cat, 0), ShapeMismatch);
}

TEST_CASE("wide integer counts agree with eigenvalue arithmetic") {
  for (const auto* a : {&kCat, &kNegative, &kFlip}) {
    const auto t = ToralAutomorphism::from(*a);
    for (int j = 1; j <= 64; ++j) {
      const double exact = count_fixed_points(t, j).convert_to<double>();
      const double spectral = std::abs(poincare_data(t, j, 0).det_i_minus_p);
      CHECK(std::abs(spectral - exact) <= 1e-9 * exact);
      CHECK(trace_power(t, j).convert_to<double>() == doctest::Approx(poincare_data(t, j, 1).trace).epsilon(1e-12));
    }
  }
  // 64th power of the cat map exceeds 64-bit range.
  CHECK(count_fixed_points(ToralAutomorphism::from(kCat), 64) > BigInt(std::numeric_limits<std::uint64_t>::max()));
}

TEST_CASE("primitive orbits by Möbius inversion") {
  const auto cat = ToralAutomorphism::from(kCat);
  const auto n = primitive_counts(cat, 40);
  CHECK(n[1] == 1);
  CHECK(n[2] == 2);
  CHECK(n[3] == 5);
  for (const auto* a : {&kCat, &kNegative, &kFlip}) {
    const auto t = ToralAutomorphism::from(*a);
    const auto counts = primitive_counts(t, 40);
    for (int j = 1; j <= 40; ++j) {
      BigInt sum = 0;
      for (int d = 1; d <= j; ++d) {
        if (j % d == 0) sum += d * counts[d];
      }
      CHECK(sum == count_fixed_points(t, j));
    }
  }

  const auto s = enumerate_primitive_orbits(ToralAutomorphism::from(kCat, 0.5), 12);
  REQUIRE(s.records.size() == 12);
  REQUIRE(s.tail.has_value());
  CHECK(s.tail->complete_through == 12);
  for (int j = 1; j <= 12; ++j) {
    const auto& r = s.records[j - 1];
    CHECK(r.period == j);
    CHECK(r.winding == j);
    CHECK(r.length == 0.5 * j);
    CHECK(r.count == n[j]);
    CHECK(std::abs(r.eig1 * r.eig2 - 1.0) < 1e-12);
  }
}

TEST_CASE("Poincaré data") {
  const auto cat = ToralAutomorphism::from(kCat);
  CHECK(poincare_data(cat, 1, 0).trace == doctest::Approx(1.0));
  CHECK(poincare_data(cat, 1, 1).trace == doctest::Approx(3.0));
  CHECK(poincare_data(cat, 1, 2).trace == doctest::Approx(1.0));
  CHECK(poincare_data(cat, 1, 0).det_i_minus_p == doctest::Approx(-1.0));
  CHECK(poincare_data(cat, 2, 1).trace == doctest::Approx(7.0));
  for (int j = 1; j <= 12; ++j) {
    for (int k = 0; k <= 2; ++k) CHECK(poincare_data(cat, j, k).identity_residual < 1e-12);
    CHECK(std::abs(poincare_data(cat, j, 0).trace - 1.0) < 1e-12);
    CHECK(std::abs(poincare_data(cat, j, 2).trace - 1.0) < 1e-9);
  }
  // Orientation-reversing unstable direction: det(I - P) > 0 for odd periods.
  const auto neg = ToralAutomorphism::from(kNegative);
  CHECK(poincare_data(neg, 1, 0).det_i_minus_p > 0.0);
  CHECK(poincare_data(neg, 1, 0).identity_residual > 1.0);
  CHECK(poincare_data(neg, 2, 0).identity_residual < 1e-12);
  CHECK_THROWS_AS(poincare_data(cat, 1, 3), ShapeMismatch);
}

TEST_CASE("orbit spectrum files") {
  std::istringstream three(
      "# three geodesics\n"
      "1.5 1 1 0 4 0.25 1\n"
      "2.0 1 0 1 -3 -0.3333333333333333 2   # twisted\n"
      "\n"
      "0.75 1 -1 0 2 0.5 1\n");
  const auto s = read_orbit_spectrum(three);
  REQUIRE(s.records.size() == 3);
  CHECK_FALSE(s.tail.has_value());
  CHECK(s.records[0].length == 0.75);
  CHECK(s.records[2].count == 2);
  CHECK(s.records[2].holonomy == cplx(0.0, 1.0));

  std::istringstream dup("1 1 1 0 2 0.5 1\n1 1 1 0 2 0.5 1\n");
  const auto merged = read_orbit_spectrum(dup);
  REQUIRE(merged.records.size() == 1);
  CHECK(merged.records[0].count == 2);

  auto field_of = [](const std::string& text) -> std::string {
    std::istringstream in(text);
    try {
      read_orbit_spectrum(in);
    } catch (const ValidationError& e) {
      return e.field() + "@" + std::to_string(e.line());
    }
    return "";
  };
  CHECK(field_of("# ok\n-1 1 1 0 2 0.5 1\n") == "length@2");
  CHECK(field_of("1 2 1 0 2 0.5 1\n") == "primitive_flag@1");
  CHECK(field_of("1 1 2 0 2 0.5 1\n") == "holonomy@1");
  CHECK(field_of("1 1 1 0 1 1 1\n") == "eig@1");
  CHECK(field_of("1 1 1 0 2 0.7 1\n") == "eig@1");
  CHECK(field_of("1 1 1 0 2 0.5 0\n") == "count@1");

  std::istringstream short_line("1 1 1 0 2 0.5\n");
  try {
    read_orbit_spectrum(short_line);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
  std::istringstream bad_number("1 1 1 0 2 half 1\n");
  CHECK_THROWS_AS(read_orbit_spectrum(bad_number), ParseError);
  CHECK_THROWS_AS(load_orbit_spectrum("/nonexistent/orbits.txt"), ParseError);
}

TEST_CASE("orbit spectrum round trip") {
  const auto s = enumerate_primitive_orbits(ToralAutomorphism::from(kCat), 10);
  std::ostringstream out;
  write_orbit_spectrum(out, s, 2.0);
  std::istringstream in(out.str());
  const auto back = read_orbit_spectrum(in);
  REQUIRE(back.records.size() == s.records.size());
  for (std::size_t i = 0; i < s.records.size(); ++i) {
    CHECK(back.records[i].length == s.records[i].length);
    CHECK(back.records[i].eig1 == s.records[i].eig1);
    CHECK(back.records[i].eig2 == s.records[i].eig2);
    CHECK(back.records[i].count == s.records[i].count);
    CHECK(std::abs(back.records[i].twist(0.0) - s.records[i].twist(2.0)) < 1e-15);
  }
  std::ostringstream again;
  write_orbit_spectrum(again, back);
  CHECK(again.str() == out.str());
}
