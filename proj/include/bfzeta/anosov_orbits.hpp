#ifndef BFZETA_ANOSOV_ORBITS_HPP
#define BFZETA_ANOSOV_ORBITS_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bfzeta/graded_linalg.hpp"

namespace bfzeta {

using BigInt = boost::multiprecision::cpp_int;

/// Hyperbolic element of GL(2, Z) suspended with a constant roof.
struct ToralAutomorphism {
  std::array<std::array<long, 2>, 2> a{};
  double roof = 1.0;

  /// Throws NotHyperbolic unless |det| = 1 and |tr| > 2.
  static ToralAutomorphism from(const int m[2][2], double roof = 1.0);
  long trace() const { return a[0][0] + a[1][1]; }
  long det() const { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
  /// Eigenvalue of modulus > 1 (negative when tr < 0).
  double mu() const;
  /// The other eigenvalue, det / mu.
  double nu() const;
};

/// |det(A^j - I)|, exact.
BigInt count_fixed_points(const ToralAutomorphism& t, int j);
/// tr A^j, exact.
BigInt trace_power(const ToralAutomorphism& t, int j);
/// N(1..J) by Möbius inversion of j N(j) sums.
std::vector<BigInt> primitive_counts(const ToralAutomorphism& t, int j_max);

/// One line of an orbit spectrum: `count` primitive orbits sharing length, holonomy and Poincaré eigenvalues.
/// The twist at angle θ is holonomy · e^{iθ·winding}.
struct OrbitRecord {
  int period = 0;  // primitive period of the suspended map, 0 when unknown
  double length = 0.0;
  bool primitive = true;
  cplx holonomy = 1.0;
  int winding = 0;
  double eig1 = 0.0;
  double eig2 = 0.0;
  BigInt count = 1;

  cplx twist(double theta) const;
};

/// Σ_{m>J} C r^m |e^{-λ roof}|^m / m bounds everything missing from a spectrum complete through period J.
struct TailModel {
  double roof = 1.0;
  int complete_through = 0;
  std::array<double, 3> growth{};    // r for k = 0, 1, 2
  std::array<double, 3> constant{};  // C for k = 0, 1, 2
  double full_growth = 0.0;
  double full_constant = 0.0;
};

struct OrbitSpectrum {
  std::vector<OrbitRecord> records;
  std::optional<TailModel> tail;
};

OrbitSpectrum enumerate_primitive_orbits(const ToralAutomorphism& t, int j_max);

struct PoincareData {
  double trace = 0.0;              // tr ∧^k P^j
  double det_i_minus_p = 0.0;      // det(I - P^j)
  double identity_residual = 0.0;  // |Σ_k (-1)^k tr ∧^k P^j + |det(I - P^j)|| / max(1, |det(I - P^j)|)
};

/// Eigenvalue arithmetic in extended precision. Throws ShapeMismatch unless 0 ≤ k ≤ 2.
PoincareData poincare_data(const ToralAutomorphism& t, int j, int k);
PoincareData poincare_data(double eig1, double eig2, int j, int k);

/// `length primitive_flag holonomy_re holonomy_im eig1 eig2 count` per line, `#` comments.
/// Identical records merge by adding counts.
OrbitSpectrum read_orbit_spectrum(std::istream& in);
OrbitSpectrum load_orbit_spectrum(const std::string& path);
/// Holonomies are written with the twist at θ folded in; order is by length, then lexicographic.
void write_orbit_spectrum(std::ostream& out, const OrbitSpectrum& s, double theta = 0.0);

}  // namespace bfzeta

#endif  // BFZETA_ANOSOV_ORBITS_HPP
