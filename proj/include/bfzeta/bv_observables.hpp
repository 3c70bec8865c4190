#ifndef BFZETA_BV_OBSERVABLES_HPP
#define BFZETA_BV_OBSERVABLES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "bfzeta/bv_gauge.hpp"

namespace bfzeta {

constexpr int kDefaultMaxDegree = 4;

/// x^e ξ_S with the odd factors in increasing index order.
struct Monomial {
  std::vector<int> even;
  std::uint64_t odd = 0;

  int degree() const;
  int parity() const;
  bool operator<(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return even == o.even && odd == o.odd; }
};

/// Polynomial in even x_0..x_{m-1} and odd ξ_0..ξ_{r-1}, total degree capped at max_degree.
class PolyObservable {
 public:
  PolyObservable(int n_even, int n_odd, int max_degree = kDefaultMaxDegree);

  static PolyObservable constant(int n_even, int n_odd, cplx c, int max_degree = kDefaultMaxDegree);
  static PolyObservable even_variable(int n_even, int n_odd, int i, int max_degree = kDefaultMaxDegree);
  static PolyObservable odd_variable(int n_even, int n_odd, int i, int max_degree = kDefaultMaxDegree);

  int n_even() const { return n_even_; }
  int n_odd() const { return n_odd_; }
  int max_degree() const { return max_degree_; }
  const std::map<Monomial, cplx>& terms() const { return terms_; }

  /// Throws DegreeOverflow past max_degree. Exact zeros are dropped.
  void add_term(const Monomial& m, cplx c);
  bool is_zero() const { return terms_.empty(); }
  double max_abs_coefficient() const;
  /// nullopt for mixed parity; 0 for the zero polynomial.
  std::optional<int> parity() const;
  int degree() const;
  PolyObservable with_max_degree(int d) const;

  PolyObservable operator+(const PolyObservable& o) const;
  PolyObservable operator-(const PolyObservable& o) const;
  PolyObservable operator*(const PolyObservable& o) const;
  PolyObservable operator*(cplx c) const;
  bool operator==(const PolyObservable& o) const {
    return n_even_ == o.n_even_ && n_odd_ == o.n_odd_ && terms_ == o.terms_;
  }

  PolyObservable d_even(int i) const;
  PolyObservable d_odd_left(int i) const;
  PolyObservable d_odd_right(int i) const;

 private:
  void require_same_space(const PolyObservable& o) const;

  int n_even_, n_odd_, max_degree_;
  std::map<Monomial, cplx> terms_;
};

/// Δ = Σ_i ∂/∂x_i ∂/∂ξ_i (left odd derivative), so Δ(x_i ξ_i) = +1. Needs n_even == n_odd.
PolyObservable bv_laplacian(const PolyObservable& p);
/// {f,g} = Σ_i (f ∂⃖x_i)(∂⃗ξ_i g) - (f ∂⃖ξ_i)(∂⃗x_i g), so Δ(fg) = Δf g + (-1)^|f| f Δg + (-1)^|f| {f,g}.
PolyObservable bv_bracket(const PolyObservable& f, const PolyObservable& g);

/// W = ½ x^T Q x + ½ ξ^T B ξ with Q symmetric and B antisymmetric (B may be empty).
struct GaussianWeight {
  Matrix even;
  Matrix odd;
};

PolyObservable weight_observable(const GaussianWeight& w, int max_degree);
/// e^{W} Δ(h e^{-W}) for h of definite parity.
PolyObservable damped_laplacian(const PolyObservable& h, const GaussianWeight& w);

/// Darboux coordinates on the BF space: pair block k holds (x, ξ) = (a_k, b_k) for k odd and (b_k, a_k) for k even.
struct DarbouxChart {
  std::vector<int> offset;
  std::vector<int> dims;
  int pairs = 0;
};

DarbouxChart bf_darboux_chart(const BFFieldSpace& fs);

/// Linear Lagrangian written as x = P u, ξ = R η.
struct LagrangianChart {
  Matrix P;
  Matrix R;
};

/// Real subspaces get real bases.
LagrangianChart lagrangian_chart(const DarbouxChart& chart, const GaugeSubspace& gs);

struct Expectation {
  cplx value = 0.0;
  double magnitude = 0.0;  // Σ |coefficient × moment| over the terms
};

/// ∫_L p e^{-W} normalized by ∫_L e^{-W} (the odd factor only when it is nonzero).
/// Berezin convention ∫ dη ξ_0 ξ_1 ... ξ_{r-1} = 1. Throws IndefiniteWeight.
Expectation gaussian_expectation_report(const PolyObservable& p, const LagrangianChart& l, const GaussianWeight& w);
cplx gaussian_expectation(const PolyObservable& p, const LagrangianChart& l, const GaussianWeight& w);
cplx gaussian_expectation(const PolyObservable& p, const BFFieldSpace& fs, const GaugeSubspace& gs,
                          const GaussianWeight& w);

PolyObservable random_observable(Rng& rng, int n_even, int n_odd, int degree, int terms, std::optional<int> parity,
                                 int max_degree = kDefaultMaxDegree);

}  // namespace bfzeta

#endif  // BFZETA_BV_OBSERVABLES_HPP
