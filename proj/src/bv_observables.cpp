#include "bfzeta/bv_observables.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "bfzeta/errors.hpp"

namespace bfzeta {

namespace {

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

int popcount(std::uint64_t v) { return std::popcount(v); }

// Sign of reordering ξ_S ξ_T into increasing order.
int merge_sign(std::uint64_t s, std::uint64_t t) {
  int swaps = 0;
  for (int j = 0; j < 64 && t >> j; ++j) {
    if (t & bit(j)) swaps += popcount(s >> (j + 1));
  }
  return swaps % 2 ? -1 : 1;
}

Matrix real_basis_if_real(const Matrix& v) {
  if (v.cols() == 0) return v;
  const Matrix proj = v * v.adjoint();
  if (proj.imag().cwiseAbs().maxCoeff() > 1e-12) return v;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(proj.real(), Eigen::ComputeFullU);
  return svd.matrixU().leftCols(v.cols()).cast<cplx>();
}

cplx pfaffian(const Matrix& a, std::uint64_t rows, std::map<std::uint64_t, cplx>& cache) {
  if (rows == 0) return 1.0;
  if (popcount(rows) % 2) return 0.0;
  if (auto it = cache.find(rows); it != cache.end()) return it->second;
  const int first = std::countr_zero(rows);
  const std::uint64_t rest = rows & ~bit(first);
  cplx sum = 0.0;
  int sign = 1;
  for (int j = first + 1; j < 64 && rest >> j; ++j) {
    if (!(rest & bit(j))) continue;
    if (a(first, j) != 0.0) sum += static_cast<double>(sign) * a(first, j) * pfaffian(a, rest & ~bit(j), cache);
    sign = -sign;
  }
  cache[rows] = sum;
  return sum;
}

cplx wick(const Matrix& cov, std::vector<int>& idx, std::size_t from) {
  const std::size_t n = idx.size() - from;
  if (n == 0) return 1.0;
  if (n % 2) return 0.0;
  cplx sum = 0.0;
  const int head = idx[from];
  for (std::size_t j = from + 1; j < idx.size(); ++j) {
    const cplx c = cov(head, idx[j]);
    if (c == 0.0) continue;
    std::swap(idx[from + 1], idx[j]);
    sum += c * wick(cov, idx, from + 2);
    std::swap(idx[from + 1], idx[j]);
  }
  return sum;
}

}  // namespace

int Monomial::degree() const {
  int d = popcount(odd);
  for (int e : even) d += e;
  return d;
}

int Monomial::parity() const { return popcount(odd) % 2; }

bool Monomial::operator<(const Monomial& o) const {
  if (even != o.even) return even < o.even;
  return odd < o.odd;
}

PolyObservable::PolyObservable(int n_even, int n_odd, int max_degree)
    : n_even_(n_even), n_odd_(n_odd), max_degree_(max_degree) {
  if (n_even < 0 || n_odd < 0 || n_odd > 64) throw ShapeMismatch("variable counts must lie in [0, 64]");
}

PolyObservable PolyObservable::constant(int n_even, int n_odd, cplx c, int max_degree) {
  PolyObservable p(n_even, n_odd, max_degree);
  p.add_term(Monomial{std::vector<int>(n_even, 0), 0}, c);
  return p;
}

PolyObservable PolyObservable::even_variable(int n_even, int n_odd, int i, int max_degree) {
  PolyObservable p(n_even, n_odd, max_degree);
  Monomial m{std::vector<int>(n_even, 0), 0};
  m.even.at(i) = 1;
  p.add_term(m, 1.0);
  return p;
}

PolyObservable PolyObservable::odd_variable(int n_even, int n_odd, int i, int max_degree) {
  if (i < 0 || i >= n_odd) throw ShapeMismatch("odd variable index out of range");
  PolyObservable p(n_even, n_odd, max_degree);
  p.add_term(Monomial{std::vector<int>(n_even, 0), bit(i)}, 1.0);
  return p;
}

void PolyObservable::add_term(const Monomial& m, cplx c) {
  if (static_cast<int>(m.even.size()) != n_even_ || (n_odd_ < 64 && (m.odd >> n_odd_))) {
    throw ShapeMismatch("monomial does not live in this variable space");
  }
  if (c == 0.0) return;
  if (m.degree() > max_degree_) {
    throw DegreeOverflow("degree " + std::to_string(m.degree()) + " exceeds the cap " + std::to_string(max_degree_));
  }
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double PolyObservable::max_abs_coefficient() const {
  double r = 0.0;
  for (const auto& [m, c] : terms_) r = std::max(r, std::abs(c));
  return r;
}

std::optional<int> PolyObservable::parity() const {
  if (terms_.empty()) return 0;
  const int p = terms_.begin()->first.parity();
  for (const auto& [m, c] : terms_) {
    if (m.parity() != p) return std::nullopt;
  }
  return p;
}

int PolyObservable::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

PolyObservable PolyObservable::with_max_degree(int d) const {
  PolyObservable p(n_even_, n_odd_, d);
  for (const auto& [m, c] : terms_) p.add_term(m, c);
  return p;
}

void PolyObservable::require_same_space(const PolyObservable& o) const {
  if (n_even_ != o.n_even_ || n_odd_ != o.n_odd_) throw ShapeMismatch("observables on different variable spaces");
}

PolyObservable PolyObservable::operator+(const PolyObservable& o) const {
  require_same_space(o);
  PolyObservable r(n_even_, n_odd_, std::max(max_degree_, o.max_degree_));
  for (const auto& [m, c] : terms_) r.add_term(m, c);
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

PolyObservable PolyObservable::operator-(const PolyObservable& o) const { return *this + o * cplx(-1.0); }

PolyObservable PolyObservable::operator*(cplx s) const {
  PolyObservable r(n_even_, n_odd_, max_degree_);
  for (const auto& [m, c] : terms_) r.add_term(m, c * s);
  return r;
}

PolyObservable PolyObservable::operator*(const PolyObservable& o) const {
  require_same_space(o);
  PolyObservable r(n_even_, n_odd_, std::max(max_degree_, o.max_degree_));
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      if (m1.odd & m2.odd) continue;
      Monomial m{m1.even, m1.odd | m2.odd};
      for (int i = 0; i < n_even_; ++i) m.even[i] += m2.even[i];
      r.add_term(m, static_cast<double>(merge_sign(m1.odd, m2.odd)) * c1 * c2);
    }
  }
  return r;
}

PolyObservable PolyObservable::d_even(int i) const {
  PolyObservable r(n_even_, n_odd_, max_degree_);
  for (const auto& [m, c] : terms_) {
    const int e = m.even.at(i);
    if (e == 0) continue;
    Monomial d = m;
    --d.even[i];
    r.add_term(d, c * static_cast<double>(e));
  }
  return r;
}

PolyObservable PolyObservable::d_odd_left(int i) const {
  PolyObservable r(n_even_, n_odd_, max_degree_);
  for (const auto& [m, c] : terms_) {
    if (!(m.odd & bit(i))) continue;
    const int sign = popcount(m.odd & (bit(i) - 1)) % 2 ? -1 : 1;
    r.add_term(Monomial{m.even, m.odd & ~bit(i)}, c * static_cast<double>(sign));
  }
  return r;
}

PolyObservable PolyObservable::d_odd_right(int i) const {
  PolyObservable r(n_even_, n_odd_, max_degree_);
  for (const auto& [m, c] : terms_) {
    if (!(m.odd & bit(i))) continue;
    const int sign = popcount(m.odd >> (i + 1)) % 2 ? -1 : 1;
    r.add_term(Monomial{m.even, m.odd & ~bit(i)}, c * static_cast<double>(sign));
  }
  return r;
}

PolyObservable bv_laplacian(const PolyObservable& p) {
  if (p.n_even() != p.n_odd()) throw ShapeMismatch("the BV Laplacian needs Darboux pairs");
  PolyObservable r(p.n_even(), p.n_odd(), p.max_degree());
  for (int i = 0; i < p.n_even(); ++i) r = r + p.d_odd_left(i).d_even(i);
  return r;
}

PolyObservable bv_bracket(const PolyObservable& f, const PolyObservable& g) {
  if (f.n_even() != f.n_odd()) throw ShapeMismatch("the BV bracket needs Darboux pairs");
  PolyObservable r(f.n_even(), f.n_odd(), std::max(f.max_degree(), g.max_degree()));
  for (int i = 0; i < f.n_even(); ++i) {
    r = r + f.d_even(i) * g.d_odd_left(i) - f.d_odd_right(i) * g.d_even(i);
  }
  return r;
}

PolyObservable weight_observable(const GaussianWeight& w, int max_degree) {
  const int ne = static_cast<int>(w.even.rows());
  const int no = static_cast<int>(w.odd.rows());
  PolyObservable p(ne, no, max_degree);
  for (int i = 0; i < ne; ++i) {
    for (int j = 0; j < ne; ++j) {
      Monomial m{std::vector<int>(ne, 0), 0};
      ++m.even[i];
      ++m.even[j];
      p.add_term(m, 0.5 * w.even(i, j));
    }
  }
  for (int i = 0; i < no; ++i) {
    for (int j = i + 1; j < no; ++j) p.add_term(Monomial{std::vector<int>(ne, 0), bit(i) | bit(j)}, w.odd(i, j));
  }
  return p;
}

PolyObservable damped_laplacian(const PolyObservable& h, const GaussianWeight& w) {
  if (h.n_even() != h.n_odd()) throw ShapeMismatch("the BV Laplacian needs Darboux pairs");
  if (w.even.rows() != h.n_even() || (w.odd.size() && w.odd.rows() != h.n_odd())) {
    throw ShapeMismatch("weight does not match the observable");
  }
  const int cap = h.max_degree() + 2;
  const PolyObservable hh = h.with_max_degree(cap);
  GaussianWeight full = w;
  if (full.odd.size() == 0) full.odd = Matrix::Zero(h.n_odd(), h.n_odd());
  const PolyObservable weight = weight_observable(full, cap);

  PolyObservable parts[2] = {PolyObservable(h.n_even(), h.n_odd(), cap), PolyObservable(h.n_even(), h.n_odd(), cap)};
  for (const auto& [m, c] : hh.terms()) parts[m.parity()].add_term(m, c);

  PolyObservable r(h.n_even(), h.n_odd(), cap);
  for (int parity = 0; parity < 2; ++parity) {
    const PolyObservable& part = parts[parity];
    if (part.is_zero()) continue;
    for (int i = 0; i < h.n_even(); ++i) {
      const PolyObservable g = part.d_odd_left(i) - part * weight.d_odd_left(i) * cplx(parity ? -1.0 : 1.0);
      r = r + g.d_even(i) - g * weight.d_even(i);
    }
  }
  return r;
}

DarbouxChart bf_darboux_chart(const BFFieldSpace& fs) {
  DarbouxChart chart;
  for (int k = 0; k <= fs.top_degree(); ++k) {
    chart.offset.push_back(chart.pairs);
    chart.dims.push_back(fs.dim(k));
    chart.pairs += fs.dim(k);
  }
  return chart;
}

LagrangianChart lagrangian_chart(const DarbouxChart& chart, const GaugeSubspace& gs) {
  std::vector<Matrix> xs, xis;
  int m = 0, r = 0;
  for (std::size_t k = 0; k < chart.dims.size(); ++k) {
    const bool odd = k % 2;
    xs.push_back(real_basis_if_real(odd ? gs.LA.at(k) : gs.LB.at(k)));
    xis.push_back(real_basis_if_real(odd ? gs.LB.at(k) : gs.LA.at(k)));
    m += static_cast<int>(xs.back().cols());
    r += static_cast<int>(xis.back().cols());
  }
  LagrangianChart l{Matrix::Zero(chart.pairs, m), Matrix::Zero(chart.pairs, r)};
  int cm = 0, cr = 0;
  for (std::size_t k = 0; k < chart.dims.size(); ++k) {
    l.P.block(chart.offset[k], cm, chart.dims[k], xs[k].cols()) = xs[k];
    l.R.block(chart.offset[k], cr, chart.dims[k], xis[k].cols()) = xis[k];
    cm += static_cast<int>(xs[k].cols());
    cr += static_cast<int>(xis[k].cols());
  }
  return l;
}

Expectation gaussian_expectation_report(const PolyObservable& p, const LagrangianChart& l, const GaussianWeight& w) {
  if (l.P.rows() != p.n_even() || l.R.rows() != p.n_odd() || w.even.rows() != p.n_even() ||
      (w.odd.size() && w.odd.rows() != p.n_odd())) {
    throw ShapeMismatch("observable, Lagrangian chart and weight disagree on the variable counts");
  }
  const int m = static_cast<int>(l.P.cols());
  const int r = static_cast<int>(l.R.cols());
  if (r > 64) throw ShapeMismatch("too many odd directions");

  Matrix cov;
  if (m > 0) {
    const Matrix q = l.P.transpose() * w.even * l.P;
    const Matrix herm = 0.5 * (q + q.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    const double scale = std::max(1.0, herm.norm());
    if (es.eigenvalues().minCoeff() <= 1e-12 * scale) throw IndefiniteWeight("even weight is not positive on L");
    cov = q.inverse();
  }
  Matrix odd_form = Matrix::Zero(r, r);
  if (w.odd.size() && r > 0) odd_form = -(l.R.transpose() * w.odd * l.R);
  std::map<std::uint64_t, cplx> pf_cache;
  const std::uint64_t all = r == 64 ? ~std::uint64_t{0} : bit(r) - 1;
  const cplx odd_norm = pfaffian(odd_form, all, pf_cache);
  const bool normalize_odd = r > 0 && std::abs(odd_norm) > 1e-12 * std::pow(std::max(1.0, odd_form.norm()), r / 2.0);

  // Substitute x = P u, ξ = R η.
  std::vector<PolyObservable> xu, xi_eta;
  for (int i = 0; i < p.n_even(); ++i) {
    PolyObservable lin(m, r, p.max_degree());
    for (int a = 0; a < m; ++a) lin = lin + PolyObservable::even_variable(m, r, a, p.max_degree()) * l.P(i, a);
    xu.push_back(lin);
  }
  for (int i = 0; i < p.n_odd(); ++i) {
    PolyObservable lin(m, r, p.max_degree());
    for (int b = 0; b < r; ++b) lin = lin + PolyObservable::odd_variable(m, r, b, p.max_degree()) * l.R(i, b);
    xi_eta.push_back(lin);
  }
  PolyObservable q(m, r, p.max_degree());
  for (const auto& [mono, c] : p.terms()) {
    PolyObservable t = PolyObservable::constant(m, r, c, p.max_degree());
    for (int i = 0; i < p.n_even(); ++i) {
      for (int e = 0; e < mono.even[i]; ++e) t = t * xu[i];
    }
    for (int i = 0; i < p.n_odd(); ++i) {
      if (mono.odd & bit(i)) t = t * xi_eta[i];
    }
    q = q + t;
  }

  Expectation out;
  for (const auto& [mono, c] : q.terms()) {
    const std::uint64_t rest = all & ~mono.odd;
    const cplx berezin = static_cast<double>(merge_sign(mono.odd, rest)) * pfaffian(odd_form, rest, pf_cache);
    if (berezin == 0.0) continue;
    std::vector<int> idx;
    for (int a = 0; a < m; ++a) idx.insert(idx.end(), mono.even[a], a);
    const cplx moment = wick(cov, idx, 0);
    const cplx term = c * moment * berezin / (normalize_odd ? odd_norm : cplx(1.0));
    out.value += term;
    out.magnitude += std::abs(term);
  }
  return out;
}

cplx gaussian_expectation(const PolyObservable& p, const LagrangianChart& l, const GaussianWeight& w) {
  return gaussian_expectation_report(p, l, w).value;
}

cplx gaussian_expectation(const PolyObservable& p, const BFFieldSpace& fs, const GaugeSubspace& gs,
                          const GaussianWeight& w) {
  return gaussian_expectation(p, lagrangian_chart(bf_darboux_chart(fs), gs), w);
}

PolyObservable random_observable(Rng& rng, int n_even, int n_odd, int degree, int terms, std::optional<int> parity,
                                 int max_degree) {
  PolyObservable p(n_even, n_odd, max_degree);
  std::uniform_int_distribution<int> deg_dist(0, degree);
  std::normal_distribution<double> normal;
  int added = 0;
  for (int attempt = 0; added < terms && attempt < 100 * terms + 100; ++attempt) {
    const int d = deg_dist(rng);
    const int odd_max = std::min(d, n_odd);
    const int k = std::uniform_int_distribution<int>(0, odd_max)(rng);
    if (parity && k % 2 != *parity) continue;
    if (d - k > 0 && n_even == 0) continue;
    Monomial mono{std::vector<int>(n_even, 0), 0};
    std::vector<int> order(n_odd);
    for (int i = 0; i < n_odd; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 0; i < k; ++i) mono.odd |= bit(order[i]);
    for (int e = 0; e < d - k; ++e) ++mono.even[std::uniform_int_distribution<int>(0, n_even - 1)(rng)];
    p.add_term(mono, cplx(normal(rng), normal(rng)));
    ++added;
  }
  return p;
}

}  // namespace bfzeta
