#include "bfzeta/twisted_complex.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bfzeta/errors.hpp"

namespace bfzeta {

namespace {

Word reduce(const Word& w) {
  Word out;
  for (const auto& [g, e] : w) {
    if (e == 0) continue;
    if (!out.empty() && out.back().first == g) {
      out.back().second += e;
      if (out.back().second == 0) out.pop_back();
    } else {
      out.emplace_back(g, e);
    }
  }
  return out;
}

bool word_less(const Word& a, const Word& b) {
  if (a.empty() != b.empty()) return b.empty();
  return a < b;
}

Matrix block_diag(const std::vector<Matrix>& blocks) {
  Eigen::Index rows = 0, cols = 0;
  for (const auto& b : blocks) rows += b.rows(), cols += b.cols();
  Matrix out = Matrix::Zero(rows, cols);
  Eigen::Index r = 0, c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

double log_flat(const Matrix& m) { return hermitian_flat_det(m).log_value; }

}  // namespace

GroupRingElement GroupRingElement::integer(long c) { return monomial(c, {}); }

GroupRingElement GroupRingElement::monomial(long c, Word w) {
  GroupRingElement e;
  e.terms.push_back({c, std::move(w)});
  e.normalize();
  return e;
}

void GroupRingElement::normalize() {
  for (auto& t : terms) t.word = reduce(t.word);
  std::sort(terms.begin(), terms.end(),
            [](const GroupRingTerm& a, const GroupRingTerm& b) { return word_less(a.word, b.word); });
  std::vector<GroupRingTerm> merged;
  for (const auto& t : terms) {
    if (!merged.empty() && merged.back().word == t.word) {
      merged.back().coefficient += t.coefficient;
    } else {
      merged.push_back(t);
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const GroupRingTerm& t) { return t.coefficient == 0; }),
               merged.end());
  terms = std::move(merged);
}

long GroupRingElement::augmentation() const {
  long s = 0;
  for (const auto& t : terms) s += t.coefficient;
  return s;
}

GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) {
  a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
  a.normalize();
  return a;
}

GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
  GroupRingElement out;
  for (const auto& x : a.terms) {
    for (const auto& y : b.terms) {
      Word w = x.word;
      w.insert(w.end(), y.word.begin(), y.word.end());
      out.terms.push_back({x.coefficient * y.coefficient, std::move(w)});
    }
  }
  out.normalize();
  return out;
}

namespace {

class TokenParser {
 public:
  TokenParser(const std::string& s, const std::vector<std::string>& gens, int line) : s_(s), gens_(gens), line_(line) {}

  GroupRingElement element() {
    GroupRingElement out;
    if (s_.empty()) fail("empty group ring element");
    bool first = true;
    while (pos_ < s_.size()) {
      long sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      long coef = 1;
      Word w;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coef = integer();
        if (peek() == '*') {
          get();
          w = word();
        }
      } else {
        w = word();
      }
      out.terms.push_back({sign * coef, std::move(w)});
    }
    out.normalize();
    return out;
  }

  Word word() {
    Word w;
    w.push_back(factor());
    while (peek() == '*') {
      get();
      w.push_back(factor());
    }
    return w;
  }

  bool done() const { return pos_ == s_.size(); }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }

  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(line_, why + " in '" + s_ + "'");
  }

  long integer() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an integer");
    try {
      return std::stol(s_.substr(start, pos_ - start));
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }

  std::pair<int, int> factor() {
    const std::size_t start = pos_;
    if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) fail("expected a generator name");
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    const std::string name = s_.substr(start, pos_ - start);
    auto it = std::find(gens_.begin(), gens_.end(), name);
    if (it == gens_.end()) fail("unknown generator '" + name + "'");
    int exponent = 1;
    if (peek() == '^') {
      get();
      int sign = 1;
      if (peek() == '-' || peek() == '+') sign = get() == '-' ? -1 : 1;
      exponent = sign * static_cast<int>(integer());
    }
    return {static_cast<int>(it - gens_.begin()), exponent};
  }

  const std::string& s_;
  const std::vector<std::string>& gens_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupRingElement parse_group_ring(const std::string& token, const std::vector<std::string>& generators, int line) {
  return TokenParser(token, generators, line).element();
}

Word parse_word(const std::string& token, const std::vector<std::string>& generators, int line) {
  TokenParser p(token, generators, line);
  Word w = p.word();
  if (!p.done()) throw ParseError(line, "trailing characters in word '" + token + "'");
  return reduce(w);
}

std::string format_word(const Word& w, const std::vector<std::string>& generators) {
  std::string out;
  for (const auto& [g, e] : w) {
    if (!out.empty()) out += '*';
    out += generators.at(g);
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out;
}

std::string format_group_ring(const GroupRingElement& e, const std::vector<std::string>& generators) {
  if (e.terms.empty()) return "0";
  std::string out;
  for (const auto& t : e.terms) {
    long c = t.coefficient;
    if (c < 0) {
      out += '-';
      c = -c;
    } else if (!out.empty()) {
      out += '+';
    }
    if (t.word.empty()) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + '*';
      out += format_word(t.word, generators);
    }
  }
  return out;
}

const GroupRingElement& CellComplex::entry(int k, int row, int col) const {
  return boundary.at(k).at(row).at(col);
}

void CellComplex::check() const {
  const int n = top_degree();
  if (n < 0) throw ShapeMismatch("complex has no degrees");
  for (int c : cell_counts) {
    if (c < 0) throw ShapeMismatch("negative cell count");
  }
  for (int k = 1; k <= n; ++k) {
    auto it = boundary.find(k);
    const int rows = cell_counts[k - 1], cols = cell_counts[k];
    if (it == boundary.end()) {
      if (rows * cols != 0) throw ShapeMismatch("missing boundary " + std::to_string(k));
      continue;
    }
    if (static_cast<int>(it->second.size()) != rows) throw ShapeMismatch("boundary " + std::to_string(k) + " row count");
    for (const auto& row : it->second) {
      if (static_cast<int>(row.size()) != cols) throw ShapeMismatch("boundary " + std::to_string(k) + " column count");
    }
  }
  for (const auto& [k, m] : boundary) {
    if (k < 1 || k > n) throw ShapeMismatch("boundary degree " + std::to_string(k) + " out of range");
  }
  for (int k = 2; k <= n; ++k) {
    if (!boundary.count(k) || !boundary.count(k - 1)) continue;
    for (int j = 0; j < cell_counts[k - 2]; ++j) {
      for (int l = 0; l < cell_counts[k]; ++l) {
        long s = 0;
        for (int i = 0; i < cell_counts[k - 1]; ++i) s += entry(k - 1, j, i).augmentation() * entry(k, i, l).augmentation();
        if (s != 0) {
          throw NotAComplex("augmented boundary " + std::to_string(k - 1) + "∘" + std::to_string(k) + " is nonzero at (" +
                            std::to_string(j) + ", " + std::to_string(l) + ")");
        }
      }
    }
  }
}

Matrix UnitaryRep::evaluate(const Word& w, const std::vector<std::string>& generators) const {
  Matrix out = Matrix::Identity(rank, rank);
  for (const auto& [g, e] : w) {
    auto it = images.find(generators.at(g));
    if (it == images.end()) throw NotAComplex("no representation image for generator '" + generators.at(g) + "'");
    // Unitary, so the inverse is the adjoint.
    const Matrix step = e > 0 ? it->second : Matrix(it->second.adjoint());
    for (int i = 0; i < std::abs(e); ++i) out = out * step;
  }
  return out;
}

Matrix UnitaryRep::evaluate(const GroupRingElement& e, const std::vector<std::string>& generators) const {
  Matrix out = Matrix::Zero(rank, rank);
  for (const auto& t : e.terms) out += static_cast<double>(t.coefficient) * evaluate(t.word, generators);
  return out;
}

UnitaryRep character(const std::vector<std::pair<std::string, double>>& angles) {
  UnitaryRep rep;
  rep.rank = 1;
  for (const auto& [name, theta] : angles) {
    Matrix m(1, 1);
    m(0, 0) = std::polar(1.0, theta);
    rep.images[name] = m;
  }
  return rep;
}

TwistedComplex::TwistedComplex(std::vector<Matrix> differentials, std::vector<int> dims, std::vector<Matrix> grams,
                               bool dual)
    : d_(std::move(differentials)), dims_(std::move(dims)), gram_(std::move(grams)), dual_(dual) {
  const int n = top_degree();
  if (n < 0) throw ShapeMismatch("complex has no degrees");
  if (static_cast<int>(d_.size()) != n) throw ShapeMismatch("expected one differential per degree below the top");
  for (int k = 0; k < n; ++k) {
    if (d_[k].rows() != dims_[k + 1] || d_[k].cols() != dims_[k]) {
      throw ShapeMismatch("differential " + std::to_string(k) + " has the wrong shape");
    }
  }
  if (gram_.empty()) {
    for (int k = 0; k <= n; ++k) gram_.push_back(Matrix::Identity(dims_[k], dims_[k]));
  }
  if (static_cast<int>(gram_.size()) != n + 1) throw ShapeMismatch("expected one Gram matrix per degree");
  for (int k = 0; k <= n; ++k) {
    const Matrix& g = gram_[k];
    if (g.rows() != dims_[k] || g.cols() != dims_[k]) throw ShapeMismatch("Gram matrix " + std::to_string(k) + " has the wrong shape");
    if ((g - g.adjoint()).norm() > 1e-12 * std::max(1.0, g.norm())) {
      throw ShapeMismatch("Gram matrix " + std::to_string(k) + " is not Hermitian");
    }
    Eigen::LLT<Matrix> llt(0.5 * (g + g.adjoint()));
    if (llt.info() != Eigen::Success) throw ShapeMismatch("Gram matrix " + std::to_string(k) + " is not positive definite");
    chol_.push_back(llt.matrixL());
  }
  for (int k = 0; k + 1 < n; ++k) {
    const double scale = std::max(1.0, d_[k + 1].norm() * d_[k].norm());
    if ((d_[k + 1] * d_[k]).norm() > 1e-12 * scale) {
      throw NotAComplex("d_" + std::to_string(k + 1) + "∘d_" + std::to_string(k) + " is nonzero");
    }
  }
  for (int k = 0; k < n; ++k) {
    const Matrix inv_lower_adj = chol_[k].adjoint().triangularView<Eigen::Upper>().solve(Matrix::Identity(dims_[k], dims_[k]));
    d_ortho_.push_back(chol_[k + 1].adjoint() * d_[k] * inv_lower_adj);
  }
}

int TwistedComplex::dim(int k) const { return k < 0 || k > top_degree() ? 0 : dims_[k]; }

Matrix TwistedComplex::d(int k) const {
  if (k < 0 || k >= top_degree()) return Matrix::Zero(dim(k + 1), dim(k));
  return d_[k];
}

Matrix TwistedComplex::gram(int k) const {
  if (k < 0 || k > top_degree()) return Matrix(0, 0);
  return gram_[k];
}

Matrix TwistedComplex::gram_factor(int k) const {
  if (k < 0 || k > top_degree()) return Matrix(0, 0);
  return chol_[k];
}

Matrix TwistedComplex::d_adjoint(int k) const {
  if (k < 0 || k >= top_degree()) return Matrix::Zero(dim(k), dim(k + 1));
  return gram_[k].ldlt().solve(d_[k].adjoint() * gram_[k + 1]);
}

Matrix TwistedComplex::laplacian(int k) const {
  return d_adjoint(k) * d(k) + d(k - 1) * d_adjoint(k - 1);
}

Matrix TwistedComplex::d_ortho(int k) const {
  if (k < 0 || k >= top_degree()) return Matrix::Zero(dim(k + 1), dim(k));
  return d_ortho_[k];
}

TwistedComplex TwistedComplex::change_basis(const std::vector<Matrix>& w) const {
  const int n = top_degree();
  if (static_cast<int>(w.size()) != n + 1) throw ShapeMismatch("need one basis change per degree");
  std::vector<Matrix> inv;
  for (int k = 0; k <= n; ++k) {
    if (w[k].rows() != dims_[k] || w[k].cols() != dims_[k]) throw ShapeMismatch("basis change has the wrong shape");
    inv.push_back(w[k].inverse());
  }
  std::vector<Matrix> d, g;
  for (int k = 0; k < n; ++k) d.push_back(w[k + 1] * d_[k] * inv[k]);
  for (int k = 0; k <= n; ++k) {
    Matrix gk = inv[k].adjoint() * gram_[k] * inv[k];
    g.push_back(0.5 * (gk + gk.adjoint()));
  }
  return TwistedComplex(std::move(d), dims_, std::move(g), dual_);
}

TwistedComplex TwistedComplex::with_grams(std::vector<Matrix> grams) const {
  return TwistedComplex(d_, dims_, std::move(grams), dual_);
}

TwistedComplex build_twisted_complex(const CellComplex& cc, const UnitaryRep& rep) {
  cc.check();
  const int r = rep.rank;
  if (r < 1) throw ShapeMismatch("representation rank must be positive");
  for (const auto& name : cc.generators) {
    auto it = rep.images.find(name);
    if (it == rep.images.end()) throw NotAComplex("no representation image for generator '" + name + "'");
    const Matrix& u = it->second;
    if (u.rows() != r || u.cols() != r) throw ShapeMismatch("image of '" + name + "' is not " + std::to_string(r) + "x" + std::to_string(r));
    const double err = (u * u.adjoint() - Matrix::Identity(r, r)).norm();
    if (err >= 1e-12) throw NotUnitary("image of '" + name + "' deviates from unitary by " + std::to_string(err));
  }
  for (const auto& rel : cc.relators) {
    const double err = (rep.evaluate(rel, cc.generators) - Matrix::Identity(r, r)).norm();
    if (err > 1e-10) {
      throw RelatorViolation("relator " + format_word(rel, cc.generators) + " maps to a non-identity matrix (deviation " +
                             std::to_string(err) + ")");
    }
  }
  const int n = cc.top_degree();
  std::vector<int> dims;
  for (int c : cc.cell_counts) dims.push_back(c * r);
  std::vector<Matrix> d;
  for (int k = 0; k < n; ++k) {
    Matrix m = Matrix::Zero(dims[k + 1], dims[k]);
    auto it = cc.boundary.find(k + 1);
    if (it != cc.boundary.end()) {
      for (int i = 0; i < cc.cell_counts[k + 1]; ++i) {
        for (int j = 0; j < cc.cell_counts[k]; ++j) {
          // Transposed images make the cochain differential respect the order of group-ring products.
          m.block(i * r, j * r, r, r) = rep.evaluate(it->second[j][i], cc.generators).transpose();
        }
      }
    }
    d.push_back(std::move(m));
  }
  return TwistedComplex(std::move(d), std::move(dims), {}, cc.dual);
}

int numerical_rank(const Matrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double tol = 1e-9 * std::max(1.0, s.size() ? s[0] : 0.0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s[i] > tol ? 1 : 0;
  return rank;
}

std::vector<int> betti_numbers(const TwistedComplex& tc) {
  std::vector<int> b;
  for (int k = 0; k <= tc.top_degree(); ++k) {
    b.push_back(tc.dim(k) - numerical_rank(tc.d(k)) - numerical_rank(tc.d(k - 1)));
  }
  return b;
}

bool is_acyclic(const TwistedComplex& tc) {
  for (int b : betti_numbers(tc)) {
    if (b != 0) return false;
  }
  return true;
}

void require_acyclic(const TwistedComplex& tc) {
  const auto b = betti_numbers(tc);
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (b[k] != 0) throw NotAcyclic("beta_" + std::to_string(k) + " = " + std::to_string(b[k]));
  }
}

double log_det_coexact(const TwistedComplex& tc, int k) {
  const Matrix d = tc.d_ortho(k);
  return log_flat(d.adjoint() * d);
}

double log_det_exact(const TwistedComplex& tc, int k) {
  const Matrix d = tc.d_ortho(k);
  return log_flat(d * d.adjoint());
}

double log_det_laplacian(const TwistedComplex& tc, int k) {
  const Matrix up = tc.d_ortho(k);
  const Matrix down = tc.d_ortho(k - 1);
  return log_flat(up.adjoint() * up + down * down.adjoint());
}

TorsionResult analytic_torsion_report(const TwistedComplex& tc, int sigma) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
  require_acyclic(tc);
  TorsionResult out;
  out.sigma = sigma;
  double scale = 1.0;
  for (int k = 0; k <= tc.top_degree(); ++k) {
    const double term = log_det_laplacian(tc, k);
    out.log_laplacian += 0.5 * k * (k % 2 ? 1.0 : -1.0) * term;
    scale += std::abs(k * term);
  }
  for (int k = 0; k < tc.top_degree(); ++k) {
    const double term = log_det_coexact(tc, k);
    out.log_coexact += 0.5 * (k % 2 ? -1.0 : 1.0) * term;
    scale += std::abs(term);
  }
  if (std::abs(out.log_laplacian - out.log_coexact) > 1e-10 * scale) {
    throw std::logic_error("Laplacian and coexact torsion products disagree");
  }
  out.value = std::exp(sigma * out.log_coexact);
  return out;
}

double analytic_torsion(const TwistedComplex& tc, int sigma) { return analytic_torsion_report(tc, sigma).value; }

SchwarzResolution schwarz_resolution(const TwistedComplex& tc) {
  const int n = tc.top_degree();
  SchwarzResolution res;
  res.T = block_diag({tc.d_ortho(1), tc.d_ortho(n - 2)});
  for (int k = 1; 1 - k >= 0 || n - 2 - k >= 0; ++k) {
    res.Tk.push_back(block_diag({tc.d_ortho(1 - k), tc.d_ortho(n - 2 - k)}));
  }
  return res;
}

double schwarz_partition(const TwistedComplex& tc, int sigma) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
  require_acyclic(tc);
  const SchwarzResolution res = schwarz_resolution(tc);
  // Exactness of the resolution at every stage: the image of T_{k+1} is the kernel of T_k.
  std::vector<const Matrix*> chain{&res.T};
  for (const auto& m : res.Tk) chain.push_back(&m);
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const int dim = static_cast<int>(chain[k]->cols());
    if (numerical_rank(*chain[k]) + numerical_rank(*chain[k + 1]) != dim) {
      throw DegenerateResolution("resolution is not exact at stage " + std::to_string(k));
    }
  }
  if (!res.Tk.empty() && numerical_rank(res.Tk.back()) != res.Tk.back().cols()) {
    throw DegenerateResolution("last resolution operator is not injective");
  }
  double log_z = -0.25 * log_flat(res.T.adjoint() * res.T);
  for (std::size_t i = 0; i < res.Tk.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    log_z += 0.5 * (k % 2 ? 1.0 : -1.0) * log_flat(res.Tk[i] * res.Tk[i].adjoint());
  }
  return std::exp(sigma * log_z);
}

double DetRelationsReport::max_relation1() const {
  return coexact_vs_exact.empty() ? 0.0 : *std::max_element(coexact_vs_exact.begin(), coexact_vs_exact.end());
}

double DetRelationsReport::max_relation3() const {
  return laplacian_split.empty() ? 0.0 : *std::max_element(laplacian_split.begin(), laplacian_split.end());
}

double DetRelationsReport::max_relation2() const {
  if (!duality || duality->empty()) return 0.0;
  return *std::max_element(duality->begin(), duality->end());
}

DetRelationsReport det_relations_report(const TwistedComplex& tc) {
  require_acyclic(tc);
  DetRelationsReport rep;
  const int n = tc.top_degree();
  for (int k = 0; k < n; ++k) {
    const double co = log_det_coexact(tc, k);
    rep.log_det_coexact.push_back(co);
    rep.coexact_vs_exact.push_back(std::abs(co - log_det_exact(tc, k)));
  }
  for (int k = 0; k <= n; ++k) {
    const double lhs = log_det_laplacian(tc, k);
    const double rhs = (k >= 1 ? log_det_exact(tc, k - 1) : 0.0) + (k < n ? rep.log_det_coexact[k] : 0.0);
    rep.laplacian_split.push_back(std::abs(lhs - rhs));
  }
  if (tc.has_dual_pairing()) {
    std::vector<double> dual;
    for (int k = 0; k < n; ++k) dual.push_back(std::abs(rep.log_det_coexact[k] - rep.log_det_coexact[n - 1 - k]));
    rep.duality = std::move(dual);
  }
  return rep;
}

CellComplex circle_cells() {
  CellComplex cc;
  cc.cell_counts = {1, 1};
  cc.generators = {"t"};
  cc.boundary[1] = {{parse_group_ring("t-1", cc.generators)}};
  cc.dual = true;
  return cc;
}

TwistedComplex circle_complex(double theta) { return build_twisted_complex(circle_cells(), character({{"t", theta}})); }

CellComplex torus_cells() {
  CellComplex cc;
  cc.cell_counts = {1, 2, 1};
  cc.generators = {"a", "b"};
  cc.relators = {parse_word("a*b*a^-1*b^-1", cc.generators)};
  auto p = [&](const char* s) { return parse_group_ring(s, cc.generators); };
  cc.boundary[1] = {{p("a-1"), p("b-1")}};
  cc.boundary[2] = {{p("1-b")}, {p("a-1")}};
  cc.dual = true;
  return cc;
}

TwistedComplex torus_complex(double alpha, double beta) {
  return build_twisted_complex(torus_cells(), character({{"a", alpha}, {"b", beta}}));
}

CellComplex mapping_torus_cells(const int A[2][2]) {
  const long det = static_cast<long>(A[0][0]) * A[1][1] - static_cast<long>(A[0][1]) * A[1][0];
  const long tr = static_cast<long>(A[0][0]) + A[1][1];
  if (std::abs(det) != 1) throw NotHyperbolic("|det A| must be 1, got " + std::to_string(det));
  if (std::abs(tr) <= 2) throw NotHyperbolic("|tr A| must exceed 2, got " + std::to_string(tr));
  CellComplex cc;
  cc.cell_counts = {1, 3, 3, 1};
  cc.generators = {"t"};
  const Word t{{0, 1}};
  const GroupRingElement zero;
  // 1-cells: suspension edge, a, b. 2-cells: fibre torus F, then the swept edges G_a, G_b.
  cc.boundary[1] = {{parse_group_ring("t-1", cc.generators), zero, zero}};
  std::vector<std::vector<GroupRingElement>> b2(3, std::vector<GroupRingElement>(3));
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 2; ++x) {
      b2[1 + y][1 + x] = GroupRingElement::monomial(A[y][x], t) + GroupRingElement::integer(x == y ? -1 : 0);
    }
  }
  cc.boundary[2] = b2;
  cc.boundary[3] = {{GroupRingElement::monomial(det, t) + GroupRingElement::integer(-1)}, {zero}, {zero}};
  cc.dual = det == 1;
  return cc;
}

TwistedComplex mapping_torus_complex(const int A[2][2], double theta) {
  return build_twisted_complex(mapping_torus_cells(A), character({{"t", theta}}));
}

}  // namespace bfzeta
