#ifndef BFZETA_TWISTED_COMPLEX_HPP
#define BFZETA_TWISTED_COMPLEX_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bfzeta/graded_linalg.hpp"

namespace bfzeta {

/// A word in the generators: (generator index, exponent) pairs, freely reduced.
using Word = std::vector<std::pair<int, int>>;

struct GroupRingTerm {
  long coefficient = 0;
  Word word;
  friend bool operator==(const GroupRingTerm&, const GroupRingTerm&) = default;
};

/// Finite Z-linear combination of words. Kept normalized: like terms merged, zeros dropped, sorted by word.
struct GroupRingElement {
  std::vector<GroupRingTerm> terms;

  static GroupRingElement integer(long c);
  static GroupRingElement monomial(long c, Word w);
  void normalize();
  long augmentation() const;
  bool is_zero() const { return terms.empty(); }

  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;
};

GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b);
GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b);

/// Parses tokens such as "t-1", "1-b", "a*t^-1-1", "2*a*b-3". Unknown generator names throw ParseError.
GroupRingElement parse_group_ring(const std::string& token, const std::vector<std::string>& generators, int line = 0);
std::string format_group_ring(const GroupRingElement& e, const std::vector<std::string>& generators);
Word parse_word(const std::string& token, const std::vector<std::string>& generators, int line = 0);
std::string format_word(const Word& w, const std::vector<std::string>& generators);

/// boundary[k] (k = 1..N) has cell_counts[k-1] rows and cell_counts[k] columns;
/// entry (j, i) is the coefficient of (k-1)-cell j in the boundary of k-cell i.
struct CellComplex {
  std::vector<int> cell_counts;
  std::vector<std::string> generators;
  std::vector<Word> relators;
  std::map<int, std::vector<std::vector<GroupRingElement>>> boundary;
  bool dual = false;

  int top_degree() const { return static_cast<int>(cell_counts.size()) - 1; }
  const GroupRingElement& entry(int k, int row, int col) const;

  /// Shape checks and the augmented integer test ∂∘∂ = 0. Throws ShapeMismatch or NotAComplex.
  void check() const;
};

struct UnitaryRep {
  int rank = 1;
  std::map<std::string, Matrix> images;

  Matrix evaluate(const Word& w, const std::vector<std::string>& generators) const;
  Matrix evaluate(const GroupRingElement& e, const std::vector<std::string>& generators) const;
};

/// Rank one representation sending every named generator to e^{iθ}.
UnitaryRep character(const std::vector<std::pair<std::string, double>>& angles);

/// Cochain complex C^0 → ... → C^N. d[k] maps C^k to C^{k+1}; gram[k] is the inner product on C^k.
class TwistedComplex {
 public:
  TwistedComplex(std::vector<Matrix> differentials, std::vector<int> dims, std::vector<Matrix> grams = {},
                 bool dual = false);

  int top_degree() const { return static_cast<int>(dims_.size()) - 1; }
  int dim(int k) const;
  bool has_dual_pairing() const { return dual_; }

  /// Zero-size matrices outside 0 ≤ k < N.
  Matrix d(int k) const;
  Matrix d_adjoint(int k) const;
  Matrix gram(int k) const;
  Matrix laplacian(int k) const;

  /// d_k in orthonormal coordinates (Cholesky factor of each Gram matrix), so its adjoint is the conjugate transpose.
  Matrix d_ortho(int k) const;
  /// Lower Cholesky factor L_k with gram(k) = L_k L_k^*.
  Matrix gram_factor(int k) const;

  /// Applies an invertible change of basis W_k on each C^k. The Gram matrices transform so that inner products are preserved.
  TwistedComplex change_basis(const std::vector<Matrix>& w) const;
  /// Same differentials with new Gram matrices.
  TwistedComplex with_grams(std::vector<Matrix> grams) const;

 private:
  std::vector<Matrix> d_;
  std::vector<int> dims_;
  std::vector<Matrix> gram_;
  std::vector<Matrix> chol_;
  std::vector<Matrix> d_ortho_;
  bool dual_;
};

TwistedComplex build_twisted_complex(const CellComplex& cc, const UnitaryRep& rep);

int numerical_rank(const Matrix& m);
std::vector<int> betti_numbers(const TwistedComplex& tc);
bool is_acyclic(const TwistedComplex& tc);
/// Throws NotAcyclic naming the first nonzero Betti number.
void require_acyclic(const TwistedComplex& tc);

/// log det^♭(d_k^* d_k), the building block of every torsion formula.
double log_det_coexact(const TwistedComplex& tc, int k);
double log_det_exact(const TwistedComplex& tc, int k);
double log_det_laplacian(const TwistedComplex& tc, int k);

struct TorsionResult {
  double value = 0.0;
  double log_laplacian = 0.0;
  double log_coexact = 0.0;
  int sigma = 1;
};

/// σ = +1: Π det^♭(Δ_k)^{(k/2)(-1)^{k+1}}. σ = -1: its reciprocal.
/// Both the Laplacian product and the coexact product are evaluated; they must agree within 1e-10.
TorsionResult analytic_torsion_report(const TwistedComplex& tc, int sigma = 1);
double analytic_torsion(const TwistedComplex& tc, int sigma = 1);

struct SchwarzResolution {
  Matrix T;
  std::vector<Matrix> Tk;  // Tk[0] is T_1
};

/// T acts on C^1 ⊕ C^{N-2}; T_1 = diag(d_0, d_{N-3}), T_2 = diag(0, d_{N-4}), T_k = d_{N-k-2} for k ≥ 3.
SchwarzResolution schwarz_resolution(const TwistedComplex& tc);
/// det^♭(T^*T)^{-1/4} Π_k det^♭(T_k T_k^*)^{(-1)^{k+1}/2}, reported with the same σ as analytic_torsion.
double schwarz_partition(const TwistedComplex& tc, int sigma = 1);

struct DetRelationsReport {
  std::vector<double> coexact_vs_exact;  // relation (1), per k
  std::vector<double> laplacian_split;   // relation (3), per k
  std::optional<std::vector<double>> duality;  // relation (2), only with a dual pairing
  std::vector<double> log_det_coexact;

  double max_relation1() const;
  double max_relation3() const;
  double max_relation2() const;
};

/// Residuals are absolute differences of log determinants, i.e. relative errors of the determinants.
DetRelationsReport det_relations_report(const TwistedComplex& tc);

/// 1,3,3,1-cell mapping torus of A on T², twisted by e^{iθ} along the suspension direction.
CellComplex mapping_torus_cells(const int A[2][2]);
TwistedComplex mapping_torus_complex(const int A[2][2], double theta);
CellComplex circle_cells();
TwistedComplex circle_complex(double theta);
CellComplex torus_cells();
TwistedComplex torus_complex(double alpha, double beta);

/// Text format. See README for the layout. write_complex is canonical: read(write(x)) writes back identically.
struct ComplexFile {
  CellComplex cells;
  UnitaryRep rep;
  std::map<int, Matrix> grams;
};

ComplexFile read_complex(std::istream& in);
ComplexFile read_complex_file(const std::string& path);
void write_complex(std::ostream& out, const ComplexFile& file);
TwistedComplex build_from_file(const ComplexFile& file);

}  // namespace bfzeta

#endif  // BFZETA_TWISTED_COMPLEX_HPP
