#ifndef BFZETA_BV_GAUGE_HPP
#define BFZETA_BV_GAUGE_HPP

#include <functional>
#include <optional>
#include <vector>

#include "bfzeta/graded_linalg.hpp"
#include "bfzeta/random_complexes.hpp"
#include "bfzeta/twisted_complex.hpp"

namespace bfzeta {

// All maps below act in the orthonormal coordinates of the base complex (TwistedComplex::d_ortho).

/// Orthonormal basis of the column space.
Matrix range_basis(const Matrix& m);
/// Orthonormal basis of the null space.
Matrix kernel_basis(const Matrix& m);
/// Orthonormal basis of {b : b^T v = 0 for every column v}, the annihilator under the bilinear pairing.
Matrix annihilator(const Matrix& v);

/// A_k ∈ C^k sits in ghost degree 1 - k; its partner B_k ∈ (C^k)^* sits in ghost degree k - 2.
/// Ω pairs them as Σ_k b_k^T a_k and the action is S = Σ_k b_{k+1}^T d_k a_k.
struct BFFieldSpace {
  TwistedComplex base;
  GradedVectorSpace A_fields;
  GradedVectorSpace B_fields;

  int top_degree() const { return base.top_degree(); }
  int dim(int k) const { return base.dim(k); }
  cplx pairing(const std::vector<Vector>& a, const std::vector<Vector>& b) const;
  cplx action(const std::vector<Vector>& a, const std::vector<Vector>& b) const;
};

BFFieldSpace build_bf_fields(const TwistedComplex& tc);

/// ι_k : C^k → C^{k-1} and a_k : C^{k-1} → C^k for k = 0..N (entries at k = 0 have a zero-size side).
struct Contraction {
  std::vector<Matrix> iota;
  std::vector<Matrix> a;

  /// a defaults to the pseudo-inverse of ι, which satisfies ι a = id on im ι = ker ι.
  static Contraction from_iota(std::vector<Matrix> iota);
  /// ι'_k = U_{k-1} ι_k U_k^{-1}, a'_k = U_k a_k U_{k-1}^{-1}.
  Contraction conjugated(const std::vector<Matrix>& u) const;

  double square_residual() const;     // max ‖ι_{k-1} ι_k‖
  double inverse_residual() const;    // max ‖(ι_k a_k - 1) on ker ι_{k-1}‖
  double isometry_residual() const;   // max ‖ι ι^* ι - ι‖ + ‖a - ι^*‖
  bool is_normalized(double tol = 1e-10) const { return isometry_residual() < tol; }
};

/// Polar part of d^*, i.e. the partial isometry with the kernel and image of d^*.
Contraction hodge_contraction(const TwistedComplex& tc);

/// Random partial isometry ι with ker ι_k a random subspace of dimension rank d_k.
Contraction random_normalized_contraction(Rng& rng, const TwistedComplex& tc);
/// Random anti-Hermitian matrices, one per degree, with entries of size about `scale`.
std::vector<Matrix> random_antihermitian(Rng& rng, const TwistedComplex& tc, double scale = 1.0);

enum class GaugeKind { Metric, Contraction, Custom };

/// Split Lagrangian L = L_A ⊕ L_B with complement C = C_A ⊕ C_B, all as orthonormal bases per degree.
struct GaugeSubspace {
  GaugeKind kind = GaugeKind::Custom;
  std::vector<Matrix> LA, LB, CA, CB;
  std::vector<Matrix> constraint;  // d^* (metric) or ι (contraction), C^k → C^{k-1}
  std::optional<Contraction> contraction;
};

GaugeSubspace metric_gauge(const BFFieldSpace& fs);
/// Throws DegenerateContraction when ι fails ι² = 0, exactness, the inverse property, or L is singular on ker ι.
GaugeSubspace contraction_gauge(const BFFieldSpace& fs, const Contraction& c);
/// L_A = L_B = ker ι with complement im a in both parts. Not Lagrangian.
GaugeSubspace skewed_subspace(const BFFieldSpace& fs, const Contraction& c);

struct LagrangianCheck {
  bool lagrangian = false;
  double isotropy = 0.0;             // max |Ω| on L
  double complement_isotropy = 0.0;  // max |Ω| on C
  double cross_min_singular = 0.0;   // smallest singular value of the L × C pairing
};

LagrangianCheck is_lagrangian(const BFFieldSpace& fs, const GaugeSubspace& gs, double tol = 1e-10);

struct PartitionResult {
  double value = 0.0;                 // reported |Z|^σ
  double log_modulus = 0.0;           // log |Z| before σ
  double phase = 0.0;
  double log_jacobian = 0.0;
  double orthonormal_log_modulus = 0.0;  // Π |det(L_B^{k+1})^T d_k (L_A^k)|^{(-1)^k}
};

/// Metric gauge: restricted action d^*d on coexact parameters divided by the Jacobian det(d^*d)^{1/2}.
/// Contraction gauge: |sdet(L|_{ker ι})| with L = ι d + d ι and Jacobian 1.
PartitionResult partition_function(const BFFieldSpace& fs, const GaugeSubspace& gs, int sigma = 1);

struct ScanRow {
  double t = 0.0;
  double value = 0.0;
  double phase = 0.0;
  double isotropy = 0.0;
  double cross_min_singular = 0.0;
};

struct ScanReport {
  std::vector<ScanRow> rows;
  double max_deviation = 0.0;  // max |Z(t)/Z(0) - 1|
};

/// Samples t_i = i/(samples-1) on [0,1]. Throws DegenerateContraction carrying the first failing sample and t.
ScanReport homotopy_scan(const BFFieldSpace& fs, const std::function<Contraction(double)>& family, int samples,
                         int sigma = 1);

/// t ↦ U(t) c U(t)^{-1} with U_k(t) = exp(t X_k) and X_k anti-Hermitian.
std::function<Contraction(double)> unitary_family(const Contraction& c, const std::vector<Matrix>& generators);

}  // namespace bfzeta

#endif  // BFZETA_BV_GAUGE_HPP
