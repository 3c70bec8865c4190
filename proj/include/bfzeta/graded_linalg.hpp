#ifndef BFZETA_GRADED_LINALG_HPP
#define BFZETA_GRADED_LINALG_HPP

#include <complex>
#include <functional>
#include <map>

#include <Eigen/Dense>

namespace bfzeta {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Eigenvalues with modulus below this are treated as kernel (the spectral projector Π_λ).
inline constexpr double kKernelTolerance = 1e-10;

/// A Z-graded vector space. The parity of a degree-k element is (k + shift) mod 2,
/// so shifting by one flips every parity.
struct GradedVectorSpace {
  std::map<int, int> dims;
  int shift = 0;

  int dim(int degree) const;
  int total_dim() const;
  int parity(int degree) const;
  GradedVectorSpace shifted(int by) const;

  friend bool operator==(const GradedVectorSpace&, const GradedVectorSpace&) = default;
};

/// Degree-indexed family of blocks; block k maps source degree k to target degree k + degree_shift.
struct GradedOperator {
  std::map<int, Matrix> blocks;
  GradedVectorSpace source;
  GradedVectorSpace target;
  int degree_shift = 0;

  /// Degree-preserving operator on the space spanned by the blocks (each block square).
  static GradedOperator diagonal(std::map<int, Matrix> blocks, int shift = 0);

  /// Throws ShapeMismatch if some block disagrees with the declared dimensions.
  void validate() const;

  GradedOperator shifted(int by) const;
};

/// this ∘ rhs; requires rhs.target == lhs.source.
GradedOperator compose(const GradedOperator& lhs, const GradedOperator& rhs);

/// Superdeterminant Π_k det(block_k)^{(-1)^{parity(k)}} with parities taken mod 2.
cplx sdet(const GradedOperator& op);

/// log|sdet| and arg(sdet), accumulated per block so large products do not overflow.
struct LogSdet {
  double log_modulus = 0.0;
  double phase = 0.0;
};
LogSdet log_sdet(const GradedOperator& op);

enum class FlatDetMode { Spectral, Mellin };

struct FlatDetResult {
  cplx value;
  int kernel_dim = 0;
  double quadrature_error_estimate = 0.0;
  double log_modulus = 0.0;
  double phase = 0.0;
};

/// Product of the nonzero eigenvalues of (matrix + λ). In Mellin mode the value is
/// obtained from -∂_s F(λ, s) at s = 0 using the heat trace of the matrix exponential.
FlatDetResult flat_det(const Matrix& matrix, cplx lambda = 0.0, FlatDetMode mode = FlatDetMode::Spectral);

/// F(λ, s) = Γ(s)^{-1} ∫_0^∞ t^{s-1} (tr e^{-t(A+λ)} - tr Π_λ) dt, for real s > -1.
cplx mellin_F(const Matrix& matrix, cplx lambda, double s);

struct Derivative {
  cplx value;
  double error_estimate = 0.0;
};

/// Central difference at 0 with step h, one Richardson extrapolation against h/2.
Derivative richardson_derivative_at_zero(const std::function<cplx(double)>& f, double h = 1e-4);

/// Nonzero eigenvalue product of a Hermitian positive semidefinite matrix, in log form.
/// Used by the torsion code, where every operator is self-adjoint.
struct HermitianFlatDet {
  double log_value = 0.0;
  int kernel_dim = 0;
};
HermitianFlatDet hermitian_flat_det(const Matrix& matrix);

}  // namespace bfzeta

#endif  // BFZETA_GRADED_LINALG_HPP
