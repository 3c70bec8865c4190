#ifndef BFZETA_RUELLE_ZETA_HPP
#define BFZETA_RUELLE_ZETA_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "bfzeta/anosov_orbits.hpp"

namespace bfzeta {

constexpr int kFullZeta = -1;

/// log ζ at λ from the records with period ≤ J. Each record's iterate series is summed to roundoff;
/// tail_bound covers the missing periods (TailModel), the iterate remainders and a roundoff allowance
/// of 64 ε (1 + Σ |terms|).
struct ZetaEvaluation {
  cplx lambda = 0.0;
  int k = kFullZeta;
  cplx value = 0.0;
  int truncation = 0;
  double tail_bound = 0.0;
  double method_error = 0.0;  // Richardson estimate for the Mellin route
};

/// log ζ_k = -Σ_γ Σ_j (1/j) e^{-λ j ℓ} ρ^j tr ∧^k P^j / |det(I - P^j)|. Throws DivergentRegion.
ZetaEvaluation log_zeta_k(const OrbitSpectrum& s, double theta, cplx lambda, int k, int truncation);
/// log ζ = Σ_γ log(1 - ρ e^{-λ ℓ}).
ZetaEvaluation log_zeta_full(const OrbitSpectrum& s, double theta, cplx lambda, int truncation);
/// |(-1)^n log ζ - Σ_k (-1)^k log ζ_k| with n = 1.
double decomposition_residual(const OrbitSpectrum& s, double theta, cplx lambda, int truncation);

/// exp(1 - 1/(1 - u²)) with u = (t - center)/width, peak value 1.
struct BumpFunction {
  double center = 1.0;
  double width = 0.1;
  double operator()(double t) const;
};

/// Σ_γ Σ_j ℓ φ(jℓ) ρ^j tr ∧^k P^j / |det(I - P^j)|. Throws SupportTooWide when the support reaches t ≤ 0.
cplx flat_trace_pairing(const OrbitSpectrum& s, double theta, int k, const BumpFunction& phi);

/// F(λ, s) = Γ(s)^{-1} Σ_γ Σ_j ℓ (jℓ)^{s-1} e^{-λ j ℓ} ρ^j tr ∧^k P^j / |det(I - P^j)|, s > -1.
cplx mellin_F_orbits(const OrbitSpectrum& s, double theta, cplx lambda, int k, double sv, int truncation);
/// -∂_s F at s = 0.
ZetaEvaluation mellin_log_zeta(const OrbitSpectrum& s, double theta, cplx lambda, int k, int truncation);

/// Exact continuation for the suspension with z = e^{iθ - λ·roof}:
/// ζ_0 = 1 - z, ζ_1 = (1 - zμ)(1 - zν), ζ_2 = 1 - z det A, and ζ = (1 - εzμ)(1 - εzν) / ((1 - εz)(1 - εz det A))
/// with ε the sign of μ. For ε = +1 this is ζ^{-1} = ζ_0 ζ_1^{-1} ζ_2.
struct SuspensionZeta {
  cplx zeta0, zeta1, zeta2, full;
  cplx log0, log1, log2, log_full;  // sums of principal logs of the factors
};

SuspensionZeta closed_form_suspension(const ToralAutomorphism& t, double theta, cplx lambda);
cplx closed_form_log(const SuspensionZeta& z, int k);

/// | |ζ(0)|^{-1} τ_σ^{-σ} - 1 | with τ_σ the analytic torsion of the mapping torus. Throws NotAcyclic for θ ∈ 2πZ.
double fried_residual(const ToralAutomorphism& t, double theta, int sigma = 1);

struct ZetaRow {
  ZetaEvaluation eval;
  bool flagged = false;
  std::string note;
};

/// re_lambda,im_lambda,k,re_log_zeta,im_log_zeta,tail_bound,J[,status]
void write_zeta_csv(std::ostream& out, const std::vector<ZetaRow>& rows);

}  // namespace bfzeta

#endif  // BFZETA_RUELLE_ZETA_HPP
