#include "bfzeta/graded_linalg.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "bfzeta/errors.hpp"

namespace bfzeta {

namespace {

int mod2(int k) { return ((k % 2) + 2) % 2; }

struct GaussLegendre {
  static constexpr int kOrder = 16;
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};

  GaussLegendre() {
    // Newton iteration on P_n from the Chebyshev initial guess.
    for (int i = 0; i < kOrder; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int n = 2; n <= kOrder; ++n) {
          double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
          p0 = p1;
          p1 = p2;
        }
        dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussLegendre& gauss_legendre() {
  static const GaussLegendre rule;
  return rule;
}

// Quadrature nodes on (0,1]: geometrically graded panels toward 0, each subdivided `refine` times.
struct Mesh {
  std::vector<double> x;
  std::vector<double> w;
};

Mesh graded_mesh(int refine) {
  std::vector<double> breaks{0.0};
  for (int p = 16; p >= 1; --p) breaks.push_back(std::ldexp(1.0, -p));
  breaks.push_back(1.0);
  const auto& gl = gauss_legendre();
  Mesh mesh;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double a0 = breaks[b];
    const double width = (breaks[b + 1] - a0) / refine;
    for (int r = 0; r < refine; ++r) {
      const double lo = a0 + r * width;
      for (int i = 0; i < GaussLegendre::kOrder; ++i) {
        mesh.x.push_back(lo + 0.5 * width * (gl.nodes[i] + 1.0));
        mesh.w.push_back(0.5 * width * gl.weights[i]);
      }
    }
  }
  return mesh;
}

struct Spectrum {
  Eigen::VectorXcd eigenvalues;
  int kernel_dim = 0;
};

Spectrum shifted_spectrum(const Matrix& matrix, cplx lambda) {
  if (matrix.rows() != matrix.cols()) throw ShapeMismatch("flat determinant needs a square matrix");
  Spectrum spec;
  if (matrix.rows() == 0) return spec;
  Matrix shifted = matrix + lambda * Matrix::Identity(matrix.rows(), matrix.cols());
  Eigen::ComplexEigenSolver<Matrix> solver(shifted, false);
  spec.eigenvalues = solver.eigenvalues();
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    if (std::abs(spec.eigenvalues[i]) < kKernelTolerance) ++spec.kernel_dim;
  }
  return spec;
}

void require_mellin_convergence(const Spectrum& spec) {
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    const cplx mu = spec.eigenvalues[i];
    if (std::abs(mu) >= kKernelTolerance && mu.real() <= 0.0) {
      std::ostringstream os;
      os.precision(17);
      os << "eigenvalue " << mu.real() << (mu.imag() < 0 ? "" : "+") << mu.imag()
         << "i of (A+lambda) has non-positive real part";
      throw MellinDivergence(os.str());
    }
  }
}

// Heat-trace samples of tr e^{-t(A+λ)} - tr Π_λ reused across every s.
class HeatTrace {
 public:
  HeatTrace(const Matrix& matrix, cplx lambda, int kernel_dim, int refine)
      : shifted_(matrix + lambda * Matrix::Identity(matrix.rows(), matrix.cols())),
        kernel_dim_(kernel_dim),
        mesh_(graded_mesh(refine)) {
    nonkernel_ = static_cast<double>(matrix.rows() - kernel_dim);
    near_.resize(mesh_.x.size());
    far_.resize(mesh_.x.size());
    for (std::size_t i = 0; i < mesh_.x.size(); ++i) {
      const double u = mesh_.x[i];
      near_[i] = trace_at(u * u);
      far_[i] = trace_at(1.0 / u);
    }
  }

  // Analytic in s for s > -1: the t^{-1} pole at small t is removed by subtracting h(0).
  cplx F(double s) const {
    cplx near_part = 0.0, far_part = 0.0;
    for (std::size_t i = 0; i < mesh_.x.size(); ++i) {
      const double u = mesh_.x[i];
      // t = u^2 on [0,1]
      near_part += mesh_.w[i] * 2.0 * std::pow(u, 2.0 * s - 1.0) * (near_[i] - nonkernel_);
      // t = 1/u on [1,∞)
      far_part += mesh_.w[i] * std::pow(u, -s - 1.0) * far_[i];
    }
    const double inv_gamma = 1.0 / std::tgamma(s);
    const double inv_gamma_shift = 1.0 / std::tgamma(s + 1.0);
    return inv_gamma * (near_part + far_part) + nonkernel_ * inv_gamma_shift;
  }

 private:
  cplx trace_at(double t) const {
    if (shifted_.rows() == 0) return 0.0;
    Matrix e = (-t * shifted_).exp();
    return e.trace() - static_cast<double>(kernel_dim_);
  }

  Matrix shifted_;
  int kernel_dim_;
  Mesh mesh_;
  double nonkernel_ = 0.0;
  std::vector<cplx> near_;
  std::vector<cplx> far_;
};

}  // namespace

int GradedVectorSpace::dim(int degree) const {
  auto it = dims.find(degree);
  return it == dims.end() ? 0 : it->second;
}

int GradedVectorSpace::total_dim() const {
  int total = 0;
  for (const auto& [k, d] : dims) total += d;
  return total;
}

int GradedVectorSpace::parity(int degree) const { return mod2(degree + shift); }

GradedVectorSpace GradedVectorSpace::shifted(int by) const {
  GradedVectorSpace out = *this;
  out.shift += by;
  return out;
}

GradedOperator GradedOperator::diagonal(std::map<int, Matrix> blocks, int shift) {
  GradedOperator op;
  for (const auto& [k, m] : blocks) {
    if (m.rows() != m.cols()) {
      throw ShapeMismatch("block " + std::to_string(k) + " is " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + ", expected square");
    }
    op.source.dims[k] = static_cast<int>(m.cols());
  }
  op.source.shift = shift;
  op.target = op.source;
  op.blocks = std::move(blocks);
  return op;
}

void GradedOperator::validate() const {
  for (const auto& [k, m] : blocks) {
    if (m.cols() != source.dim(k) || m.rows() != target.dim(k + degree_shift)) {
      throw ShapeMismatch("block " + std::to_string(k) + " has shape " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()) + " but spaces require " +
                          std::to_string(target.dim(k + degree_shift)) + "x" + std::to_string(source.dim(k)));
    }
  }
}

GradedOperator GradedOperator::shifted(int by) const {
  GradedOperator out = *this;
  out.source = source.shifted(by);
  out.target = target.shifted(by);
  return out;
}

GradedOperator compose(const GradedOperator& lhs, const GradedOperator& rhs) {
  lhs.validate();
  rhs.validate();
  if (!(rhs.target == lhs.source)) throw ShapeMismatch("composition of graded operators with mismatched spaces");
  GradedOperator out;
  out.source = rhs.source;
  out.target = lhs.target;
  out.degree_shift = lhs.degree_shift + rhs.degree_shift;
  for (const auto& [k, dim] : rhs.source.dims) {
    const int mid = k + rhs.degree_shift;
    const int rows = lhs.target.dim(mid + lhs.degree_shift);
    Matrix right = rhs.blocks.count(k) ? rhs.blocks.at(k) : Matrix::Zero(lhs.source.dim(mid), dim);
    Matrix left = lhs.blocks.count(mid) ? lhs.blocks.at(mid) : Matrix::Zero(rows, lhs.source.dim(mid));
    out.blocks[k] = left * right;
  }
  return out;
}

LogSdet log_sdet(const GradedOperator& op) {
  op.validate();
  if (op.degree_shift != 0) throw ShapeMismatch("superdeterminant needs a degree-preserving operator");
  LogSdet out;
  for (const auto& [k, dim] : op.source.dims) {
    if (op.target.dim(k) != dim) throw ShapeMismatch("block " + std::to_string(k) + " is not square");
    if (dim == 0) continue;
    auto it = op.blocks.find(k);
    if (it == op.blocks.end()) throw SingularBlock("block " + std::to_string(k) + " is missing (zero)");
    const cplx det = Eigen::PartialPivLU<Matrix>(it->second).determinant();
    const double scale = it->second.cwiseAbs().maxCoeff();
    if (std::abs(det) <= 1e-14 * std::pow(std::max(scale, 1e-300), dim)) {
      throw SingularBlock("det(block " + std::to_string(k) + ") = 0");
    }
    const double sign = op.source.parity(k) == 0 ? 1.0 : -1.0;
    out.log_modulus += sign * std::log(std::abs(det));
    out.phase += sign * std::arg(det);
  }
  out.phase = std::remainder(out.phase, 2.0 * std::numbers::pi);
  return out;
}

cplx sdet(const GradedOperator& op) {
  const LogSdet l = log_sdet(op);
  return std::polar(std::exp(l.log_modulus), l.phase);
}

Derivative richardson_derivative_at_zero(const std::function<cplx(double)>& f, double h) {
  const cplx coarse = (f(h) - f(-h)) / (2.0 * h);
  const cplx fine = (f(0.5 * h) - f(-0.5 * h)) / h;
  const cplx extrapolated = (4.0 * fine - coarse) / 3.0;
  return {extrapolated, std::abs(extrapolated - fine)};
}

cplx mellin_F(const Matrix& matrix, cplx lambda, double s) {
  if (!(s > -1.0)) throw QuadratureFailure("Mellin representation requires s > -1");
  const Spectrum spec = shifted_spectrum(matrix, lambda);
  require_mellin_convergence(spec);
  const HeatTrace coarse(matrix, lambda, spec.kernel_dim, 1);
  const HeatTrace fine(matrix, lambda, spec.kernel_dim, 2);
  const cplx a = coarse.F(s), b = fine.F(s);
  const double residual = std::abs(a - b);
  if (residual > 1e-8 * std::max(1.0, std::abs(b))) {
    std::ostringstream os;
    os.precision(3);
    os << "mesh refinement changed F by " << residual;
    throw QuadratureFailure(os.str());
  }
  return b;
}

FlatDetResult flat_det(const Matrix& matrix, cplx lambda, FlatDetMode mode) {
  const Spectrum spec = shifted_spectrum(matrix, lambda);
  FlatDetResult out;
  out.kernel_dim = spec.kernel_dim;

  double log_mod = 0.0, phase = 0.0;
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
    const cplx mu = spec.eigenvalues[i];
    if (std::abs(mu) < kKernelTolerance) continue;
    log_mod += std::log(std::abs(mu));
    phase += std::arg(mu);
  }

  if (mode == FlatDetMode::Mellin) {
    require_mellin_convergence(spec);
    const HeatTrace coarse(matrix, lambda, spec.kernel_dim, 1);
    const HeatTrace fine(matrix, lambda, spec.kernel_dim, 2);
    const Derivative d_fine = richardson_derivative_at_zero([&](double s) { return fine.F(s); });
    const Derivative d_coarse = richardson_derivative_at_zero([&](double s) { return coarse.F(s); });
    const cplx log_det = -d_fine.value;
    const double log_err = d_fine.error_estimate + std::abs(d_fine.value - d_coarse.value);
    log_mod = log_det.real();
    phase = log_det.imag();
    out.quadrature_error_estimate = std::exp(log_mod) * std::expm1(log_err);
  }

  out.log_modulus = log_mod;
  out.phase = std::remainder(phase, 2.0 * std::numbers::pi);
  out.value = std::polar(std::exp(log_mod), out.phase);
  return out;
}

HermitianFlatDet hermitian_flat_det(const Matrix& matrix) {
  if (matrix.rows() != matrix.cols()) throw ShapeMismatch("flat determinant needs a square matrix");
  HermitianFlatDet out;
  if (matrix.rows() == 0) return out;
  const Matrix sym = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double mu = solver.eigenvalues()[i];
    if (std::abs(mu) < kKernelTolerance) {
      ++out.kernel_dim;
    } else {
      out.log_value += std::log(mu);
    }
  }
  return out;
}

}  // namespace bfzeta
