#include "bfzeta/bv_gauge.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "bfzeta/errors.hpp"

namespace bfzeta {

namespace {

double min_singular(const Matrix& m) {
  if (m.rows() != m.cols()) return 0.0;
  if (m.size() == 0) return std::numeric_limits<double>::infinity();
  return Eigen::JacobiSVD<Matrix>(m).singularValues().minCoeff();
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Matrix pseudo_inverse(const Matrix& m) {
  if (m.size() == 0) return Matrix::Zero(m.cols(), m.rows());
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(m);
  cod.setThreshold(1e-12);
  return cod.pseudoInverse();
}

// Projector onto ker m, written as a matrix on the source space.
Matrix kernel_projector(const Matrix& m) {
  const Matrix k = kernel_basis(m);
  return k * k.adjoint();
}

}  // namespace

Matrix range_basis(const Matrix& m) {
  if (m.size() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
  const int r = numerical_rank(m);
  return svd.matrixU().leftCols(r);
}

Matrix kernel_basis(const Matrix& m) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const int r = numerical_rank(m);
  return svd.matrixV().rightCols(m.cols() - r);
}

Matrix annihilator(const Matrix& v) {
  if (v.cols() == 0) return Matrix::Identity(v.rows(), v.rows());
  return kernel_basis(v.transpose());
}

cplx BFFieldSpace::pairing(const std::vector<Vector>& a, const std::vector<Vector>& b) const {
  cplx s = 0.0;
  for (int k = 0; k <= top_degree(); ++k) s += (b.at(k).transpose() * a.at(k))(0, 0);
  return s;
}

cplx BFFieldSpace::action(const std::vector<Vector>& a, const std::vector<Vector>& b) const {
  cplx s = 0.0;
  for (int k = 0; k < top_degree(); ++k) s += (b.at(k + 1).transpose() * (base.d_ortho(k) * a.at(k)))(0, 0);
  return s;
}

BFFieldSpace build_bf_fields(const TwistedComplex& tc) {
  require_acyclic(tc);
  BFFieldSpace fs{tc, {}, {}};
  for (int k = 0; k <= tc.top_degree(); ++k) {
    fs.A_fields.dims[1 - k] = tc.dim(k);
    fs.B_fields.dims[k - 2] = tc.dim(k);
  }
  return fs;
}

Contraction Contraction::from_iota(std::vector<Matrix> iota) {
  Contraction c;
  for (const auto& m : iota) c.a.push_back(pseudo_inverse(m));
  c.iota = std::move(iota);
  return c;
}

Contraction Contraction::conjugated(const std::vector<Matrix>& u) const {
  Contraction c;
  std::vector<Matrix> inv;
  for (const auto& m : u) inv.push_back(m.inverse());
  for (std::size_t k = 0; k < iota.size(); ++k) {
    const Matrix& left = k ? u[k - 1] : Matrix(0, 0);
    const Matrix& left_inv = k ? inv[k - 1] : Matrix(0, 0);
    c.iota.push_back(k ? Matrix(left * iota[k] * inv[k]) : iota[k]);
    c.a.push_back(k ? Matrix(u[k] * a[k] * left_inv) : a[k]);
  }
  return c;
}

double Contraction::square_residual() const {
  double r = 0.0;
  for (std::size_t k = 2; k < iota.size(); ++k) r = std::max(r, max_abs(iota[k - 1] * iota[k]));
  return r;
}

double Contraction::inverse_residual() const {
  double r = 0.0;
  for (std::size_t k = 1; k < iota.size(); ++k) {
    const Matrix p = kernel_projector(iota[k - 1]);
    r = std::max(r, max_abs((iota[k] * a[k] - Matrix::Identity(p.rows(), p.cols())) * p));
  }
  return r;
}

double Contraction::isometry_residual() const {
  double r = 0.0;
  for (std::size_t k = 0; k < iota.size(); ++k) {
    r = std::max(r, max_abs(iota[k] * iota[k].adjoint() * iota[k] - iota[k]) + max_abs(a[k] - iota[k].adjoint()));
  }
  return r;
}

Contraction hodge_contraction(const TwistedComplex& tc) {
  std::vector<Matrix> iota;
  iota.push_back(Matrix::Zero(0, tc.dim(0)));
  for (int k = 1; k <= tc.top_degree(); ++k) {
    const Matrix d = tc.d_ortho(k - 1);
    const Matrix left = range_basis(d.adjoint());  // coexact part of C^{k-1}
    const Matrix right = range_basis(d);           // exact part of C^k
    if (left.cols() == 0) {
      iota.push_back(Matrix::Zero(tc.dim(k - 1), tc.dim(k)));
      continue;
    }
    // Polar decomposition of d^* restricted to the exact part: d^* = ι |d^*|.
    Eigen::JacobiSVD<Matrix> svd(left.adjoint() * d.adjoint() * right, Eigen::ComputeFullU | Eigen::ComputeFullV);
    iota.push_back(left * svd.matrixU() * svd.matrixV().adjoint() * right.adjoint());
  }
  Contraction c;
  c.iota = iota;
  for (const auto& m : iota) c.a.push_back(m.adjoint());
  return c;
}

Contraction random_normalized_contraction(Rng& rng, const TwistedComplex& tc) {
  const int n = tc.top_degree();
  std::vector<int> s(n + 1, 0);
  for (int k = 0; k < n; ++k) s[k] = numerical_rank(tc.d_ortho(k));
  std::vector<Matrix> q;
  for (int k = 0; k <= n; ++k) q.push_back(random_unitary(rng, tc.dim(k)));
  std::vector<Matrix> iota{Matrix::Zero(0, tc.dim(0))};
  for (int k = 1; k <= n; ++k) {
    // ι_k maps the last s_{k-1} columns of Q_k isometrically onto the first s_{k-1} columns of Q_{k-1}.
    const int m = s[k - 1];
    const Matrix target = q[k - 1].leftCols(m);
    const Matrix source = q[k].rightCols(m);
    iota.push_back(target * random_unitary(rng, m) * source.adjoint());
  }
  Contraction c;
  c.iota = iota;
  for (const auto& m : iota) c.a.push_back(m.adjoint());
  return c;
}

std::vector<Matrix> random_antihermitian(Rng& rng, const TwistedComplex& tc, double scale) {
  std::vector<Matrix> out;
  for (int k = 0; k <= tc.top_degree(); ++k) {
    const Matrix g = random_gaussian(rng, tc.dim(k), tc.dim(k));
    out.push_back(0.5 * scale * (g - g.adjoint()));
  }
  return out;
}

GaugeSubspace metric_gauge(const BFFieldSpace& fs) {
  require_acyclic(fs.base);
  GaugeSubspace gs;
  gs.kind = GaugeKind::Metric;
  const int n = fs.top_degree();
  for (int k = 0; k <= n; ++k) {
    const Matrix coexact = range_basis(fs.base.d_ortho(k).adjoint());
    const Matrix exact = range_basis(fs.base.d_ortho(k - 1));
    gs.LA.push_back(coexact);
    gs.LB.push_back(annihilator(coexact));
    gs.CA.push_back(exact);
    gs.CB.push_back(annihilator(exact));
    gs.constraint.push_back(fs.base.d_ortho(k - 1).adjoint());
  }
  return gs;
}

GaugeSubspace contraction_gauge(const BFFieldSpace& fs, const Contraction& c) {
  const int n = fs.top_degree();
  if (static_cast<int>(c.iota.size()) != n + 1 || static_cast<int>(c.a.size()) != n + 1) {
    throw ShapeMismatch("contraction needs one map per degree 0.." + std::to_string(n));
  }
  double scale = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (c.iota[k].rows() != fs.dim(k - 1) || c.iota[k].cols() != fs.dim(k) || c.a[k].rows() != fs.dim(k) ||
        c.a[k].cols() != fs.dim(k - 1)) {
      throw ShapeMismatch("contraction map " + std::to_string(k) + " has the wrong shape");
    }
    scale = std::max(scale, max_abs(c.iota[k]));
  }
  if (c.square_residual() > 1e-10 * scale * scale) throw DegenerateContraction("iota squared is nonzero");
  for (int k = 0; k <= n; ++k) {
    const int up = k < n ? numerical_rank(c.iota[k + 1]) : 0;
    if (up + numerical_rank(c.iota[k]) != fs.dim(k)) {
      throw DegenerateContraction("image of iota_" + std::to_string(k + 1) + " is not the kernel of iota_" + std::to_string(k));
    }
    if (up != numerical_rank(fs.base.d_ortho(k))) {
      throw DegenerateContraction("ker iota in degree " + std::to_string(k) + " does not match rank d_" + std::to_string(k));
    }
  }
  if (c.inverse_residual() > 1e-10) throw DegenerateContraction("iota a is not the identity on ker iota");

  GaugeSubspace gs;
  gs.kind = GaugeKind::Contraction;
  gs.contraction = c;
  for (int k = 0; k <= n; ++k) {
    const Matrix kernel = kernel_basis(c.iota[k]);
    const Matrix complement = range_basis(c.a[k]);
    gs.LA.push_back(kernel);
    gs.LB.push_back(annihilator(kernel));
    gs.CA.push_back(complement);
    gs.CB.push_back(annihilator(complement));
    gs.constraint.push_back(c.iota[k]);
  }
  for (int k = 0; k <= n; ++k) {
    const Matrix& u = gs.LA[k];
    Matrix l = Matrix::Zero(u.cols(), u.cols());
    if (k < n) l += u.adjoint() * c.iota[k + 1] * fs.base.d_ortho(k) * u;
    if (k > 0) l += u.adjoint() * fs.base.d_ortho(k - 1) * c.iota[k] * u;
    const double dscale = std::max(1.0, fs.base.d_ortho(k).norm()) * scale;
    if (min_singular(l) < 1e-10 * dscale) {
      throw DegenerateContraction("L = iota d + d iota is singular on ker iota in degree " + std::to_string(k));
    }
  }
  return gs;
}

GaugeSubspace skewed_subspace(const BFFieldSpace& fs, const Contraction& c) {
  GaugeSubspace gs;
  gs.kind = GaugeKind::Custom;
  gs.contraction = c;
  for (int k = 0; k <= fs.top_degree(); ++k) {
    const Matrix kernel = kernel_basis(c.iota[k]);
    const Matrix complement = range_basis(c.a[k]);
    gs.LA.push_back(kernel);
    gs.LB.push_back(kernel.conjugate());
    gs.CA.push_back(complement);
    gs.CB.push_back(complement.conjugate());
    gs.constraint.push_back(c.iota[k]);
  }
  return gs;
}

LagrangianCheck is_lagrangian(const BFFieldSpace& fs, const GaugeSubspace& gs, double tol) {
  LagrangianCheck out;
  out.cross_min_singular = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= fs.top_degree(); ++k) {
    out.isotropy = std::max(out.isotropy, max_abs(gs.LB[k].transpose() * gs.LA[k]));
    out.complement_isotropy = std::max(out.complement_isotropy, max_abs(gs.CB[k].transpose() * gs.CA[k]));
    out.cross_min_singular = std::min(out.cross_min_singular, min_singular(gs.CB[k].transpose() * gs.LA[k]));
    out.cross_min_singular = std::min(out.cross_min_singular, min_singular(gs.LB[k].transpose() * gs.CA[k]));
  }
  out.lagrangian = out.isotropy < tol && out.complement_isotropy < tol && out.cross_min_singular > tol;
  return out;
}

PartitionResult partition_function(const BFFieldSpace& fs, const GaugeSubspace& gs, int sigma) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
  const int n = fs.top_degree();
  PartitionResult out;
  for (int k = 0; k < n; ++k) {
    const Matrix block = gs.LB[k + 1].transpose() * fs.base.d_ortho(k) * gs.LA[k];
    if (block.rows() != block.cols()) {
      throw DegenerateGauge("restricted action block " + std::to_string(k) + " is not square");
    }
    if (min_singular(block) < 1e-12 * std::max(1.0, fs.base.d_ortho(k).norm())) {
      throw DegenerateGauge("restricted action block " + std::to_string(k) + " is singular");
    }
    const double sign = k % 2 ? -1.0 : 1.0;
    if (block.size()) out.orthonormal_log_modulus += sign * std::log(std::abs(block.determinant()));
  }

  if (gs.kind == GaugeKind::Metric) {
    // Parameters η ∈ coexact^k enter B_{k+1} = d η; the action becomes η^* d^*d a and the Jacobian is |det d|.
    for (int k = 0; k < n; ++k) {
      const Matrix d = fs.base.d_ortho(k);
      const Matrix u = gs.LA[k];
      const Matrix e = range_basis(d);
      const Matrix action = u.adjoint() * d.adjoint() * d * u;
      const double sign = k % 2 ? -1.0 : 1.0;
      if (action.size() == 0) continue;
      const double log_action = std::log(std::abs(action.determinant()));
      const double log_jac = std::log(std::abs((e.adjoint() * d * u).determinant()));
      out.log_modulus += sign * (log_action - log_jac);
      out.log_jacobian += sign * log_jac;
    }
  } else if (gs.kind == GaugeKind::Contraction) {
    const Contraction& c = *gs.contraction;
    std::map<int, Matrix> blocks;
    for (int k = 0; k <= n; ++k) {
      const Matrix& u = gs.LA[k];
      Matrix l = Matrix::Zero(u.cols(), u.cols());
      if (k < n) l += u.adjoint() * c.iota[k + 1] * fs.base.d_ortho(k) * u;
      if (k > 0) l += u.adjoint() * fs.base.d_ortho(k - 1) * c.iota[k] * u;
      blocks[k] = l;
    }
    LogSdet ls;
    try {
      ls = log_sdet(GradedOperator::diagonal(blocks));
    } catch (const SingularBlock& e) {
      throw DegenerateGauge(std::string("L on ker iota: ") + e.what());
    }
    out.log_modulus = ls.log_modulus;
    out.phase = ls.phase;
  } else {
    out.log_modulus = out.orthonormal_log_modulus;
  }
  out.value = std::exp(sigma * out.log_modulus);
  return out;
}

ScanReport homotopy_scan(const BFFieldSpace& fs, const std::function<Contraction(double)>& family, int samples,
                         int sigma) {
  if (samples < 1) throw std::invalid_argument("samples must be positive");
  ScanReport report;
  for (int i = 0; i < samples; ++i) {
    const double t = samples == 1 ? 0.0 : static_cast<double>(i) / (samples - 1);
    GaugeSubspace gs;
    PartitionResult z;
    try {
      gs = contraction_gauge(fs, family(t));
      z = partition_function(fs, gs, sigma);
    } catch (const DomainError& e) {
      std::string inner = e.what();
      if (inner.rfind(e.kind() + ": ", 0) == 0 && e.kind() == "DegenerateContraction") inner.erase(0, e.kind().size() + 2);
      std::ostringstream os;
      os << "sample " << i << " (t = " << t << "): " << inner;
      throw DegenerateContraction(os.str(), i, t);
    }
    const LagrangianCheck lag = is_lagrangian(fs, gs);
    report.rows.push_back({t, z.value, z.phase, lag.isotropy, lag.cross_min_singular});
    report.max_deviation = std::max(report.max_deviation, std::abs(z.value / report.rows.front().value - 1.0));
  }
  return report;
}

std::function<Contraction(double)> unitary_family(const Contraction& c, const std::vector<Matrix>& generators) {
  return [c, generators](double t) {
    std::vector<Matrix> u;
    for (const auto& x : generators) u.push_back(x.size() ? Matrix((t * x).exp()) : x);
    return c.conjugated(u);
  };
}

}  // namespace bfzeta
