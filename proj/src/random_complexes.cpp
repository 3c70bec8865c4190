#include "bfzeta/random_complexes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

namespace bfzeta {

namespace {

using IntMatrix = Eigen::MatrixXi;

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

IntMatrix random_invertible_int(Rng& rng, int m, bool symmetric) {
  while (true) {
    IntMatrix a(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = symmetric ? i : 0; j < m; ++j) {
        a(i, j) = uniform_int(rng, -2, 2);
        if (symmetric) a(j, i) = a(i, j);
      }
    }
    if (m == 0 || std::abs(a.cast<double>().determinant()) > 0.5) return a;
  }
}

IntMatrix random_signed_permutation(Rng& rng, int n) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  IntMatrix p = IntMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) p(i, perm[i]) = uniform_int(rng, 0, 1) ? 1 : -1;
  return p;
}

GroupRingElement integer_entry(long c) { return GroupRingElement::integer(c); }

}  // namespace

Matrix random_gaussian(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

Matrix random_unitary(Rng& rng, int n) {
  if (n == 0) return Matrix(0, 0);
  Eigen::HouseholderQR<Matrix> qr(random_gaussian(rng, n, n));
  Matrix q = qr.householderQ();
  // Fix the phases so the distribution is Haar.
  const Matrix r = qr.matrixQR();
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

Matrix random_unitary_away_from_one(Rng& rng, int n, double gap) {
  std::uniform_real_distribution<double> angle(gap, 2 * std::numbers::pi - gap);
  const Matrix q = random_unitary(rng, n);
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = std::polar(1.0, angle(rng));
  Matrix u = q * d * q.adjoint();
  // Re-orthonormalize to push the unitarity defect down to roundoff.
  Eigen::HouseholderQR<Matrix> qr(u);
  Matrix v = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int i = 0; i < n; ++i) v.col(i) *= r(i, i) / std::abs(r(i, i));
  return v;
}

Matrix random_gram(Rng& rng, int n) {
  if (n == 0) return Matrix(0, 0);
  const Matrix b = random_gaussian(rng, n, n);
  Matrix g = b * b.adjoint();
  const double top = std::max(1e-300, Eigen::SelfAdjointEigenSolver<Matrix>(g).eigenvalues().maxCoeff());
  g = Matrix::Identity(n, n) + (3.0 / top) * g;
  return 0.5 * (g + g.adjoint());
}

ComplexFile random_self_dual_complex(Rng& rng, int max_top, int max_rank) {
  const int top = uniform_int(rng, 1, std::max(1, max_top));
  const int m_top = top - 1;  // X lives in degrees 0..m_top
  const int budget = 3;
  std::vector<int> counts(m_top + 1, 0);
  struct Piece {
    int degree;  // maps degree -> degree + 1
    int offset_src, offset_dst;
    IntMatrix block;
  };
  std::vector<Piece> pieces;

  auto room = [&](int k, int m) { return counts[k] + m <= budget; };
  for (int k = 0; k <= m_top - 1; ++k) {
    const int mirror = m_top - 1 - k;
    if (k > mirror) break;
    int m = uniform_int(rng, 0, 2);
    auto fits = [&](int mm) {
      if (k == mirror) return room(k, mm) && room(k + 1, mm);
      return room(k, mm) && room(k + 1, mm) && room(mirror, mm) && room(mirror + 1, mm) &&
             (k + 1 != mirror || room(mirror, 2 * mm));
    };
    while (m > 0 && !fits(m)) --m;
    if (m == 0) continue;
    IntMatrix block = random_invertible_int(rng, m, k == mirror);
    pieces.push_back({k, counts[k], counts[k + 1], block});
    counts[k] += m;
    counts[k + 1] += m;
    if (k != mirror) {
      pieces.push_back({mirror, counts[mirror], counts[mirror + 1], block.transpose()});
      counts[mirror] += m;
      counts[mirror + 1] += m;
    }
  }
  for (int k = 0; k <= m_top - k; ++k) {
    const int mirror = m_top - k;
    int h = uniform_int(rng, 0, 1);
    if (k == 0 && std::accumulate(counts.begin(), counts.end(), 0) == 0) h = 1;
    if (h == 0) continue;
    if (k == mirror) {
      if (room(k, 1)) counts[k] += 1;
    } else if (room(k, 1) && room(mirror, 1)) {
      counts[k] += 1;
      counts[mirror] += 1;
    }
  }

  // Assemble the cochain differentials d_k : X^k -> X^{k+1}.
  std::vector<IntMatrix> d(std::max(0, m_top));
  for (int k = 0; k < m_top; ++k) d[k] = IntMatrix::Zero(counts[k + 1], counts[k]);
  for (const auto& p : pieces) {
    d[p.degree].block(p.offset_dst, p.offset_src, p.block.rows(), p.block.cols()) = p.block;
  }
  // Signed permutations are orthogonal, so the singular values of each d_k, and with them the duality, survive.
  std::vector<IntMatrix> p(m_top + 1);
  for (int k = 0; k <= m_top; ++k) p[k] = random_signed_permutation(rng, counts[k]);
  for (int k = 0; k < m_top; ++k) d[k] = p[k + 1] * d[k] * p[k].transpose();

  // Cross with the circle. Degree q cells: (σ ∈ X^q, vertex) then (σ ∈ X^{q-1}, edge).
  ComplexFile f;
  CellComplex& cc = f.cells;
  cc.generators = {"t"};
  cc.dual = true;
  auto xc = [&](int k) { return k < 0 || k > m_top ? 0 : counts[k]; };
  for (int q = 0; q <= top; ++q) cc.cell_counts.push_back(xc(q) + xc(q - 1));
  const GroupRingElement t_minus_one = GroupRingElement::monomial(1, {{0, 1}}) + integer_entry(-1);
  for (int q = 1; q <= top; ++q) {
    std::vector<std::vector<GroupRingElement>> b(cc.cell_counts[q - 1], std::vector<GroupRingElement>(cc.cell_counts[q]));
    const int v_rows = xc(q - 1);
    const int v_cols = xc(q);
    // ∂(τ, v) = Σ ∂^X τ; the homological ∂^X_q is the transpose of d_{q-1}.
    if (q - 1 < m_top && q - 1 >= 0) {
      for (int i = 0; i < xc(q); ++i)
        for (int j = 0; j < xc(q - 1); ++j) b[j][i] = integer_entry(d[q - 1](i, j));
    }
    // ∂(σ, e) = (∂^X σ, e) + (-1)^{q-1} (t - 1)(σ, v).
    for (int s = 0; s < xc(q - 1); ++s) {
      if (q - 2 >= 0) {
        for (int j = 0; j < xc(q - 2); ++j) b[v_rows + j][v_cols + s] = integer_entry(d[q - 2](s, j));
      }
      b[s][v_cols + s] = (q - 1) % 2 ? integer_entry(0) + GroupRingElement::integer(-1) * t_minus_one : t_minus_one;
    }
    cc.boundary[q] = std::move(b);
  }

  const int rank = uniform_int(rng, 1, std::max(1, max_rank));
  f.rep.rank = rank;
  f.rep.images["t"] = random_unitary_away_from_one(rng, rank);
  return f;
}

TwistedComplex random_acyclic_complex(Rng& rng, int max_top, int max_dim, bool random_metric) {
  while (true) {
    const int top = uniform_int(rng, 1, std::max(1, max_top));
    // C^k = R_{k-1} ⊕ R_k with d_k mapping R_k isomorphically onto the R_k summand of C^{k+1}.
    std::vector<int> r(top + 1, 0);
    int prev = 0;
    for (int k = 0; k < top; ++k) {
      const int cap = std::min(3, max_dim - prev);
      r[k] = uniform_int(rng, k == 0 ? 1 : 0, std::max(k == 0 ? 1 : 0, cap));
      prev = r[k];
    }
    std::vector<int> dims(top + 1);
    for (int k = 0; k <= top; ++k) dims[k] = (k ? r[k - 1] : 0) + r[k];
    if (dims[top] > max_dim) continue;
    std::vector<Matrix> v;
    for (int k = 0; k <= top; ++k) {
      v.push_back(Matrix::Identity(dims[k], dims[k]) + 0.4 * random_gaussian(rng, dims[k], dims[k]));
    }
    std::vector<Matrix> d;
    bool ok = true;
    for (int k = 0; k < top; ++k) {
      Matrix block = Matrix::Identity(r[k], r[k]) + 0.5 * random_gaussian(rng, r[k], r[k]);
      Matrix raw = Matrix::Zero(dims[k + 1], dims[k]);
      raw.block(0, dims[k] - r[k], r[k], r[k]) = block;
      d.push_back(raw);
      if (r[k] && Eigen::JacobiSVD<Matrix>(block).singularValues().minCoeff() < 0.05) ok = false;
    }
    for (int k = 0; k <= top; ++k) {
      if (dims[k] > 0 && Eigen::JacobiSVD<Matrix>(v[k]).singularValues().minCoeff() < 0.1) ok = false;
    }
    if (!ok) continue;
    std::vector<Matrix> grams;
    for (int k = 0; k <= top; ++k) grams.push_back(random_metric ? random_gram(rng, dims[k]) : Matrix(Matrix::Identity(dims[k], dims[k])));
    TwistedComplex base(std::move(d), dims, std::move(grams));
    std::vector<Matrix> w = v;
    return base.change_basis(w);
  }
}

}  // namespace bfzeta
