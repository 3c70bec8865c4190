#include <cmath>
#include <random>

#include "doctest.h"

#include "bfzeta/errors.hpp"
#include "bfzeta/graded_linalg.hpp"

using namespace bfzeta;

namespace {

Matrix scalar(cplx a) {
  Matrix m(1, 1);
  m(0, 0) = a;
  return m;
}

Matrix diag(std::initializer_list<double> values) {
  Matrix m = Matrix::Zero(values.size(), values.size());
  int i = 0;
  for (double v : values) m(i, i) = v, ++i;
  return m;
}

Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

// Σ μ^{-s} over a diagonal spectrum, summed directly.
double spectral_zeta(std::initializer_list<double> spectrum, double s) {
  double total = 0.0;
  for (double mu : spectrum) total += std::pow(mu, -s);
  return total;
}

}  // namespace

TEST_CASE("sdet from the block definition") {
  auto op = GradedOperator::diagonal({{0, scalar(2.0)}, {1, scalar(3.0)}});
  CHECK(std::abs(sdet(op) - cplx(2.0 / 3.0)) < 1e-15);

  auto id = GradedOperator::diagonal({{0, Matrix::Identity(2, 2)}, {1, Matrix::Identity(3, 3)}, {2, Matrix::Identity(1, 1)}});
  CHECK(std::abs(sdet(id) - 1.0) < 1e-15);

  Matrix tri(2, 2);
  tri << 1.0, 1.0, 0.0, 1.0;
  auto op2 = GradedOperator::diagonal({{0, tri}, {1, scalar(5.0)}});
  CHECK(std::abs(sdet(op2) - 0.2) < 1e-15);
  CHECK(std::abs(sdet(op2.shifted(1)) - 5.0) < 1e-14);
}

TEST_CASE("sdet errors") {
  auto singular = GradedOperator::diagonal({{0, scalar(2.0)}, {1, scalar(0.0)}});
  CHECK_THROWS_AS(sdet(singular), SingularBlock);
  CHECK_THROWS_AS(GradedOperator::diagonal({{0, Matrix::Ones(2, 3)}}), ShapeMismatch);

  GradedOperator bad;
  bad.source.dims = {{0, 2}};
  bad.target.dims = {{0, 2}};
  bad.blocks[0] = Matrix::Ones(3, 2);
  CHECK_THROWS_AS(sdet(bad), ShapeMismatch);
}

TEST_CASE("sdet is multiplicative and flips under shift") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<int, Matrix> a, b;
    for (int k = -1; k <= 2; ++k) {
      const int n = dim(rng);
      a[k] = random_matrix(rng, n, n);
      b[k] = random_matrix(rng, n, n);
    }
    const int shift = trial % 3;
    auto A = GradedOperator::diagonal(a, shift);
    auto B = GradedOperator::diagonal(b, shift);
    const cplx lhs = sdet(compose(A, B));
    const cplx rhs = sdet(A) * sdet(B);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    const cplx flipped = sdet(A.shifted(1));
    CHECK(std::abs(flipped * sdet(A) - 1.0) <= 1e-12);
  }
}

TEST_CASE("composition rejects mismatched spaces") {
  auto A = GradedOperator::diagonal({{0, Matrix::Identity(2, 2)}});
  auto B = GradedOperator::diagonal({{0, Matrix::Identity(3, 3)}});
  CHECK_THROWS_AS(compose(A, B), ShapeMismatch);
}

TEST_CASE("flat determinant, spectral mode") {
  CHECK(std::abs(flat_det(diag({1, 2, 3})).value - 6.0) < 1e-12);
  auto with_kernel = flat_det(diag({0, 2}));
  CHECK(std::abs(with_kernel.value - 2.0) < 1e-12);
  CHECK(with_kernel.kernel_dim == 1);
  CHECK(std::abs(flat_det(diag({1, 2, 3}), 1.0).value - 24.0) < 1e-12);
}

TEST_CASE("flat determinant equals the ordinary determinant off the kernel") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 6;
    Matrix m = random_matrix(rng, n, n);
    const cplx det = m.determinant();
    CHECK(std::abs(flat_det(m).value - det) <= 1e-12 * std::max(1.0, std::abs(det)));
  }
  // Rank-deficient: product of eigenvalues of the restriction to the complement of the kernel.
  Matrix p = random_matrix(rng, 4, 4);
  Matrix d = diag({0, 0, 2, 5});
  Matrix m = p * d * p.inverse();
  auto r = flat_det(m);
  CHECK(r.kernel_dim == 2);
  CHECK(std::abs(r.value - 10.0) < 1e-9);
}

TEST_CASE("Mellin function closed forms") {
  CHECK(std::abs(mellin_F(scalar(2.0), 0.0, 0.5) - std::pow(2.0, -0.5)) < 1e-9);
  CHECK(std::abs(mellin_F(diag({1, 4}), 0.0, 1.0) - spectral_zeta({1, 4}, 1.0)) < 1e-9);
  CHECK(std::abs(mellin_F(diag({0.5, 3, 7}), 0.0, 0.3) - spectral_zeta({0.5, 3, 7}, 0.3)) < 1e-9);
  // F(0) counts the nonzero eigenvalues.
  CHECK(std::abs(mellin_F(diag({0, 2, 9}), 0.0, 0.0) - 2.0) < 1e-9);

  auto d = richardson_derivative_at_zero([](double s) { return mellin_F(scalar(2.0), 0.0, s); });
  CHECK(std::abs(-d.value - std::log(2.0)) < 1e-8);
}

TEST_CASE("Mellin mode reproduces the spectral product") {
  auto r = flat_det(diag({1, 2, 3}), 0.0, FlatDetMode::Mellin);
  CHECK(std::abs(r.value - 6.0) < 1e-6 * 6.0);
  auto k = flat_det(diag({0, 2}), 0.0, FlatDetMode::Mellin);
  CHECK(k.kernel_dim == 1);
  CHECK(std::abs(k.value - 2.0) < 1e-6 * 2.0);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> eig(0.3, 6.0);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 5;
    Matrix d = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = eig(rng);
    Matrix p = random_matrix(rng, n, n) + 3.0 * Matrix::Identity(n, n);
    Matrix m = p * d * p.inverse();
    auto spectral = flat_det(m);
    auto mellin = flat_det(m, 0.0, FlatDetMode::Mellin);
    CHECK(std::abs(mellin.value - spectral.value) <= 1e-6 * std::abs(spectral.value));
    CHECK(mellin.quadrature_error_estimate < 1e-6 * std::abs(spectral.value));
  }
}

TEST_CASE("Mellin mode refuses eigenvalues with negative real part") {
  CHECK_THROWS_AS(flat_det(diag({1, -2}), 0.0, FlatDetMode::Mellin), MellinDivergence);
  CHECK_THROWS_AS(mellin_F(diag({1, 2}), -1.5, 0.5), MellinDivergence);
  // Spectral mode has no such restriction.
  CHECK(std::abs(flat_det(diag({1, -2})).value + 2.0) < 1e-12);
}
