#ifndef BFZETA_RANDOM_COMPLEXES_HPP
#define BFZETA_RANDOM_COMPLEXES_HPP

#include <random>

#include "bfzeta/twisted_complex.hpp"

namespace bfzeta {

using Rng = std::mt19937_64;

Matrix random_gaussian(Rng& rng, int rows, int cols);
Matrix random_unitary(Rng& rng, int n);
/// Unitary whose eigenvalues stay at angle distance ≥ gap from 1.
Matrix random_unitary_away_from_one(Rng& rng, int n, double gap = 0.5);
/// Hermitian positive definite with condition number at most about 4.
Matrix random_gram(Rng& rng, int n);

/// A Poincaré self-dual integer complex X (d_{M-1-k} is d_k^T up to signed permutations of cells,
/// at most 3 cells per degree)
/// crossed with a circle whose loop acts by a random unitary of rank ≤ max_rank.
/// The product has top degree N ≤ max_top, at most 6 cells per degree, and is acyclic.
ComplexFile random_self_dual_complex(Rng& rng, int max_top = 5, int max_rank = 2);

/// Generic acyclic complex with complex coefficients, no duality. dims ≤ max_dim.
/// With random_metric the Gram matrices are random positive definite.
TwistedComplex random_acyclic_complex(Rng& rng, int max_top = 5, int max_dim = 6, bool random_metric = false);

}  // namespace bfzeta

#endif  // BFZETA_RANDOM_COMPLEXES_HPP
