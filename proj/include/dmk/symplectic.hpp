#pragma once

#include "dmk/types.hpp"

namespace dmk {

// The canonical symplectic form of n oscillators: a 2n x 2n block-diagonal
// matrix of [[0, 1], [-1, 0]] blocks. It is antisymmetric and squares to -I.
struct SymplecticForm {
  int n = 0;
  Matrix matrix;
};

// Requires n >= 1.
SymplecticForm make_sigma(int n);

// Same matrix but permits n == 0 (returns a 0 x 0 matrix). Convenience for
// systems without inputs.
Matrix sigma_matrix(int n);

struct RankInfo {
  int rank = 0;
  Vector singular_values;
  double threshold = 0.0;  // absolute singular-value cut-off used
  // True when the accepted/rejected singular values at the rank boundary are
  // within a factor of 10 of each other.
  bool marginal = false;
};

RankInfo rank_with_diagnostics(const Matrix& M, const Tolerances& tol = {});

// Count of singular values above rank_rel times the largest one.
int numeric_rank(const Matrix& M, const Tolerances& tol = {});

// Orthonormal basis of the null space of M, returned as columns. A matrix
// with no rows has a full kernel; the basis then is the identity.
Matrix kernel_basis(const Matrix& M, const Tolerances& tol = {});

// Re-expresses an orthonormal basis of a sigma-invariant subspace as
// canonical conjugate pairs: columns ordered (v1, sigma^T v1, v2,
// sigma^T v2, ...). Any matrix assembled from such pairs (plus further pairs
// spanning the orthogonal complement) is both orthogonal and symplectic.
//
// Throws StructureError when the column count is odd or the span is not
// closed under sigma; both indicate an upstream tolerance failure.
Matrix symplectic_pair_basis(const Matrix& subspace, const SymplecticForm& sigma,
                             const Tolerances& tol = {});

}  // namespace dmk
