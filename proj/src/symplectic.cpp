#include "dmk/symplectic.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace dmk {

void validate(const Tolerances& tol) {
  if (!(tol.rank_rel >= 0.0) || tol.rank_rel >= 1.0) {
    throw InvalidInputError("tolerances: rank_rel must lie in [0, 1), got " +
                            std::to_string(tol.rank_rel));
  }
  if (!(tol.zero_abs > 0.0) || tol.zero_abs >= 1.0) {
    throw InvalidInputError("tolerances: zero_abs must lie in (0, 1), got " +
                            std::to_string(tol.zero_abs));
  }
}

double rank_rel_threshold(Eigen::Index rows, Eigen::Index cols, const Tolerances& tol) {
  if (tol.rank_rel > 0.0) return tol.rank_rel;
  return static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon();
}

void require_finite(const Matrix& M, const std::string& what) {
  if (!all_finite(M)) throw InvalidInputError(what + ": non-finite entries");
}

Matrix sigma_matrix(int n) {
  if (n < 0) throw InvalidDimensionError("sigma: negative oscillator count");
  Matrix S = Matrix::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    S(2 * k, 2 * k + 1) = 1.0;
    S(2 * k + 1, 2 * k) = -1.0;
  }
  return S;
}

SymplecticForm make_sigma(int n) {
  if (n < 1) {
    throw InvalidDimensionError("make_sigma: oscillator count must be >= 1, got " +
                                std::to_string(n));
  }
  return SymplecticForm{n, sigma_matrix(n)};
}

RankInfo rank_with_diagnostics(const Matrix& M, const Tolerances& tol) {
  validate(tol);
  require_finite(M, "numeric_rank");
  RankInfo info;
  if (M.rows() == 0 || M.cols() == 0) return info;
  Eigen::JacobiSVD<Matrix> svd(M);
  info.singular_values = svd.singularValues();
  info.threshold = rank_rel_threshold(M.rows(), M.cols(), tol) * info.singular_values(0);
  int r = 0;
  while (r < info.singular_values.size() && info.singular_values(r) > info.threshold) ++r;
  info.rank = r;
  if (r > 0 && r < info.singular_values.size() && info.singular_values(r) > 0.0) {
    info.marginal = info.singular_values(r - 1) < 10.0 * info.singular_values(r);
  }
  return info;
}

int numeric_rank(const Matrix& M, const Tolerances& tol) {
  return rank_with_diagnostics(M, tol).rank;
}

Matrix kernel_basis(const Matrix& M, const Tolerances& tol) {
  validate(tol);
  require_finite(M, "kernel_basis");
  if (M.cols() == 0) return Matrix(0, 0);
  if (M.rows() == 0) return Matrix::Identity(M.cols(), M.cols());
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double threshold = rank_rel_threshold(M.rows(), M.cols(), tol) * sv(0);
  int r = 0;
  while (r < sv.size() && sv(r) > threshold) ++r;
  return svd.matrixV().rightCols(M.cols() - r);
}

Matrix symplectic_pair_basis(const Matrix& subspace, const SymplecticForm& sigma,
                             const Tolerances& tol) {
  validate(tol);
  require_finite(subspace, "symplectic_pair_basis");
  const Eigen::Index dim = sigma.matrix.rows();
  if (subspace.rows() != dim) {
    throw InvalidDimensionError("symplectic_pair_basis: subspace has " +
                                std::to_string(subspace.rows()) + " rows, form has " +
                                std::to_string(dim));
  }
  const Eigen::Index k = subspace.cols();
  if (k == 0) return Matrix(dim, 0);
  if (k % 2 != 0) {
    throw StructureError(
        "symplectic_pair_basis: subspace dimension " + std::to_string(k) +
        " is odd; a sigma-closed subspace has even dimension, so this "
        "indicates a rank tolerance failure");
  }

  const double unit_tol = zero_threshold(tol, 1.0);
  if (max_abs(subspace.transpose() * subspace - Matrix::Identity(k, k)) > unit_tol) {
    throw InvalidInputError("symplectic_pair_basis: input columns are not orthonormal");
  }
  // sigma must map the span into itself.
  {
    Matrix image = sigma.matrix * subspace;
    Matrix residual = image - subspace * (subspace.transpose() * image);
    if (max_abs(residual) > unit_tol) {
      throw StructureError("symplectic_pair_basis: span is not sigma-invariant "
                           "(max residual " + std::to_string(max_abs(residual)) + ")");
    }
  }

  // Greedy construction: take the input column with the largest component
  // outside the pairs chosen so far, normalize it to v, and append (v,
  // sigma^T v). sigma^T v is orthogonal to v and to every previous pair
  // analytically; one re-orthogonalization pass keeps rounding in check.
  Matrix Q(dim, k);
  Eigen::Index chosen = 0;
  while (chosen < k) {
    Eigen::Index best = -1;
    double best_norm = 0.0;
    Vector best_residual;
    for (Eigen::Index c = 0; c < k; ++c) {
      Vector r = subspace.col(c);
      if (chosen > 0) {
        r -= Q.leftCols(chosen) * (Q.leftCols(chosen).transpose() * subspace.col(c));
      }
      const double norm = r.norm();
      if (norm > best_norm) {
        best_norm = norm;
        best = c;
        best_residual = r;
      }
    }
    if (best < 0 || best_norm <= unit_tol) {
      throw StructureError("symplectic_pair_basis: span collapsed while pairing; "
                           "tolerances are inconsistent with the input basis");
    }
    Vector v = best_residual / best_norm;
    Vector w = sigma.matrix.transpose() * v;
    if (chosen > 0) {
      w -= Q.leftCols(chosen) * (Q.leftCols(chosen).transpose() * w);
    }
    const double wn = w.norm();
    if (wn <= 0.5) {
      throw StructureError("symplectic_pair_basis: conjugate direction collapsed; "
                           "span is not sigma-invariant at the working tolerance");
    }
    w /= wn;
    Q.col(chosen) = v;
    Q.col(chosen + 1) = w;
    chosen += 2;
  }

  if (max_abs(Q * Q.transpose() - subspace * subspace.transpose()) > unit_tol) {
    throw StructureError("symplectic_pair_basis: pairing failed to preserve the span");
  }
  return Q;
}

}  // namespace dmk
