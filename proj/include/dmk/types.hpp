#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace dmk {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix or vector sizes do not fit the requested operation.
class InvalidDimensionError : public Error {
 public:
  using Error::Error;
};

// Input violates a value-level contract (non-finite entries, asymmetric
// Hamiltonian, singular transformation, ...).
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

// A structural guarantee failed: odd pairing dimension, span not closed
// under the symplectic form, non-canonical composite. Usually indicates a
// tolerance misconfiguration rather than bad user data.
class StructureError : public Error {
 public:
  using Error::Error;
};

// The system lacks the partition or Hamiltonian summands an analysis needs.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// A Lyapunov steady state was requested for a non-Hurwitz drift matrix.
class NoSteadyStateError : public Error {
 public:
  using Error::Error;
};

// Numerical thresholds used throughout the library.
//
// rank_rel scales the largest singular value to a rank cut-off; zero selects
// the per-matrix default max(rows, cols) * machine epsilon. zero_abs feeds
// every "this block vanishes" decision via
//   |entry| <= zero_abs * (1 + scale of the operand).
struct Tolerances {
  double rank_rel = 0.0;
  double zero_abs = 1e-10;
};

// Throws InvalidInputError unless rank_rel is in [0, 1) and zero_abs in (0, 1).
void validate(const Tolerances& tol);

// Relative singular-value cut-off for a rows x cols matrix.
double rank_rel_threshold(Eigen::Index rows, Eigen::Index cols, const Tolerances& tol);

// Absolute threshold for zero tests of quantities with the given magnitude.
inline double zero_threshold(const Tolerances& tol, double scale) {
  return tol.zero_abs * (1.0 + scale);
}

// Largest absolute entry; zero for empty matrices.
inline double max_abs(const Matrix& M) {
  return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff();
}

inline bool all_finite(const Matrix& M) { return M.size() == 0 || M.allFinite(); }

void require_finite(const Matrix& M, const std::string& what);

}  // namespace dmk
