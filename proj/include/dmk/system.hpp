#pragma once

#include "dmk/symplectic.hpp"

#include <optional>
#include <vector>

namespace dmk {

// Coefficients of one coupling operator L = c^T x, with x the stacked
// quadrature vector (x_1, p_1, ..., x_n, p_n). Length 2n.
struct CouplingVector {
  ComplexVector c;
};

// Hamiltonian split for a designated/noisy partition with n1 leading
// oscillators designated: G = G_D + G_N + G_int, where G_D is supported on
// the leading 2*n1 block, G_N on the trailing block, and G_int only couples
// the two blocks (zero diagonal blocks).
struct HamiltonianSummands {
  Matrix G_D;
  Matrix G_N;
  Matrix G_int;
};

// A quantum linear system in quadrature form,
//
//   dx = A x dt + B dW,   dW_out = C x dt + dW,
//
// with A = Sigma_n (G + C^T Sigma_m C / 2) and B = Sigma_n C^T Sigma_m
// derived from the Hamiltonian matrix G and the coupling matrix C. G may be
// empty for systems produced by a non-symplectic coordinate transformation;
// every other constructor fills it.
struct QuantumLinearSystem {
  int n = 0;  // oscillators
  int m = 0;  // input ports
  Matrix G;   // 2n x 2n symmetric (empty when unknown)
  Matrix C;   // 2m x 2n
  Matrix A;   // 2n x 2n
  Matrix B;   // 2n x 2m
  std::optional<int> n1;  // designated-subsystem size, leading oscillators
  std::optional<HamiltonianSummands> summands;

  bool has_hamiltonian() const { return G.size() > 0; }
  bool has_partition() const { return n1.has_value(); }
};

// C = sqrt(2) * (Re c_1, Im c_1, ..., Re c_m, Im c_m)^T, size 2m x 2n.
// The list must be nonempty and all vectors the same even length.
Matrix build_C_matrix(const std::vector<CouplingVector>& couplings);

// Recovers the coupling vectors from a 2m x 2n coupling matrix (the inverse
// of build_C_matrix up to rounding).
std::vector<CouplingVector> couplings_from_C(const Matrix& C);

// Builds the system from a symmetric Hamiltonian matrix and coupling
// operators. An empty coupling list gives a closed system (m = 0).
QuantumLinearSystem build_system(const Matrix& G, const std::vector<CouplingVector>& couplings,
                                 std::optional<int> n1 = {}, const Tolerances& tol = {});

// Same, from explicit summands; validates the support pattern of each
// summand and stores them for later partition-aware analysis.
QuantumLinearSystem build_system(const HamiltonianSummands& parts, int n1,
                                 const std::vector<CouplingVector>& couplings,
                                 const Tolerances& tol = {});

// Coordinate change x = T x'. For T in Sp(2n) intersected with O(2n) the
// result is again canonical (G' = T^T G T); for a general invertible T only
// (A, B, C) transform and the Hamiltonian field is left empty. Partition
// data does not survive a change onto mixed coordinates and is dropped.
QuantumLinearSystem transform(const QuantumLinearSystem& sys, const Matrix& T,
                              const Tolerances& tol = {});

struct RealizabilityReport {
  bool pass = false;
  double residual = 0.0;  // max-norm of A Sigma_n + Sigma_n A^T + B Sigma_m B^T
  double threshold = 0.0;
};

// Checks the physical-realizability identity. Holds by construction for any
// system derived from (G, C).
RealizabilityReport check_physical_realizability(const QuantumLinearSystem& sys,
                                                 const Tolerances& tol = {});

// Copy of sys partitioned with the whole oscillator set designated:
// n1 = n, G_D = G, G_N = G_int = 0. Requires the Hamiltonian to be present.
QuantumLinearSystem as_whole_designated(const QuantumLinearSystem& sys);

}  // namespace dmk
