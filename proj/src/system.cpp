#include "dmk/system.hpp"

#include <Eigen/LU>

#include <cmath>

namespace dmk {

namespace {

void check_summand_support(const Matrix& M, int n, int n1, const Tolerances& tol,
                           const std::string& name, bool leading) {
  const int d = 2 * n1;
  const double thr = zero_threshold(tol, max_abs(M));
  // Entries outside the allowed diagonal block must vanish.
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      const bool inside = leading ? (i < d && j < d) : (i >= d && j >= d);
      if (!inside && std::abs(M(i, j)) > thr) {
        throw InvalidInputError(name + ": entry (" + std::to_string(i) + "," +
                                std::to_string(j) + ") lies outside the " +
                                (leading ? "leading" : "trailing") + " diagonal block");
      }
    }
  }
  (void)n;
}

void check_symmetric(const Matrix& M, const Tolerances& tol, const std::string& name) {
  if (max_abs(M - M.transpose()) > zero_threshold(tol, max_abs(M))) {
    throw InvalidInputError(name + ": matrix is not symmetric at the working tolerance");
  }
}

}  // namespace

Matrix build_C_matrix(const std::vector<CouplingVector>& couplings) {
  if (couplings.empty()) {
    throw InvalidDimensionError("build_C_matrix: empty coupling list");
  }
  const Eigen::Index len = couplings.front().c.size();
  if (len == 0 || len % 2 != 0) {
    throw InvalidDimensionError("build_C_matrix: coupling vectors must have even "
                                "positive length, got " + std::to_string(len));
  }
  const int m = static_cast<int>(couplings.size());
  Matrix C(2 * m, len);
  const double root2 = std::sqrt(2.0);
  for (int i = 0; i < m; ++i) {
    const ComplexVector& c = couplings[i].c;
    if (c.size() != len) {
      throw InvalidDimensionError("build_C_matrix: coupling " + std::to_string(i) +
                                  " has length " + std::to_string(c.size()) +
                                  ", expected " + std::to_string(len));
    }
    if (!c.allFinite()) {
      throw InvalidInputError("build_C_matrix: coupling " + std::to_string(i) +
                              " has non-finite entries");
    }
    C.row(2 * i) = root2 * c.real().transpose();
    C.row(2 * i + 1) = root2 * c.imag().transpose();
  }
  return C;
}

std::vector<CouplingVector> couplings_from_C(const Matrix& C) {
  if (C.rows() % 2 != 0 || C.cols() % 2 != 0) {
    throw InvalidDimensionError("couplings_from_C: matrix dimensions must be even");
  }
  const double inv_root2 = 1.0 / std::sqrt(2.0);
  std::vector<CouplingVector> out;
  out.reserve(C.rows() / 2);
  for (Eigen::Index i = 0; i + 1 < C.rows(); i += 2) {
    ComplexVector c(C.cols());
    c.real() = inv_root2 * C.row(i).transpose();
    c.imag() = inv_root2 * C.row(i + 1).transpose();
    out.push_back(CouplingVector{std::move(c)});
  }
  return out;
}

QuantumLinearSystem build_system(const Matrix& G, const std::vector<CouplingVector>& couplings,
                                 std::optional<int> n1, const Tolerances& tol) {
  validate(tol);
  require_finite(G, "build_system: G");
  if (G.rows() != G.cols() || G.rows() == 0 || G.rows() % 2 != 0) {
    throw InvalidDimensionError("build_system: G must be square 2n x 2n, got " +
                                std::to_string(G.rows()) + " x " + std::to_string(G.cols()));
  }
  check_symmetric(G, tol, "build_system: G");

  QuantumLinearSystem sys;
  sys.n = static_cast<int>(G.rows()) / 2;
  sys.m = static_cast<int>(couplings.size());
  sys.G = G;
  if (n1) {
    if (*n1 < 1 || *n1 > sys.n) {
      throw InvalidDimensionError("build_system: n1 = " + std::to_string(*n1) +
                                  " out of range [1, " + std::to_string(sys.n) + "]");
    }
    sys.n1 = n1;
  }

  if (sys.m == 0) {
    sys.C = Matrix(0, 2 * sys.n);
  } else {
    sys.C = build_C_matrix(couplings);
    if (sys.C.cols() != 2 * sys.n) {
      throw InvalidDimensionError("build_system: coupling length " +
                                  std::to_string(sys.C.cols()) + " does not match 2n = " +
                                  std::to_string(2 * sys.n));
    }
  }

  const Matrix Sn = sigma_matrix(sys.n);
  const Matrix Sm = sigma_matrix(sys.m);
  sys.A = Sn * (G + 0.5 * sys.C.transpose() * Sm * sys.C);
  sys.B = Sn * sys.C.transpose() * Sm;
  return sys;
}

QuantumLinearSystem build_system(const HamiltonianSummands& parts, int n1,
                                 const std::vector<CouplingVector>& couplings,
                                 const Tolerances& tol) {
  validate(tol);
  const Matrix& GD = parts.G_D;
  if (GD.rows() != GD.cols() || GD.rows() == 0 || GD.rows() % 2 != 0) {
    throw InvalidDimensionError("build_system: G_D must be square 2n x 2n");
  }
  if (parts.G_N.rows() != GD.rows() || parts.G_N.cols() != GD.cols() ||
      parts.G_int.rows() != GD.rows() || parts.G_int.cols() != GD.cols()) {
    throw InvalidDimensionError("build_system: summands must share one 2n x 2n shape");
  }
  const int n = static_cast<int>(GD.rows()) / 2;
  if (n1 < 1 || n1 > n) {
    throw InvalidDimensionError("build_system: n1 = " + std::to_string(n1) +
                                " out of range [1, " + std::to_string(n) + "]");
  }
  require_finite(GD, "build_system: G_D");
  require_finite(parts.G_N, "build_system: G_N");
  require_finite(parts.G_int, "build_system: G_int");
  check_symmetric(GD, tol, "build_system: G_D");
  check_symmetric(parts.G_N, tol, "build_system: G_N");
  check_symmetric(parts.G_int, tol, "build_system: G_int");
  check_summand_support(GD, n, n1, tol, "build_system: G_D", true);
  check_summand_support(parts.G_N, n, n1, tol, "build_system: G_N", false);
  // G_int must have zero diagonal blocks.
  {
    const int d = 2 * n1;
    const double thr = zero_threshold(tol, max_abs(parts.G_int));
    if (max_abs(parts.G_int.topLeftCorner(d, d)) > thr ||
        max_abs(parts.G_int.bottomRightCorner(2 * n - d, 2 * n - d)) > thr) {
      throw InvalidInputError("build_system: G_int has support on a diagonal block");
    }
  }

  QuantumLinearSystem sys = build_system(GD + parts.G_N + parts.G_int, couplings, n1, tol);
  sys.summands = parts;
  return sys;
}

QuantumLinearSystem transform(const QuantumLinearSystem& sys, const Matrix& T,
                              const Tolerances& tol) {
  validate(tol);
  require_finite(T, "transform: T");
  const int d = 2 * sys.n;
  if (T.rows() != d || T.cols() != d) {
    throw InvalidDimensionError("transform: T must be " + std::to_string(d) + " x " +
                                std::to_string(d));
  }
  if (numeric_rank(T, tol) < d) {
    throw InvalidInputError("transform: T is singular at the working rank tolerance");
  }

  const Matrix Sn = sigma_matrix(sys.n);
  const double unit_tol = zero_threshold(tol, max_abs(T));
  const bool orthogonal = max_abs(T.transpose() * T - Matrix::Identity(d, d)) <= unit_tol;
  const bool symplectic = max_abs(T.transpose() * Sn * T - Sn) <= unit_tol;

  QuantumLinearSystem out;
  out.n = sys.n;
  out.m = sys.m;
  out.C = sys.C * T;
  if (orthogonal && symplectic) {
    out.A = T.transpose() * sys.A * T;
    out.B = T.transpose() * sys.B;
    if (sys.has_hamiltonian()) out.G = T.transpose() * sys.G * T;
  } else {
    Eigen::PartialPivLU<Matrix> lu(T);
    out.A = lu.solve(sys.A * T);
    out.B = lu.solve(sys.B);
    // A general linear change of coordinates breaks the quadrature
    // commutation structure; no Hamiltonian matrix is attached.
  }
  return out;
}

RealizabilityReport check_physical_realizability(const QuantumLinearSystem& sys,
                                                 const Tolerances& tol) {
  validate(tol);
  const Matrix Sn = sigma_matrix(sys.n);
  const Matrix Sm = sigma_matrix(sys.m);
  const Matrix drift = sys.A * Sn;
  const Matrix noise = sys.B * Sm * sys.B.transpose();
  const Matrix residual = drift + Sn * sys.A.transpose() + noise;
  RealizabilityReport report;
  report.residual = max_abs(residual);
  report.threshold = zero_threshold(tol, std::max(max_abs(drift), max_abs(noise)));
  report.pass = report.residual <= report.threshold;
  return report;
}

QuantumLinearSystem as_whole_designated(const QuantumLinearSystem& sys) {
  if (!sys.has_hamiltonian()) {
    throw InsufficientDataError("as_whole_designated: system has no Hamiltonian matrix");
  }
  QuantumLinearSystem out = sys;
  out.n1 = sys.n;
  const Eigen::Index d = sys.G.rows();
  out.summands = HamiltonianSummands{sys.G, Matrix::Zero(d, d), Matrix::Zero(d, d)};
  return out;
}

}  // namespace dmk
