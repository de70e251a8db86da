#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace bosent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

namespace linalg {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kReconstructionTol = 1e-9;
inline constexpr double kAbsoluteFloor = 1e-12;

/// max_ij |m_ij|; zero for empty matrices.
double max_abs(const Matrix& m);

/// Scale used by every relative tolerance in the library: 1 + max|m_ij|.
inline double tolerance_scale(const Matrix& m) { return 1.0 + max_abs(m); }

/// Dense square complex matrix checked against the Hermiticity invariant
///   max |m_ij - conj(m_ji)| <= 1e-10 (1 + max|m|).
/// The stored matrix is exactly Hermitian: the residual anti-Hermitian part
/// is removed on construction.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Validates `m`; throws ValidationError naming the worst entry pair.
  explicit HermitianMatrix(Matrix m, double rel_tol = kHermitianTol);

  /// Wraps a matrix that is Hermitian by construction (e.g. a partial
  /// transpose of a Hermitian matrix). Only symmetrizes.
  static HermitianMatrix from_trusted(Matrix m);

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

 private:
  struct Trusted {};
  HermitianMatrix(Matrix m, Trusted);

  Matrix m_;
};

struct EigenDecomposition {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns, vectors.col(i) <-> values(i)
};

EigenDecomposition eig_hermitian(const HermitianMatrix& m);
RealVector eigenvalues(const HermitianMatrix& m);
double min_eigenvalue(const HermitianMatrix& m);
double max_eigenvalue(const HermitianMatrix& m);

/// Tr sqrt(M^dagger M): the sum of |eigenvalues| for Hermitian input.
/// Decouples the matrix into connected components of its sparsity graph
/// before diagonalizing, so embedded partial transposes stay cheap.
double trace_norm(const HermitianMatrix& m);

/// Entrywise sum_ij |m_ij|.
double l1_norm(const Matrix& m);

/// Smallest eigenvalue >= -tol (1 + max|m|).
bool is_psd(const HermitianMatrix& m, double rel_tol);

/// Largest |m_ij - conj(m_ji)| together with its location.
struct HermiticityDefect {
  double value = 0.0;
  Eigen::Index row = 0;
  Eigen::Index col = 0;
};
HermiticityDefect hermiticity_defect(const Matrix& m);

}  // namespace linalg

using linalg::HermitianMatrix;

}  // namespace bosent
