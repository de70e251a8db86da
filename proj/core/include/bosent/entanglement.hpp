#pragma once

#include <string_view>
#include <vector>

#include "bosent/states.hpp"

namespace bosent {

/// Partial transpose over the second factor of a dim_first x dim_second
/// bipartite matrix: out((a,b),(a',b')) = in((a,b'),(a',b)), row index
/// a * dim_second + b.
Matrix partial_transpose(const Matrix& m, Eigen::Index dim_first, Eigen::Index dim_second);

/// rho placed on the A (x) B embedding cells of its basis, zero elsewhere.
Matrix embed(const DensityMatrix& rho);

/// Partial transpose of the embedded state, on the A_dim * B_dim space.
/// Throws ValidationError if that dimension exceeds `cap`.
HermitianMatrix partial_transpose(const DensityMatrix& rho, std::size_t cap = kDefaultDimensionCap);

/// (||rho^T_B||_1 - 1) / 2, clamped to zero below 1e-12.
double negativity(const DensityMatrix& rho);

/// Per-sector singular values of the D_k x D_{N-k} coefficient matrices,
/// each block padded to min(D_k, D_{N-k}) entries, nonincreasing.
struct SchmidtSpectrum {
  std::vector<std::vector<double>> blocks;

  /// Total number of Schmidt slots sum_k min(D_k, D_{N-k}).
  std::size_t size() const;
  /// Number of coefficients above `tol`.
  std::size_t rank(double tol = 1e-12) const;
  double sum() const;
  double sum_squares() const;
};

SchmidtSpectrum schmidt(const PureState& psi);

/// ((sum of Schmidt coefficients)^2 - 1) / 2.
double pure_negativity_from_schmidt(const SchmidtSpectrum& s);

enum class Separability { separable, entangled, undetermined };
enum class SeparabilityReason { non_block_diagonal, block_npt, all_blocks_ppt };

std::string_view to_string(Separability s);
std::string_view to_string(SeparabilityReason r);

struct SeparabilityVerdict {
  Separability status = Separability::undetermined;
  /// Whether the verdict is decided, i.e. the PPT test is exact here or the
  /// state was shown entangled.
  bool exact = false;
  std::vector<SeparabilityReason> reasons;
};

/// True when PPT decides separability of every block for this basis:
/// M = 2, or m = 1, or m = M - 1.
bool ppt_exact_for_basis(const BasisTable& basis);

/// Entangled if rho has coherences between different k, or some nonempty
/// block is NPT. Otherwise separable where PPT is exact (see
/// ppt_exact_for_basis, plus blocks that are 1xd or no larger than 2x3), else undetermined.
SeparabilityVerdict is_separable(const DensityMatrix& rho, double tol = 1e-12);

/// Block-level PPT test of a dim_first x dim_second density matrix.
bool is_ppt(const Matrix& block, Eigen::Index dim_first, Eigen::Index dim_second, double tol = 1e-12);

enum class Side { first, second };

struct ReducedState {
  HermitianMatrix matrix;  // A_dim x A_dim or B_dim x B_dim
  double entropy = 0.0;    // -Tr r ln r
  double purity = 0.0;     // Tr r^2
};

/// Partial trace of the embedded state over the opposite factor.
ReducedState reduced_state(const DensityMatrix& rho, Side keep);

}  // namespace bosent
