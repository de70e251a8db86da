#pragma once

#include <span>
#include <vector>

#include "bosent/fock_basis.hpp"
#include "bosent/linalg.hpp"

namespace bosent {

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityTol = 1e-9;
inline constexpr double kNormTol = 1e-10;
/// Inputs this close to valid are renormalized instead of rejected.
inline constexpr double kRenormalizeTol = 1e-6;

/// Density matrix over the flat ordering of a BasisTable. Hermitian, unit
/// trace, positive semidefinite.
class DensityMatrix {
 public:
  /// Validates every invariant and reports all violations at once. A trace
  /// within 1e-6 of one is rescaled exactly.
  static DensityMatrix from_matrix(BasisPtr basis, const Matrix& m);

  /// For matrices valid by construction (convex combinations, unitary
  /// conjugation). Symmetrizes and rescales the trace, nothing else.
  static DensityMatrix from_trusted(BasisPtr basis, Matrix m);

  const BasisTable& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const Matrix& matrix() const { return m_; }
  std::size_t dim() const { return basis_->dim(); }
  HermitianMatrix hermitian() const { return HermitianMatrix::from_trusted(m_); }

 private:
  DensityMatrix(BasisPtr basis, Matrix m) : basis_(std::move(basis)), m_(std::move(m)) {}

  BasisPtr basis_;
  Matrix m_;
};

/// Normalized state vector over the flat ordering of a BasisTable.
class PureState {
 public:
  /// Norm within 1e-6 of one is renormalized; otherwise rejected.
  static PureState make(BasisPtr basis, const Vector& amplitudes);

  const BasisTable& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }
  const Vector& amplitudes() const { return amps_; }
  std::size_t dim() const { return basis_->dim(); }

  /// Amplitudes of sector k as a D_k x D_{N-k} matrix.
  Matrix sector_coefficients(int k) const;

 private:
  PureState(BasisPtr basis, Vector amps) : basis_(std::move(basis)), amps_(std::move(amps)) {}

  BasisPtr basis_;
  Vector amps_;
};

DensityMatrix to_density(const PureState& psi);

/// I / D.
DensityMatrix totally_mixed(BasisPtr basis);

/// Two-mode superposition sum_k e^{i phi_k} |k; N-k> / sqrt(N+1).
/// Requires M = 2 and exactly N + 1 phases.
PureState phase_state(BasisPtr basis, std::span<const double> phases);

/// Two-mode mixed state with 1/(N+1) on the diagonal and -1/(N(N+1)) on
/// every off-diagonal entry.
DensityMatrix negative_coherence_state(BasisPtr basis);

/// Pure state with all Schmidt coefficients equal to 1/sqrt(D_schmidt),
/// D_schmidt = sum_k min(D_k, D_{N-k}). Within sector k the sigma-th
/// first-side vector is paired with the sigma-th second-side vector.
PureState maximally_entangled(BasisPtr basis);

/// p |psi><psi| + (1 - p) I / D with psi maximally entangled.
DensityMatrix werner_like(double p, const PureState& psi);

/// Convex combination sum_i w_i rho_i of states over one basis.
DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> states);

/// Incoherent mixture over particle-number sectors; no coherence between
/// different N is representable.
class SectoredState {
 public:
  struct Component {
    double weight;
    DensityMatrix state;
  };

  /// Weights must be nonnegative and sum to one within 1e-10; all
  /// components share (M, m) and carry distinct N.
  static SectoredState make(std::vector<Component> components);

  const std::vector<Component>& components() const { return components_; }
  int modes() const { return components_.front().state.basis().modes(); }
  int first_modes() const { return components_.front().state.basis().first_modes(); }

 private:
  explicit SectoredState(std::vector<Component> c) : components_(std::move(c)) {}
  std::vector<Component> components_;
};

}  // namespace bosent
