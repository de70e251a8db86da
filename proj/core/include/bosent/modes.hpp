#pragma once

#include <random>

#include "bosent/states.hpp"

namespace bosent {

inline constexpr double kUnitarityTol = 1e-10;

/// M x M unitary acting on mode operators as a_i^dagger -> sum_j U_ji a_j^dagger.
class ModeUnitary {
 public:
  /// Throws ValidationError unless max |U^dagger U - I| <= 1e-10.
  explicit ModeUnitary(Matrix u);

  int modes() const { return static_cast<int>(u_.rows()); }
  const Matrix& matrix() const { return u_; }

  ModeUnitary adjoint() const { return ModeUnitary(u_.adjoint()); }
  friend ModeUnitary operator*(const ModeUnitary& a, const ModeUnitary& b) { return ModeUnitary(a.u_ * b.u_); }

 private:
  Matrix u_;
};

/// [[1, 1], [1, -1]] / sqrt(2).
ModeUnitary balanced_beamsplitter();

/// Balanced beamsplitter on modes (i, j) of an M-mode system, identity elsewhere.
ModeUnitary embedded_beamsplitter(int modes, int i, int j);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// phases of R's diagonal divided out.
ModeUnitary random_mode_unitary(int modes, std::mt19937_64& rng);

/// Action of the mode unitary on the N-particle sector, a D x D unitary in
/// the flat ordering of `basis`. Column n holds the image of |n>.
/// Throws ValidationError if the mode counts disagree.
Matrix induced_unitary(const ModeUnitary& u, const BasisTable& basis);

DensityMatrix transform_state(const DensityMatrix& rho, const ModeUnitary& u);
PureState transform_state(const PureState& psi, const ModeUnitary& u);

/// n! / prod_i parts_i! for a composition of n.
std::uint64_t multinomial(const Occupation& parts);

}  // namespace bosent
