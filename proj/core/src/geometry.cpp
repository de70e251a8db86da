#include "bosent/geometry.hpp"

#include <cmath>

#include "bosent/blocks.hpp"
#include "bosent/errors.hpp"
#include "bosent/modes.hpp"

namespace bosent {

std::vector<BorderPoint> border_probe(const DensityMatrix& anchor, const DensityMatrix& perturbation,
                                      std::span<const double> eps_grid, double tol) {
  if (anchor.basis().bipartition() != perturbation.basis().bipartition()) {
    throw ValidationError("border probe: anchor and perturbation live on different bases");
  }
  std::vector<std::string> errors;
  if (is_separable(anchor, tol).status != Separability::separable) {
    errors.push_back("border probe: anchor state is not separable");
  }
  if (is_block_diagonal(perturbation, tol)) {
    errors.push_back("border probe: perturbation must be non-block-diagonal");
  }
  for (double e : eps_grid) {
    if (!(e >= 0.0)) errors.push_back("border probe: epsilon values must be nonnegative");
  }
  if (!errors.empty()) throw ValidationError(std::move(errors));

  std::vector<BorderPoint> out;
  out.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    const Matrix m = (anchor.matrix() + eps * perturbation.matrix()) / (1.0 + eps);
    const DensityMatrix rho = DensityMatrix::from_trusted(anchor.basis_ptr(), m);
    out.push_back({eps, is_separable(rho, tol), non_block_max(rho)});
  }
  return out;
}

std::vector<double> default_epsilon_grid() {
  std::vector<double> g;
  for (int e = 1; e <= 8; ++e) g.push_back(std::pow(10.0, -e));
  return g;
}

std::vector<WernerPoint> werner_scan(BasisPtr basis, std::span<const double> p_grid) {
  if (!basis || !basis->is_two_mode()) throw ValidationError("Werner scan requires a two-mode basis");
  const PureState psi = maximally_entangled(basis);
  std::vector<WernerPoint> out;
  out.reserve(p_grid.size());
  for (double p : p_grid) {
    const DensityMatrix rho = werner_like(p, psi);
    out.push_back({p, negativity(rho), is_separable(rho)});
  }
  return out;
}

std::vector<double> uniform_grid(int steps) {
  if (steps < 1) throw ValidationError("grid needs at least one step");
  std::vector<double> g;
  for (int i = 0; i <= steps; ++i) g.push_back(static_cast<double>(i) / steps);
  return g;
}

SweepResult bipartition_sweep(const DensityMatrix& rho, int samples, std::uint64_t seed, double tol) {
  if (samples < 1) throw ValidationError("sweep needs at least one sample");
  const BasisTable& basis = rho.basis();
  std::mt19937_64 rng(seed);
  SweepResult out;
  int separable = 0;
  for (int i = 0; i < samples; ++i) {
    const bool witness = i == 0;
    const ModeUnitary u =
        witness ? embedded_beamsplitter(basis.modes(), 0, basis.first_modes()) : random_mode_unitary(basis.modes(), rng);
    const DensityMatrix moved = transform_state(rho, u);
    SweepSample s{i, witness, is_separable(moved, tol), non_block_max(moved)};
    if (s.verdict.status == Separability::separable) ++separable;
    out.samples.push_back(std::move(s));
  }
  out.fraction_separable = static_cast<double>(separable) / samples;
  return out;
}

}  // namespace bosent
