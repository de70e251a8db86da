#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bosent/blocks.hpp"
#include "bosent/entanglement.hpp"
#include "bosent/states.hpp"

namespace bosent {

struct BorderPoint {
  double epsilon = 0.0;
  SeparabilityVerdict verdict;
  double non_block_linf = 0.0;  // max |(rho_eps)_NB|
};

/// Verdicts along rho_eps = (anchor + eps * perturbation) / (1 + eps).
/// The anchor must be separable and the perturbation non-block-diagonal.
std::vector<BorderPoint> border_probe(const DensityMatrix& anchor, const DensityMatrix& perturbation,
                                      std::span<const double> eps_grid, double tol = kBlockDiagonalTol);

/// 1e-1, 1e-2, ..., 1e-8.
std::vector<double> default_epsilon_grid();

struct WernerPoint {
  double p = 0.0;
  double negativity = 0.0;
  SeparabilityVerdict verdict;
};

/// Negativity and verdict of p |psi><psi| + (1 - p) I / D, psi the
/// maximally entangled two-mode state, along `p_grid`.
std::vector<WernerPoint> werner_scan(BasisPtr basis, std::span<const double> p_grid);

/// i / steps for i = 0..steps.
std::vector<double> uniform_grid(int steps);

struct SweepSample {
  int index = 0;
  bool beamsplitter = false;
  SeparabilityVerdict verdict;
  double non_block_linf = 0.0;
};

struct SweepResult {
  std::vector<SweepSample> samples;
  double fraction_separable = 0.0;
};

/// Re-examines rho under `samples` mode transformations: the deterministic
/// beamsplitter between mode 0 and mode m comes first, followed by seeded
/// Haar-random mode unitaries.
SweepResult bipartition_sweep(const DensityMatrix& rho, int samples, std::uint64_t seed,
                              double tol = kBlockDiagonalTol);

}  // namespace bosent
