#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bosent/blocks.hpp"
#include "bosent/lmi_solver.hpp"
#include "bosent/states.hpp"

namespace bosent {

enum class RobustnessKind { standard, generalized };
enum class RobustnessStatus { exact, lower_bound, bounds_only };
enum class BlockMethod { trivial_factor, pure_negativity, convex_oracle };

std::string_view to_string(RobustnessKind k);
std::string_view to_string(RobustnessStatus s);
std::string_view to_string(BlockMethod m);

struct RobustnessOptions {
  LmiOptions solver{};
  double block_tol = kBlockDiagonalTol;
  /// Largest eigenvalue above 1 - purity_tol marks a block as pure.
  double purity_tol = 1e-9;
  bool keep_witness = false;
};

/// PPT-relaxed robustness of one bipartite block:
///   minimize Tr X  s.t.  X >= 0,  (rho + X)^T_B >= 0,
/// plus X^T_B >= 0 for the standard kind.
struct ConvexOracleResult {
  double value = 0.0;        // Tr X of a feasible X (upper end)
  double lower = 0.0;        // certified dual bound
  Matrix mixing;             // optimal unnormalized X
  int iterations = 0;
};

ConvexOracleResult ppt_robustness(const Matrix& block, Eigen::Index dim_first, Eigen::Index dim_second,
                                  RobustnessKind kind, const LmiOptions& options = {});

/// Robustness of a pure bipartite state with Schmidt coefficients s:
/// (sum s)^2 - 1, identical for both kinds.
double pure_state_robustness(const std::vector<double>& schmidt_coefficients);

struct BlockRobustness {
  int k = 0;
  double weight = 0.0;  // p_k
  double value = 0.0;   // R(rho_k)
  BlockMethod method = BlockMethod::trivial_factor;
  RobustnessStatus status = RobustnessStatus::exact;
  double gap = 0.0;
  Matrix mixing;  // unnormalized optimal X for rho_k, when requested
};

/// R(rho_k) of a unit-trace block on C^{dim_first} (x) C^{dim_second}.
BlockRobustness block_robustness(const Matrix& block, Eigen::Index dim_first, Eigen::Index dim_second,
                                 RobustnessKind kind, const RobustnessOptions& options = {});

struct GeneralizedBounds {
  double lambda_d = 0.0;     // lambda * D
  double l1 = 0.0;           // sum_k p_k R_g(rho_k) + ||rho_NB||_l1
  double l1_nd = 0.0;        // ||rho_ND||_l1
  double block_term = 0.0;   // sum_k p_k R_g(rho_k)
  double non_block_l1 = 0.0; // ||rho_NB||_l1
};

struct SectorReport;

struct RobustnessReport {
  RobustnessKind kind = RobustnessKind::standard;
  double value = 0.0;  // +inf allowed for the standard kind
  RobustnessStatus status = RobustnessStatus::exact;
  double lower = 0.0;  // certified interval, equal to value unless bounds_only
  double upper = 0.0;
  std::vector<BlockRobustness> per_block;
  std::optional<GeneralizedBounds> bounds;
  std::vector<SectorReport> sectors;  // superselection mixtures only
  /// Unnormalized mixing matrix X with rho + X separable (PPT where the
  /// test is not exact); filled when RobustnessOptions::keep_witness is set
  /// and the value is finite.
  std::optional<Matrix> mixing;
  /// Diagonal-dominance correction of the generalized kind.
  std::optional<Matrix> dominance_witness;
};

struct SectorReport {
  int particles = 0;
  double weight = 0.0;
  RobustnessReport report;
};

RobustnessReport robustness_standard(const DensityMatrix& rho, const RobustnessOptions& options = {});
RobustnessReport robustness_generalized(const DensityMatrix& rho, const RobustnessOptions& options = {});
RobustnessReport robustness(const DensityMatrix& rho, RobustnessKind kind, const RobustnessOptions& options = {});

/// lambda * D, lambda the modulus of the most negative eigenvalue of -rho_ND.
double rg_bound_lambda(const DensityMatrix& rho);

/// Diagonal-dominance bound; also carries the rho_D / rho_ND variant.
GeneralizedBounds rg_bounds(const DensityMatrix& rho, const RobustnessOptions& options = {});
double rg_bound_l1(const DensityMatrix& rho, const RobustnessOptions& options = {});

/// Diagonal matrix whose entries are the row sums of |rho_NB|; added to
/// -rho_NB it gives a diagonally dominant, hence positive, matrix.
Matrix diagonal_dominance_witness(const DensityMatrix& rho);

/// Mixing matrix of the diagonal-dominance construction:
/// sum_k p_k X_k - rho_NB + witness, X_k the optimal block mixers.
Matrix generalized_mixing_matrix(const DensityMatrix& rho, const RobustnessOptions& options = {});

/// Weighted sum of per-sector reports; +inf propagates for the standard kind.
RobustnessReport robustness_superselection(const SectoredState& mixture, RobustnessKind kind,
                                           const RobustnessOptions& options = {});

/// Serializes +inf as the string "inf".
nlohmann::json to_json(const RobustnessReport& report, bool emit_witness = false);

}  // namespace bosent
