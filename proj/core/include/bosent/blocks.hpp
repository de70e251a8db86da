#pragma once

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "bosent/states.hpp"

namespace bosent {

inline constexpr double kBlockDiagonalTol = 1e-12;
inline constexpr double kEmptyBlockWeight = 1e-12;

/// rho = block_part + non_block = diagonal + off_diagonal, with block_part
/// = sum_k p_k rho_k over the fixed-k sectors.
struct BlockDecomposition {
  std::vector<double> weights;                // p_k
  std::vector<std::optional<Matrix>> blocks;  // rho_k, unit trace; empty when p_k <= 1e-12
  Matrix block_part;                          // rho_B
  Matrix non_block;                           // rho_NB
  Matrix diagonal;                            // rho_D
  Matrix off_diagonal;                        // rho_ND
};

BlockDecomposition block_decompose(const DensityMatrix& rho);

/// Unnormalized principal submatrix of sector k.
Matrix sector_block(const DensityMatrix& rho, int k);

/// max |(rho_NB)_ij|.
double non_block_max(const DensityMatrix& rho);

/// True iff max |(rho_NB)_ij| <= tol (1 + max |rho_ij|).
bool is_block_diagonal(const DensityMatrix& rho, double tol = kBlockDiagonalTol);

/// {"p": [...], "block_dims": [[D_k, D_{N-k}], ...], "nb_linf": ...}.
nlohmann::json to_json(const BlockDecomposition& dec, const BasisTable& basis);

}  // namespace bosent
