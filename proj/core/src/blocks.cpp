#include "bosent/blocks.hpp"

namespace bosent {

Matrix sector_block(const DensityMatrix& rho, int k) {
  const Sector& s = rho.basis().sector(k);
  const auto off = static_cast<Eigen::Index>(s.offset);
  const auto n = static_cast<Eigen::Index>(s.dim());
  return rho.matrix().block(off, off, n, n);
}

BlockDecomposition block_decompose(const DensityMatrix& rho) {
  const BasisTable& basis = rho.basis();
  const Matrix& m = rho.matrix();
  BlockDecomposition dec;
  dec.block_part = Matrix::Zero(m.rows(), m.cols());
  for (const auto& s : basis.sectors()) {
    const auto off = static_cast<Eigen::Index>(s.offset);
    const auto n = static_cast<Eigen::Index>(s.dim());
    const Matrix sub = m.block(off, off, n, n);
    dec.block_part.block(off, off, n, n) = sub;
    const double p = sub.trace().real();
    dec.weights.push_back(p);
    if (p > kEmptyBlockWeight) {
      dec.blocks.emplace_back(sub / p);
    } else {
      dec.blocks.emplace_back(std::nullopt);
    }
  }
  dec.non_block = m - dec.block_part;
  dec.diagonal = Matrix(m.diagonal().asDiagonal());
  dec.off_diagonal = m - dec.diagonal;
  return dec;
}

double non_block_max(const DensityMatrix& rho) {
  const BasisTable& basis = rho.basis();
  const Matrix& m = rho.matrix();
  double worst = 0.0;
  for (const auto& row : basis.sectors()) {
    for (const auto& col : basis.sectors()) {
      if (row.k == col.k) continue;
      const auto blk = m.block(static_cast<Eigen::Index>(row.offset), static_cast<Eigen::Index>(col.offset),
                               static_cast<Eigen::Index>(row.dim()), static_cast<Eigen::Index>(col.dim()));
      if (blk.size() > 0) worst = std::max(worst, blk.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

bool is_block_diagonal(const DensityMatrix& rho, double tol) {
  return non_block_max(rho) <= tol * linalg::tolerance_scale(rho.matrix());
}

nlohmann::json to_json(const BlockDecomposition& dec, const BasisTable& basis) {
  nlohmann::json dims = nlohmann::json::array();
  for (const auto& s : basis.sectors()) dims.push_back({s.dim_first(), s.dim_second()});
  const double nb = dec.non_block.size() ? dec.non_block.cwiseAbs().maxCoeff() : 0.0;
  return {{"p", dec.weights}, {"block_dims", std::move(dims)}, {"nb_linf", nb}};
}

}  // namespace bosent
