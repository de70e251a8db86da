#include <gtest/gtest.h>

#include <random>

#include "bosent/blocks.hpp"
#include "oracles.hpp"

using namespace bosent;

TEST(Blocks, BlockDiagonalHasNoResidue) {
  std::mt19937_64 rng(31);
  const auto rho = oracle::random_block_diagonal(make_basis(2, 4, 2), rng, false);
  const auto dec = block_decompose(rho);
  EXPECT_EQ(linalg::max_abs(dec.non_block), 0.0);
  EXPECT_TRUE(is_block_diagonal(rho));
}

TEST(Blocks, FockVectorWeights) {
  const auto b = make_basis(2, 4, 2);
  Vector v = Vector::Zero(10);
  v(static_cast<Eigen::Index>(b->flat_index(1, 2, 1))) = 1.0;
  const auto dec = block_decompose(to_density(PureState::make(b, v)));
  EXPECT_EQ(dec.weights, (std::vector<double>{0.0, 1.0, 0.0}));
  EXPECT_FALSE(dec.blocks[0].has_value());
  ASSERT_TRUE(dec.blocks[1].has_value());
  EXPECT_FALSE(dec.blocks[2].has_value());
  EXPECT_NEAR(dec.blocks[1]->trace().real(), 1.0, 1e-15);
}

TEST(Blocks, Predicates) {
  for (int n : {1, 2, 5}) {
    const auto b = make_basis(n, 2, 1);
    EXPECT_TRUE(is_block_diagonal(totally_mixed(b)));
    const std::vector<double> zeros(static_cast<std::size_t>(n + 1), 0.0);
    const auto phase = to_density(phase_state(b, zeros));
    EXPECT_FALSE(is_block_diagonal(phase));
    EXPECT_NEAR(non_block_max(phase), 1.0 / (n + 1), 1e-15);
    const auto neg = negative_coherence_state(b);
    EXPECT_FALSE(is_block_diagonal(neg));
    EXPECT_NEAR(non_block_max(neg), 1.0 / (n * (n + 1.0)), 1e-15);
  }
}

TEST(BlocksProperty, ReassemblyAndTraces) {
  std::mt19937_64 rng(32);
  for (const auto& [n, modes, m] : std::vector<std::tuple<int, int, int>>{{2, 4, 2}, {3, 3, 1}, {3, 2, 1}, {2, 5, 2}}) {
    const auto b = make_basis(n, modes, m);
    for (int trial = 0; trial < 10; ++trial) {
      const auto rho = DensityMatrix::from_matrix(b, oracle::random_density(static_cast<Eigen::Index>(b->dim()), rng));
      const auto dec = block_decompose(rho);
      EXPECT_LE(linalg::max_abs(dec.block_part + dec.non_block - rho.matrix()), 1e-14);
      EXPECT_LE(linalg::max_abs(dec.diagonal + dec.off_diagonal - rho.matrix()), 1e-14);
      double sum = 0.0;
      for (double p : dec.weights) sum += p;
      EXPECT_NEAR(sum, 1.0, 1e-10);
      EXPECT_NEAR(dec.block_part.trace().real(), 1.0, 1e-10);
      if (b->is_two_mode()) {
        EXPECT_LE(linalg::max_abs(dec.block_part - dec.diagonal), 1e-16);
        EXPECT_LE(linalg::max_abs(dec.non_block - dec.off_diagonal), 1e-16);
      }
    }
  }
}

TEST(Blocks, Json) {
  const auto j = to_json(block_decompose(totally_mixed(make_basis(2, 4, 2))), *make_basis(2, 4, 2));
  EXPECT_EQ(j["p"].size(), 3u);
  EXPECT_EQ(j["block_dims"][1], (nlohmann::json{2, 2}));
}
