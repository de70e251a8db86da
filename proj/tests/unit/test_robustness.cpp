#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bosent/blocks.hpp"
#include "bosent/entanglement.hpp"
#include "bosent/errors.hpp"
#include "bosent/robustness.hpp"
#include "oracles.hpp"

using namespace bosent;

namespace {
DensityMatrix phase_density(int n) {
  const std::vector<double> zeros(static_cast<std::size_t>(n + 1), 0.0);
  return to_density(phase_state(make_basis(n, 2, 1), zeros));
}

// (2,4,2) state supported on the 2x2 block k=1.
DensityMatrix bell_in_middle_block() {
  const auto b = make_basis(2, 4, 2);
  Vector v = Vector::Zero(10);
  v(static_cast<Eigen::Index>(b->flat_index(1, 1, 1))) = 1.0 / std::sqrt(2.0);
  v(static_cast<Eigen::Index>(b->flat_index(1, 2, 2))) = 1.0 / std::sqrt(2.0);
  return to_density(PureState::make(b, v));
}

Matrix pure_block(Eigen::Index da, Eigen::Index db, std::mt19937_64& rng, std::vector<double>* schmidt_out = nullptr) {
  const Vector v = oracle::random_vector(da * db, rng);
  if (schmidt_out) {
    Matrix c(da, db);
    for (Eigen::Index a = 0; a < da; ++a)
      for (Eigen::Index b = 0; b < db; ++b) c(a, b) = v(a * db + b);
    Eigen::SelfAdjointEigenSolver<Matrix> es(c * c.adjoint(), Eigen::EigenvaluesOnly);
    schmidt_out->clear();
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) schmidt_out->push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i))));
  }
  return v * v.adjoint();
}

bool ppt(const Matrix& m, Eigen::Index da, Eigen::Index db, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(oracle::loop_partial_transpose(m, da, db), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}
}  // namespace

TEST(BlockRobustness, ProductBlockIsZero) {
  Matrix p = Matrix::Zero(4, 4);
  p(1, 1) = 1.0;
  for (auto kind : {RobustnessKind::standard, RobustnessKind::generalized}) {
    EXPECT_EQ(block_robustness(p, 2, 2, kind).value, 0.0);
    EXPECT_EQ(ppt_robustness(p, 2, 2, kind).value, 0.0);
  }
}

TEST(BlockRobustness, TrivialFactor) {
  std::mt19937_64 rng(71);
  const Matrix r = oracle::random_density(4, rng);
  const auto br = block_robustness(r, 1, 4, RobustnessKind::standard);
  EXPECT_EQ(br.value, 0.0);
  EXPECT_EQ(br.method, BlockMethod::trivial_factor);
  EXPECT_EQ(block_robustness(r, 4, 1, RobustnessKind::generalized).value, 0.0);
}

TEST(BlockRobustness, BellBlockEqualsTwiceNegativity) {
  // Schmidt coefficients (1/sqrt2, 1/sqrt2): (sum s)^2 - 1 = 1 while the
  // negativity (||rho^T||_1 - 1) / 2 is 1/2.
  const auto mixer = oracle::phase_average_mixer({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
  EXPECT_NEAR(mixer.mixer.trace().real(), 1.0, 1e-15);
  EXPECT_TRUE(ppt(mixer.state + mixer.mixer, 2, 2, 1e-15));
  for (auto kind : {RobustnessKind::standard, RobustnessKind::generalized}) {
    const auto br = block_robustness(mixer.state, 2, 2, kind);
    EXPECT_EQ(br.method, BlockMethod::pure_negativity);
    EXPECT_NEAR(br.value, 1.0, 1e-12);
    const auto oracle_value = ppt_robustness(mixer.state, 2, 2, kind);
    EXPECT_NEAR(oracle_value.value, 1.0, 1e-8);
    EXPECT_LE(oracle_value.lower, 1.0 + 1e-12);
  }
}

TEST(BlockRobustnessProperty, PureBlocksAgreeWithOracles) {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index db = trial % 2 == 0 ? 2 : 3;
    std::vector<double> s;
    const Matrix block = pure_block(2, db, rng, &s);
    const double analytic = pure_state_robustness(s);
    // Upper bound from an explicit separable decomposition.
    std::sort(s.begin(), s.end(), std::greater<>());
    const auto mixer = oracle::phase_average_mixer(s);
    EXPECT_NEAR(mixer.mixer.trace().real(), analytic, 1e-12);
    EXPECT_TRUE(ppt(mixer.state + mixer.mixer, static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(s.size()), 1e-14));
    for (auto kind : {RobustnessKind::standard, RobustnessKind::generalized}) {
      const auto r = ppt_robustness(block, 2, db, kind);
      EXPECT_NEAR(r.value, analytic, 1e-6);
      EXPECT_LE(r.lower, analytic + 1e-9);
      EXPECT_NEAR(block_robustness(block, 2, db, kind).value, analytic, 1e-9);
    }
  }
}

TEST(BlockRobustnessProperty, GeneralizedBelowStandardOnMixedBlocks) {
  std::mt19937_64 rng(73);
  int entangled = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index db = trial % 2 == 0 ? 2 : 3;
    const Matrix block = oracle::random_density(2 * db, rng, 2);
    const auto rs = block_robustness(block, 2, db, RobustnessKind::standard);
    const auto rg = block_robustness(block, 2, db, RobustnessKind::generalized);
    EXPECT_LE(rg.value, rs.value + 1e-8);
    EXPECT_EQ(rs.status, RobustnessStatus::exact);
    if (rs.value > 1e-6) ++entangled;
  }
  EXPECT_GT(entangled, 5);
}

TEST(BlockRobustness, StatusOutsideExactRegime) {
  std::mt19937_64 rng(74);
  Matrix block = 0.9 * pure_block(3, 3, rng) + 0.1 * oracle::random_density(9, rng);
  const auto br = block_robustness(block, 3, 3, RobustnessKind::standard);
  EXPECT_EQ(br.method, BlockMethod::convex_oracle);
  EXPECT_EQ(br.status, RobustnessStatus::lower_bound);
  EXPECT_GT(br.value, 0.0);
  EXPECT_LE(br.gap, 1e-6);
}

TEST(BlockRobustness, SolverFailureSurfaces) {
  std::mt19937_64 rng(75);
  RobustnessOptions opts;
  opts.solver.max_iterations = 1;
  const Matrix block = 0.8 * pure_block(2, 2, rng) + 0.2 * Matrix::Identity(4, 4) / 4.0;
  EXPECT_THROW(block_robustness(block, 2, 2, RobustnessKind::standard, opts), SolverError);
}

TEST(Robustness, StandardExamples) {
  for (int n : {2, 3, 5}) {
    const auto r = robustness_standard(phase_density(n));
    EXPECT_TRUE(std::isinf(r.value));
    EXPECT_TRUE(std::isinf(robustness_standard(negative_coherence_state(make_basis(n, 2, 1))).value));
  }
  EXPECT_EQ(robustness_standard(totally_mixed(make_basis(2, 4, 2))).value, 0.0);
  EXPECT_EQ(robustness_generalized(totally_mixed(make_basis(2, 4, 2))).value, 0.0);
  EXPECT_NEAR(robustness_standard(bell_in_middle_block()).value, 1.0, 1e-12);
}

TEST(Robustness, GeneralizedPhaseStateInterval) {
  for (int n : {2, 3, 5}) {
    const auto r = robustness_generalized(phase_density(n));
    EXPECT_EQ(r.status, RobustnessStatus::bounds_only);
    EXPECT_NEAR(r.lower, 0.0, 1e-15);
    EXPECT_NEAR(r.upper, n, 1e-9);
    ASSERT_TRUE(r.bounds.has_value());
    EXPECT_NEAR(r.bounds->lambda_d, n, 1e-9);
    EXPECT_NEAR(r.bounds->l1, n, 1e-9);
    EXPECT_NEAR(r.bounds->l1_nd, n, 1e-9);
  }
}

TEST(Robustness, BoundExamples) {
  std::mt19937_64 rng(76);
  for (int n : {2, 3, 5}) {
    const auto neg = negative_coherence_state(make_basis(n, 2, 1));
    EXPECT_NEAR(rg_bound_lambda(neg), 1.0 / n, 1e-9);
    EXPECT_NEAR(rg_bounds(neg).l1_nd, 1.0, 1e-9);
    EXPECT_NEAR(rg_bound_l1(neg), 1.0, 1e-9);
    EXPECT_NEAR(robustness_generalized(neg).upper, 1.0 / n, 1e-9);
  }
  Matrix diag = Matrix::Zero(4, 4);
  diag.diagonal() << 0.1, 0.2, 0.3, 0.4;
  const auto d = DensityMatrix::from_matrix(make_basis(3, 2, 1), diag);
  EXPECT_EQ(rg_bound_lambda(d), 0.0);
  EXPECT_EQ(rg_bound_l1(d), 0.0);
}

TEST(Robustness, PureBlockMixtureKindsAgree) {
  std::mt19937_64 rng(77);
  const auto b = make_basis(2, 4, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = oracle::random_block_diagonal(b, rng, true);
    const auto rs = robustness_standard(rho);
    const auto rg = robustness_generalized(rho);
    EXPECT_NEAR(rs.value, rg.value, 1e-12);
    EXPECT_EQ(rs.status, RobustnessStatus::exact);
    // Pure-block value is (sum s)^2 - 1 per block, twice the block negativity.
    EXPECT_NEAR(rs.value, 2.0 * negativity(rho), 1e-9);
    EXPECT_GE(rs.value + 1e-12, negativity(rho));
  }
}

TEST(RobustnessProperty, Convexity) {
  std::mt19937_64 rng(78);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto b = make_basis(2, 4, 2);
  for (int trial = 0; trial < 6; ++trial) {
    const auto r1 = oracle::random_block_diagonal(b, rng, trial % 2 == 0);
    const auto r2 = oracle::random_block_diagonal(b, rng, false);
    const double l = u(rng);
    const auto mixed = DensityMatrix::from_trusted(b, l * r1.matrix() + (1 - l) * r2.matrix());
    for (auto kind : {RobustnessKind::standard, RobustnessKind::generalized}) {
      EXPECT_LE(robustness(mixed, kind).value,
                l * robustness(r1, kind).value + (1 - l) * robustness(r2, kind).value + 1e-6);
    }
  }
}

TEST(RobustnessProperty, StandardWitnessSeparates) {
  std::mt19937_64 rng(79);
  RobustnessOptions opts;
  opts.keep_witness = true;
  for (const auto& shape : std::vector<std::tuple<int, int, int>>{{2, 4, 2}, {3, 4, 2}}) {
    const auto b = make_basis(std::get<0>(shape), std::get<1>(shape), std::get<2>(shape));
    for (int trial = 0; trial < 4; ++trial) {
      const auto rho = oracle::random_block_diagonal(b, rng, trial % 2 == 0);
      const auto r = robustness_standard(rho, opts);
      ASSERT_TRUE(r.mixing.has_value());
      EXPECT_NEAR(r.mixing->trace().real(), r.value, 1e-7);
      const Matrix sum = (rho.matrix() + *r.mixing) / (1.0 + r.value);
      const auto mixed = DensityMatrix::from_trusted(b, sum);
      EXPECT_EQ(is_separable(mixed, 1e-12).status, Separability::separable) << "trial " << trial;
      EXPECT_GE(linalg::min_eigenvalue(partial_transpose(mixed)), -1e-7);
      const auto sigma = DensityMatrix::from_trusted(b, *r.mixing / std::max(r.value, 1e-300));
      if (r.value > 1e-9) EXPECT_GE(linalg::min_eigenvalue(partial_transpose(sigma)), -1e-7);
    }
  }
}

TEST(RobustnessProperty, GeneralizedWitnessIsAState) {
  RobustnessOptions opts;
  opts.keep_witness = true;
  for (int n : {2, 3}) {
    for (const auto& rho : {phase_density(n), negative_coherence_state(make_basis(n, 2, 1))}) {
      const auto r = robustness_generalized(rho, opts);
      ASSERT_TRUE(r.mixing.has_value());
      EXPECT_GE(linalg::min_eigenvalue(HermitianMatrix(*r.mixing)), -1e-12);
      EXPECT_NEAR(r.mixing->trace().real(), r.bounds->l1, 1e-12);
      const auto sum = DensityMatrix::from_trusted(rho.basis_ptr(), rho.matrix() + *r.mixing);
      EXPECT_TRUE(is_block_diagonal(sum));
      EXPECT_EQ(is_separable(sum).status, Separability::separable);
    }
  }
}

TEST(Superselection, WeightedSectors) {
  const auto bell = bell_in_middle_block();
  const auto single = SectoredState::make({{1.0, bell}});
  EXPECT_NEAR(robustness_superselection(single, RobustnessKind::standard).value, robustness_standard(bell).value, 1e-15);

  const auto sep = SectoredState::make({{0.5, totally_mixed(make_basis(1, 4, 2))}, {0.5, totally_mixed(make_basis(2, 4, 2))}});
  EXPECT_EQ(robustness_superselection(sep, RobustnessKind::standard).value, 0.0);

  const auto half = SectoredState::make({{0.5, totally_mixed(make_basis(1, 4, 2))}, {0.5, bell}});
  for (auto kind : {RobustnessKind::standard, RobustnessKind::generalized}) {
    const auto r = robustness_superselection(half, kind);
    EXPECT_NEAR(r.value, 0.5, 1e-12);
    ASSERT_EQ(r.sectors.size(), 2u);
    EXPECT_EQ(r.sectors[1].particles, 2);
  }

  const auto with_phase = SectoredState::make({{0.5, phase_density(1)}, {0.5, phase_density(2)}});
  EXPECT_TRUE(std::isinf(robustness_superselection(with_phase, RobustnessKind::standard).value));
  EXPECT_EQ(robustness_superselection(with_phase, RobustnessKind::generalized).status, RobustnessStatus::bounds_only);
}

TEST(Robustness, JsonInfinity) {
  const auto j = to_json(robustness_standard(phase_density(2)));
  EXPECT_EQ(j["value"], "inf");
  EXPECT_EQ(j["kind"], "standard");
  const auto g = to_json(robustness_generalized(phase_density(2)));
  EXPECT_EQ(g["status"], "bounds_only");
  EXPECT_NEAR(g["bounds"]["lambda_D"].get<double>(), 2.0, 1e-9);
}
