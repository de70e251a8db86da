#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bosent/entanglement.hpp"
#include "bosent/errors.hpp"
#include "bosent/states.hpp"
#include "oracles.hpp"

using namespace bosent;

namespace {
bool mentions(const ValidationError& e, const std::string& needle) {
  for (const auto& v : e.violations())
    if (v.find(needle) != std::string::npos) return true;
  return false;
}
}  // namespace

TEST(States, FockVectorProjector) {
  const auto b = make_basis(2, 4, 2);
  Vector v = Vector::Zero(10);
  v(4) = 1.0;
  const auto rho = to_density(PureState::make(b, v));
  EXPECT_EQ(rho.matrix()(4, 4), Complex(1.0));
  EXPECT_EQ(linalg::l1_norm(rho.matrix()), 1.0);
}

TEST(States, TwoModeSuperposition) {
  const auto b = make_basis(1, 2, 1);
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const auto rho = to_density(PureState::make(b, v));
  EXPECT_LE(linalg::max_abs(rho.matrix() - Matrix::Constant(2, 2, 0.5)), 1e-15);
}

TEST(States, PhaseStateEntries) {
  const auto b = make_basis(2, 2, 1);
  const std::vector<double> phases{0.2, -0.9, 1.7};
  const auto rho = to_density(phase_state(b, phases));
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l)
      EXPECT_LE(std::abs(rho.matrix()(k, l) - std::polar(1.0 / 3.0, phases[k] - phases[l])), 1e-15);
  const std::vector<double> zeros(3, 0.0);
  const auto psi = phase_state(b, zeros);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(psi.amplitudes()(k).real(), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_THROW(phase_state(b, std::vector<double>{0.0, 0.0}), ValidationError);
  EXPECT_THROW(phase_state(make_basis(2, 4, 2), zeros), ValidationError);
}

TEST(States, TotallyMixed) {
  EXPECT_LE(linalg::max_abs(totally_mixed(make_basis(2, 2, 1)).matrix() - Matrix::Identity(3, 3) / 3.0), 1e-16);
  EXPECT_LE(linalg::max_abs(totally_mixed(make_basis(2, 4, 2)).matrix() - Matrix::Identity(10, 10) / 10.0), 1e-16);
}

TEST(States, NegativeCoherenceN2) {
  const auto rho = negative_coherence_state(make_basis(2, 2, 1));
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) EXPECT_NEAR(rho.matrix()(k, l).real(), k == l ? 1.0 / 3.0 : -1.0 / 6.0, 1e-15);
}

TEST(States, WernerEndpointsAndAffine) {
  const auto b = make_basis(2, 2, 1);
  const auto psi = maximally_entangled(b);
  const Matrix w0 = werner_like(0.0, psi).matrix();
  const Matrix w1 = werner_like(1.0, psi).matrix();
  EXPECT_LE(linalg::max_abs(w0 - totally_mixed(b).matrix()), 1e-15);
  EXPECT_LE(linalg::max_abs(w1 - to_density(psi).matrix()), 1e-15);
  for (double p : {0.01, 0.3, 0.77}) {
    EXPECT_LE(linalg::max_abs(werner_like(p, psi).matrix() - (p * w1 + (1 - p) * w0)), 1e-12);
  }
  EXPECT_GT(negativity(werner_like(0.01, psi)), 0.0);
  EXPECT_THROW(werner_like(1.5, psi), ValidationError);
  Vector v = Vector::Zero(3);
  v(0) = 1.0;
  EXPECT_THROW(werner_like(0.5, PureState::make(b, v)), ValidationError);
}

TEST(States, MaximallyEntangledFourMode) {
  const auto psi = maximally_entangled(make_basis(2, 4, 2));
  const auto s = oracle::schmidt_from_reduced(psi);
  // Schmidt slots: min(1,3) + min(2,2) + min(3,1) = 4.
  ASSERT_EQ(s.size(), 4u);
  for (double c : s) EXPECT_NEAR(c, 0.5, 1e-14);
}

TEST(States, ValidationListsEveryViolation) {
  const auto b = make_basis(1, 2, 1);
  Matrix m(2, 2);
  m << 1.1, 0.3, 0.0, -0.3;  // non-Hermitian, trace 0.8, indefinite
  try {
    DensityMatrix::from_matrix(b, m);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_TRUE(mentions(e, "Hermiticity"));
    EXPECT_TRUE(mentions(e, "trace"));
    EXPECT_TRUE(mentions(e, "PSD"));
    EXPECT_EQ(e.violations().size(), 3u);
  }
}

TEST(States, TraceAndPositivityRejections) {
  const auto b = make_basis(1, 2, 1);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 0.45;
  m(1, 1) = 0.45;
  try {
    DensityMatrix::from_matrix(b, m);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_TRUE(mentions(e, "trace"));
    EXPECT_FALSE(mentions(e, "PSD"));
  }
  m(0, 0) = 1.1;
  m(1, 1) = -0.1;
  try {
    DensityMatrix::from_matrix(b, m);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_TRUE(mentions(e, "PSD"));
    EXPECT_FALSE(mentions(e, "trace"));
  }
  EXPECT_THROW(DensityMatrix::from_matrix(b, Matrix::Identity(3, 3) / 3.0), ValidationError);
}

TEST(States, NearValidInputRenormalized) {
  const auto b = make_basis(1, 2, 1);
  const auto rho = DensityMatrix::from_matrix(b, Matrix::Identity(2, 2) * (0.5 + 2e-7));
  EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-15);
  Vector v(2);
  v << 1.0 + 1e-7, 0.0;
  EXPECT_NEAR(PureState::make(b, v).amplitudes().norm(), 1.0, 1e-15);
  v << 1.1, 0.0;
  EXPECT_THROW(PureState::make(b, v), ValidationError);
  EXPECT_THROW(PureState::make(b, Vector::Zero(2)), ValidationError);
}

TEST(States, SectoredContainer) {
  const auto one = SectoredState::make({{1.0, totally_mixed(make_basis(2, 2, 1))}});
  EXPECT_EQ(one.components().size(), 1u);
  const auto two = SectoredState::make({{0.5, totally_mixed(make_basis(1, 2, 1))}, {0.5, totally_mixed(make_basis(2, 2, 1))}});
  EXPECT_EQ(two.components().size(), 2u);
  EXPECT_THROW(SectoredState::make({{0.5, totally_mixed(make_basis(1, 2, 1))}, {0.5, totally_mixed(make_basis(1, 2, 1))}}),
               ValidationError);
  EXPECT_THROW(SectoredState::make({{0.5, totally_mixed(make_basis(1, 2, 1))}, {0.5, totally_mixed(make_basis(2, 3, 1))}}),
               ValidationError);
  EXPECT_THROW(SectoredState::make({{0.7, totally_mixed(make_basis(1, 2, 1))}, {0.5, totally_mixed(make_basis(2, 2, 1))}}),
               ValidationError);
}

TEST(StatesProperty, ConstructorsSatisfyInvariants) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ph(-std::numbers::pi, std::numbers::pi);
  for (int n = 1; n <= 5; ++n) {
    const auto b = make_basis(n, 2, 1);
    std::vector<double> phases(static_cast<std::size_t>(n + 1));
    for (auto& p : phases) p = ph(rng);
    const auto rho = to_density(phase_state(b, phases));
    for (int k = 0; k <= n; ++k) EXPECT_NEAR(rho.matrix()(k, k).real(), 1.0 / (n + 1), 1e-16);
    for (const auto& m : {rho.matrix(), negative_coherence_state(b).matrix(), totally_mixed(b).matrix(),
                          werner_like(0.4, maximally_entangled(b)).matrix()}) {
      EXPECT_NO_THROW(DensityMatrix::from_matrix(b, m));
    }
  }
}
