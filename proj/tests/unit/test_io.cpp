#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "bosent/errors.hpp"
#include "bosent/io.hpp"
#include "oracles.hpp"

using namespace bosent;

namespace {
std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("bosent_io_" + name);
  std::ofstream(path) << content;
  return path;
}

LoadedState through_text(const LoadedState& s) {
  return parse_state(nlohmann::json::parse(to_json(s).dump()));
}
}  // namespace

TEST(Io, TotallyMixedFile) {
  const auto path = temp_file("mixed.json", to_json(totally_mixed(make_basis(2, 4, 2))).dump());
  const auto s = parse_state_file(path);
  ASSERT_TRUE(std::holds_alternative<DensityMatrix>(s));
  EXPECT_LE(linalg::max_abs(std::get<DensityMatrix>(s).matrix() - Matrix::Identity(10, 10) / 10.0), 1e-16);
}

TEST(Io, TraceRejection) {
  nlohmann::json j = to_json(totally_mixed(make_basis(1, 2, 1)));
  j["matrix"] = matrix_to_json(Matrix::Identity(2, 2) * 0.45);
  try {
    parse_state(j);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("trace"), std::string::npos);
  }
}

TEST(Io, NegativeEigenvalueRejection) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.1;
  m(1, 1) = -0.1;
  const nlohmann::json j{{"N", 1}, {"M", 2}, {"m", 1}, {"matrix", matrix_to_json(m)}};
  try {
    parse_state(j);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("PSD"), std::string::npos);
  }
}

TEST(Io, MalformedAndMismatched) {
  EXPECT_THROW(parse_state_file(temp_file("bad.json", "{\"N\": 2, ")), ValidationError);
  EXPECT_THROW(parse_state_file("/nonexistent/state.json"), ValidationError);
  const nlohmann::json wrong_dim{{"N", 2}, {"M", 2}, {"m", 1}, {"matrix", matrix_to_json(Matrix::Identity(2, 2) / 2.0)}};
  EXPECT_THROW(parse_state(wrong_dim), ValidationError);
  EXPECT_THROW(parse_state(nlohmann::json{{"N", 2}, {"M", 2}}), ValidationError);
  EXPECT_THROW(parse_state(nlohmann::json::array()), ValidationError);
  // Plain numbers are real entries; anything else but [re, im] is rejected.
  const auto real_rows = nlohmann::json::parse(R"({"N": 1, "M": 2, "m": 1, "matrix": [[1, 0], [0, 0]]})");
  EXPECT_NO_THROW(parse_state(real_rows));
  const auto triple = nlohmann::json::parse(R"({"N": 1, "M": 2, "m": 1, "matrix": [[[1, 0, 0], 0], [0, 0]]})");
  EXPECT_THROW(parse_state(triple), ValidationError);
}

TEST(Io, RoundTripExact) {
  std::mt19937_64 rng(101);
  for (const auto& [n, modes, m] : std::vector<std::tuple<int, int, int>>{{2, 2, 1}, {2, 4, 2}, {3, 3, 1}}) {
    const auto b = make_basis(n, modes, m);
    const auto d = static_cast<Eigen::Index>(b->dim());
    const auto rho = DensityMatrix::from_matrix(b, oracle::random_density(d, rng));
    const auto rho2 = std::get<DensityMatrix>(through_text(rho));
    EXPECT_LE(linalg::max_abs(rho2.matrix() - rho.matrix()), 1e-14);

    const auto psi = PureState::make(b, oracle::random_vector(d, rng));
    const auto psi2 = std::get<PureState>(through_text(psi));
    EXPECT_LE((psi2.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff(), 1e-14);
  }
  const auto sec = SectoredState::make({{0.25, totally_mixed(make_basis(1, 2, 1))},
                                        {0.75, DensityMatrix::from_matrix(make_basis(2, 2, 1), oracle::random_density(3, rng))}});
  const auto sec2 = std::get<SectoredState>(through_text(sec));
  ASSERT_EQ(sec2.components().size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(sec2.components()[i].weight, sec.components()[i].weight);
    EXPECT_LE(linalg::max_abs(sec2.components()[i].state.matrix() - sec.components()[i].state.matrix()), 1e-14);
  }
}

TEST(Io, Unitary) {
  const auto u = embedded_beamsplitter(3, 0, 1);
  const auto u2 = parse_unitary(nlohmann::json::parse(to_json(u).dump()));
  EXPECT_EQ(u2.matrix(), u.matrix());
  EXPECT_THROW(parse_unitary(nlohmann::json{{"M", 2}, {"matrix", {{{1, 0}, {1, 0}}, {{0, 0}, {1, 0}}}}}), ValidationError);
}

TEST(Io, AsDensity) {
  Vector v(2);
  v << 1.0, 0.0;
  const LoadedState s = PureState::make(make_basis(1, 2, 1), v);
  EXPECT_EQ(as_density(s).matrix()(0, 0), Complex(1.0));
  const LoadedState mixture = SectoredState::make({{1.0, totally_mixed(make_basis(1, 2, 1))}});
  EXPECT_THROW(as_density(mixture), ValidationError);
}
