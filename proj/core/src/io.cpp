#include "bosent/io.hpp"

#include <fstream>

#include "bosent/errors.hpp"

namespace bosent {

namespace {

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ValidationError("complex entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

int required_int(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw ValidationError(std::string("state file: missing integer field \"") + key + "\"");
  }
  return j[key].get<int>();
}

}  // namespace

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw ValidationError("matrix rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError("matrix row " + std::to_string(i) + " has the wrong length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

nlohmann::json vector_to_json(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ValidationError("amplitudes must be a nonempty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

nlohmann::json to_json(const DensityMatrix& rho) {
  const auto& b = rho.basis();
  return {{"N", b.particles()}, {"M", b.modes()}, {"m", b.first_modes()}, {"matrix", matrix_to_json(rho.matrix())}};
}

nlohmann::json to_json(const PureState& psi) {
  const auto& b = psi.basis();
  return {{"N", b.particles()},
          {"M", b.modes()},
          {"m", b.first_modes()},
          {"amplitudes", vector_to_json(psi.amplitudes())}};
}

nlohmann::json to_json(const SectoredState& s) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : s.components()) comps.push_back({{"weight", c.weight}, {"state", to_json(c.state)}});
  return {{"components", std::move(comps)}};
}

nlohmann::json to_json(const LoadedState& s) {
  return std::visit([](const auto& v) { return to_json(v); }, s);
}

LoadedState parse_state(const nlohmann::json& j, std::size_t cap) {
  if (!j.is_object()) throw ValidationError("state document must be a JSON object");
  if (j.contains("components")) {
    if (!j["components"].is_array()) throw ValidationError("\"components\" must be an array");
    std::vector<SectoredState::Component> comps;
    for (const auto& c : j["components"]) {
      if (!c.contains("weight") || !c["weight"].is_number() || !c.contains("state")) {
        throw ValidationError("each component needs a numeric \"weight\" and a \"state\"");
      }
      comps.push_back({c["weight"].get<double>(), as_density(parse_state(c["state"], cap))});
    }
    return SectoredState::make(std::move(comps));
  }

  const int n = required_int(j, "N");
  const int modes = required_int(j, "M");
  const int m = required_int(j, "m");
  const BasisPtr basis = make_basis(n, modes, m, cap);
  if (j.contains("amplitudes")) return PureState::make(basis, vector_from_json(j["amplitudes"]));
  if (!j.contains("matrix")) throw ValidationError("state file needs \"matrix\" or \"amplitudes\"");
  return DensityMatrix::from_matrix(basis, matrix_from_json(j["matrix"]));
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

LoadedState parse_state_file(const std::filesystem::path& path, std::size_t cap) {
  return parse_state(read_json_file(path), cap);
}

DensityMatrix as_density(const LoadedState& s) {
  if (const auto* rho = std::get_if<DensityMatrix>(&s)) return *rho;
  if (const auto* psi = std::get_if<PureState>(&s)) return to_density(*psi);
  throw ValidationError("expected a fixed-N state, got a superselection mixture");
}

ModeUnitary parse_unitary(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("matrix")) throw ValidationError("unitary file needs \"M\" and \"matrix\"");
  Matrix u = matrix_from_json(j["matrix"]);
  if (j.contains("M") && j["M"].get<int>() != u.rows()) {
    throw ValidationError("unitary file: \"M\" does not match the matrix size");
  }
  return ModeUnitary(std::move(u));
}

ModeUnitary parse_unitary_file(const std::filesystem::path& path) { return parse_unitary(read_json_file(path)); }

nlohmann::json to_json(const ModeUnitary& u) { return {{"M", u.modes()}, {"matrix", matrix_to_json(u.matrix())}}; }

}  // namespace bosent
