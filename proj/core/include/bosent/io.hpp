#pragma once

#include <filesystem>
#include <variant>

#include <nlohmann/json.hpp>

#include "bosent/modes.hpp"
#include "bosent/states.hpp"

namespace bosent {

using LoadedState = std::variant<DensityMatrix, PureState, SectoredState>;

/// [[[re, im], ...], ...], row major.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

/// {"N", "M", "m", "matrix"}.
nlohmann::json to_json(const DensityMatrix& rho);
/// {"N", "M", "m", "amplitudes"}.
nlohmann::json to_json(const PureState& psi);
/// {"components": [{"weight", "state"}]}.
nlohmann::json to_json(const SectoredState& s);
nlohmann::json to_json(const LoadedState& s);

/// Parses and validates a state document. Throws ValidationError listing
/// every violated invariant, or on malformed input.
LoadedState parse_state(const nlohmann::json& j, std::size_t cap = kDefaultDimensionCap);
LoadedState parse_state_file(const std::filesystem::path& path, std::size_t cap = kDefaultDimensionCap);

/// Density matrix of any state document; pure states become projectors.
/// Throws ValidationError for superselection mixtures.
DensityMatrix as_density(const LoadedState& s);

/// {"M", "matrix"}.
ModeUnitary parse_unitary(const nlohmann::json& j);
ModeUnitary parse_unitary_file(const std::filesystem::path& path);
nlohmann::json to_json(const ModeUnitary& u);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace bosent
