#pragma once

#include <filesystem>

#include <json.hpp>

#include "steady/evolve.hpp"
#include "steady/verify.hpp"

namespace steady {

nlohmann::json to_json(const Grid2D& g);
nlohmann::json to_json(const CellGrid& g);
nlohmann::json to_json(const ResidualReport& r);
nlohmann::json to_json(const DriftReport& r);
nlohmann::json to_json(const VirialReport& r);
nlohmann::json to_json(const FarfieldReport& r);
nlohmann::json to_json(const DeficitReport& r);

// Pretty-printed with a trailing newline; creates parent directories.
void write_json(const std::filesystem::path& file, const nlohmann::json& doc);

}  // namespace steady
