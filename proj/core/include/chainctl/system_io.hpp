#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "chainctl/systems.hpp"

namespace chainctl {

/// Reads the system document
///   {"n": int, "matrices": [[...], ...], "offsets": [[...], ...],
///    "omega": {"lower": [...], "upper": [...]}}
/// Each matrix is a row-major list of n*n numbers; nested row lists are
/// accepted as well. Throws ConstructionError on malformed documents.
AffineSystem system_from_json(const nlohmann::json& doc);

/// Writes the canonical form (flat row-major matrices).
nlohmann::json system_to_json(const AffineSystem& sys);

/// Throws ConfigError if the file cannot be opened or parsed.
AffineSystem load_system_file(const std::filesystem::path& path);

}  // namespace chainctl
