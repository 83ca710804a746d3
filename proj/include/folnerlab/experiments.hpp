#pragma once

// Batch experiment runner behind the folnerlab executable. One JSON config
// describes one experiment; results are CSV traces and a JSON report, each
// starting with a header that echoes the version and the config.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace folnerlab::cli {

inline constexpr std::string_view kVersion = "0.1.0";

struct CatalogEntry {
  std::string name;
  std::string anchor;  // one-line description of the statement exercised
};

/// Stable ordering.
const std::vector<CatalogEntry>& list_experiments();

/// Complete, runnable config for a catalog entry. Throws ConfigError for an
/// unknown name.
nlohmann::json default_config(std::string_view experiment);

/// Runs one experiment and writes its outputs into `out_dir`, returning the
/// written paths. Throws ConfigError for malformed configs and other
/// folnerlab::Error subclasses for mathematical failures.
std::vector<std::filesystem::path> run(const nlohmann::json& config, const std::filesystem::path& out_dir);

/// Element budget for Shulman unions: FOLNERLAB_BUDGET when set, otherwise
/// the library default.
std::size_t element_budget();

}  // namespace folnerlab::cli
