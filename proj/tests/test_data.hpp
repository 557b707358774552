#pragma once

// Locations of the optional public datasets. Tests that need them skip
// when the files are absent.

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>

namespace testdata {

inline std::optional<std::string> locate(const char* env_var, const char* file_name) {
  if (const char* p = std::getenv(env_var); p && *p && std::filesystem::exists(p)) return std::string(p);
#ifdef EAI_DATA_DIR
  const auto candidate = std::filesystem::path(EAI_DATA_DIR) / file_name;
  if (std::filesystem::exists(candidate)) return candidate.string();
#endif
  return std::nullopt;
}

/// UCI "Wine Quality", white variant (semicolon-delimited, 4,898 rows).
inline std::optional<std::string> wine_csv() { return locate("EAI_WINE_CSV", "winequality-white.csv"); }

/// UCI "CDC Diabetes Health Indicators" with a Diabetes_binary column.
inline std::optional<std::string> diabetes_csv() {
  return locate("EAI_DIABETES_CSV", "diabetes_binary_health_indicators_BRFSS2015.csv");
}

}  // namespace testdata
