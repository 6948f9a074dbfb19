#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hphs/explorer.hpp"

namespace hphs {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat "key = value" text, one key per line, '#' starts a comment. Unknown
// keys and unparsable values raise ConfigError naming the line.
void apply_config_text(RunConfig& config, std::string_view text);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);
void set_config_value(RunConfig& config, std::string_view key, std::string_view value);

/// Every recognised key, in file order.
std::vector<std::string> config_keys();
/// The configuration rendered in the same text format.
std::string format_config(const RunConfig& config);

/// Environment variable consulted when no --config flag is given.
inline constexpr const char* kConfigEnvVar = "HPHS_CONFIG";

}  // namespace hphs
