#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "slpkit/simkit.hpp"

namespace slp {

/// Invalid or inconsistent configuration; `key` names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error("config key '" + key + "': " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Filesystem-level failure (unreadable config, unwritable output).
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat typed key-value config with [section] headers; keys are stored as
/// "section.key". Values are scalars or space-separated lists. '#' comments.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_config_text(const std::string& text);
KeyValues parse_config_file(const std::string& path);  // IoError if unreadable

/// Canonical one-line-per-key rendering (sorted), used for hashing.
std::string canonical_config(const KeyValues& kv);

/// FNV-1a 64-bit hash of the canonical rendering, as fixed-width hex.
std::string config_hash(const KeyValues& kv);

/// Builds and validates a ScenarioConfig; throws ConfigError naming the
/// offending key. Unknown keys are rejected (typo protection).
ScenarioConfig scenario_from_config(const KeyValues& kv);

}  // namespace slp
