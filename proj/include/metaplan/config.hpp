#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "metaplan/pipeline.hpp"

namespace metaplan {

// Names of the run-configuration keys accepted both in config files and as
// command-line overrides, in canonical order.
const std::vector<std::string>& config_keys();

// Applies one key/value pair to `cfg`.  Throws std::invalid_argument for an
// unknown key or an unparsable value; range violations surface later through
// RunConfig::validate().
void apply_config_key(RunConfig& cfg, const std::string& key,
                      const std::string& value);

// Reads a flat `key = value` config file.  '#' starts a comment; blank lines
// are ignored.  `name` labels the source in error messages.
void load_config(std::istream& in, const std::string& name, RunConfig& cfg);

// Convenience wrapper: opens `path` and applies it to `cfg`.
void load_config_file(const std::string& path, RunConfig& cfg);

}  // namespace metaplan
