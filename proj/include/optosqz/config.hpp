#pragma once

#include <optional>
#include <string>
#include <vector>

#include "optosqz/model.hpp"
#include "optosqz/sweep.hpp"

namespace optosqz {

enum class OutputFormat { Csv, Json };

// Everything a CLI invocation needs. Assembled from, in increasing
// precedence: built-in defaults, a preset, a JSON config file, and
// `key=value` overrides.
struct RunConfig {
  SystemParams params;
  SqueezedField field;
  std::optional<SweepSpec> sweep;  // base/field/branch mirror the above
  std::string output;              // empty: stdout
  OutputFormat format = OutputFormat::Csv;
  int jobs = 1;
  BranchPolicy branch;
};

struct ConfigSources {
  std::optional<std::string> preset;
  std::optional<std::string> config_path;
  // "dotted.key=value". Bare keys resolve against params, field, then the
  // top level; "Delta" and "kappa" set both optical modes.
  std::vector<std::string> overrides;
};

// Throws ValidationError naming the offending key for unknown keys, type
// mismatches or out-of-range values. Unreadable config files throw
// std::ios_base::failure.
RunConfig load_run_config(const ConfigSources& sources);

// JSON document equivalent to `cfg`; load_run_config of this text (as a
// config file) reproduces `cfg`.
std::string run_config_to_json(const RunConfig& cfg);

}  // namespace optosqz
