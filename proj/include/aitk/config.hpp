#pragma once

#include <stdexcept>
#include <string>

#include "aitk/machine.hpp"

namespace aitk {

// Invalid or unreadable configuration: the CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Plain-text key=value experiment configuration (versioned schema).  All
// parameters any subcommand needs; defaults reproduce the desk-scale
// experiments end to end.
struct ExperimentConfig {
  int schema_version = 1;

  MachineConfig machine = default_machine();

  std::string budget_bound = "quadratic";  // bound for complexity queries
  uint64_t budget_constant = 1;

  size_t complexity_cap = 18;        // cmd_complexity search cap
  size_t incompressibility_cap = 32; // staged-builder certification cap
  uint64_t max_slack = 4;
  size_t pool_cap = 10;              // machine-derived bettor pools
  size_t fairness_depth = 8;         // exact fairness validation depth
  uint64_t window_constant = 2;      // last-index bettor window multiplier

  static MachineConfig default_machine() {
    MachineConfig m;
    m.max_opcode = 5;  // core machine; pair codecs are registered locally
                       // (with_pair_codecs) where a compressor is built
    m.enum_cap = 34;   // covers certification at cap 32 + slack headroom
    return m;
  }

  // Parses the key=value text ('#' comments, blank lines ignored).
  // Unknown keys, malformed values, and out-of-range settings all raise
  // ConfigError with the offending line number.
  static ExperimentConfig parse_text(const std::string& text);
  static ExperimentConfig load(const std::string& path);

  std::string serialize() const;  // canonical form: parse(serialize()) == *this
  std::string digest() const;     // content hash stamped into every report

  void validate() const;  // throws ConfigError
};

}  // namespace aitk
