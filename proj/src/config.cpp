#include "aitk/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace aitk {

namespace {

uint64_t parse_u64(const std::string& v, size_t line) {
  if (v.empty() || !std::all_of(v.begin(), v.end(),
                                [](char c) { return c >= '0' && c <= '9'; }))
    throw ConfigError("line " + std::to_string(line) +
                      ": expected a nonnegative integer, got '" + v + "'");
  return std::stoull(v);
}

}  // namespace

ExperimentConfig ExperimentConfig::parse_text(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string raw;
  size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw.substr(0, raw.find('#'));
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                          s.back() == '\r'))
      s.pop_back();
    size_t start = s.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    s = s.substr(start);
    size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) + ": expected key=value");
    std::string key = s.substr(0, eq);
    std::string val = s.substr(eq + 1);
    if (key == "schema_version")
      c.schema_version = static_cast<int>(parse_u64(val, line));
    else if (key == "machine.max_opcode")
      c.machine.max_opcode = static_cast<int>(parse_u64(val, line));
    else if (key == "machine.enum_cap")
      c.machine.enum_cap = parse_u64(val, line);
    else if (key == "machine.output_cap")
      c.machine.output_cap = parse_u64(val, line);
    else if (key == "machine.parse_run_ceiling")
      c.machine.parse_run_ceiling = parse_u64(val, line);
    else if (key == "budget.bound")
      c.budget_bound = val;
    else if (key == "budget.constant")
      c.budget_constant = parse_u64(val, line);
    else if (key == "caps.complexity")
      c.complexity_cap = parse_u64(val, line);
    else if (key == "caps.incompressibility")
      c.incompressibility_cap = parse_u64(val, line);
    else if (key == "caps.max_slack")
      c.max_slack = parse_u64(val, line);
    else if (key == "caps.pool")
      c.pool_cap = parse_u64(val, line);
    else if (key == "caps.fairness_depth")
      c.fairness_depth = parse_u64(val, line);
    else if (key == "caps.window_constant")
      c.window_constant = parse_u64(val, line);
    else
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" +
                        key + "'");
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_text(buf.str());
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream os;
  os << "schema_version=" << schema_version << "\n"
     << "machine.max_opcode=" << machine.max_opcode << "\n"
     << "machine.enum_cap=" << machine.enum_cap << "\n"
     << "machine.output_cap=" << machine.output_cap << "\n"
     << "machine.parse_run_ceiling=" << machine.parse_run_ceiling << "\n"
     << "budget.bound=" << budget_bound << "\n"
     << "budget.constant=" << budget_constant << "\n"
     << "caps.complexity=" << complexity_cap << "\n"
     << "caps.incompressibility=" << incompressibility_cap << "\n"
     << "caps.max_slack=" << max_slack << "\n"
     << "caps.pool=" << pool_cap << "\n"
     << "caps.fairness_depth=" << fairness_depth << "\n"
     << "caps.window_constant=" << window_constant << "\n";
  return os.str();
}

std::string ExperimentConfig::digest() const { return fnv1a_hex(serialize()); }

void ExperimentConfig::validate() const {
  if (schema_version != 1)
    throw ConfigError("unsupported schema_version " +
                      std::to_string(schema_version));
  if (machine.max_opcode < 5 || machine.max_opcode > 7)
    throw ConfigError("machine.max_opcode must be in [5,7]");
  auto names = time_bound_names();
  if (std::find(names.begin(), names.end(), budget_bound) == names.end())
    throw ConfigError("unknown budget.bound '" + budget_bound + "'");
  if (budget_constant == 0) throw ConfigError("budget.constant must be >= 1");
  if (machine.enum_cap > 40)
    throw ConfigError("machine.enum_cap above the supported maximum (40)");
  if (complexity_cap > machine.enum_cap)
    throw ConfigError("caps.complexity exceeds machine.enum_cap");
  if (incompressibility_cap > machine.enum_cap)
    throw ConfigError("caps.incompressibility exceeds machine.enum_cap");
  if (pool_cap > machine.enum_cap)
    throw ConfigError("caps.pool exceeds machine.enum_cap");
  if (fairness_depth > 12)
    throw ConfigError("caps.fairness_depth above the supported maximum (12)");
}

}  // namespace aitk
