#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aitk/bitstring.hpp"

namespace aitk {

// Prefix-free operator language.  Unary opcode header 1^{k-1}0; every
// integer field is gamma(value+1).  k = 6 and 7 are the registered pair
// decoders installed by the coding layer.
enum class Opcode : int {
  kLiteral = 1,     // gamma len, len raw bits
  kRepeat = 2,      // gamma len, gamma count, len raw bits
  kCopyCond = 3,    // gamma len, gamma offset-from-end of conditional
  kConcat = 4,      // two subprograms
  kInterleave = 5,  // two subprograms; first's conditional = second's output
  kPairCond = 6,    // gamma m, subprogram, m raw bits, (m - n) raw bits
  kPairPlain = 7,   // subprogram, n raw bits where n = |subprogram output|
};

struct ProgramNode {
  Opcode op;
  uint64_t len = 0;
  uint64_t count = 0;
  uint64_t offset = 0;
  uint64_t m = 0;
  BitString payload;    // literal/repeat pattern; pair-plain raw tail
  BitString pair_b;     // pair-cond: embedded m raw bits
  BitString pair_tail;  // pair-cond: trailing m - n raw bits
  std::vector<ProgramNode> children;
};

struct Program {
  BitString code;
  ProgramNode root;
};

struct ParseError : std::runtime_error {
  explicit ParseError(size_t pos, const std::string& what)
      : std::runtime_error("parse error at bit " + std::to_string(pos) + ": " +
                           what),
        position(pos) {}
  size_t position;
};

struct CapExceededError : std::runtime_error {
  explicit CapExceededError(const std::string& what)
      : std::runtime_error(what) {}
};

// Named time bounds; all are monotone with t(n) >= n.
uint64_t time_bound(const std::string& name, uint64_t n);
std::vector<std::string> time_bound_names();

struct ExecBudget {
  std::string bound_name = "quadratic";
  uint64_t constant = 1;

  uint64_t t(uint64_t n) const { return time_bound(bound_name, n); }
  // The additive allowance realizes the O(.) constant; without it the empty
  // output is unreachable (t(0) = 0 < the cost of parsing any code).
  static constexpr uint64_t kAllowance = 16;
  uint64_t ceiling_for(uint64_t output_len) const {
    return constant * (t(output_len) + kAllowance);
  }
};

struct MachineConfig {
  int max_opcode = 5;                   // 6/7 enabled via with_pair_codecs()
  uint64_t parse_run_ceiling = 1 << 20; // step ceiling for parse-time subruns
  uint64_t output_cap = 1 << 14;        // hard output-length ceiling per run
  uint64_t enum_cap = 26;               // max enumerable code length

  static MachineConfig core() { return MachineConfig{}; }
  // Registers the pair decoders (opcodes 6 and 7); header unary coding keeps
  // the extended language prefix-free.
  static MachineConfig with_pair_codecs() {
    MachineConfig c;
    c.max_opcode = 7;
    return c;
  }

  std::string serialize() const;
  std::string digest() const;  // fnv1a-64 hex of serialize()
};

enum class RunStatus {
  halted,
  budget_exceeded,
  parse_error,
  oracle_out_of_range,
  invalid_operation,
};
const char* to_string(RunStatus s);

struct ExecOutcome {
  RunStatus status = RunStatus::parse_error;
  BitString output;
  uint64_t steps_used = 0;
  std::vector<uint64_t> conditional_reads;  // absolute tape positions
};

// Succeeds iff `code` is a complete valid encoding (consumes every bit).
Program parse_program(const BitString& code, const MachineConfig& cfg);

// Deterministic; never throws for runtime failures (statuses instead).
// Empty budget = unbounded: only the machine's hard output cap applies.
ExecOutcome run(const Program& p, const BitString& conditional,
                const std::optional<ExecBudget>& budget,
                const MachineConfig& cfg);

// Runs an already-parsed program (avoids re-encoding); code_len is the
// length of its encoding, charged as parsed bits.
ExecOutcome run_parsed(const ProgramNode& root, size_t code_len,
                       const BitString& conditional,
                       const std::optional<ExecBudget>& budget,
                       const MachineConfig& cfg);

// Visits every valid code of length <= max_code_len exactly once
// (unspecified order).  Return false from the visitor to stop.
void for_each_program(
    size_t max_code_len, const MachineConfig& cfg,
    const std::function<bool(const Program&)>& visit);

// Allocation-light variant for bulk passes: the arguments are only valid
// during the visit.
void for_each_program_raw(
    size_t max_code_len, const MachineConfig& cfg,
    const std::function<bool(const BitString& code, const ProgramNode& root)>&
        visit);

// Length-then-lexicographic order.
std::vector<Program> enumerate_programs(size_t max_code_len,
                                        const MachineConfig& cfg);

// fnv1a-64 of arbitrary text, hex-encoded; shared by config digests.
std::string fnv1a_hex(const std::string& text);

}  // namespace aitk
