#pragma once

#include <map>
#include <optional>

#include "aitk/machine.hpp"

namespace aitk {

// Exhaustive-search complexity relative to the reference machine: the
// length of the shortest code (<= code_cap) whose run on `conditional`
// halts within `budget` with exactly `target` as output.
struct ComplexityQuery {
  BitString target;
  BitString conditional;
  std::optional<ExecBudget> budget;  // empty = unbounded (plain/conditional K)
  size_t code_cap = 24;
};

struct ComplexityReport {
  std::optional<uint64_t> value;    // empty: no witness within the cap
  std::optional<BitString> witness; // lexicographically least shortest code
  uint64_t programs_scanned = 0;
  uint64_t halted_runs = 0;
};

ComplexityReport complexity(const ComplexityQuery& q, const MachineConfig& cfg);

// output -> lexicographically least shortest code producing it.  One
// enumeration pass answers complexity queries for every target at once.
using OutputIndex = std::map<BitString, BitString>;

OutputIndex build_output_index(size_t code_cap, const BitString& conditional,
                               const std::optional<ExecBudget>& budget,
                               const MachineConfig& cfg,
                               std::optional<size_t> max_output_len = {});

// Outputs (of length <= max_output_len) that some code strictly shorter
// than the output produces: output -> minimal code length.  This is the
// complete per-length compressibility witness table at the given cap, and
// the working set for incompressibility certification (everything absent
// has complexity >= its length).
std::map<BitString, uint64_t> compressible_outputs(
    size_t code_cap, const BitString& conditional,
    const std::optional<ExecBudget>& budget, const MachineConfig& cfg,
    size_t max_output_len);

// Lexicographically first string of the given length whose complexity
// (relative to conditional/budget, codes <= code_cap) is >= len - slack.
// Exact by exhaustion; empty when every string of that length compresses.
std::optional<BitString> find_incompressible(
    size_t len, const BitString& conditional, uint64_t slack,
    const std::optional<ExecBudget>& budget, size_t code_cap,
    const MachineConfig& cfg);

// Histogram of minimal code lengths over all strings of length `len`.
struct IncompressibilityProfile {
  std::map<uint64_t, uint64_t> count_by_code_length;
  uint64_t unreachable = 0;  // strings with no code within the cap
};

IncompressibilityProfile incompressibility_profile(
    size_t len, const BitString& conditional,
    const std::optional<ExecBudget>& budget, size_t code_cap,
    const MachineConfig& cfg);

}  // namespace aitk
