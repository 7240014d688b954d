#include "aitk/kolmo.hpp"

namespace aitk {

namespace {

bool better(const BitString& cand, const BitString& incumbent) {
  if (cand.size() != incumbent.size()) return cand.size() < incumbent.size();
  return cand < incumbent;
}

// A pass that only cares about outputs of at most max_out bits can run
// under a tight output cap: any run that would emit more is cut off, and
// its (long) output could not have mattered.  The cap stays above the
// largest output an embedded pair subprogram can have at enumerable code
// lengths (that output's size is forced into the code as raw bits), so the
// valid-code set is unchanged.
MachineConfig capped(const MachineConfig& cfg, size_t max_out) {
  MachineConfig c = cfg;
  c.output_cap = std::min<uint64_t>(cfg.output_cap,
                                    std::max<uint64_t>(64, 2 * max_out));
  return c;
}

}  // namespace

ComplexityReport complexity(const ComplexityQuery& q,
                            const MachineConfig& cfg) {
  ComplexityReport r;
  MachineConfig cfg2 = capped(cfg, q.target.size());
  for_each_program_raw(
      q.code_cap, cfg2, [&](const BitString& code, const ProgramNode& root) {
        ++r.programs_scanned;
        // only a strictly shorter code, or a lexicographic tie-break at
        // equal length, can improve the incumbent
        if (r.witness && code.size() > r.witness->size()) return true;
        ExecOutcome oc =
            run_parsed(root, code.size(), q.conditional, q.budget, cfg2);
        if (oc.status != RunStatus::halted) return true;
        ++r.halted_runs;
        if (oc.output != q.target) return true;
        if (!r.witness || better(code, *r.witness)) {
          r.witness = code;
          r.value = code.size();
        }
        return true;
      });
  return r;
}

OutputIndex build_output_index(size_t code_cap, const BitString& conditional,
                               const std::optional<ExecBudget>& budget,
                               const MachineConfig& cfg,
                               std::optional<size_t> max_output_len) {
  OutputIndex idx;
  MachineConfig cfg2 =
      max_output_len ? capped(cfg, *max_output_len) : cfg;
  for_each_program_raw(
      code_cap, cfg2, [&](const BitString& code, const ProgramNode& root) {
        ExecOutcome oc =
            run_parsed(root, code.size(), conditional, budget, cfg2);
        if (oc.status != RunStatus::halted) return true;
        if (max_output_len && oc.output.size() > *max_output_len) return true;
        auto it = idx.find(oc.output);
        if (it == idx.end())
          idx.emplace(std::move(oc.output), code);
        else if (better(code, it->second))
          it->second = code;
        return true;
      });
  return idx;
}

std::map<BitString, uint64_t> compressible_outputs(
    size_t code_cap, const BitString& conditional,
    const std::optional<ExecBudget>& budget, const MachineConfig& cfg,
    size_t max_output_len) {
  std::map<BitString, uint64_t> out;
  MachineConfig cfg2 = capped(cfg, max_output_len);
  for_each_program_raw(
      code_cap, cfg2, [&](const BitString& code, const ProgramNode& root) {
        // a top-level literal's code is always longer than its output
        if (root.op == Opcode::kLiteral) return true;
        if (code.size() >= max_output_len) return true;
        ExecOutcome oc =
            run_parsed(root, code.size(), conditional, budget, cfg2);
        if (oc.status != RunStatus::halted) return true;
        if (oc.output.size() > max_output_len ||
            oc.output.size() <= code.size())
          return true;
        auto it = out.find(oc.output);
        if (it == out.end())
          out.emplace(std::move(oc.output), code.size());
        else if (code.size() < it->second)
          it->second = code.size();
        return true;
      });
  return out;
}

std::optional<BitString> find_incompressible(
    size_t len, const BitString& conditional, uint64_t slack,
    const std::optional<ExecBudget>& budget, size_t code_cap,
    const MachineConfig& cfg) {
  if (len > 62) throw CapExceededError("incompressibility search too wide");
  OutputIndex idx =
      build_output_index(code_cap, conditional, budget, cfg, len);
  uint64_t threshold = (slack >= len) ? 0 : len - slack;
  uint64_t total = uint64_t(1) << len;
  for (uint64_t x = 0; x < total; ++x) {
    BitString s;
    for (size_t i = 0; i < len; ++i)
      s.push_back(static_cast<uint8_t>((x >> (len - 1 - i)) & 1));
    auto it = idx.find(s);
    if (it == idx.end() || it->second.size() >= threshold) return s;
  }
  return std::nullopt;
}

IncompressibilityProfile incompressibility_profile(
    size_t len, const BitString& conditional,
    const std::optional<ExecBudget>& budget, size_t code_cap,
    const MachineConfig& cfg) {
  if (len > 30) throw CapExceededError("profile too wide");
  OutputIndex idx =
      build_output_index(code_cap, conditional, budget, cfg, len);
  IncompressibilityProfile prof;
  uint64_t reachable = 0;
  for (const auto& [out, code] : idx) {
    if (out.size() != len) continue;
    ++prof.count_by_code_length[code.size()];
    ++reachable;
  }
  prof.unreachable = (uint64_t(1) << len) - reachable;
  return prof;
}

}  // namespace aitk
