#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aitk/machine.hpp"

namespace aitk {

// Staged builders for the two counterexample-pair families, at desk scale.
// Stage shape: A_s = A_{s-1} alpha_s, B_s = B_{s-1} beta_s alpha_s; alpha_s
// is the block shared between the components, beta_s the fresh hard block
// that pushes alpha_s beyond the budget horizon.

struct StageSpec {
  uint64_t alpha_len = 0;
  uint64_t beta_len = 0;
};

struct StageSchedule {
  std::vector<StageSpec> stages;
  ExecBudget budget;  // the bound/constant the separation law is stated for

  uint64_t a_len(size_t s) const;  // |A_s|
  uint64_t b_len(size_t s) const;  // |B_s|

  // |B_{s-1}| + beta_len(s) > c * t(|A_s|) for every stage: the shared
  // block sits in b strictly beyond the budget horizon of its a-position.
  bool separation_ok(std::string* why = nullptr) const;

  // 1 stage, alpha 12 / beta 25 under (2n, c=1): the smallest schedule on
  // which the conditional-route transfer closes with positive margin.
  static StageSchedule default_incompressibility();
  // 3 stages under (n^2, c=1); shared blocks land at b-positions
  // 32..36, 55, 78 = i + 2*t(i) for hit indices i = 4, 5, 6.
  static StageSchedule default_martingale();
};

struct NoWitnessError : std::runtime_error {
  NoWitnessError(size_t stage_, const std::string& what)
      : std::runtime_error("stage " + std::to_string(stage_) + ": " + what),
        stage(stage_) {}
  size_t stage;
};

// Registered conditional pair code certifying the stage-boundary transfer:
// |code| = 2m - margin + cond_pair_overhead(m), exactly.
struct TransferWitness {
  BitString code;
  uint64_t m = 0;       // |B_s| at the boundary
  uint64_t n = 0;       // bits of a the subprogram reconstructs
  uint64_t margin = 0;  // n - |subprogram|
  std::string budget_name;  // witness-run budget bound (constant 1)
};

struct StageCertificate {
  size_t stage = 0;
  BitString beta;
  BitString alpha;
  BitString conditional;  // B_{s-1} beta_s: what alpha was certified against
  // incompressibility kind
  uint64_t slack_b = 0;
  uint64_t slack_a = 0;
  size_t code_cap = 0;
  // martingale/asymmetric kinds
  size_t pool_cap = 0;
  std::string pool_value_start;  // aggregate capital entering the beta block
  std::string pool_value_end;    // ... leaving it (exact dyadic pair text)
  std::optional<TransferWitness> transfer;
};

struct PairArtifact {
  std::string kind;  // "incompressibility" | "martingale" | "asymmetric"
  BitString a;
  BitString b;
  StageSchedule schedule;
  std::vector<StageCertificate> certificates;
  // asymmetric kind: (b-source index, a-target index) per stage, with
  // a[target] = b[source] and target > c * t(source) (honesty separation)
  std::vector<std::pair<uint64_t, uint64_t>> copies;
  std::string machine_digest;

  std::string serialize() const;  // plain-text fixture
};

struct IncompressibilityParams {
  uint64_t max_slack = 4;
  size_t code_cap = 32;
};

// Chooses each beta_s as the lexicographically first block keeping every
// prefix of b exhaustively incompressible (slack discovered, then frozen),
// then alpha_s likewise against the conditional B_{s-1}beta_s; emits the
// transfer witness at each stage boundary.
PairArtifact build_pair_incompressibility(const StageSchedule& sched,
                                          const IncompressibilityParams& par,
                                          const MachineConfig& cfg);

struct MartingaleParams {
  size_t pool_cap = 10;        // machine-derived bettors up to this length
  uint64_t window_constant = 2;  // the last-index bettor's window multiplier
};

// Chooses beta_s so the weighted pool aggregate never gains along it, then
// alpha_s likewise against the oracle pool conditioned on B_{s-1}beta_s.
PairArtifact build_pair_martingale(const StageSchedule& sched,
                                   const MartingaleParams& par,
                                   const MachineConfig& cfg);

struct AsymmetricParams {
  size_t pool_cap = 10;
  // (b-source, a-target): target = t(source) + 1 under the quadratic bound,
  // one bit beyond the reverse bettor's honesty window
  std::vector<std::pair<uint64_t, uint64_t>> copies = {{2, 5}, {3, 10},
                                                       {4, 17}};
  uint64_t total_len = 18;
  std::string bound_name = "quadratic";
  uint64_t budget_constant = 1;
};

// Mirror builder: blocks of b are copied into far positions of a, so a is
// pool-nonrandom given b while b stays pool-safe given only the honesty
// window of a.
PairArtifact build_pair_asymmetric(const AsymmetricParams& par,
                                   const MachineConfig& cfg);

// Re-derives every recorded certificate from scratch (fresh enumeration /
// fresh pools) and compares; returns human-readable failure descriptions,
// empty when the artifact is sound.
std::vector<std::string> replay_certificates(const PairArtifact& art,
                                             const MachineConfig& cfg);

}  // namespace aitk
