#pragma once

#include <map>
#include <string>
#include <vector>

#include "aitk/config.hpp"
#include "aitk/martingale.hpp"

namespace aitk {

inline constexpr const char* kToolVersion = "1.0.0";

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool inconclusive = false;  // no-witness path: reported, not failed
  std::string detail;         // measured constants, counts, bounds
};

struct SuiteResult {
  std::string config_digest;
  std::string machine_digest;
  std::vector<CriterionResult> criteria;
  // per-criterion CSV report bodies, keyed by output filename
  std::map<std::string, std::string> reports;

  bool all_passed() const;
  std::string summary_json() const;  // the single JSON summary
};

// Runs all nine acceptance criteria.  Criterion 9 (determinism) is
// measured inside: criteria 1-8 are executed twice from scratch and their
// full report bytes compared.
SuiteResult run_suite(const ExperimentConfig& cfg);

// Individual runners (each also appends its CSV report to `reports`).
CriterionResult criterion_fairness(const ExperimentConfig& cfg,
                                   std::map<std::string, std::string>& reports);
CriterionResult criterion_kraft(const ExperimentConfig& cfg,
                                std::map<std::string, std::string>& reports);
CriterionResult criterion_transfer(const ExperimentConfig& cfg,
                                   std::map<std::string, std::string>& reports);
CriterionResult criterion_incompressible_pair(
    const ExperimentConfig& cfg, std::map<std::string, std::string>& reports);
CriterionResult criterion_capital_identities(
    const ExperimentConfig& cfg, std::map<std::string, std::string>& reports);
CriterionResult criterion_savings(const ExperimentConfig& cfg,
                                  std::map<std::string, std::string>& reports);
CriterionResult criterion_asymmetry(const ExperimentConfig& cfg,
                                    std::map<std::string, std::string>& reports);
CriterionResult criterion_lookahead(const ExperimentConfig& cfg,
                                    std::map<std::string, std::string>& reports);

// Deterministic pseudo-random fair strategy used by the property-based
// criteria (the artifact has no ambient randomness source; values are a
// pure function of the seed).
Martingale deterministic_fair_strategy(uint64_t seed, bool strictly_positive);

}  // namespace aitk
