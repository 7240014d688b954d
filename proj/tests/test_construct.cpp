#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "aitk/construct.hpp"

using namespace aitk;

namespace {
MachineConfig big_cap_config() {
  MachineConfig cfg;
  cfg.enum_cap = 34;
  return cfg;
}
}  // namespace

TEST_CASE("schedule arithmetic: cumulative component lengths") {
  StageSchedule sched;
  sched.stages = {{3, 5}, {2, 4}};
  sched.budget = ExecBudget{"linear2x", 1};
  CHECK(sched.a_len(0) == 0);
  CHECK(sched.b_len(0) == 0);
  CHECK(sched.a_len(1) == 3);
  CHECK(sched.b_len(1) == 8);   // beta + alpha
  CHECK(sched.a_len(2) == 5);
  CHECK(sched.b_len(2) == 14);
}

TEST_CASE("the default schedules satisfy the separation law") {
  std::string why;
  CHECK(StageSchedule::default_incompressibility().separation_ok(&why));
  CHECK(StageSchedule::default_martingale().separation_ok(&why));
}

TEST_CASE("a too-short fresh block violates the separation law") {
  StageSchedule sched = StageSchedule::default_incompressibility();
  REQUIRE(sched.stages.size() == 1);
  // alpha 12 under (2n, c=1): horizon c*t(12) = 24, so beta must exceed 24.
  sched.stages[0].beta_len = 13;
  std::string why;
  CHECK_FALSE(sched.separation_ok(&why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("martingale pair builds and replays cleanly") {
  MachineConfig cfg = big_cap_config();
  PairArtifact art =
      build_pair_martingale(StageSchedule::default_martingale(),
                            MartingaleParams{}, cfg);
  CHECK(art.kind == "martingale");
  CHECK(art.a.size() == 79);
  CHECK(art.b.size() == 79);
  REQUIRE(art.certificates.size() == 3);
  for (const StageCertificate& c : art.certificates) {
    CHECK_FALSE(c.pool_value_start.empty());
    CHECK_FALSE(c.pool_value_end.empty());
  }
  // shared blocks really are shared: a[i] appears in b at i + 2*t(i)
  CHECK(replay_certificates(art, cfg).empty());
  // serialization is parseable text with stable first line
  std::string ser = art.serialize();
  CHECK(ser.rfind("kind=martingale", 0) == 0);
}

TEST_CASE("asymmetric pair builds, plants its copies, and replays") {
  MachineConfig cfg = big_cap_config();
  AsymmetricParams par;
  PairArtifact art = build_pair_asymmetric(par, cfg);
  CHECK(art.a.size() == par.total_len);
  CHECK(art.b.size() == par.total_len);
  REQUIRE(art.copies.size() == par.copies.size());
  for (auto [src, tgt] : art.copies) CHECK(art.a[tgt] == art.b[src]);
  CHECK(replay_certificates(art, cfg).empty());
}

TEST_CASE("asymmetric builder rejects copies inside the honesty window") {
  MachineConfig cfg = big_cap_config();
  AsymmetricParams par;
  par.copies = {{3, 9}};  // 9 = t(3), not past the window
  CHECK_THROWS_AS(build_pair_asymmetric(par, cfg), std::invalid_argument);
}

TEST_CASE("incompressibility builder needs enumeration room for its cap") {
  MachineConfig small;  // enum_cap 26 < code_cap 32
  CHECK_THROWS_AS(
      build_pair_incompressibility(StageSchedule::default_incompressibility(),
                                   IncompressibilityParams{}, small),
      std::invalid_argument);
}

TEST_CASE("a schedule too tight for the transfer yields no witness") {
  // alpha 3: the copy-chain subprogram needs more bits than it explains,
  // so the margin cannot reach 1 and the stage has no registered witness.
  StageSchedule sched;
  sched.stages = {{3, 7}};
  sched.budget = ExecBudget{"linear2x", 1};
  REQUIRE(sched.separation_ok(nullptr));
  MachineConfig cfg = big_cap_config();
  IncompressibilityParams par;
  par.code_cap = 9;  // total - 1; keeps the exhaustive search tiny
  CHECK_THROWS_AS(build_pair_incompressibility(sched, par, cfg),
                  NoWitnessError);
}

TEST_CASE("tampered artifacts fail replay") {
  MachineConfig cfg = big_cap_config();
  PairArtifact art = build_pair_asymmetric(AsymmetricParams{}, cfg);
  PairArtifact bad = art;
  // flip one planted copy target
  std::vector<uint8_t> bits = bad.a.bits();
  bits[bad.copies[0].second] ^= 1;
  bad.a = BitString(std::move(bits));
  CHECK_FALSE(replay_certificates(bad, cfg).empty());
}
