#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "aitk/capital.hpp"
#include "aitk/coding.hpp"
#include "aitk/machine.hpp"

using namespace aitk;

namespace {
const MachineConfig kCfg;  // core machine
const ExecBudget kGenerous{"quadratic", 4};
}  // namespace

TEST_CASE("literal parse and run") {
  BitString code = make_literal(BitString::from_text("1"));
  Program p = parse_program(code, kCfg);
  ExecOutcome out = run(p, BitString{}, kGenerous, kCfg);
  CHECK(out.status == RunStatus::halted);
  CHECK(out.output.to_text() == "1");
}

TEST_CASE("incomplete and padded codes are rejected") {
  CHECK_THROWS_AS(parse_program(BitString{}, kCfg), ParseError);
  BitString code = make_literal(BitString::from_text("1"));
  code.push_back(0);  // one trailing bit breaks prefix-freeness
  CHECK_THROWS_AS(parse_program(code, kCfg), ParseError);
}

TEST_CASE("copy reads backwards from the conditional's end") {
  BitString cond = BitString::from_text("10");
  Program p = parse_program(make_copy(2, 0), kCfg);
  ExecOutcome out = run(p, cond, kGenerous, kCfg);
  CHECK(out.status == RunStatus::halted);
  CHECK(out.output == cond);
  CHECK(out.conditional_reads == std::vector<uint64_t>({0, 1}));

  ExecOutcome over = run(parse_program(make_copy(3, 0), kCfg), cond,
                         kGenerous, kCfg);
  CHECK(over.status == RunStatus::oracle_out_of_range);
}

TEST_CASE("repeat, concat, interleave semantics") {
  ExecOutcome rep = run(
      parse_program(make_repeat(BitString::from_text("10"), 3), kCfg),
      BitString{}, kGenerous, kCfg);
  CHECK(rep.output.to_text() == "101010");

  BitString c1 = make_literal(BitString::from_text("11"));
  BitString c2 = make_literal(BitString::from_text("00"));
  CHECK(run(parse_program(make_concat(c1, c2), kCfg), BitString{}, kGenerous,
            kCfg)
            .output.to_text() == "1100");
  CHECK(run(parse_program(make_interleave(c1, c2), kCfg), BitString{},
            kGenerous, kCfg)
            .output.to_text() == "1010");

  // interleave children may differ in length by at most one
  BitString c3 = make_literal(BitString::from_text("111"));
  CHECK(run(parse_program(make_interleave(c3, c2), kCfg), BitString{},
            kGenerous, kCfg)
            .status == RunStatus::halted);
  CHECK(run(parse_program(make_interleave(c2, c3), kCfg), BitString{},
            kGenerous, kCfg)
            .status == RunStatus::invalid_operation);
}

TEST_CASE("budget rejection and monotonicity") {
  // a long repeat is cheap to code but slow to emit
  BitString code = make_repeat(BitString::from_text("0"), 40);
  Program p = parse_program(code, kCfg);
  ExecOutcome tight = run(p, BitString{}, ExecBudget{"linear2x", 1}, kCfg);
  CHECK(tight.status == RunStatus::halted);  // 2n bound still suffices
  // every program halting under a smaller budget halts identically under
  // a pointwise-larger one
  for_each_program_raw(10, kCfg, [&](const BitString& c, const ProgramNode& r) {
    ExecOutcome small = run_parsed(r, c.size(), BitString{},
                                   ExecBudget{"linear2x", 1}, kCfg);
    if (small.status == RunStatus::halted) {
      ExecOutcome big = run_parsed(r, c.size(), BitString{}, kGenerous, kCfg);
      CHECK(big.status == RunStatus::halted);
      CHECK(big.output == small.output);
      CHECK(big.steps_used == small.steps_used);
    }
    return true;
  });
}

TEST_CASE("determinism of the step count") {
  BitString code = make_repeat(BitString::from_text("01"), 5);
  Program p = parse_program(code, kCfg);
  ExecOutcome a = run(p, BitString{}, kGenerous, kCfg);
  ExecOutcome b = run(p, BitString{}, kGenerous, kCfg);
  CHECK(a.steps_used == b.steps_used);
  CHECK(a.output == b.output);
}

TEST_CASE("enumeration matches exhaustive parsing") {
  const size_t L = 14;
  std::set<BitString> enumerated;
  for_each_program_raw(L, kCfg, [&](const BitString& c, const ProgramNode&) {
    CHECK(enumerated.insert(c).second);  // exactly once
    return true;
  });
  // brute force: try every candidate string of length <= L
  std::set<BitString> brute;
  for (size_t n = 1; n <= L; ++n) {
    for (uint64_t v = 0; v < (1ULL << n); ++v) {
      BitString c;
      for (size_t i = 0; i < n; ++i)
        c.push_back(static_cast<uint8_t>((v >> (n - 1 - i)) & 1));
      try {
        parse_program(c, kCfg);
        brute.insert(c);
      } catch (const ParseError&) {
      }
    }
  }
  CHECK(enumerated == brute);

  // prefix-free with Kraft mass <= 1
  std::vector<BitString> all(enumerated.begin(), enumerated.end());
  CHECK(is_prefix_free(all));
  std::vector<uint64_t> lens;
  for (const auto& c : all) lens.push_back(c.size());
  CHECK(kraft_sum(lens) <= Capital::one());
}

TEST_CASE("enumeration order and cap") {
  std::vector<Program> all = enumerate_programs(8, kCfg);
  for (size_t i = 1; i < all.size(); ++i) {
    bool ordered = all[i - 1].code.size() < all[i].code.size() ||
                   (all[i - 1].code.size() == all[i].code.size() &&
                    all[i - 1].code < all[i].code);
    CHECK(ordered);
  }
  CHECK(enumerate_programs(0, kCfg).empty());
  CHECK_THROWS_AS(enumerate_programs(kCfg.enum_cap + 1, kCfg),
                  CapExceededError);
}

TEST_CASE("time bounds are superlinear on the working range") {
  for (const auto& name : time_bound_names())
    for (uint64_t n = 1; n <= 256; ++n) {
      CHECK(time_bound(name, n) >= n);
      CHECK(time_bound(name, n + 1) >= time_bound(name, n));
    }
}
