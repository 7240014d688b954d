#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "aitk/coding.hpp"
#include "aitk/gamma.hpp"

using namespace aitk;

namespace {
const MachineConfig kCfg;

BitString bs(const std::string& t) { return BitString::from_text(t); }

ExecOutcome run_code(const BitString& code, const BitString& cond,
                     const MachineConfig& cfg) {
  return run(parse_program(code, cfg), cond, {}, cfg);
}
}  // namespace

TEST_CASE("kraft_sum is exact dyadic arithmetic") {
  CHECK(kraft_sum({}) == Capital(0L));
  CHECK(kraft_sum({1, 1}) == Capital(1L));
  CHECK(kraft_sum({1, 2, 3, 3}) == Capital(1L));
  CHECK(kraft_sum({2, 2, 2}).to_pair_text() == "3/2^2");
}

TEST_CASE("kc_allocate serves the classical examples") {
  auto c = kc_allocate({1, 2, 3});
  REQUIRE(c.size() == 3);
  CHECK(c[0].to_text() == "0");
  CHECK(c[1].to_text() == "10");
  CHECK(c[2].to_text() == "110");

  auto d = kc_allocate({1, 1});
  CHECK(d[0].to_text() == "0");
  CHECK(d[1].to_text() == "1");
}

TEST_CASE("kc_allocate output has the requested lengths and is prefix-free") {
  std::vector<uint64_t> lens = {3, 1, 4, 4, 3, 5, 5};
  REQUIRE(kraft_sum(lens) <= Capital(1L));
  auto codes = kc_allocate(lens);
  REQUIRE(codes.size() == lens.size());
  for (size_t i = 0; i < lens.size(); ++i) CHECK(codes[i].size() == lens[i]);
  CHECK(is_prefix_free(codes));
}

TEST_CASE("kc_allocate reports which request overflows") {
  try {
    kc_allocate({1, 1, 3});
    FAIL("expected KraftOverflowError");
  } catch (const KraftOverflowError& e) {
    CHECK(e.request_index == 2);
  }
}

TEST_CASE("builders round-trip through the machine") {
  BitString cond = bs("10110011");

  ExecOutcome lit = run_code(make_literal(bs("0110")), cond, kCfg);
  CHECK(lit.status == RunStatus::halted);
  CHECK(lit.output == bs("0110"));

  ExecOutcome rep = run_code(make_repeat(bs("01"), 3), cond, kCfg);
  CHECK(rep.status == RunStatus::halted);
  CHECK(rep.output == bs("010101"));

  // offset 0 means the suffix of the conditional
  ExecOutcome cp = run_code(make_copy(3, 0), cond, kCfg);
  CHECK(cp.status == RunStatus::halted);
  CHECK(cp.output == bs("011"));

  ExecOutcome cc = run_code(
      make_concat(make_literal(bs("1")), make_repeat(bs("0"), 2)), cond, kCfg);
  CHECK(cc.status == RunStatus::halted);
  CHECK(cc.output == bs("100"));

  ExecOutcome il = run_code(
      make_interleave(make_literal(bs("10")), make_literal(bs("01"))), cond,
      kCfg);
  CHECK(il.status == RunStatus::halted);
  CHECK(il.output == interleave(bs("10"), bs("01")));
}

TEST_CASE("plain pair code: length law and semantics") {
  MachineConfig cfg = kCfg.with_pair_codecs();
  BitString b = bs("10110");
  BitString a = bs("01011");
  BitString sub = make_literal(b);  // computes b from the empty conditional
  BitString code = make_pair_plain(sub, a, cfg);
  CHECK(code.size() == sub.size() + a.size() + kPlainPairOverhead);
  ExecOutcome out = run(parse_program(code, cfg), BitString{}, {}, cfg);
  CHECK(out.status == RunStatus::halted);
  CHECK(out.output == interleave(a, b));
}

TEST_CASE("conditional pair code: length law and semantics") {
  MachineConfig cfg = kCfg.with_pair_codecs();
  BitString b_prefix = bs("110010");            // m = 6
  BitString a = bs("110110");                   // |a| = m
  BitString sub = make_copy(3, 3);              // copies b_prefix[0..2] = a[0..2]
  ExecOutcome probe = run(parse_program(sub, cfg), b_prefix, {}, cfg);
  REQUIRE(probe.status == RunStatus::halted);
  REQUIRE(probe.output == a.prefix(3));

  BitString code = make_pair_cond(sub, b_prefix, a, cfg);
  uint64_t m = b_prefix.size(), n = probe.output.size();
  CHECK(cond_pair_overhead(m) == 6 + gamma_length_nat(m));
  CHECK(code.size() == sub.size() + m + (m - n) + cond_pair_overhead(m));

  ExecOutcome out = run(parse_program(code, cfg), BitString{}, {}, cfg);
  CHECK(out.status == RunStatus::halted);
  CHECK(out.output == interleave(a, b_prefix));
}

TEST_CASE("pair opcodes are rejected by the core machine") {
  MachineConfig pair_cfg = kCfg.with_pair_codecs();
  BitString code = make_pair_plain(make_literal(bs("1")), bs("0"), pair_cfg);
  CHECK_THROWS_AS(parse_program(code, kCfg), ParseError);
}
