#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "aitk/coding.hpp"
#include "aitk/kolmo.hpp"

using namespace aitk;

namespace {
const MachineConfig kCfg;
const ExecBudget kQuad4{"quadratic", 4};
}  // namespace

TEST_CASE("complexity agrees with the exhaustive output index") {
  OutputIndex idx = build_output_index(10, BitString{}, {}, kCfg);
  for (const std::string& t : {"1", "0", "11", "010"}) {
    ComplexityQuery q;
    q.target = BitString::from_text(t);
    q.code_cap = 10;
    ComplexityReport rep = complexity(q, kCfg);
    REQUIRE(rep.value.has_value());
    CHECK(*rep.value == idx.at(q.target).size());
    CHECK(*rep.witness == idx.at(q.target));  // lex-least shortest code
    // the witness actually reproduces the target
    ExecOutcome out = run(parse_program(*rep.witness, kCfg), BitString{}, {},
                          kCfg);
    CHECK(out.status == RunStatus::halted);
    CHECK(out.output == q.target);
  }
}

TEST_CASE("conditional complexity is bounded by the copy program") {
  BitString cond = BitString::from_text("110101001");
  BitString target = cond.substring(cond.size() - 4, 4);  // a suffix
  ComplexityQuery q;
  q.target = target;
  q.conditional = cond;
  q.code_cap = 16;
  ComplexityReport rep = complexity(q, kCfg);
  REQUIRE(rep.value.has_value());
  CHECK(*rep.value <= make_copy(4, 0).size());
}

TEST_CASE("budgets only remove witnesses") {
  // K_T(s) >= K(s) for every string up to length 6 at cap 12
  OutputIndex plain = build_output_index(12, BitString{}, {}, kCfg, 6);
  OutputIndex timed = build_output_index(12, BitString{}, kQuad4, kCfg, 6);
  for (const auto& [s, code] : timed) {
    REQUIRE(plain.count(s));
    CHECK(plain.at(s).size() <= code.size());
  }
}

TEST_CASE("the long zero block compresses through repeat") {
  BitString zeros;
  for (int i = 0; i < 19; ++i) zeros.push_back(0);
  ComplexityQuery q;
  q.target = zeros;
  q.budget = kQuad4;
  q.code_cap = 15;
  ComplexityReport rep = complexity(q, kCfg);
  REQUIRE(rep.value.has_value());
  CHECK(*rep.value == 15);  // repeat header + unit pattern + gamma(20)
  CHECK(*rep.value <= zeros.size() - 4);
}

TEST_CASE("compressible_outputs is the complement of certifiability") {
  const size_t cap = 12, maxlen = 6;
  auto bad = compressible_outputs(cap, BitString{}, {}, kCfg, maxlen);
  OutputIndex idx = build_output_index(cap, BitString{}, {}, kCfg, maxlen);
  for (const auto& [s, code] : idx) {
    if (code.size() < s.size()) {
      REQUIRE(bad.count(s));
      CHECK(bad.at(s) == code.size());
    } else {
      CHECK_FALSE(bad.count(s));
    }
  }
}

TEST_CASE("find_incompressible returns the lexicographically first witness") {
  auto w = find_incompressible(6, BitString{}, 2, {}, 12, kCfg);
  REQUIRE(w.has_value());
  CHECK(w->size() == 6);
  auto bad = compressible_outputs(12, BitString{}, {}, kCfg, 6);
  auto qualifies = [&](const BitString& s) {
    return !bad.count(s) || bad.at(s) + 2 >= s.size();
  };
  CHECK(qualifies(*w));
  // nothing lexicographically earlier qualifies
  for (uint64_t v = 0; v < 64; ++v) {
    BitString cand;
    for (int i = 5; i >= 0; --i)
      cand.push_back(static_cast<uint8_t>((v >> i) & 1));
    if (!(cand < *w)) break;
    CHECK_FALSE(qualifies(cand));
  }
}

TEST_CASE("incompressibility profile accounts for every string") {
  auto prof = incompressibility_profile(5, BitString{}, {}, 12, kCfg);
  uint64_t total = prof.unreachable;
  for (const auto& [len, count] : prof.count_by_code_length) total += count;
  CHECK(total == 32);
}
