#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "aitk/lookahead.hpp"

using namespace aitk;

namespace {
BitString bs(const std::string& t) { return BitString::from_text(t); }

BetValues hold(const Capital& v) { return {v, v}; }

// Never queries, never bets.
LookaheadStrategy passive() {
  return LookaheadStrategy(
      "passive", [](const BitString&, const Capital& v, SequenceView&) {
        return hold(v);
      });
}
}  // namespace

TEST_CASE("a passive strategy produces a flat, violation-free transcript") {
  LookaheadTranscript tr = play(passive(), bs("10110"));
  REQUIRE(tr.values.size() == 6);
  for (const Capital& v : tr.values) CHECK(v == Capital(1L));
  for (const LookaheadStep& s : tr.steps) {
    CHECK_FALSE(s.bet_forbidden);
    CHECK(s.queried.empty());
    CHECK(s.ledger_after.empty());
  }
}

TEST_CASE("peeking ahead forbids betting there later") {
  // Step 2 (deciding position 1, window t(2) = 4) peeks at position 3; the
  // step deciding position 3 is then bet-forbidden.
  LookaheadStrategy peeker(
      "peeker", [](const BitString& h, const Capital& v, SequenceView& view) {
        if (h.size() == 1) view.query(3);
        return hold(v);
      });
  LookaheadTranscript tr = play(peeker, bs("10110"));
  CHECK(tr.steps[1].queried == std::vector<uint64_t>{3});
  CHECK(tr.steps[3].bet_forbidden);
  CHECK(tr.steps[3].ledger_after.count(3) == 1);
  // the ledger is monotone
  for (size_t i = 1; i < tr.steps.size(); ++i) {
    for (uint64_t p : tr.steps[i - 1].ledger_after)
      CHECK(tr.steps[i].ledger_after.count(p) == 1);
  }
}

TEST_CASE("betting on a revealed position aborts the game") {
  LookaheadStrategy cheat(
      "cheat", [](const BitString& h, const Capital& v, SequenceView& view) {
        if (h.size() == 0) {
          uint8_t b = view.query(1);  // reveal position 1
          (void)b;
          return hold(v);
        }
        if (h.size() == 1) return BetValues{Capital::zero(), v.twice()};
        return hold(v);
      });
  try {
    play(cheat, bs("0110"));
    FAIL("expected ProtocolViolation");
  } catch (const ProtocolViolation& e) {
    CHECK(e.rule == "forbidden-bet");
    CHECK(e.position == 1);
  }
}

TEST_CASE("querying the deciding position aborts with no-reveal") {
  LookaheadStrategy greedy(
      "greedy", [](const BitString& h, const Capital& v, SequenceView& view) {
        view.query(h.size());  // the bit being decided
        return hold(v);
      });
  try {
    play(greedy, bs("01"));
    FAIL("expected ProtocolViolation");
  } catch (const ProtocolViolation& e) {
    CHECK(e.rule == "no-reveal");
  }
}

TEST_CASE("queries past the window abort with window") {
  // linear2x, c = 1: step n exposes at most 2n, so step 3 stops at 6.
  LookaheadStrategy farsight(
      "farsight",
      [](const BitString& h, const Capital& v, SequenceView& view) {
        if (h.size() == 2) view.query(8);  // 8 > 2*3
        return hold(v);
      },
      "linear2x", 1);
  try {
    play(farsight, bs("000000"));
    FAIL("expected ProtocolViolation");
  } catch (const ProtocolViolation& e) {
    CHECK(e.rule == "window");
    CHECK(e.position == 8);
  }
}

TEST_CASE("unfair bets abort with fairness") {
  LookaheadStrategy unfair(
      "unfair", [](const BitString&, const Capital& v, SequenceView&) {
        return BetValues{v.twice(), v.twice()};
      });
  try {
    play(unfair, bs("1"));
    FAIL("expected ProtocolViolation");
  } catch (const ProtocolViolation& e) {
    CHECK(e.rule == "fairness");
  }
}

TEST_CASE("oracle game: copies are winnable exactly one bit past the window") {
  // x[tgt] = y[src] with tgt = t(src) + 1 under quadratic, c = 1.  The step
  // deciding x-position tgt may read oracle positions <= tgt^2 >= src, so a
  // forward copy is winnable...
  const std::vector<std::pair<uint64_t, uint64_t>> copies = {
      {2, 5}, {3, 10}, {4, 17}};
  BitString y = bs("001100000000000000");
  std::vector<uint8_t> xv(18, 0);
  for (auto [src, tgt] : copies) xv[tgt] = y[src];
  BitString x(std::move(xv));

  OracleLookaheadStrategy copier(
      "copier",
      [&](const BitString& h, const Capital& v, SequenceView&,
          SequenceView& oracle) {
        for (auto [src, tgt] : copies) {
          if (h.size() == tgt) {
            uint8_t g = oracle.query(src);
            return g ? BetValues{Capital::zero(), v.twice()}
                     : BetValues{v.twice(), Capital::zero()};
          }
        }
        return hold(v);
      },
      "quadratic", 1);
  LookaheadTranscript tr = oracle_play(copier, x, y);
  CHECK(tr.values.back() == Capital::pow2(3));  // three doublings

  // ...but the reverse direction is blocked: deciding y-like position src
  // cannot see oracle position tgt since tgt > src^2.
  OracleLookaheadStrategy reverse(
      "reverse",
      [&](const BitString& h, const Capital& v, SequenceView&,
          SequenceView& oracle) {
        if (h.size() == 2) oracle.query(5);  // 5 > 2^2
        return hold(v);
      },
      "quadratic", 1);
  try {
    oracle_play(reverse, y, x);
    FAIL("expected ProtocolViolation");
  } catch (const ProtocolViolation& e) {
    CHECK(e.rule == "window");
    CHECK(e.position == 5);
  }
}

TEST_CASE("lifted strategies preserve capital with doubled crossing steps") {
  // all-in on "11" as a lookahead strategy
  LookaheadStrategy inner(
      "inner", [](const BitString& h, const Capital& v, SequenceView&) {
        return BetValues{Capital::zero(), v.twice()};
      });
  BitString x = bs("1111");  // interleave("11","11")
  LookaheadTranscript in_tr = play(inner, bs("11"));
  LookaheadTranscript out_tr = play(lift_lookahead_B(inner), x);
  CHECK(in_tr.values.back() == Capital(4L));
  CHECK(out_tr.values.back() == Capital(4L));
  // inner reaches 2 at step 1; the B-lift reaches 2 at step 2 = 2*1
  auto first_reach = [](const LookaheadTranscript& t, const Capital& goal) {
    for (size_t n = 0; n < t.values.size(); ++n)
      if (t.values[n] >= goal) return n;
    return t.values.size();
  };
  CHECK(first_reach(out_tr, Capital(2L)) ==
        2 * first_reach(in_tr, Capital(2L)));
}

TEST_CASE("transcript CSV has the documented shape") {
  LookaheadTranscript tr = play(passive(), bs("10"));
  std::string csv = tr.to_csv();
  CHECK(csv.find("step,prefix,value,decimal,forbidden,queries") == 0);
  // one header plus one line per step
  size_t lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines >= 3);
}
