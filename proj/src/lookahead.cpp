#include "aitk/lookahead.hpp"

#include <sstream>

namespace aitk {

LookaheadTranscript play(const LookaheadStrategy& d, const BitString& x) {
  LookaheadTranscript t;
  t.name = d.name();
  t.play = x.to_text();
  Capital value = Capital::one();  // clause (1)
  t.values.push_back(value);
  std::set<uint64_t> ledger;
  for (size_t p = 0; p < x.size(); ++p) {
    size_t n = p + 1;  // deciding position n - 1
    uint64_t wmax = d.window_constant() * time_bound(d.bound_name(), n);
    SequenceView view(
        [&x, n](uint64_t pos) -> uint8_t {
          if (pos >= x.size())
            throw ProtocolViolation("window", n, pos);  // off the fixture
          return x[pos];
        },
        n, /*hidden=*/p, wmax);
    bool forbidden = ledger.count(p) > 0;
    BetValues bv = d.evaluate(x.prefix(p), value, view);
    if (bv.if_zero + bv.if_one != value.twice())
      throw ProtocolViolation("fairness", n, p);
    Capital next = x[p] ? bv.if_one : bv.if_zero;
    if (forbidden && next != value)
      throw ProtocolViolation("forbidden-bet", n, p);
    value = next;
    LookaheadStep st;
    st.step = n;
    st.bet_forbidden = forbidden;
    st.queried = view.queried();
    for (uint64_t q : st.queried) ledger.insert(q);
    st.ledger_after = ledger;
    st.value = value;
    t.values.push_back(value);
    t.steps.push_back(std::move(st));
  }
  return t;
}

LookaheadTranscript oracle_play(const OracleLookaheadStrategy& g,
                                const BitString& x, const BitString& oracle) {
  LookaheadTranscript t;
  t.name = g.name();
  t.play = x.to_text();
  Capital value = Capital::one();
  t.values.push_back(value);
  std::set<uint64_t> ledger;
  for (size_t p = 0; p < x.size(); ++p) {
    size_t n = p + 1;
    uint64_t wmax = g.window_constant() * time_bound(g.bound_name(), n);
    SequenceView view(
        [&x, n](uint64_t pos) -> uint8_t {
          if (pos >= x.size()) throw ProtocolViolation("window", n, pos);
          return x[pos];
        },
        n, /*hidden=*/p, wmax);
    // The honesty window: while deciding position p the oracle exposes
    // only positions <= window_constant * t(p).
    uint64_t omax = g.window_constant() * time_bound(g.bound_name(), p);
    SequenceView oview(
        [&oracle, n](uint64_t pos) -> uint8_t {
          if (pos >= oracle.size()) throw ProtocolViolation("window", n, pos);
          return oracle[pos];
        },
        n, /*hidden=*/UINT64_MAX, omax);
    bool forbidden = ledger.count(p) > 0;
    BetValues bv = g.evaluate(x.prefix(p), value, view, oview);
    if (bv.if_zero + bv.if_one != value.twice())
      throw ProtocolViolation("fairness", n, p);
    Capital next = x[p] ? bv.if_one : bv.if_zero;
    if (forbidden && next != value) throw ProtocolViolation("forbidden-bet", n, p);
    value = next;
    LookaheadStep st;
    st.step = n;
    st.bet_forbidden = forbidden;
    st.queried = view.queried();
    for (uint64_t q : st.queried) ledger.insert(q);
    st.ledger_after = ledger;
    st.value = value;
    t.values.push_back(value);
    t.steps.push_back(std::move(st));
  }
  return t;
}

std::string LookaheadTranscript::to_csv() const {
  std::ostringstream os;
  os << "step,prefix,value,decimal,forbidden,queries\n";
  os << "0,," << values[0].to_pair_text() << "," << values[0].to_decimal_text()
     << ",0,\n";
  for (const auto& s : steps) {
    os << s.step << "," << play.substr(0, s.step) << ","
       << s.value.to_pair_text() << "," << s.value.to_decimal_text() << ","
       << (s.bet_forbidden ? 1 : 0) << ",";
    for (size_t i = 0; i < s.queried.size(); ++i)
      os << (i ? ";" : "") << s.queried[i];
    os << "\n";
  }
  return os.str();
}

LookaheadStrategy lift_lookahead_B(const LookaheadStrategy& h) {
  auto ev = [h](const BitString& history, const Capital& current,
                SequenceView& view) -> BetValues {
    size_t p = history.size();
    if (p % 2 == 0) return {current, current};  // an A position: hold
    // position p = 2n+1 carries the second component's bit n; h plays
    // with history b|n, its queries mapped j -> 2j+1
    BitString b_part = deinterleave(history).second;
    SequenceView inner(
        [&view](uint64_t j) -> uint8_t { return view.query(2 * j + 1); },
        p + 1, UINT64_MAX, UINT64_MAX);  // outer view enforces the rules
    return h.evaluate(b_part, current, inner);
  };
  return LookaheadStrategy("liftB(" + h.name() + ")", std::move(ev),
                           h.bound_name(), h.window_constant());
}

LookaheadStrategy lift_lookahead_cond(const OracleLookaheadStrategy& g) {
  auto ev = [g](const BitString& history, const Capital& current,
                SequenceView& view) -> BetValues {
    size_t p = history.size();
    if (p % 2 == 1) return {current, current};  // a B position: hold
    // position p = 2n carries the first component's bit n; g plays with
    // history a|n; strategy queries map i -> 2i, oracle reads j -> 2j+1
    BitString a_part = deinterleave(history).first;
    SequenceView inner(
        [&view](uint64_t i) -> uint8_t { return view.query(2 * i); }, p + 1,
        UINT64_MAX, UINT64_MAX);
    SequenceView oracle(
        [&view](uint64_t j) -> uint8_t { return view.query(2 * j + 1); },
        p + 1, UINT64_MAX, UINT64_MAX);
    return g.evaluate(a_part, current, inner, oracle);
  };
  return LookaheadStrategy("liftCond(" + g.name() + ")", std::move(ev),
                           g.bound_name(), g.window_constant());
}

}  // namespace aitk
