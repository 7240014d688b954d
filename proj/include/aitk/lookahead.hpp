#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "aitk/capital.hpp"
#include "aitk/machine.hpp"

namespace aitk {

// Betting game with bounded peeking: at step n (deciding position n-1) the
// strategy may query positions {0..n-2} u {n..c*t(n)}; queried positions go
// into a ledger, and betting is forever forbidden at ledgered positions.

struct ProtocolViolation : std::runtime_error {
  ProtocolViolation(std::string rule_, size_t step_, uint64_t position_)
      : std::runtime_error("protocol violation (" + rule_ + ") at step " +
                           std::to_string(step_) + ", position " +
                           std::to_string(position_)),
        rule(std::move(rule_)),
        step(step_),
        position(position_) {}
  std::string rule;  // "window" | "no-reveal" | "forbidden-bet" | "fairness"
  size_t step;
  uint64_t position;
};

// Read access to the underlying sequence for one step, with the window and
// no-reveal rules enforced at the point of the read.
class SequenceView {
 public:
  using ReadFn = std::function<uint8_t(uint64_t)>;

  SequenceView(ReadFn read, size_t step, uint64_t hidden_pos,
               uint64_t window_max)
      : read_(std::move(read)),
        step_(step),
        hidden_(hidden_pos),
        window_max_(window_max) {}

  uint8_t query(uint64_t pos) {
    if (pos == hidden_) throw ProtocolViolation("no-reveal", step_, pos);
    if (pos > window_max_) throw ProtocolViolation("window", step_, pos);
    queried_.push_back(pos);
    return read_(pos);
  }

  const std::vector<uint64_t>& queried() const { return queried_; }

 private:
  ReadFn read_;
  size_t step_;
  uint64_t hidden_;
  uint64_t window_max_;
  std::vector<uint64_t> queried_;
};

// The two candidate capitals after the next bit.
struct BetValues {
  Capital if_zero;
  Capital if_one;
};

class LookaheadStrategy {
 public:
  // history = bits played so far, current = d(history); the returned pair
  // must satisfy if_zero + if_one = 2 * current.
  using Evaluator = std::function<BetValues(
      const BitString& history, const Capital& current, SequenceView& view)>;

  LookaheadStrategy(std::string name, Evaluator ev,
                    std::string bound_name = "quadratic",
                    uint64_t window_constant = 1)
      : name_(std::move(name)),
        eval_(std::move(ev)),
        bound_name_(std::move(bound_name)),
        window_constant_(window_constant) {}

  const std::string& name() const { return name_; }
  const std::string& bound_name() const { return bound_name_; }
  uint64_t window_constant() const { return window_constant_; }
  BetValues evaluate(const BitString& history, const Capital& current,
                     SequenceView& view) const {
    return eval_(history, current, view);
  }

 private:
  std::string name_;
  Evaluator eval_;
  std::string bound_name_;
  uint64_t window_constant_;
};

// Oracle flavor: bets on X while reading a second sequence Y through its
// own logged view (no no-reveal rule on the oracle side).
class OracleLookaheadStrategy {
 public:
  using Evaluator =
      std::function<BetValues(const BitString& history, const Capital& current,
                              SequenceView& view, SequenceView& oracle)>;

  OracleLookaheadStrategy(std::string name, Evaluator ev,
                          std::string bound_name = "quadratic",
                          uint64_t window_constant = 1)
      : name_(std::move(name)),
        eval_(std::move(ev)),
        bound_name_(std::move(bound_name)),
        window_constant_(window_constant) {}

  const std::string& name() const { return name_; }
  const std::string& bound_name() const { return bound_name_; }
  uint64_t window_constant() const { return window_constant_; }
  BetValues evaluate(const BitString& history, const Capital& current,
                     SequenceView& view, SequenceView& oracle) const {
    return eval_(history, current, view, oracle);
  }

 private:
  std::string name_;
  Evaluator eval_;
  std::string bound_name_;
  uint64_t window_constant_;
};

struct LookaheadStep {
  size_t step;                      // deciding position step-1
  bool bet_forbidden;
  std::vector<uint64_t> queried;    // this step's new reveals
  std::set<uint64_t> ledger_after;
  Capital value;                    // d(x | step)
};

struct LookaheadTranscript {
  std::string name;
  std::string play;
  std::vector<Capital> values;      // values[n] = d(x | n); values[0] = 1
  std::vector<LookaheadStep> steps;
  std::string to_csv() const;       // step,prefix,value,forbidden,queries
};

// Referee: replays the game, enforcing the window bound, the no-reveal
// rule, the forbidden-bet rule and fairness at every step.  A strategy
// that tries to move capital on a forbidden step, or returns an unfair
// pair, aborts with ProtocolViolation.  Queries on forbidden steps are
// allowed (only the bet is blocked) and still extend the ledger.
LookaheadTranscript play(const LookaheadStrategy& d, const BitString& x);

// Oracle game: the strategy bets on x while reading a second sequence
// through a windowed oracle view — at the step deciding position p the
// oracle exposes only positions <= c * t(p) (the honesty window).  The
// strategy-side view follows the usual rules.
LookaheadTranscript oracle_play(const OracleLookaheadStrategy& g,
                                const BitString& x, const BitString& oracle);

// Strategy on the interleaved space that rides h's bets on the second
// component: flat when deciding even positions, h's move when deciding odd
// position 2n+1, ledger mapped by i -> 2i+1.
LookaheadStrategy lift_lookahead_B(const LookaheadStrategy& h);

// Strategy on the interleaved space that rides g's bets on the first
// component, reading the second through g's oracle: the move at even
// position 2n is g's move on x-position n; flat when deciding odd
// positions.  Strategy queries map i -> 2i, oracle reads j -> 2j+1.
LookaheadStrategy lift_lookahead_cond(const OracleLookaheadStrategy& g);

}  // namespace aitk
