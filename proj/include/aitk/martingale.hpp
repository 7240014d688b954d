#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "aitk/capital.hpp"
#include "aitk/machine.hpp"

namespace aitk {

// Exact-valued betting strategy d with the fairness law
// d(w0) + d(w1) = 2 d(w).  Values are memoized per instance.
class Martingale {
 public:
  using Fn = std::function<Capital(const BitString&)>;

  Martingale()
      : Martingale("null", [](const BitString&) { return Capital::zero(); }) {}
  Martingale(std::string name, Fn fn)
      : name_(std::move(name)),
        fn_(std::move(fn)),
        memo_(std::make_shared<std::map<BitString, Capital>>()) {}

  Capital operator()(const BitString& w) const {
    auto it = memo_->find(w);
    if (it != memo_->end()) return it->second;
    Capital v = fn_(w);
    memo_->emplace(w, v);
    return v;
  }

  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn fn_;
  std::shared_ptr<std::map<BitString, Capital>> memo_;
};

// First w (breadth-first) with d(w0) + d(w1) != 2 d(w), up to |w| < depth.
std::optional<BitString> validate_fairness(const Martingale& d, size_t depth);

// Lift a strategy on the second component to the interleaved space: bets
// ride only on odd (B) positions, even (A) positions are bet-free.
Martingale lift_interleave(const Martingale& d_b);

// Averaging projection onto the second component:
//   d_B(sigma) = 2^-|sigma| * sum over |tau| = |sigma| of d_AB(tau (+) sigma).
Martingale project_average(const Martingale& d_ab);

// Savings-account transform: f re-bets with d's ratios and banks into s
// whenever its capital reaches 2.
//   f(l) = 1, s(l) = 0
//   r = d(wb)/d(w) * f(w); f(wb) = r, s(wb) = s(w)        if r < 2
//                          f(wb) = 1, s(wb) = s(w) + r - 1 otherwise
struct SavingsPair {
  Martingale f;  // the re-betting part
  Martingale s;  // the monotone savings part (not itself a martingale)
};
SavingsPair savings_transform(const Martingale& d);

// Split a strategy on the interleaved space into the two conditional
// one-sided strategies (h bets on the first component given the second,
// g vice versa).  h(x-prefix | y-prefix) with |y| >= |x| - 1, and
// g(y-prefix | x-prefix) with |x| >= |y|:
//   h(X|n) = h(X|n-1) * d(X(+)Y | 2n-1) / d(X(+)Y | 2n-2)
//   g(Y|n) = g(Y|n-1) * d(X(+)Y | 2n)   / d(X(+)Y | 2n-1)
// with h = g = d(empty) at length 0 and the recurrences applied from
// n = 1, so the product telescopes exactly:
//   h(x|n) * g(y|n) = d(empty) * d(x(+)y | 2n).
struct SplitPair {
  std::function<Capital(const BitString& x, const BitString& y)> h;
  std::function<Capital(const BitString& x, const BitString& y)> g;
};
SplitPair split_h_g(const Martingale& d);

// Double-or-nothing bettor driven by a last-index-sensitive predictor.
// At interleaved position 2(i + c_w*t(i)) + 1 for i in hit_set, it goes
// all-in on the predictor's forecast of that second-component bit from
// the preceding second-component prefix plus the first-component bit i;
// everywhere else it holds.
Martingale last_index_bettor(
    std::function<uint8_t(const BitString& b_prefix_then_candidate)> predictor,
    const std::set<uint64_t>& hit_set, const std::string& bound_name,
    uint64_t window_constant);

// Positions touched by the last-index bettor up to max_len.
std::vector<uint64_t> last_index_positions(const std::set<uint64_t>& hit_set,
                                           const std::string& bound_name,
                                           uint64_t window_constant,
                                           size_t max_len);

// Evaluate the h/g split of d along a concrete pair, reporting the running
// maxima; a growing d forces at least one side's maximum up with it.
struct ResilienceReport {
  std::vector<Capital> h_values;  // h(x|n) for n = 0..N
  std::vector<Capital> g_values;
  Capital h_max;
  Capital g_max;
};
ResilienceReport resilience_check(const Martingale& d, const BitString& x,
                                  const BitString& y);

// All-in strategy induced by one machine program: capital 2^k after k bits
// while the played string follows the program's output, frozen once the
// output is exhausted, zero on divergence.
Martingale program_bettor(const Program& p, const BitString& conditional,
                          const std::optional<ExecBudget>& budget,
                          const MachineConfig& cfg);

// Every halting program of code length <= code_cap, weighted 2^-|code|.
// The aggregate is fair and starts at most 1 (Kraft).
struct BettorPool {
  std::vector<std::pair<BitString, Martingale>> members;  // (code, bettor)
  Martingale aggregate;
  Capital initial;  // aggregate at the empty string
};
BettorPool machine_bettor_pool(size_t code_cap, const BitString& conditional,
                               const std::optional<ExecBudget>& budget,
                               const MachineConfig& cfg);

// Value trace along one play, with doubling-threshold crossings.
struct MartingaleTranscript {
  std::string name;
  std::string play;                    // '0'/'1' text of the string played
  std::vector<Capital> values;         // values[n] = d(w | n)
  // crossings[k] = least n with d(w|n) >= 2^k * d(empty), if reached
  std::map<uint64_t, size_t> crossings;
  bool upper_bound_ok = true;          // d(w|n) <= 2^n * d(empty) everywhere

  std::string to_csv() const;          // step,prefix,value,decimal
};
MartingaleTranscript run_martingale(const Martingale& d, const BitString& w);

}  // namespace aitk
