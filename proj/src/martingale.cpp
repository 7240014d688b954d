#include "aitk/martingale.hpp"

#include <deque>
#include <sstream>

namespace aitk {

std::optional<BitString> validate_fairness(const Martingale& d, size_t depth) {
  std::deque<BitString> q;
  q.push_back(BitString{});
  while (!q.empty()) {
    BitString w = std::move(q.front());
    q.pop_front();
    BitString w0 = w, w1 = w;
    w0.push_back(0);
    w1.push_back(1);
    if (d(w0) + d(w1) != d(w).twice()) return w;
    if (w.size() + 1 < depth) {
      q.push_back(std::move(w0));
      q.push_back(std::move(w1));
    }
  }
  return std::nullopt;
}

Martingale lift_interleave(const Martingale& d_b) {
  return Martingale("lift(" + d_b.name() + ")", [d_b](const BitString& w) {
    return d_b(deinterleave(w).second);
  });
}

Martingale project_average(const Martingale& d_ab) {
  return Martingale(
      "project(" + d_ab.name() + ")", [d_ab](const BitString& sigma) {
        size_t n = sigma.size();
        if (n > 30) throw CapExceededError("projection too deep");
        Capital sum = Capital::zero();
        uint64_t total = uint64_t(1) << n;
        for (uint64_t x = 0; x < total; ++x) {
          BitString tau;
          for (size_t i = 0; i < n; ++i)
            tau.push_back(static_cast<uint8_t>((x >> (n - 1 - i)) & 1));
          sum = sum + d_ab(interleave(tau, sigma));
        }
        return mul_ratio(sum, Capital::pow2(-static_cast<int64_t>(n)),
                         Capital::one());
      });
}

namespace {

// Walk the (f, s) recurrences along w.  When d flat-lines at zero the
// betting ratio is taken as "hold" (fairness pins every extension at zero
// anyway, so the choice is unobservable through d).
std::pair<Capital, Capital> savings_walk(const Martingale& d,
                                         const BitString& w) {
  Capital f = Capital::one();
  Capital s = Capital::zero();
  BitString prefix;
  for (size_t i = 0; i < w.size(); ++i) {
    Capital dv = d(prefix);
    prefix.push_back(w[i]);
    Capital dn = d(prefix);
    Capital r = dv.is_zero() ? f : mul_ratio(f, dn, dv);
    if (r < Capital(2)) {
      f = r;
    } else {
      f = Capital::one();
      s = s + (r - Capital::one());
    }
  }
  return {f, s};
}

}  // namespace

SavingsPair savings_transform(const Martingale& d) {
  Martingale f("savings_f(" + d.name() + ")", [d](const BitString& w) {
    return savings_walk(d, w).first;
  });
  Martingale s("savings_s(" + d.name() + ")", [d](const BitString& w) {
    return savings_walk(d, w).second;
  });
  return {std::move(f), std::move(s)};
}

SplitPair split_h_g(const Martingale& d) {
  auto h = [d](const BitString& x, const BitString& y) {
    if (x.size() > 1 && y.size() + 1 < x.size())
      throw std::invalid_argument("h: oracle prefix too short");
    Capital v = d(BitString{});
    for (size_t n = 1; n <= x.size(); ++n) {
      BitString xy = interleave(x.prefix(n), y.prefix(n - 1));  // 2n-1 bits
      v = mul_ratio(v, d(xy), d(xy.prefix(2 * n - 2)));
    }
    return v;
  };
  auto g = [d](const BitString& y, const BitString& x) {
    if (y.size() > 1 && x.size() < y.size())
      throw std::invalid_argument("g: oracle prefix too short");
    Capital v = d(BitString{});
    for (size_t n = 1; n <= y.size(); ++n) {
      BitString xy = interleave(x.prefix(n), y.prefix(n));  // 2n bits
      v = mul_ratio(v, d(xy), d(xy.prefix(2 * n - 1)));
    }
    return v;
  };
  return {std::move(h), std::move(g)};
}

std::vector<uint64_t> last_index_positions(const std::set<uint64_t>& hit_set,
                                           const std::string& bound_name,
                                           uint64_t window_constant,
                                           size_t max_len) {
  std::vector<uint64_t> pos;
  for (uint64_t i : hit_set) {
    uint64_t p = 2 * (i + window_constant * time_bound(bound_name, i)) + 1;
    if (p < max_len) pos.push_back(p);
  }
  return pos;
}

Martingale last_index_bettor(
    std::function<uint8_t(const BitString&)> predictor,
    const std::set<uint64_t>& hit_set, const std::string& bound_name,
    uint64_t window_constant) {
  auto fn = [predictor, hit_set, bound_name,
             window_constant](const BitString& w) {
    // betting position -> the hit index i it serves
    std::map<uint64_t, uint64_t> bet_at;
    for (uint64_t i : hit_set) {
      uint64_t p = 2 * (i + window_constant * time_bound(bound_name, i)) + 1;
      if (p < w.size()) bet_at.emplace(p, i);
    }
    Capital v = Capital::one();
    for (size_t p = 0; p < w.size(); ++p) {
      auto it = bet_at.find(p);
      if (it == bet_at.end()) continue;  // hold
      // position p = 2j+1 carries second-component bit j; the predictor
      // sees that component's first j bits plus the candidate bit, and
      // must match first-component bit i for the all-in to pay.
      auto [a_part, b_part] = deinterleave(w.prefix(p));
      BitString probe = b_part;
      probe.push_back(w[p]);
      if (it->second >= a_part.size())
        throw std::invalid_argument("last_index_bettor: window precedes hit");
      if (predictor(probe) == a_part[it->second])
        v = v.twice();
      else
        return Capital::zero();
    }
    return v;
  };
  return Martingale("last_index_bettor", std::move(fn));
}

ResilienceReport resilience_check(const Martingale& d, const BitString& x,
                                  const BitString& y) {
  SplitPair sp = split_h_g(d);
  ResilienceReport r;
  r.h_max = Capital::zero();
  r.g_max = Capital::zero();
  for (size_t n = 0; n <= x.size(); ++n) {
    if (n > 1 && y.size() + 1 < n) break;
    Capital hv = sp.h(x.prefix(n), y.prefix(std::min(y.size(), n > 0 ? n - 1 : 0)));
    r.h_values.push_back(hv);
    if (hv > r.h_max) r.h_max = hv;
  }
  for (size_t n = 0; n <= y.size() && n <= x.size(); ++n) {
    Capital gv = sp.g(y.prefix(n), x.prefix(n));
    r.g_values.push_back(gv);
    if (gv > r.g_max) r.g_max = gv;
  }
  return r;
}

Martingale program_bettor(const Program& p, const BitString& conditional,
                          const std::optional<ExecBudget>& budget,
                          const MachineConfig& cfg) {
  ExecOutcome oc = run(p, conditional, budget, cfg);
  auto rho = std::make_shared<BitString>(
      oc.status == RunStatus::halted ? oc.output : BitString{});
  bool dead = oc.status != RunStatus::halted;
  auto fn = [rho, dead](const BitString& w) {
    if (dead) return Capital::one();  // non-halting programs never bet
    size_t k = std::min(w.size(), rho->size());
    for (size_t i = 0; i < k; ++i)
      if (w[i] != (*rho)[i]) return Capital::zero();
    return Capital::pow2(static_cast<int64_t>(k));
  };
  return Martingale("bettor(" + p.code.to_text() + ")", std::move(fn));
}

BettorPool machine_bettor_pool(size_t code_cap, const BitString& conditional,
                               const std::optional<ExecBudget>& budget,
                               const MachineConfig& cfg) {
  BettorPool pool;
  for_each_program(code_cap, cfg, [&](const Program& p) {
    ExecOutcome oc = run(p, conditional, budget, cfg);
    if (oc.status != RunStatus::halted) return true;
    pool.members.emplace_back(p.code,
                              program_bettor(p, conditional, budget, cfg));
    return true;
  });
  auto members = std::make_shared<std::vector<std::pair<BitString, Martingale>>>(
      pool.members);
  pool.aggregate = Martingale("pool", [members](const BitString& w) {
    Capital sum = Capital::zero();
    for (const auto& [code, d] : *members)
      sum = sum + mul_ratio(d(w),
                            Capital::pow2(-static_cast<int64_t>(code.size())),
                            Capital::one());
    return sum;
  });
  pool.initial = pool.aggregate(BitString{});
  return pool;
}

MartingaleTranscript run_martingale(const Martingale& d, const BitString& w) {
  MartingaleTranscript t;
  t.name = d.name();
  t.play = w.to_text();
  Capital base = d(BitString{});
  for (size_t n = 0; n <= w.size(); ++n) {
    Capital v = d(w.prefix(n));
    t.values.push_back(v);
    if (v > mul_ratio(base, Capital::pow2(static_cast<int64_t>(n)),
                      Capital::one()))
      t.upper_bound_ok = false;
    for (uint64_t k = 1; k <= 64; ++k) {
      if (t.crossings.count(k)) continue;
      if (!base.is_zero() &&
          v >= mul_ratio(base, Capital::pow2(static_cast<int64_t>(k)),
                         Capital::one()))
        t.crossings.emplace(k, n);
    }
  }
  return t;
}

std::string MartingaleTranscript::to_csv() const {
  std::ostringstream os;
  os << "step,prefix,value,decimal\n";
  for (size_t n = 0; n < values.size(); ++n)
    os << n << "," << play.substr(0, n) << "," << values[n].to_pair_text()
       << "," << values[n].to_decimal_text() << "\n";
  return os.str();
}

}  // namespace aitk
