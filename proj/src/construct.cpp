#include "aitk/construct.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "aitk/coding.hpp"
#include "aitk/kolmo.hpp"
#include "aitk/martingale.hpp"

namespace aitk {

// ---- schedule --------------------------------------------------------------

uint64_t StageSchedule::a_len(size_t s) const {
  uint64_t n = 0;
  for (size_t j = 0; j < s && j < stages.size(); ++j) n += stages[j].alpha_len;
  return n;
}

uint64_t StageSchedule::b_len(size_t s) const {
  uint64_t n = 0;
  for (size_t j = 0; j < s && j < stages.size(); ++j)
    n += stages[j].alpha_len + stages[j].beta_len;
  return n;
}

bool StageSchedule::separation_ok(std::string* why) const {
  for (size_t s = 1; s <= stages.size(); ++s) {
    const StageSpec& sp = stages[s - 1];
    if (sp.alpha_len == 0) {
      if (why) *why = "stage " + std::to_string(s) + ": empty shared block";
      return false;
    }
    uint64_t horizon =
        budget.constant * time_bound(budget.bound_name, a_len(s));
    if (b_len(s - 1) + sp.beta_len <= horizon) {
      if (why)
        *why = "stage " + std::to_string(s) + ": " +
               std::to_string(b_len(s - 1) + sp.beta_len) +
               " <= horizon " + std::to_string(horizon);
      return false;
    }
  }
  if (why) *why = "";
  return true;
}

StageSchedule StageSchedule::default_incompressibility() {
  StageSchedule s;
  s.stages = {{12, 25}};
  s.budget = ExecBudget{"linear2x", 1};
  return s;
}

StageSchedule StageSchedule::default_martingale() {
  StageSchedule s;
  s.stages = {{5, 32}, {1, 18}, {1, 22}};
  s.budget = ExecBudget{"quadratic", 1};
  return s;
}

// ---- helpers ---------------------------------------------------------------

namespace {

// Lexicographically first extension of `s` by `remaining` bits such that
// every intermediate prefix satisfies `ok`; backtracking search.
bool dfs_extend(BitString& s, uint64_t remaining,
                const std::function<bool(const BitString&)>& ok) {
  if (remaining == 0) return true;
  for (uint8_t bit : {0, 1}) {
    s.push_back(bit);
    if (ok(s) && dfs_extend(s, remaining - 1, ok)) return true;
    s.pop_back();
  }
  return false;
}

// Same, but the chosen bits are appended to two strings at once (the
// shared alpha block grows a and b together).
bool dfs_extend2(BitString& a, BitString& b, uint64_t remaining,
                 const std::function<bool(const BitString&, const BitString&)>&
                     ok) {
  if (remaining == 0) return true;
  for (uint8_t bit : {0, 1}) {
    a.push_back(bit);
    b.push_back(bit);
    if (ok(a, b) && dfs_extend2(a, b, remaining - 1, ok)) return true;
    a.pop_back();
    b.pop_back();
  }
  return false;
}

using BadMap = std::map<BitString, uint64_t>;

// K(prefix | cond) >= |prefix| - slack, read off the exhaustive table.
bool certifiable(const BitString& prefix, const BadMap& bad, uint64_t slack) {
  auto it = bad.find(prefix);
  if (it == bad.end()) return true;
  return it->second + slack >= prefix.size();
}

// One bettor-pool greedy step: extend `s` by the bit that keeps the
// aggregate from growing, lexicographically first on ties.  Fairness of
// the aggregate guarantees one side always qualifies.
void greedy_pool_bit(BitString& s, const Martingale& aggregate) {
  Capital cur = aggregate(s);
  s.push_back(0);
  if (aggregate(s) <= cur) return;
  s.pop_back();
  s.push_back(1);
}

TransferWitness make_transfer_witness(const StageSchedule& sched, size_t stage,
                                      const BitString& a, const BitString& b,
                                      const MachineConfig& cfg) {
  uint64_t m = sched.b_len(stage);
  uint64_t n = sched.a_len(stage);
  // Subprogram reassembling A_s from B_s: one backward copy per shared
  // block, offsets anchored at the end of the m-bit conditional.
  BitString sub;
  for (size_t j = 1; j <= stage; ++j) {
    BitString piece =
        make_copy(sched.stages[j - 1].alpha_len, m - sched.b_len(j));
    sub = (j == 1) ? piece : make_concat(sub, piece);
  }
  if (sub.size() >= n)
    throw NoWitnessError(stage, "subprogram not shorter than the block: " +
                                    std::to_string(sub.size()) + " vs " +
                                    std::to_string(n));
  MachineConfig pcfg = cfg.with_pair_codecs();
  TransferWitness w;
  w.code = make_pair_cond(sub, b.prefix(m), a.prefix(m), pcfg);
  w.m = m;
  w.n = n;
  w.margin = n - sub.size();
  w.budget_name = "quadratic";
  // The witness must actually run to completion under t = n^2, constant 1.
  Program p = parse_program(w.code, pcfg);
  ExecOutcome out = run(p, BitString{}, ExecBudget{w.budget_name, 1}, pcfg);
  if (out.status != RunStatus::halted ||
      out.output != interleave(a.prefix(m), b.prefix(m)))
    throw NoWitnessError(stage, "transfer code does not reproduce the pair");
  if (w.code.size() != 2 * m - w.margin + cond_pair_overhead(m))
    throw NoWitnessError(stage, "transfer code length off the exact law");
  return w;
}

std::string text_or_empty(const BitString& s) { return s.to_text(); }

}  // namespace

// ---- incompressibility builder ---------------------------------------------

PairArtifact build_pair_incompressibility(const StageSchedule& sched,
                                          const IncompressibilityParams& par,
                                          const MachineConfig& cfg) {
  std::string why;
  if (!sched.separation_ok(&why))
    throw std::invalid_argument("schedule separation fails: " + why);
  if (cfg.enum_cap < par.code_cap)
    throw std::invalid_argument("machine enum_cap below the search cap");
  const size_t S = sched.stages.size();
  const uint64_t total = sched.b_len(S);
  // Exhaustiveness: every prefix length l needs codes up to l - slack - 1
  // enumerated, so the smallest usable slack is total - 1 - code_cap.
  uint64_t min_slack =
      (total > par.code_cap + 1) ? total - 1 - par.code_cap : 0;
  if (min_slack > par.max_slack)
    throw std::invalid_argument("code cap too small for any slack <= max");

  const BadMap bad_b = compressible_outputs(par.code_cap, BitString{},
                                            sched.budget, cfg, total);
  std::map<std::string, BadMap> cond_cache;
  auto bad_given = [&](const BitString& cond) -> const BadMap& {
    auto it = cond_cache.find(cond.to_text());
    if (it == cond_cache.end())
      it = cond_cache
               .emplace(cond.to_text(),
                        compressible_outputs(par.code_cap, cond, sched.budget,
                                             cfg, total))
               .first;
    return it->second;
  };

  for (uint64_t slack_b = min_slack; slack_b <= par.max_slack; ++slack_b) {
    for (uint64_t slack_a = min_slack; slack_a <= par.max_slack; ++slack_a) {
      PairArtifact art;
      art.kind = "incompressibility";
      art.schedule = sched;
      art.machine_digest = cfg.digest();
      BitString a, b;
      bool stuck = false;
      for (size_t s = 1; s <= S && !stuck; ++s) {
        StageCertificate cert;
        cert.stage = s;
        cert.slack_b = slack_b;
        cert.slack_a = slack_a;
        cert.code_cap = par.code_cap;
        size_t beta_mark = b.size();
        auto ok_b = [&](const BitString& p) {
          return certifiable(p, bad_b, slack_b);
        };
        if (!dfs_extend(b, sched.stages[s - 1].beta_len, ok_b)) {
          stuck = true;
          break;
        }
        cert.beta = b.substring(beta_mark, b.size() - beta_mark);
        cert.conditional = b;
        const BadMap& bad_a = bad_given(b);
        size_t alpha_mark = a.size();
        auto ok_ab = [&](const BitString& pa, const BitString& pb) {
          return certifiable(pa, bad_a, slack_a) &&
                 certifiable(pb, bad_b, slack_b);
        };
        if (!dfs_extend2(a, b, sched.stages[s - 1].alpha_len, ok_ab)) {
          stuck = true;
          break;
        }
        cert.alpha = a.substring(alpha_mark, a.size() - alpha_mark);
        art.certificates.push_back(std::move(cert));
      }
      if (stuck) continue;
      // Pad a to |b|, keeping its prefixes certifiable against the last
      // stage's conditional.
      const BadMap& bad_last = bad_given(art.certificates.back().conditional);
      auto ok_pad = [&](const BitString& p) {
        return certifiable(p, bad_last, slack_a);
      };
      if (!dfs_extend(a, b.size() - a.size(), ok_pad)) continue;
      art.a = a;
      art.b = b;
      for (size_t s = 1; s <= S; ++s)
        art.certificates[s - 1].transfer =
            make_transfer_witness(sched, s, a, b, cfg);
      return art;
    }
  }
  throw NoWitnessError(S, "no certifiable pair within the slack bound");
}

// ---- martingale builder ----------------------------------------------------

PairArtifact build_pair_martingale(const StageSchedule& sched,
                                   const MartingaleParams& par,
                                   const MachineConfig& cfg) {
  std::string why;
  if (!sched.separation_ok(&why))
    throw std::invalid_argument("schedule separation fails: " + why);
  PairArtifact art;
  art.kind = "martingale";
  art.schedule = sched;
  art.machine_digest = cfg.digest();
  BettorPool plain =
      machine_bettor_pool(par.pool_cap, BitString{}, sched.budget, cfg);
  BitString a, b;
  Martingale last_oracle;  // pool conditioned on the final B_{s-1}beta_s
  for (size_t s = 1; s <= sched.stages.size(); ++s) {
    StageCertificate cert;
    cert.stage = s;
    cert.pool_cap = par.pool_cap;
    cert.pool_value_start = plain.aggregate(b).to_pair_text();
    size_t beta_mark = b.size();
    for (uint64_t k = 0; k < sched.stages[s - 1].beta_len; ++k)
      greedy_pool_bit(b, plain.aggregate);
    cert.beta = b.substring(beta_mark, b.size() - beta_mark);
    cert.pool_value_end = plain.aggregate(b).to_pair_text();
    cert.conditional = b;
    BettorPool oracle = machine_bettor_pool(par.pool_cap, b, sched.budget, cfg);
    last_oracle = oracle.aggregate;
    size_t alpha_mark = a.size();
    for (uint64_t k = 0; k < sched.stages[s - 1].alpha_len; ++k) {
      // Shared bit: chosen safe for a against the conditioned pool, then
      // mirrored into b.
      greedy_pool_bit(a, oracle.aggregate);
      b.push_back(a[a.size() - 1]);
      art.copies.emplace_back(b.size() - 1, a.size() - 1);
    }
    cert.alpha = a.substring(alpha_mark, a.size() - alpha_mark);
    art.certificates.push_back(std::move(cert));
  }
  while (a.size() < b.size()) greedy_pool_bit(a, last_oracle);
  art.a = a;
  art.b = b;
  return art;
}

// ---- asymmetric builder ----------------------------------------------------

PairArtifact build_pair_asymmetric(const AsymmetricParams& par,
                                   const MachineConfig& cfg) {
  ExecBudget bud{par.bound_name, par.budget_constant};
  std::map<uint64_t, uint64_t> target_of;  // a-target -> b-source
  for (auto [src, tgt] : par.copies) {
    if (src >= par.total_len || tgt >= par.total_len)
      throw std::invalid_argument("copy outside the pair");
    if (tgt <= par.budget_constant * time_bound(par.bound_name, src))
      throw std::invalid_argument("copy target inside the honesty window");
    target_of[tgt] = src;
  }
  PairArtifact art;
  art.kind = "asymmetric";
  art.schedule.budget = bud;
  art.machine_digest = cfg.digest();
  art.copies = par.copies;
  BettorPool plain = machine_bettor_pool(par.pool_cap, BitString{}, bud, cfg);
  BitString b;
  for (uint64_t k = 0; k < par.total_len; ++k)
    greedy_pool_bit(b, plain.aggregate);
  BettorPool given_b = machine_bettor_pool(par.pool_cap, b, bud, cfg);
  BitString a;
  size_t stage = 0;
  for (uint64_t pos = 0; pos < par.total_len; ++pos) {
    auto it = target_of.find(pos);
    if (it == target_of.end()) {
      greedy_pool_bit(a, given_b.aggregate);
      continue;
    }
    StageCertificate cert;
    cert.stage = ++stage;
    cert.pool_cap = par.pool_cap;
    cert.conditional = b;
    cert.pool_value_start = given_b.aggregate(a).to_pair_text();
    a.push_back(b[it->second]);  // the planted copy, pool-safe or not
    cert.alpha = a.substring(a.size() - 1, 1);
    cert.pool_value_end = given_b.aggregate(a).to_pair_text();
    art.certificates.push_back(std::move(cert));
  }
  art.a = a;
  art.b = b;
  return art;
}

// ---- serialization ---------------------------------------------------------

std::string PairArtifact::serialize() const {
  std::ostringstream os;
  os << "kind=" << kind << "\n";
  os << "machine=" << machine_digest << "\n";
  os << "budget=" << schedule.budget.bound_name << ","
     << schedule.budget.constant << "\n";
  os << "stages=";
  for (size_t j = 0; j < schedule.stages.size(); ++j)
    os << (j ? ";" : "") << schedule.stages[j].alpha_len << ":"
       << schedule.stages[j].beta_len;
  os << "\n";
  os << "a=" << a.to_text() << "\n";
  os << "b=" << b.to_text() << "\n";
  os << "copies=";
  for (size_t j = 0; j < copies.size(); ++j)
    os << (j ? ";" : "") << copies[j].first << ":" << copies[j].second;
  os << "\n";
  os << "cert,stage,beta,alpha,conditional,slack_b,slack_a,code_cap,pool_cap,"
        "pool_start,pool_end,transfer_code,transfer_m,transfer_n,"
        "transfer_margin,transfer_budget\n";
  for (const auto& c : certificates) {
    os << "cert," << c.stage << "," << text_or_empty(c.beta) << ","
       << text_or_empty(c.alpha) << "," << text_or_empty(c.conditional) << ","
       << c.slack_b << "," << c.slack_a << "," << c.code_cap << ","
       << c.pool_cap << "," << c.pool_value_start << "," << c.pool_value_end
       << ",";
    if (c.transfer)
      os << c.transfer->code.to_text() << "," << c.transfer->m << ","
         << c.transfer->n << "," << c.transfer->margin << ","
         << c.transfer->budget_name;
    else
      os << ",,,,";
    os << "\n";
  }
  return os.str();
}

// ---- replay ----------------------------------------------------------------

std::vector<std::string> replay_certificates(const PairArtifact& art,
                                             const MachineConfig& cfg) {
  std::vector<std::string> fails;
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) fails.push_back(msg);
  };
  check(art.machine_digest == cfg.digest(), "machine digest mismatch");
  try {
    PairArtifact fresh;
    if (art.kind == "incompressibility") {
      IncompressibilityParams p;
      check(!art.certificates.empty(), "no certificates recorded");
      if (art.certificates.empty()) return fails;
      p.code_cap = art.certificates.front().code_cap;
      p.max_slack = std::max(art.certificates.front().slack_b,
                             art.certificates.front().slack_a);
      fresh = build_pair_incompressibility(art.schedule, p, cfg);
      // Independently re-run every recorded transfer witness.
      MachineConfig pcfg = cfg.with_pair_codecs();
      for (const auto& c : art.certificates) {
        if (!c.transfer) {
          fails.push_back("stage " + std::to_string(c.stage) +
                          ": missing transfer witness");
          continue;
        }
        const TransferWitness& w = *c.transfer;
        ExecOutcome out = run(parse_program(w.code, pcfg), BitString{},
                              ExecBudget{w.budget_name, 1}, pcfg);
        check(out.status == RunStatus::halted &&
                  out.output ==
                      interleave(art.a.prefix(w.m), art.b.prefix(w.m)),
              "stage " + std::to_string(c.stage) +
                  ": transfer witness does not replay");
        check(w.code.size() == 2 * w.m - w.margin + cond_pair_overhead(w.m),
              "stage " + std::to_string(c.stage) +
                  ": transfer length law violated");
      }
    } else if (art.kind == "martingale") {
      MartingaleParams p;
      check(!art.certificates.empty(), "no certificates recorded");
      if (art.certificates.empty()) return fails;
      p.pool_cap = art.certificates.front().pool_cap;
      fresh = build_pair_martingale(art.schedule, p, cfg);
    } else if (art.kind == "asymmetric") {
      AsymmetricParams p;
      check(!art.certificates.empty(), "no certificates recorded");
      if (art.certificates.empty()) return fails;
      p.pool_cap = art.certificates.front().pool_cap;
      p.copies = art.copies;
      p.total_len = art.a.size();
      p.bound_name = art.schedule.budget.bound_name;
      p.budget_constant = art.schedule.budget.constant;
      fresh = build_pair_asymmetric(p, cfg);
      for (auto [src, tgt] : art.copies)
        check(art.a[tgt] == art.b[src],
              "copy (" + std::to_string(src) + "," + std::to_string(tgt) +
                  ") not planted");
    } else {
      fails.push_back("unknown artifact kind: " + art.kind);
      return fails;
    }
    check(fresh.serialize() == art.serialize(),
          "fresh rebuild differs from the recorded artifact");
  } catch (const std::exception& e) {
    fails.push_back(std::string("replay raised: ") + e.what());
  }
  return fails;
}

}  // namespace aitk
