#include "aitk/machine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "aitk/gamma.hpp"

namespace aitk {

uint64_t time_bound(const std::string& name, uint64_t n) {
  if (name == "quadratic") return n * n;
  if (name == "nlog") {
    uint64_t lg = std::bit_width(n + 2);
    if ((n + 2) == (uint64_t(1) << (lg - 1))) --lg;  // ceil(log2(n+2))
    return n * lg;
  }
  if (name == "linear2x") return 2 * n;
  throw std::invalid_argument("unknown time bound: " + name);
}

std::vector<std::string> time_bound_names() {
  return {"quadratic", "nlog", "linear2x"};
}

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::halted: return "halted";
    case RunStatus::budget_exceeded: return "budget_exceeded";
    case RunStatus::parse_error: return "parse_error";
    case RunStatus::oracle_out_of_range: return "oracle_out_of_range";
    case RunStatus::invalid_operation: return "invalid_operation";
  }
  return "?";
}

std::string fnv1a_hex(const std::string& text) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string MachineConfig::serialize() const {
  std::ostringstream os;
  os << "max_opcode=" << max_opcode << "\n"
     << "parse_run_ceiling=" << parse_run_ceiling << "\n"
     << "output_cap=" << output_cap << "\n"
     << "enum_cap=" << enum_cap << "\n"
     << "allowance=" << ExecBudget::kAllowance << "\n";
  return os.str();
}

std::string MachineConfig::digest() const { return fnv1a_hex(serialize()); }

namespace {

// ---- evaluation ----------------------------------------------------------

struct RunCtx {
  uint64_t steps = 0;
  uint64_t ceiling = 0;  // hard mid-run step ceiling
  uint64_t output_cap = 0;
  RunStatus fail = RunStatus::halted;
};

bool charge(RunCtx& ctx, uint64_t n) {
  ctx.steps += n;
  if (ctx.steps > ctx.ceiling) {
    ctx.fail = RunStatus::budget_exceeded;
    return false;
  }
  return true;
}

// reads != nullptr only for the outermost conditional tape; embedded tapes
// (pair decoders, interleave cross-feed) still cost steps but are not part
// of the caller-visible oracle access log.
bool eval_node(const ProgramNode& n, const BitString& cond, RunCtx& ctx,
               std::vector<uint64_t>* reads, BitString& out) {
  if (!charge(ctx, 1)) return false;  // dispatch
  switch (n.op) {
    case Opcode::kLiteral: {
      if (!charge(ctx, n.payload.size())) return false;
      out = n.payload;
      return true;
    }
    case Opcode::kRepeat: {
      uint64_t total = n.len * n.count;
      if (total > ctx.output_cap) {
        ctx.fail = RunStatus::budget_exceeded;
        return false;
      }
      if (!charge(ctx, total)) return false;
      out.reserve(total);
      for (uint64_t i = 0; i < n.count; ++i)
        for (uint64_t j = 0; j < n.len; ++j) out.push_back(n.payload[j]);
      return true;
    }
    case Opcode::kCopyCond: {
      // offset counts back from the end of the conditional: offset 0 with
      // length L copies the last L bits.
      if (n.offset + n.len > cond.size()) {
        ctx.fail = RunStatus::oracle_out_of_range;
        return false;
      }
      size_t start = cond.size() - n.offset - n.len;
      if (!charge(ctx, 2 * n.len)) return false;  // read + emit
      for (uint64_t i = 0; i < n.len; ++i) {
        if (reads) reads->push_back(start + i);
        out.push_back(cond[start + i]);
      }
      return true;
    }
    case Opcode::kConcat: {
      BitString a, b;
      if (!eval_node(n.children[0], cond, ctx, reads, a)) return false;
      if (!eval_node(n.children[1], cond, ctx, reads, b)) return false;
      out = a + b;
      if (out.size() > ctx.output_cap) {
        ctx.fail = RunStatus::budget_exceeded;
        return false;
      }
      return charge(ctx, out.size());  // assembly
    }
    case Opcode::kInterleave: {
      // Second child sees the outer conditional; first child is conditioned
      // on the second child's output.
      BitString b;
      if (!eval_node(n.children[1], cond, ctx, reads, b)) return false;
      BitString a;
      if (!eval_node(n.children[0], b, ctx, nullptr, a)) return false;
      if (a.size() != b.size() && a.size() != b.size() + 1) {
        ctx.fail = RunStatus::invalid_operation;
        return false;
      }
      out = interleave(a, b);
      if (out.size() > ctx.output_cap) {
        ctx.fail = RunStatus::budget_exceeded;
        return false;
      }
      return charge(ctx, out.size());
    }
    case Opcode::kPairCond: {
      BitString head;
      if (!eval_node(n.children[0], n.pair_b, ctx, nullptr, head)) return false;
      BitString a = head + n.pair_tail;
      if (a.size() != n.pair_b.size()) {
        ctx.fail = RunStatus::invalid_operation;
        return false;
      }
      out = interleave(a, n.pair_b);
      if (out.size() > ctx.output_cap) {
        ctx.fail = RunStatus::budget_exceeded;
        return false;
      }
      return charge(ctx, out.size());
    }
    case Opcode::kPairPlain: {
      BitString b;
      static const BitString kEmpty;
      if (!eval_node(n.children[0], kEmpty, ctx, nullptr, b)) return false;
      if (n.payload.size() != b.size()) {
        ctx.fail = RunStatus::invalid_operation;
        return false;
      }
      out = interleave(n.payload, b);
      if (out.size() > ctx.output_cap) {
        ctx.fail = RunStatus::budget_exceeded;
        return false;
      }
      return charge(ctx, out.size());
    }
  }
  ctx.fail = RunStatus::invalid_operation;
  return false;
}

// Bare run used at parse time and by the enumerator (no budget semantics,
// only the hard step ceiling).
std::optional<BitString> subrun(const ProgramNode& n, const BitString& cond,
                                const MachineConfig& cfg) {
  RunCtx ctx;
  ctx.ceiling = cfg.parse_run_ceiling;
  ctx.output_cap = cfg.output_cap;
  BitString out;
  if (!eval_node(n, cond, ctx, nullptr, out)) return std::nullopt;
  return out;
}

// ---- parsing -------------------------------------------------------------

uint64_t parse_nat(const BitString& code, size_t& pos, const char* field) {
  auto v = gamma_decode_nat(code, pos);
  if (!v) throw ParseError(pos, std::string("truncated ") + field);
  return *v;
}

BitString take_raw(const BitString& code, size_t& pos, uint64_t n,
                   const char* field) {
  if (pos + n > code.size())
    throw ParseError(code.size(), std::string("truncated ") + field);
  BitString r = code.substring(pos, n);
  pos += n;
  return r;
}

ProgramNode parse_node(const BitString& code, size_t& pos,
                       const MachineConfig& cfg, int depth) {
  if (depth > 64) throw ParseError(pos, "nesting too deep");
  size_t head_at = pos;
  int k = 1;
  while (pos < code.size() && code[pos]) {
    ++k;
    ++pos;
  }
  if (pos == code.size()) throw ParseError(head_at, "truncated opcode header");
  ++pos;  // the terminating 0
  if (k > cfg.max_opcode) throw ParseError(head_at, "opcode not registered");

  ProgramNode n;
  n.op = static_cast<Opcode>(k);
  switch (n.op) {
    case Opcode::kLiteral:
      n.len = parse_nat(code, pos, "literal length");
      n.payload = take_raw(code, pos, n.len, "literal payload");
      break;
    case Opcode::kRepeat:
      n.len = parse_nat(code, pos, "repeat length");
      n.count = parse_nat(code, pos, "repeat count");
      n.payload = take_raw(code, pos, n.len, "repeat pattern");
      break;
    case Opcode::kCopyCond:
      n.len = parse_nat(code, pos, "copy length");
      n.offset = parse_nat(code, pos, "copy offset");
      break;
    case Opcode::kConcat:
    case Opcode::kInterleave:
      n.children.push_back(parse_node(code, pos, cfg, depth + 1));
      n.children.push_back(parse_node(code, pos, cfg, depth + 1));
      break;
    case Opcode::kPairCond: {
      n.m = parse_nat(code, pos, "pair width");
      size_t sub_at = pos;
      n.children.push_back(parse_node(code, pos, cfg, depth + 1));
      n.pair_b = take_raw(code, pos, n.m, "pair second component");
      auto head = subrun(n.children[0], n.pair_b, cfg);
      if (!head) throw ParseError(sub_at, "pair subprogram does not halt");
      if (head->size() > n.m)
        throw ParseError(sub_at, "pair subprogram output exceeds width");
      n.pair_tail =
          take_raw(code, pos, n.m - head->size(), "pair first-component tail");
      break;
    }
    case Opcode::kPairPlain: {
      size_t sub_at = pos;
      n.children.push_back(parse_node(code, pos, cfg, depth + 1));
      auto b = subrun(n.children[0], BitString{}, cfg);
      if (!b) throw ParseError(sub_at, "pair subprogram does not halt");
      n.payload =
          take_raw(code, pos, b->size(), "pair first component");
      break;
    }
  }
  return n;
}

}  // namespace

Program parse_program(const BitString& code, const MachineConfig& cfg) {
  size_t pos = 0;
  Program p;
  p.root = parse_node(code, pos, cfg, 0);
  if (pos != code.size()) throw ParseError(pos, "trailing bits");
  p.code = code;
  return p;
}

ExecOutcome run_parsed(const ProgramNode& root, size_t code_len,
                       const BitString& conditional,
                       const std::optional<ExecBudget>& budget,
                       const MachineConfig& cfg) {
  ExecOutcome oc;
  RunCtx ctx;
  ctx.steps = code_len;  // 1 step per parsed bit
  ctx.output_cap = cfg.output_cap;
  // Mid-run ceiling: no budget can be satisfied past the ceiling for the
  // largest representable output, so that bound is also the hard stop.
  ctx.ceiling = budget ? budget->ceiling_for(cfg.output_cap)
                       : cfg.parse_run_ceiling;
  BitString out;
  if (!eval_node(root, conditional, ctx, &oc.conditional_reads, out)) {
    oc.status = ctx.fail;
    oc.steps_used = ctx.steps;
    return oc;
  }
  oc.steps_used = ctx.steps;
  oc.output = std::move(out);
  if (budget && oc.steps_used > budget->ceiling_for(oc.output.size()))
    oc.status = RunStatus::budget_exceeded;
  else
    oc.status = RunStatus::halted;
  return oc;
}

ExecOutcome run(const Program& p, const BitString& conditional,
                const std::optional<ExecBudget>& budget,
                const MachineConfig& cfg) {
  return run_parsed(p.root, p.code.size(), conditional, budget, cfg);
}

// ---- enumeration ---------------------------------------------------------

namespace {

BitString header_bits(int k) {
  BitString h;
  for (int i = 1; i < k; ++i) h.push_back(true);
  h.push_back(false);
  return h;
}

BitString nat_bits(uint64_t v) {
  BitString b;
  gamma_append_nat(b, v);
  return b;
}

// All bit strings of length n, in lexicographic (counter) order.
// n stays small: raw fields are bounded by the enumeration cap (<= ~26).
template <typename F>
bool each_raw(uint64_t n, F&& f) {
  uint64_t total = uint64_t(1) << n;
  for (uint64_t x = 0; x < total; ++x) {
    BitString s;
    for (uint64_t i = 0; i < n; ++i)
      s.push_back((x >> (n - 1 - i)) & 1);
    if (!f(s)) return false;
  }
  return true;
}

class Gen {
 public:
  using RawVisit =
      std::function<bool(const BitString&, const ProgramNode&)>;

  Gen(const MachineConfig& cfg, const RawVisit& v) : cfg_(cfg), visit_(v) {}

  void run(size_t maxlen) {
    gen(maxlen, [&](const BitString& code, const ProgramNode& node) {
      if (!visit_(code, node)) stopped_ = true;
    });
  }

 private:
  static constexpr size_t kMinProgLen = 2;  // "01" = LITERAL of length 0

  // Calls sink(code, node) for every valid program of length <= maxlen.
  void gen(size_t maxlen,
           const std::function<void(const BitString&, const ProgramNode&)>&
               sink) {
    if (stopped_) return;
    gen_literal(maxlen, sink);
    gen_repeat(maxlen, sink);
    gen_copy(maxlen, sink);
    gen_binary(Opcode::kConcat, 4, maxlen, sink);
    gen_binary(Opcode::kInterleave, 5, maxlen, sink);
    if (cfg_.max_opcode >= 6) gen_pair_cond(maxlen, sink);
    if (cfg_.max_opcode >= 7) gen_pair_plain(maxlen, sink);
  }

  void gen_literal(size_t maxlen, const auto& sink) {
    for (uint64_t len = 0;; ++len) {
      size_t fixed = 1 + gamma_length_nat(len);
      if (fixed + len > maxlen) break;  // monotone in len
      BitString prefix = header_bits(1) + nat_bits(len);
      each_raw(len, [&](const BitString& pay) {
        ProgramNode n;
        n.op = Opcode::kLiteral;
        n.len = len;
        n.payload = pay;
        sink(prefix + pay, n);
        return !stopped_;
      });
      if (stopped_) return;
    }
  }

  void gen_repeat(size_t maxlen, const auto& sink) {
    for (uint64_t len = 0;; ++len) {
      size_t base = 2 + gamma_length_nat(len) + len;
      if (base + 1 > maxlen) break;  // even count = 0 no longer fits
      for (uint64_t count = 0;; ++count) {
        size_t total = base + gamma_length_nat(count);
        if (total > maxlen) break;
        BitString prefix = header_bits(2) + nat_bits(len) + nat_bits(count);
        each_raw(len, [&](const BitString& pay) {
          ProgramNode n;
          n.op = Opcode::kRepeat;
          n.len = len;
          n.count = count;
          n.payload = pay;
          sink(prefix + pay, n);
          return !stopped_;
        });
        if (stopped_) return;
      }
    }
  }

  void gen_copy(size_t maxlen, const auto& sink) {
    for (uint64_t len = 0;; ++len) {
      size_t base = 3 + gamma_length_nat(len);
      if (base + 1 > maxlen) break;
      for (uint64_t off = 0;; ++off) {
        size_t total = base + gamma_length_nat(off);
        if (total > maxlen) break;
        ProgramNode n;
        n.op = Opcode::kCopyCond;
        n.len = len;
        n.offset = off;
        sink(header_bits(3) + nat_bits(len) + nat_bits(off), n);
        if (stopped_) return;
      }
    }
  }

  void gen_binary(Opcode op, int k, size_t maxlen, const auto& sink) {
    if (size_t(k) + 2 * kMinProgLen > maxlen) return;
    gen(maxlen - k - kMinProgLen,
        [&](const BitString& c1, const ProgramNode& n1) {
          if (stopped_) return;
          gen(maxlen - k - c1.size(),
              [&](const BitString& c2, const ProgramNode& n2) {
                if (stopped_) return;
                ProgramNode n;
                n.op = op;
                n.children = {n1, n2};
                sink(header_bits(k) + c1 + c2, n);
              });
        });
  }

  void gen_pair_cond(size_t maxlen, const auto& sink) {
    // length = 6 + |gamma(m+1)| + |sub| + m + (m - n), n = |sub(b)|
    for (uint64_t m = 0;; ++m) {
      size_t fixed = 6 + gamma_length_nat(m);
      if (fixed + kMinProgLen + m > maxlen) break;
      gen(maxlen - fixed - m, [&](const BitString& sc, const ProgramNode& sn) {
        if (stopped_) return;
        each_raw(m, [&](const BitString& b) {
          auto head = subrun(sn, b, cfg_);
          if (head && head->size() <= m) {
            uint64_t tail_len = m - head->size();
            if (fixed + sc.size() + m + tail_len <= maxlen) {
              BitString prefix =
                  header_bits(6) + nat_bits(m) + sc + b;
              each_raw(tail_len, [&](const BitString& tail) {
                ProgramNode n;
                n.op = Opcode::kPairCond;
                n.m = m;
                n.children = {sn};
                n.pair_b = b;
                n.pair_tail = tail;
                sink(prefix + tail, n);
                return !stopped_;
              });
            }
          }
          return !stopped_;
        });
      });
      if (stopped_) return;
    }
  }

  void gen_pair_plain(size_t maxlen, const auto& sink) {
    if (7 + kMinProgLen > maxlen) return;
    gen(maxlen - 7, [&](const BitString& sc, const ProgramNode& sn) {
      if (stopped_) return;
      auto b = subrun(sn, BitString{}, cfg_);
      if (!b) return;
      size_t total = 7 + sc.size() + b->size();
      if (total > maxlen) return;
      BitString prefix = header_bits(7) + sc;
      each_raw(b->size(), [&](const BitString& a) {
        ProgramNode n;
        n.op = Opcode::kPairPlain;
        n.children = {sn};
        n.payload = a;
        sink(prefix + a, n);
        return !stopped_;
      });
    });
  }

  const MachineConfig& cfg_;
  const RawVisit& visit_;
  bool stopped_ = false;
};

}  // namespace

void for_each_program_raw(
    size_t max_code_len, const MachineConfig& cfg,
    const std::function<bool(const BitString& code, const ProgramNode& root)>&
        visit) {
  if (max_code_len > cfg.enum_cap)
    throw CapExceededError("enumeration length exceeds machine cap");
  Gen g(cfg, visit);
  g.run(max_code_len);
}

void for_each_program(size_t max_code_len, const MachineConfig& cfg,
                      const std::function<bool(const Program&)>& visit) {
  for_each_program_raw(
      max_code_len, cfg,
      [&](const BitString& code, const ProgramNode& root) {
        Program p;
        p.code = code;
        p.root = root;
        return visit(p);
      });
}

std::vector<Program> enumerate_programs(size_t max_code_len,
                                        const MachineConfig& cfg) {
  std::vector<Program> all;
  for_each_program(max_code_len, cfg, [&](const Program& p) {
    all.push_back(p);
    return true;
  });
  std::sort(all.begin(), all.end(), [](const Program& x, const Program& y) {
    if (x.code.size() != y.code.size()) return x.code.size() < y.code.size();
    return x.code < y.code;
  });
  return all;
}

}  // namespace aitk
