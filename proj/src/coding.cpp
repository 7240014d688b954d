#include "aitk/coding.hpp"

#include <map>

#include "aitk/gamma.hpp"

namespace aitk {

Capital kraft_sum(const std::vector<uint64_t>& lengths) {
  Capital s = Capital::zero();
  for (uint64_t l : lengths) s = s + Capital::pow2(-static_cast<int64_t>(l));
  return s;
}

std::vector<BitString> kc_allocate(const std::vector<uint64_t>& lengths) {
  // free_[d] = the single free cylinder at depth d, if any
  std::map<uint64_t, BitString> free_cyl;
  free_cyl.emplace(0, BitString{});  // the whole space
  std::vector<BitString> out;
  out.reserve(lengths.size());
  for (size_t i = 0; i < lengths.size(); ++i) {
    uint64_t l = lengths[i];
    // deepest free cylinder that still contains a depth-l slot
    auto it = free_cyl.upper_bound(l);
    if (it == free_cyl.begin()) throw KraftOverflowError(i);
    --it;
    BitString cyl = it->second;
    free_cyl.erase(it);
    // take the leftmost depth-l descendant; the right siblings along the
    // way become free, one per depth (those slots are vacant by invariant)
    BitString w = cyl;
    for (uint64_t d = cyl.size(); d < l; ++d) {
      BitString sib = w;
      sib.push_back(1);
      free_cyl.emplace(d + 1, std::move(sib));
      w.push_back(0);
    }
    out.push_back(std::move(w));
  }
  return out;
}

namespace {

BitString header(int k) {
  BitString h;
  for (int i = 1; i < k; ++i) h.push_back(1);
  h.push_back(0);
  return h;
}

BitString nat(uint64_t v) {
  BitString b;
  gamma_append_nat(b, v);
  return b;
}

}  // namespace

BitString make_literal(const BitString& payload) {
  return header(1) + nat(payload.size()) + payload;
}

BitString make_repeat(const BitString& pattern, uint64_t count) {
  return header(2) + nat(pattern.size()) + nat(count) + pattern;
}

BitString make_copy(uint64_t len, uint64_t offset) {
  return header(3) + nat(len) + nat(offset);
}

BitString make_concat(const BitString& code1, const BitString& code2) {
  return header(4) + code1 + code2;
}

BitString make_interleave(const BitString& code1, const BitString& code2) {
  return header(5) + code1 + code2;
}

BitString make_pair_plain(const BitString& subprogram, const BitString& a,
                          const MachineConfig& cfg) {
  Program sub = parse_program(subprogram, cfg);
  ExecOutcome oc = run(sub, BitString{}, std::nullopt, cfg);
  if (oc.status != RunStatus::halted)
    throw std::invalid_argument("pair subprogram does not halt");
  if (oc.output.size() != a.size())
    throw std::invalid_argument("pair components have mismatched lengths");
  return header(7) + subprogram + a;
}

uint64_t cond_pair_overhead(uint64_t m) { return 6 + gamma_length_nat(m); }

BitString make_pair_cond(const BitString& subprogram, const BitString& b_prefix,
                         const BitString& a, const MachineConfig& cfg) {
  uint64_t m = b_prefix.size();
  if (a.size() != m)
    throw std::invalid_argument("pair components have mismatched lengths");
  Program sub = parse_program(subprogram, cfg);
  ExecOutcome oc = run(sub, b_prefix, std::nullopt, cfg);
  if (oc.status != RunStatus::halted)
    throw std::invalid_argument("pair subprogram does not halt");
  uint64_t n = oc.output.size();
  if (n > m) throw std::invalid_argument("pair subprogram output too long");
  if (!oc.output.is_prefix_of(a))
    throw std::invalid_argument(
        "pair subprogram does not compute the first component's prefix");
  return header(6) + nat(m) + subprogram + b_prefix + a.substring(n, m - n);
}

}  // namespace aitk
