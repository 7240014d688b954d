#pragma once

#include <optional>
#include <vector>

#include "aitk/capital.hpp"
#include "aitk/machine.hpp"

namespace aitk {

// sum over lengths of 2^-l, exact.
Capital kraft_sum(const std::vector<uint64_t>& lengths);

struct KraftOverflowError : std::runtime_error {
  explicit KraftOverflowError(size_t at)
      : std::runtime_error("Kraft mass exhausted at request " +
                           std::to_string(at)),
        request_index(at) {}
  size_t request_index;
};

// Machine-existence allocation: serve length requests in order, returning a
// prefix-free codeword per request.  Free cylinders are kept one-per-depth
// (best fit), which is exactly the classical online construction; throws
// KraftOverflowError on the first request that pushes the mass past 1.
std::vector<BitString> kc_allocate(const std::vector<uint64_t>& lengths);

// ---- code builders for the reference machine ------------------------------
// These emit exactly the encodings parse_program accepts.

BitString make_literal(const BitString& payload);
BitString make_repeat(const BitString& pattern, uint64_t count);
// offset counts back from the end of the conditional (offset 0 = suffix).
BitString make_copy(uint64_t len, uint64_t offset);
BitString make_concat(const BitString& code1, const BitString& code2);
BitString make_interleave(const BitString& code1, const BitString& code2);

// Plain pair code for interleave(a, b): header, subprogram computing b from
// the empty conditional, then |b| raw bits of a.  Constant overhead:
inline constexpr uint64_t kPlainPairOverhead = 7;
BitString make_pair_plain(const BitString& subprogram, const BitString& a,
                          const MachineConfig& cfg);

// Conditional pair code for interleave(a, b_prefix ++ tail-of-b ...): header,
// width m = |b_prefix|, subprogram computing a[0..n-1] from b_prefix, the m
// raw bits of b_prefix, then the m - n raw bits a[n..m-1].
uint64_t cond_pair_overhead(uint64_t m);  // 6 + |gamma(m+1)|
BitString make_pair_cond(const BitString& subprogram, const BitString& b_prefix,
                         const BitString& a, const MachineConfig& cfg);

}  // namespace aitk
