#pragma once

#include <cstdint>
#include <optional>

#include "aitk/bitstring.hpp"

namespace aitk {

// Elias gamma code for v >= 1: (L-1) zeros, then the L binary digits of v
// (msb first), where L = bit length of v.  gamma(1) = "1", gamma(2) = "010".
inline void gamma_append(BitString& out, uint64_t v) {
  if (v == 0) throw std::invalid_argument("gamma: value must be >= 1");
  int len = 64 - __builtin_clzll(v);
  for (int i = 0; i < len - 1; ++i) out.push_back(0);
  for (int i = len - 1; i >= 0; --i)
    out.push_back(static_cast<uint8_t>((v >> i) & 1));
}

inline size_t gamma_length(uint64_t v) {
  int len = 64 - __builtin_clzll(v);
  return static_cast<size_t>(2 * len - 1);
}

// Decode starting at pos; advances pos past the code. nullopt on underrun.
inline std::optional<uint64_t> gamma_decode(const BitString& code,
                                            size_t& pos) {
  size_t zeros = 0;
  while (pos < code.size() && code[pos] == 0) {
    ++zeros;
    ++pos;
  }
  if (pos >= code.size() || zeros >= 64) return std::nullopt;
  ++pos;  // the leading 1 of the payload
  uint64_t v = 1;
  for (size_t i = 0; i < zeros; ++i) {
    if (pos >= code.size()) return std::nullopt;
    v = (v << 1) | code[pos];
    ++pos;
  }
  return v;
}

// Nonnegative integers are carried as gamma(v + 1), so 0 is encodable.
inline void gamma_append_nat(BitString& out, uint64_t v) {
  gamma_append(out, v + 1);
}
inline size_t gamma_length_nat(uint64_t v) { return gamma_length(v + 1); }
inline std::optional<uint64_t> gamma_decode_nat(const BitString& code,
                                                size_t& pos) {
  auto v = gamma_decode(code, pos);
  if (!v) return std::nullopt;
  return *v - 1;
}

}  // namespace aitk
