#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace aitk {

// Finite binary string. Equality and ordering are on logical bits only;
// the byte-per-bit layout is an internal choice.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
    for (uint8_t b : bits_)
      if (b > 1) throw std::invalid_argument("BitString: bit out of range");
  }

  static BitString from_text(const std::string& s) {
    std::vector<uint8_t> v;
    v.reserve(s.size());
    for (char c : s) {
      if (c != '0' && c != '1')
        throw std::invalid_argument("BitString: expected '0' or '1', got '" +
                                    std::string(1, c) + "'");
      v.push_back(static_cast<uint8_t>(c - '0'));
    }
    return BitString(std::move(v));
  }

  std::string to_text() const {
    std::string s;
    s.reserve(bits_.size());
    for (uint8_t b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
  }

  size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  uint8_t operator[](size_t i) const { return bits_[i]; }
  uint8_t at(size_t i) const {
    if (i >= bits_.size()) throw std::out_of_range("BitString: index");
    return bits_[i];
  }

  void reserve(size_t n) { bits_.reserve(n); }

  void push_back(uint8_t b) {
    if (b > 1) throw std::invalid_argument("BitString: bit out of range");
    bits_.push_back(b);
  }
  void pop_back() { bits_.pop_back(); }

  BitString prefix(size_t n) const {
    if (n > bits_.size()) throw std::out_of_range("BitString: prefix length");
    return BitString(std::vector<uint8_t>(bits_.begin(), bits_.begin() + n));
  }

  // sigma[m .. m+n-1]
  BitString substring(size_t m, size_t n) const {
    if (m + n > bits_.size())
      throw std::out_of_range("BitString: substring out of range");
    return BitString(
        std::vector<uint8_t>(bits_.begin() + m, bits_.begin() + m + n));
  }

  BitString operator+(const BitString& o) const {
    std::vector<uint8_t> v = bits_;
    v.insert(v.end(), o.bits_.begin(), o.bits_.end());
    return BitString(std::move(v));
  }

  bool is_prefix_of(const BitString& o) const {
    if (bits_.size() > o.bits_.size()) return false;
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] != o.bits_[i]) return false;
    return true;
  }

  bool operator==(const BitString& o) const { return bits_ == o.bits_; }
  // lexicographic
  std::strong_ordering operator<=>(const BitString& o) const {
    return bits_ <=> o.bits_;
  }

  const std::vector<uint8_t>& bits() const { return bits_; }

 private:
  std::vector<uint8_t> bits_;
};

// A_0 B_0 A_1 B_1 ...  Requires |a| = |b| or |a| = |b| + 1 (the odd shape
// sigma_0 tau_0 ... tau_{n-2} sigma_{n-1}).
inline BitString interleave(const BitString& a, const BitString& b) {
  if (a.size() != b.size() && a.size() != b.size() + 1)
    throw std::invalid_argument("interleave: |a| - |b| must be 0 or 1");
  std::vector<uint8_t> v;
  v.reserve(a.size() + b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    v.push_back(a[i]);
    if (i < b.size()) v.push_back(b[i]);
  }
  return BitString(std::move(v));
}

// Inverse of interleave; the first component takes even indices.
inline std::pair<BitString, BitString> deinterleave(const BitString& x) {
  std::vector<uint8_t> a, b;
  for (size_t i = 0; i < x.size(); ++i) {
    if (i % 2 == 0)
      a.push_back(x[i]);
    else
      b.push_back(x[i]);
  }
  return {BitString(std::move(a)), BitString(std::move(b))};
}

// true iff no member is a proper prefix of another member.
template <typename Container>
bool is_prefix_free(const Container& set_of) {
  std::vector<const BitString*> v;
  for (const auto& s : set_of) v.push_back(&s);
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (i != j && v[i]->size() < v[j]->size() && v[i]->is_prefix_of(*v[j]))
        return false;
  return true;
}

}  // namespace aitk
