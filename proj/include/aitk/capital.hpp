#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace aitk {

using BigInt = boost::multiprecision::cpp_int;

struct NonDyadicError : std::runtime_error {
  NonDyadicError() : std::runtime_error("result is not a dyadic rational") {}
};
struct DivisionByZeroError : std::runtime_error {
  DivisionByZeroError() : std::runtime_error("division by zero capital") {}
};

// Exact nonnegative dyadic rational: numerator / 2^exponent.
// Canonical: exponent is minimal (numerator odd whenever exponent > 0;
// numerator 0 forces exponent 0).
class Capital {
 public:
  Capital() : num_(0), exp_(0) {}
  Capital(BigInt numerator, uint32_t exponent)
      : num_(std::move(numerator)), exp_(exponent) {
    if (num_ < 0) throw std::invalid_argument("Capital: negative value");
    normalize();
  }
  Capital(long v) : num_(v), exp_(0) {  // NOLINT: implicit for literals
    if (v < 0) throw std::invalid_argument("Capital: negative value");
  }
  Capital(int v) : Capital(static_cast<long>(v)) {}

  static Capital zero() { return Capital(); }
  static Capital one() { return Capital(1); }
  // 2^k for k possibly negative
  static Capital pow2(int64_t k) {
    if (k >= 0) return Capital(BigInt(1) << k, 0);
    return Capital(1, static_cast<uint32_t>(-k));
  }

  const BigInt& numerator() const { return num_; }
  uint32_t exponent() const { return exp_; }
  bool is_zero() const { return num_ == 0; }

  Capital operator+(const Capital& o) const {
    uint32_t e = std::max(exp_, o.exp_);
    return Capital((num_ << (e - exp_)) + (o.num_ << (e - o.exp_)), e);
  }
  Capital operator-(const Capital& o) const {
    uint32_t e = std::max(exp_, o.exp_);
    BigInt a = num_ << (e - exp_), b = o.num_ << (e - o.exp_);
    if (a < b) throw std::invalid_argument("Capital: negative difference");
    return Capital(a - b, e);
  }
  Capital operator*(const Capital& o) const {
    uint64_t e = static_cast<uint64_t>(exp_) + o.exp_;
    if (e > UINT32_MAX) throw std::overflow_error("Capital: exponent overflow");
    return Capital(num_ * o.num_, static_cast<uint32_t>(e));
  }

  Capital half() const {
    if (exp_ == UINT32_MAX) throw std::overflow_error("Capital: exponent overflow");
    return Capital(num_, exp_ + 1);
  }
  Capital twice() const { return Capital(num_ << 1, exp_); }

  bool operator==(const Capital& o) const {
    return num_ == o.num_ && exp_ == o.exp_;  // canonical form is unique
  }
  std::strong_ordering operator<=>(const Capital& o) const {
    uint32_t e = std::max(exp_, o.exp_);
    BigInt a = num_ << (e - exp_), b = o.num_ << (e - o.exp_);
    return a < b ? std::strong_ordering::less
         : a > b ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  // Exact pair serialization plus a decimal approximation for humans.
  std::string to_pair_text() const {
    return num_.str() + "/2^" + std::to_string(exp_);
  }
  std::string to_decimal_text() const {
    // dyadic => finite decimal: num * 5^exp with exp decimal places
    BigInt scaled = num_;
    for (uint32_t i = 0; i < exp_; ++i) scaled *= 5;
    std::string digits = scaled.str();
    if (exp_ == 0) return digits;
    if (digits.size() <= exp_)
      digits.insert(0, exp_ + 1 - digits.size(), '0');
    digits.insert(digits.size() - exp_, ".");
    // trim trailing zeros but keep at least one fractional digit
    while (digits.back() == '0' && digits[digits.size() - 2] != '.')
      digits.pop_back();
    return digits;
  }

 private:
  void normalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    while (exp_ > 0 && (num_ & 1) == 0) {
      num_ >>= 1;
      --exp_;
    }
  }

  BigInt num_;
  uint32_t exp_;
};

// (x + y) / 2, exact.
inline Capital average2(const Capital& x, const Capital& y) {
  return (x + y).half();
}

// x * num / den, exact; NonDyadicError if the result is not dyadic.
inline Capital mul_ratio(const Capital& x, const Capital& num,
                         const Capital& den) {
  if (den.is_zero()) throw DivisionByZeroError();
  BigInt p = x.numerator() * num.numerator();
  int64_t e = static_cast<int64_t>(x.exponent()) + num.exponent();
  // split den.numerator into odd * 2^k
  BigInt d = den.numerator();
  int64_t k = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++k;
  }
  if (d != 1) {
    if (p % d != 0) throw NonDyadicError();
    p /= d;
  }
  e += k;
  e -= den.exponent();
  if (e < 0) {
    p <<= static_cast<uint32_t>(-e);
    e = 0;
  }
  if (e > UINT32_MAX) throw std::overflow_error("Capital: exponent overflow");
  return Capital(p, static_cast<uint32_t>(e));
}

}  // namespace aitk
