#pragma once

#include <cstdint>
#include <string>

#include "qpi/errors.hpp"

namespace qpi {

/// Integer wrapper whose +, -, * trap on overflow instead of wrapping.
/// Series coefficients must stay exact; trapping makes the fixed-width
/// representation safe, and the wide instantiation lets tests recompute a
/// run at doubled width to confirm nothing changed.
template <class T>
class checked {
 public:
  constexpr checked() = default;
  constexpr checked(long long v) : v_(v) {}

  T raw() const { return v_; }

  friend checked operator+(checked a, checked b) {
    T r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw overflow_error("coefficient overflow in add");
    return from_raw(r);
  }
  friend checked operator-(checked a, checked b) {
    T r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw overflow_error("coefficient overflow in sub");
    return from_raw(r);
  }
  friend checked operator*(checked a, checked b) {
    T r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw overflow_error("coefficient overflow in mul");
    return from_raw(r);
  }
  checked operator-() const {
    T r;
    if (__builtin_sub_overflow(T{0}, v_, &r)) throw overflow_error("coefficient overflow in negate");
    return from_raw(r);
  }
  checked& operator+=(checked o) { return *this = *this + o; }
  checked& operator-=(checked o) { return *this = *this - o; }
  checked& operator*=(checked o) { return *this = *this * o; }

  friend bool operator==(checked a, checked b) { return a.v_ == b.v_; }
  friend bool operator!=(checked a, checked b) { return a.v_ != b.v_; }
  friend bool operator<(checked a, checked b) { return a.v_ < b.v_; }

  bool is_zero() const { return v_ == 0; }

  std::string str() const {
    if (v_ == 0) return "0";
    std::string digits;
    bool neg = v_ < 0;
    // Peel digits from the absolute value without overflowing at the minimum.
    T x = v_;
    while (x != 0) {
      int d = static_cast<int>(x % 10);
      x /= 10;
      digits.push_back(static_cast<char>('0' + (d < 0 ? -d : d)));
    }
    if (neg) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
  }

 private:
  static checked from_raw(T r) {
    checked c;
    c.v_ = r;
    return c;
  }
  T v_ = 0;
};

using coef64 = checked<long long>;
using coef128 = checked<__int128>;

/// Default coefficient type for the whole engine.
using coef = coef64;

}  // namespace qpi
