/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/rational.h
 * \brief Exact rational arithmetic on 128-bit integers, for the conditional
 *        sampler's exact identities.
 */
#ifndef GCD_RATIONAL_H_
#define GCD_RATIONAL_H_

#include <cstdint>
#include <string>

#include "gcd/error.h"

namespace gcd {

/*!
 * \brief Exact rational with __int128 numerator/denominator, always
 *        normalized (gcd 1, denominator positive).
 *
 * The toy models' probabilities are short decimal literals, so denominators
 * stay within powers of ten times small factors; 128 bits is ample for the
 * enumeration horizons the budget guard admits.
 */
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(int64_t n) : num_(n), den_(1) {}  // NOLINT(runtime/explicit)
  Rat(int64_t n, int64_t d) : num_(n), den_(d) { Normalize(); }

  static Rat FromDecimalString(const std::string& s);

  bool IsZero() const { return num_ == 0; }
  bool Positive() const { return num_ > 0; }

  double ToDouble() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string ToString() const;

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(Raw{}, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(Raw{}, a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(Raw{}, a.num_ * b.num_, a.den_ * b.den_); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    GCD_CHECK(b.num_ != 0) << "rational division by zero";
    return Rat(Raw{}, a.num_ * b.den_, a.den_ * b.num_);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return a.num_ * b.den_ < b.num_ * a.den_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.num_ * b.den_ <= b.num_ * a.den_; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

 private:
  struct Raw {};
  Rat(Raw, __int128 n, __int128 d) : num_(n), den_(d) { Normalize(); }

  static __int128 Gcd(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void Normalize() {
    GCD_CHECK(den_ != 0) << "rational with zero denominator";
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    __int128 g = Gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    // headroom guard: one more multiply must not wrap 128 bits
    constexpr __int128 kLimit = static_cast<__int128>(1) << 62;
    __int128 mag = num_ < 0 ? -num_ : num_;
    if (mag > kLimit || den_ > kLimit) {
      throw Error("rational overflow: value outside the supported precision range");
    }
  }

  __int128 num_;
  __int128 den_;
};

}  // namespace gcd

#endif  // GCD_RATIONAL_H_
