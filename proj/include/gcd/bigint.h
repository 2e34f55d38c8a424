/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/bigint.h
 * \brief Minimal arbitrary-precision unsigned integer for exact parse counts.
 */
#ifndef GCD_BIGINT_H_
#define GCD_BIGINT_H_

#include <cstdint>
#include <string>
#include <vector>

namespace gcd {

/*! \brief Unsigned big integer, base 2^32 limbs, little-endian. */
class BigUInt {
 public:
  BigUInt() = default;
  BigUInt(uint64_t v) {  // NOLINT(runtime/explicit): numeric literal convenience
    while (v) {
      limbs_.push_back(static_cast<uint32_t>(v));
      v >>= 32;
    }
  }

  bool IsZero() const { return limbs_.empty(); }

  BigUInt& operator+=(const BigUInt& o) {
    uint64_t carry = 0;
    size_t n = std::max(limbs_.size(), o.limbs_.size());
    limbs_.resize(n, 0);
    for (size_t i = 0; i < n; ++i) {
      uint64_t s = carry + limbs_[i] + (i < o.limbs_.size() ? o.limbs_[i] : 0);
      limbs_[i] = static_cast<uint32_t>(s);
      carry = s >> 32;
    }
    if (carry) limbs_.push_back(static_cast<uint32_t>(carry));
    return *this;
  }
  friend BigUInt operator+(BigUInt a, const BigUInt& b) { return a += b; }

  friend BigUInt operator*(const BigUInt& a, const BigUInt& b) {
    if (a.IsZero() || b.IsZero()) return BigUInt();
    BigUInt r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < b.limbs_.size(); ++j) {
        uint64_t cur = r.limbs_[i + j] +
                       static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] + carry;
        r.limbs_[i + j] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
      }
      size_t k = i + b.limbs_.size();
      while (carry) {
        uint64_t cur = r.limbs_[k] + carry;
        r.limbs_[k] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
        ++k;
      }
    }
    r.Trim();
    return r;
  }

  friend bool operator==(const BigUInt& a, const BigUInt& b) { return a.limbs_ == b.limbs_; }

  std::string ToString() const {
    if (IsZero()) return "0";
    std::vector<uint32_t> tmp = limbs_;
    std::string digits;
    while (!tmp.empty()) {
      uint64_t rem = 0;
      for (size_t i = tmp.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | tmp[i];
        tmp[i] = static_cast<uint32_t>(cur / 10);
        rem = cur % 10;
      }
      digits.push_back(static_cast<char>('0' + rem));
      while (!tmp.empty() && tmp.back() == 0) tmp.pop_back();
    }
    return std::string(digits.rbegin(), digits.rend());
  }

 private:
  void Trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }
  std::vector<uint32_t> limbs_;
};

}  // namespace gcd

#endif  // GCD_BIGINT_H_
