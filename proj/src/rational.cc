/*!
 *  Copyright (c) 2026 by Contributors
 * \file rational.cc
 */
#include "gcd/rational.h"

namespace gcd {

Rat Rat::FromDecimalString(const std::string& s) {
  size_t pos = 0;
  bool neg = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
    neg = (s[pos] == '-');
    ++pos;
  }
  __int128 num = 0;
  __int128 den = 1;
  bool any_digit = false;
  bool after_point = false;
  int exponent = 0;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (after_point) den *= 10;
      any_digit = true;
    } else if (c == '.' && !after_point) {
      after_point = true;
    } else if ((c == 'e' || c == 'E') && any_digit) {
      exponent = std::stoi(s.substr(pos + 1));
      pos = s.size() - 1;
    } else if (c == '/' && any_digit && !after_point) {
      // plain fraction form "n/d"
      Rat d = FromDecimalString(s.substr(pos + 1));
      Rat n(Raw{}, neg ? -num : num, 1);
      return n / d;
    } else {
      throw Error("cannot parse '" + s + "' as a decimal rational");
    }
  }
  if (!any_digit) throw Error("cannot parse '" + s + "' as a decimal rational");
  for (; exponent > 0; --exponent) num *= 10;
  for (; exponent < 0; ++exponent) den *= 10;
  return Rat(Raw{}, neg ? -num : num, den);
}

std::string Rat::ToString() const {
  auto print128 = [](__int128 v) {
    if (v == 0) return std::string("0");
    bool neg = v < 0;
    if (neg) v = -v;
    std::string out;
    while (v) {
      out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    if (neg) out.push_back('-');
    return std::string(out.rbegin(), out.rend());
  };
  if (den_ == 1) return print128(num_);
  return print128(num_) + "/" + print128(den_);
}

}  // namespace gcd
