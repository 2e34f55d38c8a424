/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/error.h
 * \brief Error types shared by all gcd components.
 */
#ifndef GCD_ERROR_H_
#define GCD_ERROR_H_

#include <sstream>
#include <stdexcept>
#include <string>

namespace gcd {

/*! \brief Base class for all domain errors raised by the library. */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/*! \brief Grammar text could not be parsed. Carries line/column. */
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : Error(msg + " (line " + std::to_string(line) + ", col " + std::to_string(col) + ")"),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

/*! \brief The grammar generates no terminal string at all. */
class EmptyLanguageError : public Error {
 public:
  using Error::Error;
};

/*! \brief A mask with no admissible entry was handed to the sampler. */
class DeadEndError : public Error {
 public:
  using Error::Error;
};

/*! \brief An enumeration exceeded its configured budget. */
class BudgetError : public Error {
 public:
  using Error::Error;
};

namespace detail {
class CheckFailStream {
 public:
  CheckFailStream(const char* cond, const char* file, int line) {
    os_ << file << ":" << line << ": check failed: " << cond << " ";
  }
  template <typename T>
  CheckFailStream& operator<<(const T& v) {
    os_ << v;
    return *this;
  }
  [[noreturn]] ~CheckFailStream() noexcept(false) { throw Error(os_.str()); }

 private:
  std::ostringstream os_;
};
}  // namespace detail

}  // namespace gcd

// Internal invariant check. Throws gcd::Error with location info.
#define GCD_CHECK(cond) \
  if (!(cond)) gcd::detail::CheckFailStream(#cond, __FILE__, __LINE__)

#endif  // GCD_ERROR_H_
