/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/acceptance.h
 * \brief Desk-scale verification suite: every structural claim the project is
 *        built to check, run end to end with pinned tolerances. Used by both
 *        the acceptance test binary and `gcd selftest`.
 */
#ifndef GCD_ACCEPTANCE_H_
#define GCD_ACCEPTANCE_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace gcd {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

/*! \brief Run all criteria, appending one result each. */
std::vector<CriterionResult> RunAcceptance();

/*!
 * \brief Run and print one pass/fail line per criterion. Returns all-pass.
 *
 * The body written to `os` is deterministic (byte-identical across runs);
 * per-criterion wall times go to `timing` when given.
 */
bool RunAcceptance(std::ostream& os, std::ostream* timing = nullptr);

}  // namespace gcd

#endif  // GCD_ACCEPTANCE_H_
