/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/oracles.h
 * \brief Independent verification oracles: a derivation-search decision
 *        procedure for prefix membership, bounded completion search, explicit
 *        parse-tree enumeration, and a seeded random-grammar generator.
 *
 * These deliberately share no machinery with the engine, the Earley chart, or
 * the packed chart; they exist to check those paths from the outside.
 */
#ifndef GCD_ORACLES_H_
#define GCD_ORACLES_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gcd/grammar.h"

namespace gcd {

/*!
 * \brief Decide prefix and full membership of a fixed string by a fixpoint
 *        over derivation reach sets.
 *
 * For each (nonterminal, start position) the oracle tracks which positions a
 * derivation can end at exactly, plus an overflow flag for derivations that
 * cover the rest of the string and continue beyond it. Strings up to 62
 * terminals are supported.
 */
class DerivationOracle {
 public:
  /*! \brief Positions past the end of x act as `extra_wildcards` wildcard
   *         slots, so completion questions become reach questions. Requires
   *         |x| + extra_wildcards <= 62. */
  DerivationOracle(const Cfg& g, const std::vector<uint32_t>& x, uint32_t extra_wildcards = 0);

  /*! \brief x is in Pref(L): some derivation matches all of x. */
  bool IsPrefix() const;
  /*! \brief x is in L: some derivation matches x exactly. */
  bool IsMember() const;
  /*! \brief Least completion length within the wildcard window, if any. */
  std::optional<uint32_t> ShortestCompletion() const;

  static bool PrefixMember(const Cfg& g, const std::vector<uint32_t>& x) {
    return DerivationOracle(g, x).IsPrefix();
  }
  static bool LanguageMember(const Cfg& g, const std::vector<uint32_t>& x) {
    return DerivationOracle(g, x).IsMember();
  }

  /*! \brief Next-terminal set after x, decided one candidate string at a time. */
  static std::vector<uint32_t> NextTerminals(const Cfg& g, const std::vector<uint32_t>& x);

 private:
  uint64_t Chain(uint64_t positions, const Production& p) const;

  const Cfg& g_;
  std::vector<uint32_t> x_;
  uint32_t window_;  // |x| + wildcard slots
  std::vector<bool> productive_;
  std::vector<std::vector<uint64_t>> reach_;  // [nonterminal][start] -> position bits
};

/*!
 * \brief Does some v with |v| <= bound make (u v) a language member? Decided
 *        exactly by the wildcard-extended derivation oracle.
 */
bool CompletableWithin(const Cfg& g, const std::vector<uint32_t>& u, uint32_t bound);

/*!
 * \brief Literal enumeration of every candidate completion up to the bound.
 *        Exponential; suitable only for the small named examples.
 */
bool CompletableByEnumeration(const Cfg& g, const std::vector<uint32_t>& u, uint32_t bound);

/*!
 * \brief Enumerate the distinct parse trees of w as canonical serializations.
 *        Test-scale only. Throws if the count is infinite.
 */
std::set<std::string> EnumerateParseTrees(const Cfg& g, const std::vector<uint32_t>& w);

/*!
 * \brief Deterministic random reduced grammar: up to `max_nonterminals`,
 *        right-hand sides up to 3 symbols. Resamples internally until the
 *        language is nonempty, so the result is always reduced.
 */
Cfg RandomReducedGrammar(uint64_t seed, uint32_t max_nonterminals = 4,
                         uint32_t max_terminals = 3);

}  // namespace gcd

#endif  // GCD_ORACLES_H_
