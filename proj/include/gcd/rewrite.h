/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/rewrite.h
 * \brief Language-preserving grammar rewrites, bounded rewrite-family
 *        enumeration, and minimal-cost representative selection.
 *
 * The rewrite set contains nonterminal inlining (which subsumes unit-chain
 * delegation elimination) and duplicate-nonterminal merging (which removes a
 * nonterminal whose production set is identical to another's up to renaming,
 * the shape redundant delegation takes). Every enumerated member is
 * differentially mask-checked against its parent rather than trusted.
 */
#ifndef GCD_REWRITE_H_
#define GCD_REWRITE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "gcd/counters.h"
#include "gcd/decode.h"
#include "gcd/grammar.h"

namespace gcd {

/*!
 * \brief Replace production `production` by one copy per alternative of the
 *        nonterminal at rhs position `occurrence`. The inlined nonterminal
 *        must not be the start symbol. Result is reduced.
 */
Cfg InlineNonterminal(const Cfg& g, uint32_t production, uint32_t occurrence);

/*!
 * \brief Merge nonterminal `dup` into `into`: requires their production sets
 *        to be identical under the renaming dup -> into. Result is reduced.
 */
Cfg MergeDuplicateNonterminal(const Cfg& g, uint32_t dup, uint32_t into);

/*! \brief Nonterminal renaming by first use plus sorted alternatives; equal
 *         canonical text implies equal grammars up to naming. */
std::string CanonicalForm(const Cfg& g);

struct FamilyMember {
  Cfg grammar;
  std::vector<std::string> path;  // human-readable rewrite descriptions
  std::string canonical;
  uint64_t kappa;
  uint32_t depth;
};

struct RewriteFamily {
  std::vector<FamilyMember> members;  // seed first
  bool partial = false;               // member cap reached
};

struct FamilyOptions {
  size_t member_cap = 10000;
  /*! \brief Mask-differential check of each member against its parent, to
   *         this token-prefix depth. 0 disables. */
  uint32_t verify_depth = 4;
};

/*! \brief Breadth-first closure under at most `budget` rewrites, deduplicated
 *         by canonical form. */
RewriteFamily EnumerateFamily(const Cfg& g, uint32_t budget, const FamilyOptions& opts = {});

/*! \brief Cost components; ratio-valued entries kept as exact integer pairs. */
struct CostVector {
  uint64_t kappa = 0;
  uint64_t sac_units = 0;   // chart nodes created over the workload
  uint64_t sac_steps = 0;   // terminals consumed over the workload
  uint64_t tok_steps = 0;   // speculative terminal steps over all masks
  uint64_t tok_masks = 0;   // masks computed

  double SacMean() const { return sac_steps ? static_cast<double>(sac_units) / sac_steps : 0.0; }
  double TokMean() const { return tok_masks ? static_cast<double>(tok_steps) / tok_masks : 0.0; }
};

enum class CostComponent { kSac, kKappa, kTokenizer };

/*! \brief Parse a priority list like "sac,kappa,tok"; missing components are
 *         appended in the default order. */
std::vector<CostComponent> ParsePriority(const std::string& text);

struct SelectionResult {
  size_t winner = 0;
  std::vector<CostVector> costs;      // parallel to family.members
  bool pointwise_minimal = false;     // re-verified by brute force
};

/*!
 * \brief Measure every member on the workload and return the lexicographic
 *        minimum under the priority order, ties broken by grammar size then
 *        canonical form.
 */
SelectionResult SelectMin(const RewriteFamily& family,
                          const std::vector<std::vector<std::string>>& workload,
                          const std::vector<CostComponent>& priority);

}  // namespace gcd

#endif  // GCD_REWRITE_H_
