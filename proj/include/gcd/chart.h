/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/chart.h
 * \brief Earley recognizer (the reference next-terminal oracle), the
 *        incremental split-complete packed chart used to measure structural
 *        ambiguity cost, the constant-state fast path for right-linear
 *        grammars, and exact parse-tree counting.
 */
#ifndef GCD_CHART_H_
#define GCD_CHART_H_

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gcd/bigint.h"
#include "gcd/counters.h"
#include "gcd/grammar.h"

namespace gcd {

/*!
 * \brief Incremental Earley chart over a reduced grammar.
 *
 * Item sets only ever append as terminals are consumed, so the chart extends
 * in place and copies are cheap enough to fork along a prefix tree. For a
 * reduced grammar the final item set is nonempty iff the consumed prefix is
 * completable, which makes this a reference oracle for next-terminal sets.
 */
class EarleyChart {
 public:
  explicit EarleyChart(std::shared_ptr<const Cfg> g);

  /*! \brief Consume one terminal. Returns false if the prefix left Pref(L). */
  bool Extend(uint32_t terminal);

  bool Live() const;
  /*! \brief Is the consumed prefix a member of the language? */
  bool Member() const;
  /*! \brief Terminals a with (prefix a) still completable, ascending. */
  std::vector<uint32_t> NextTerminals() const;
  size_t Consumed() const { return sets_.size() - 1; }

 private:
  struct Item {
    uint32_t prod;
    uint32_t dot;
    uint32_t origin;
    friend bool operator==(const Item&, const Item&) = default;
  };
  struct ItemHash {
    size_t operator()(const Item& it) const {
      return (static_cast<size_t>(it.prod) * 1000003u + it.dot) * 1000003u + it.origin;
    }
  };
  using ItemSet = std::vector<Item>;

  void Close(uint32_t pos);
  bool AddItem(uint32_t pos, Item it);

  std::shared_ptr<const Cfg> g_;
  std::vector<bool> nullable_;
  std::vector<ItemSet> sets_;
  std::vector<std::unordered_set<Item, ItemHash>> present_;
};

struct EarleyResult {
  std::vector<uint32_t> next_terminals;
  bool member;
  bool live;
};

/*! \brief One-shot Earley oracle: next-terminal set and membership after u. */
EarleyResult EarleyNextTerminals(const Cfg& g, const std::vector<uint32_t>& u);

/*! \brief Per-step increments of the maintained packed structure. */
struct SacSeries {
  struct Step {
    uint64_t new_symbol;
    uint64_t new_packed;
    uint64_t Total() const { return new_symbol + new_packed; }
  };
  std::vector<Step> steps;

  uint64_t CumulativeSymbol() const;
  uint64_t CumulativePacked() const;
};

/*!
 * \brief Incremental split-complete packed chart.
 *
 * The grammar is binarized internally (deterministic left-to-right chains
 * with fresh nonterminals; this changes the forest shape for rhs longer than
 * two, which the measurement reports as-is) and epsilon productions are
 * removed by nullable closure. Every derivable span gets a symbol node and
 * every (i,k,j) instantiation of a length-2 production body is counted as a
 * packed node, exactly once, in the step whose position closes the span.
 */
class PackedChartRun {
 public:
  explicit PackedChartRun(const Cfg& g);

  /*! \brief Consume one terminal; returns the nodes created by this step. */
  SacSeries::Step Step(uint32_t terminal, CounterVector* counters = nullptr);

  uint64_t TotalSymbolNodes() const { return total_symbol_; }
  uint64_t TotalPackedNodes() const { return total_packed_; }
  /*! \brief Symbol nodes recorded for one original nonterminal. */
  uint64_t SymbolNodeCount(uint32_t original_nonterminal) const;
  /*! \brief True iff the span (i, j) is derivable by the original nonterminal. */
  bool HasSpan(uint32_t original_nonterminal, uint32_t i, uint32_t j) const;
  size_t Position() const { return consumed_; }

 private:
  struct BinProduction {
    uint32_t lhs;                 // extended nonterminal id
    std::vector<SymbolId> rhs;    // length 1 or 2; nonterminal ids are extended
  };

  void Build(const Cfg& g);
  void NewSymbol(uint32_t nt, uint32_t i, uint32_t j, CounterVector* counters);

  size_t num_original_ = 0;
  size_t num_extended_ = 0;
  std::vector<BinProduction> prods_;
  // rule indices by shape, keyed by the relevant rhs symbol
  std::vector<std::vector<uint32_t>> leaf_rules_by_terminal_;   // A -> t
  std::vector<std::vector<uint32_t>> unit_rules_by_child_;      // A -> B, keyed B
  std::vector<std::vector<uint32_t>> binary_by_right_child_;    // A -> X B, keyed B
  std::vector<std::vector<uint32_t>> tt_rules_by_second_;       // A -> t u, keyed u

  std::vector<uint32_t> terminals_;  // consumed input
  size_t consumed_ = 0;
  // spans per extended nonterminal
  std::vector<std::unordered_set<uint64_t>> span_set_;
  std::vector<std::vector<std::vector<uint32_t>>> starts_by_end_;  // [nt][end] -> starts
  std::vector<uint64_t> symbol_count_;  // per extended nonterminal
  uint64_t total_symbol_ = 0;
  uint64_t total_packed_ = 0;
  uint64_t step_symbol_ = 0;
  uint64_t step_packed_ = 0;
  std::vector<std::pair<uint32_t, uint32_t>> worklist_;  // (nt, start) ending at current pos
};

enum class SacEngine { kPackedChart, kRegularFastPath };

/*!
 * \brief Measure per-step structural growth under the chosen engine.
 *
 * The fast path is only valid for right-linear deterministic grammars; it
 * tracks a constant-size recognizer state and reports one bookkeeping unit
 * per step. This realizes the O(1)-per-token strategy that exists for such
 * grammars, as opposed to the split-complete chart, whose growth is a
 * property of the chart discipline rather than of the language.
 */
SacSeries SacMeasure(const Cfg& g, const std::vector<uint32_t>& w, SacEngine engine,
                     CounterVector* counters = nullptr);

/*! \brief Structural check used to gate the fast path: every rhs is eps, a
 *         terminal, or terminal-then-nonterminal, deterministically. */
bool IsRightLinearDeterministic(const Cfg& g);

/*!
 * \brief Exact number of distinct parse trees of w under g.
 * \throws Error naming a cyclic nonterminal when unit/epsilon cycles make the
 *         count infinite.
 */
BigUInt CountParseTrees(const Cfg& g, const std::vector<uint32_t>& w);

}  // namespace gcd

#endif  // GCD_CHART_H_
