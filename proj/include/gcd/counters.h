/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/counters.h
 * \brief Named symbolic-work counters shared by all instrumented engines.
 */
#ifndef GCD_COUNTERS_H_
#define GCD_COUNTERS_H_

#include <array>
#include <cstdint>
#include <string>

#include "gcd/error.h"

namespace gcd {

/*!
 * \brief Vector of nonnegative symbolic-work counters.
 *
 * Monotone within a run; additive across independent hypotheses (each
 * hypothesis owns its own instance and totals are formed by Add).
 */
struct CounterVector {
  uint64_t chart_symbol_nodes = 0;     // symbol nodes created in the packed chart
  uint64_t chart_packed_nodes = 0;     // packed (split) nodes created
  uint64_t engine_edges_touched = 0;   // config-automaton edges materialized
  uint64_t saturation_iterations = 0;  // saturation worklist items processed
  uint64_t speculative_token_steps = 0;  // terminal steps taken while probing tokens
  uint64_t bitset_slots_scanned = 0;   // slots visited by the bitset-scan engine

  static constexpr size_t kNumCounters = 6;

  static const std::array<std::string, kNumCounters>& Names();

  uint64_t Get(size_t i) const;
  uint64_t Get(const std::string& name) const;
  void Set(size_t i, uint64_t v);

  void Add(const CounterVector& o) {
    chart_symbol_nodes += o.chart_symbol_nodes;
    chart_packed_nodes += o.chart_packed_nodes;
    engine_edges_touched += o.engine_edges_touched;
    saturation_iterations += o.saturation_iterations;
    speculative_token_steps += o.speculative_token_steps;
    bitset_slots_scanned += o.bitset_slots_scanned;
  }
  CounterVector Delta(const CounterVector& earlier) const {
    CounterVector d;
    for (size_t i = 0; i < kNumCounters; ++i) {
      GCD_CHECK(Get(i) >= earlier.Get(i)) << "counters must be monotone";
      d.Set(i, Get(i) - earlier.Get(i));
    }
    return d;
  }

  friend bool operator==(const CounterVector&, const CounterVector&) = default;
};

}  // namespace gcd

#endif  // GCD_COUNTERS_H_
