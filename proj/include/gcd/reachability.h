/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/reachability.h
 * \brief Per-terminal reachable-configuration sets for the compiled pushdown
 *        automaton, represented as saturated finite automata over the stack
 *        alphabet.
 *
 * A configuration (q, gamma) belongs to the set iff gamma, read top to
 * bottom, labels a path from q's node to the stack-base acceptance node.
 * Epsilon moves (production choice, exit, call, return) are closed by a
 * post*-style saturation after every terminal step. Call cycles (e.g. S -> SS)
 * make the configuration set infinite; the automaton stays finite because
 * saturation introduces at most one auxiliary node per call site per step.
 *
 * States are persistent values: stepping never mutates its input, and the
 * stack-suffix structure created by earlier steps is shared immutably between
 * all successor states, so beam hypotheses can advance independently.
 *
 * Liveness: for RTN compilations of reduced grammars every reachable
 * configuration is co-reachable (each pending production suffix derives some
 * terminal string and every return address resumes such a suffix), so
 * admissibility reduces to nonemptiness. This is verified against independent
 * oracles in the test suite rather than assumed silently.
 */
#ifndef GCD_REACHABILITY_H_
#define GCD_REACHABILITY_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "gcd/counters.h"
#include "gcd/pda.h"

namespace gcd {

class ConfigSet;

namespace detail {

struct Generation;

/*! \brief Reference to a frozen stack-suffix node. {nullptr, 0} is the base node. */
struct NodeRef {
  const Generation* gen = nullptr;
  uint32_t idx = 0;
  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

struct TailEdge {
  StackSym sym;
  NodeRef to;
  friend bool operator==(const TailEdge&, const TailEdge&) = default;
};

struct TailNode {
  std::vector<TailEdge> edges;
};

/*! \brief One step's worth of frozen auxiliary nodes; parents keep ancestors alive.
 *
 * Node slot k belongs to call transition k, so node identity is canonical
 * regardless of saturation order; `serial` is the step that created the
 * generation, giving a structural identity for cross-run comparisons. */
struct Generation {
  std::vector<TailNode> nodes;
  std::shared_ptr<const Generation> parent;
  uint64_t serial = 0;
};

}  // namespace detail

struct EngineOptions {
  /*! \brief Saturation worklist order; results agree by confluence (tested). */
  enum class WorklistOrder { kFifo, kLifo };
  WorklistOrder order = WorklistOrder::kFifo;
};

/*!
 * \brief Saturated automaton representing the reachable configuration set
 *        after some consumed prefix.
 */
class ConfigSet {
 public:
  /*! \brief Exact membership test: is (state, stack) in the set? Stack is
   *         top-first and must end with the bottom marker. */
  bool Contains(uint32_t state, const std::vector<StackSym>& stack) const;

  bool Inhabited(uint32_t state) const { return !head_edges_[state].empty(); }
  bool Empty() const;

  /*! \brief Nodes/edges reachable from inhabited control states; the
   *         live-configuration representation size M_t (both measures). */
  struct Size {
    uint64_t nodes;
    uint64_t edges;
  };
  Size RepresentationSize() const;

  /*! \brief Signature of the represented set: sorted head edges per control
   *         state with structurally-hashed targets. Equal signatures imply
   *         equal membership for all stacks. Used by confluence tests. */
  std::vector<uint64_t> MembershipSignature() const;

 private:
  friend class EngineState;
  friend class Saturator;

  std::vector<std::vector<detail::TailEdge>> head_edges_;  // per control state
  std::shared_ptr<const detail::Generation> tails_;
};

/*!
 * \brief Engine state after consuming a terminal prefix: the saturated
 *        configuration set plus liveness bookkeeping. Immutable value.
 */
class EngineState {
 public:
  /*! \brief Epsilon-closure of the initial configuration (start state, bottom). */
  static EngineState Init(std::shared_ptr<const Npda> pda, EngineOptions opts = {},
                          CounterVector* counters = nullptr);

  /*!
   * \brief Consume one terminal then re-saturate. Returns a dead state (empty
   *        configuration set) if the terminal is not admissible; never throws
   *        for that case, because dead states answer admissibility probes.
   */
  EngineState StepTerminal(uint32_t terminal, CounterVector* counters = nullptr) const;

  bool Live() const { return live_; }
  uint32_t Consumed() const { return consumed_; }
  const Npda& Pda() const { return *pda_; }
  const ConfigSet& Configs() const { return configs_; }

  /*! \brief Terminals admissible next. A terminal is included iff stepping it
   *         yields a live state; cheap because the grammar is reduced. */
  std::vector<uint32_t> NextTerminals() const;

  /*! \brief True iff the consumed prefix is a member of the language
   *         (an accepting configuration is present). */
  bool EosAdmissible() const;

 private:
  EngineState() = default;

  std::shared_ptr<const Npda> pda_;
  EngineOptions opts_;
  ConfigSet configs_;
  uint32_t consumed_ = 0;
  bool live_ = false;
};

}  // namespace gcd

#endif  // GCD_REACHABILITY_H_
