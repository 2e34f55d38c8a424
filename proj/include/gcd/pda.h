/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/pda.h
 * \brief Recursive-transition-network compilation of a CFG to a nondeterministic
 *        pushdown automaton, plus an exhaustive simulation used as a test oracle.
 *
 * Control-state inventory: one start state, entry/exit states per nonterminal,
 * and one dot state per (production, position). The total always equals
 * Kappa(g). Terminal transitions never touch the stack; push/pop transitions
 * are epsilon transitions carrying one return-address symbol.
 */
#ifndef GCD_PDA_H_
#define GCD_PDA_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "gcd/grammar.h"

namespace gcd {

struct ControlState {
  enum class Role : uint8_t { kStart, kEnter, kExit, kDot };

  Role role;
  uint32_t nonterminal = 0;  // kEnter / kExit
  uint32_t production = 0;   // kDot
  uint32_t pos = 0;          // kDot: dot position in [0, |rhs|]

  std::string DebugName(const Cfg& g) const;
};

/*!
 * \brief Stack alphabet: symbol 0 is the bottom marker; symbol k+1 is the
 *        return address naming dot state with id k.
 */
using StackSym = uint32_t;
constexpr StackSym kStackBottom = 0;

struct TerminalTransition {
  uint32_t from;
  uint32_t terminal;
  uint32_t to;
};
struct NoopTransition {  // epsilon, stack untouched (start / choice / exit)
  uint32_t from;
  uint32_t to;
};
struct PushTransition {  // epsilon, push return address (nonterminal call)
  uint32_t from;
  uint32_t to;       // callee entry state
  StackSym push;     // return address
};
struct PopTransition {  // epsilon, pop return address (nonterminal return)
  uint32_t from;     // callee exit state
  StackSym pop;
  uint32_t to;       // the dot state named by the return address
};

class Npda {
 public:
  const Cfg& Grammar() const { return grammar_; }
  const std::vector<ControlState>& States() const { return states_; }
  size_t NumStates() const { return states_.size(); }
  size_t NumStackSymbols() const { return num_stack_symbols_; }
  uint32_t Initial() const { return initial_; }
  uint32_t Accepting() const { return accepting_; }

  const std::vector<TerminalTransition>& TerminalTransitions() const { return terminal_; }
  const std::vector<NoopTransition>& NoopTransitions() const { return noop_; }
  const std::vector<PushTransition>& PushTransitions() const { return push_; }
  const std::vector<PopTransition>& PopTransitions() const { return pop_; }

  // adjacency views, indexed by source state
  const std::vector<std::vector<uint32_t>>& NoopFrom() const { return noop_from_; }
  const std::vector<std::vector<uint32_t>>& PushFrom() const { return push_from_; }
  const std::vector<std::vector<uint32_t>>& PopFrom() const { return pop_from_; }
  // terminal transitions indexed by terminal
  const std::vector<std::vector<uint32_t>>& TerminalByInput() const { return terminal_by_input_; }

  std::string DumpJson() const;

  friend std::shared_ptr<const Npda> CompileRtn(const Cfg& g);

 private:
  explicit Npda(Cfg g) : grammar_(std::move(g)) {}

  Cfg grammar_;
  std::vector<ControlState> states_;
  size_t num_stack_symbols_ = 0;
  uint32_t initial_ = 0;
  uint32_t accepting_ = 0;
  std::vector<TerminalTransition> terminal_;
  std::vector<NoopTransition> noop_;
  std::vector<PushTransition> push_;
  std::vector<PopTransition> pop_;
  std::vector<std::vector<uint32_t>> noop_from_;
  std::vector<std::vector<uint32_t>> push_from_;
  std::vector<std::vector<uint32_t>> pop_from_;
  std::vector<std::vector<uint32_t>> terminal_by_input_;
};

/*!
 * \brief Compile a reduced grammar to its RTN pushdown automaton.
 *
 * State ordering is deterministic: start, then entry/exit per nonterminal in
 * declaration order, then dot states per production in declaration order.
 */
std::shared_ptr<const Npda> CompileRtn(const Cfg& g);

enum class SimOutcome { kAccept, kReject, kBoundExceeded };

/*!
 * \brief Exhaustive nondeterministic simulation with a stack-height bound and
 *        an explored-configuration budget.
 *
 * Test oracle only; exponential. kBoundExceeded reports an inconclusive
 * search (a branch was cut by the bound, or the budget ran out, and no
 * accepting run was found).
 */
SimOutcome SimulateAccepts(const Npda& a, const std::vector<uint32_t>& terminals,
                           size_t stack_bound, size_t max_configs = 200000);

}  // namespace gcd

#endif  // GCD_PDA_H_
