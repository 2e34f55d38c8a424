/*!
 *  Copyright (c) 2026 by Contributors
 * \file pda.cc
 */
#include "gcd/pda.h"

#include <json.hpp>

#include <deque>
#include <set>

#include "gcd/error.h"

namespace gcd {

std::string ControlState::DebugName(const Cfg& g) const {
  switch (role) {
    case Role::kStart:
      return "start";
    case Role::kEnter:
      return g.NonterminalNames()[nonterminal] + "_in";
    case Role::kExit:
      return g.NonterminalNames()[nonterminal] + "_out";
    case Role::kDot:
      return "p" + std::to_string(production) + "." + std::to_string(pos);
  }
  return "?";
}

std::shared_ptr<const Npda> CompileRtn(const Cfg& g) {
  GCD_CHECK(g.IsReduced()) << "CompileRtn requires a reduced grammar";
  auto pda = std::shared_ptr<Npda>(new Npda(g));
  const Cfg& gr = pda->grammar_;

  // states: start, per-nonterminal enter/exit, per-production dot chain
  pda->states_.push_back({ControlState::Role::kStart});
  std::vector<uint32_t> enter(gr.NumNonterminals()), exit(gr.NumNonterminals());
  for (uint32_t nt = 0; nt < gr.NumNonterminals(); ++nt) {
    enter[nt] = static_cast<uint32_t>(pda->states_.size());
    pda->states_.push_back({ControlState::Role::kEnter, nt});
    exit[nt] = static_cast<uint32_t>(pda->states_.size());
    pda->states_.push_back({ControlState::Role::kExit, nt});
  }
  std::vector<std::vector<uint32_t>> dot(gr.Productions().size());
  for (uint32_t pi = 0; pi < gr.Productions().size(); ++pi) {
    const Production& p = gr.Productions()[pi];
    dot[pi].resize(p.rhs.size() + 1);
    for (uint32_t i = 0; i + 1 <= p.rhs.size() + 1 && i <= p.rhs.size(); ++i) {
      dot[pi][i] = static_cast<uint32_t>(pda->states_.size());
      ControlState cs{ControlState::Role::kDot};
      cs.production = pi;
      cs.pos = i;
      pda->states_.push_back(cs);
    }
  }
  GCD_CHECK(pda->states_.size() == Kappa(gr)) << "state inventory does not match kappa";

  // stack alphabet: bottom plus one return symbol per dot state
  pda->num_stack_symbols_ = 1 + pda->states_.size();
  auto return_sym = [&](uint32_t dot_state) -> StackSym { return dot_state + 1; };

  pda->initial_ = 0;
  pda->accepting_ = exit[gr.Start()];

  // Start
  pda->noop_.push_back({0, enter[gr.Start()]});
  for (uint32_t pi = 0; pi < gr.Productions().size(); ++pi) {
    const Production& p = gr.Productions()[pi];
    // Choice of production
    pda->noop_.push_back({enter[p.lhs], dot[pi][0]});
    // Exit
    pda->noop_.push_back({dot[pi][p.rhs.size()], exit[p.lhs]});
    for (uint32_t i = 0; i < p.rhs.size(); ++i) {
      const SymbolId& x = p.rhs[i];
      if (x.IsTerminal()) {
        pda->terminal_.push_back({dot[pi][i], x.index, dot[pi][i + 1]});
      } else {
        // call + matching return
        pda->push_.push_back({dot[pi][i], enter[x.index], return_sym(dot[pi][i + 1])});
        pda->pop_.push_back({exit[x.index], return_sym(dot[pi][i + 1]), dot[pi][i + 1]});
      }
    }
  }

  size_t n = pda->states_.size();
  pda->noop_from_.resize(n);
  pda->push_from_.resize(n);
  pda->pop_from_.resize(n);
  for (uint32_t i = 0; i < pda->noop_.size(); ++i) pda->noop_from_[pda->noop_[i].from].push_back(i);
  for (uint32_t i = 0; i < pda->push_.size(); ++i) pda->push_from_[pda->push_[i].from].push_back(i);
  for (uint32_t i = 0; i < pda->pop_.size(); ++i) pda->pop_from_[pda->pop_[i].from].push_back(i);
  pda->terminal_by_input_.resize(gr.NumTerminals());
  for (uint32_t i = 0; i < pda->terminal_.size(); ++i) {
    pda->terminal_by_input_[pda->terminal_[i].terminal].push_back(i);
  }
  return pda;
}

std::string Npda::DumpJson() const {
  nlohmann::ordered_json j;
  j["kappa"] = states_.size();
  j["initial"] = initial_;
  j["accepting"] = {accepting_};
  auto& js = j["states"] = nlohmann::ordered_json::array();
  for (uint32_t i = 0; i < states_.size(); ++i) {
    const ControlState& s = states_[i];
    nlohmann::ordered_json e;
    e["id"] = i;
    switch (s.role) {
      case ControlState::Role::kStart:
        e["role"] = "start";
        break;
      case ControlState::Role::kEnter:
        e["role"] = "enter";
        e["nonterminal"] = grammar_.NonterminalNames()[s.nonterminal];
        break;
      case ControlState::Role::kExit:
        e["role"] = "exit";
        e["nonterminal"] = grammar_.NonterminalNames()[s.nonterminal];
        break;
      case ControlState::Role::kDot:
        e["role"] = "dot";
        e["production"] = s.production;
        e["pos"] = s.pos;
        break;
    }
    js.push_back(e);
  }
  auto& jt = j["transitions"] = nlohmann::ordered_json::array();
  for (const auto& t : noop_) {
    jt.push_back({{"from", t.from}, {"input", "eps"}, {"action", "none"}, {"to", t.to}});
  }
  for (const auto& t : terminal_) {
    jt.push_back({{"from", t.from},
                  {"input", grammar_.TerminalNames()[t.terminal]},
                  {"action", "none"},
                  {"to", t.to}});
  }
  for (const auto& t : push_) {
    jt.push_back({{"from", t.from}, {"input", "eps"}, {"action", "push"}, {"sym", t.push}, {"to", t.to}});
  }
  for (const auto& t : pop_) {
    jt.push_back({{"from", t.from}, {"input", "eps"}, {"action", "pop"}, {"sym", t.pop}, {"to", t.to}});
  }
  return j.dump(2);
}

SimOutcome SimulateAccepts(const Npda& a, const std::vector<uint32_t>& terminals,
                           size_t stack_bound, size_t max_configs) {
  GCD_CHECK(stack_bound >= terminals.size()) << "stack bound must be at least |w|";
  // configuration: (state, input position, stack as string of StackSym)
  struct Config {
    uint32_t state;
    uint32_t pos;
    std::vector<StackSym> stack;
    bool operator<(const Config& o) const {
      if (state != o.state) return state < o.state;
      if (pos != o.pos) return pos < o.pos;
      return stack < o.stack;
    }
  };
  std::set<Config> seen;
  std::deque<Config> work;
  bool pruned = false;
  Config init{a.Initial(), 0, {kStackBottom}};
  seen.insert(init);
  work.push_back(init);
  while (!work.empty()) {
    Config c = work.front();
    work.pop_front();
    if (c.state == a.Accepting() && c.pos == terminals.size() && c.stack.size() == 1 &&
        c.stack[0] == kStackBottom) {
      return SimOutcome::kAccept;
    }
    auto enqueue = [&](Config next) {
      if (next.stack.size() > stack_bound + 1) {  // +1 for the bottom marker
        pruned = true;
        return;
      }
      if (seen.size() >= max_configs) {
        pruned = true;
        return;
      }
      if (seen.insert(next).second) work.push_back(std::move(next));
    };
    for (uint32_t ti : a.NoopFrom()[c.state]) {
      Config next = c;
      next.state = a.NoopTransitions()[ti].to;
      enqueue(std::move(next));
    }
    for (uint32_t ti : a.PushFrom()[c.state]) {
      Config next = c;
      next.state = a.PushTransitions()[ti].to;
      next.stack.push_back(a.PushTransitions()[ti].push);
      enqueue(std::move(next));
    }
    for (uint32_t ti : a.PopFrom()[c.state]) {
      const PopTransition& t = a.PopTransitions()[ti];
      if (!c.stack.empty() && c.stack.back() == t.pop) {
        Config next = c;
        next.state = t.to;
        next.stack.pop_back();
        enqueue(std::move(next));
      }
    }
    if (c.pos < terminals.size()) {
      for (uint32_t ti : a.TerminalByInput()[terminals[c.pos]]) {
        const TerminalTransition& t = a.TerminalTransitions()[ti];
        if (t.from == c.state) {
          Config next = c;
          next.state = t.to;
          next.pos = c.pos + 1;
          enqueue(std::move(next));
        }
      }
    }
  }
  return pruned ? SimOutcome::kBoundExceeded : SimOutcome::kReject;
}

}  // namespace gcd
