/*!
 *  Copyright (c) 2026 by Contributors
 * \file test_pda.cc
 */
#include <doctest.h>

#include <json.hpp>

#include "gcd/chart.h"
#include "gcd/oracles.h"
#include "gcd/pda.h"

using namespace gcd;

namespace {
Cfg Builtin(const char* name) {
  return ReduceGrammar(LoadGrammar(std::string("builtin:") + name));
}
std::vector<uint32_t> Str(const Cfg& g, const std::string& chars) {
  std::vector<uint32_t> out;
  for (char c : chars) out.push_back(*g.FindTerminal(std::string(1, c)));
  return out;
}
}  // namespace

TEST_CASE("compiled state count equals kappa on the builtins") {
  for (const char* name : {"G1", "G2", "G3", "G4"}) {
    Cfg g = Builtin(name);
    CHECK(CompileRtn(g)->NumStates() == Kappa(g));
  }
}

TEST_CASE("state count equals kappa on random grammars") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    Cfg g = RandomReducedGrammar(seed);
    CHECK(CompileRtn(g)->NumStates() == Kappa(g));
  }
}

TEST_CASE("epsilon-only grammar compiles to 4 states and accepts only eps") {
  Cfg g = ReduceGrammar(ParseGrammar("S -> eps"));
  auto pda = CompileRtn(g);
  CHECK(pda->NumStates() == 4);  // start, S_in, S_out, one dot state
  CHECK(SimulateAccepts(*pda, {}, 4) == SimOutcome::kAccept);
}

TEST_CASE("simulation oracle on G1") {
  Cfg g = Builtin("G1");
  auto pda = CompileRtn(g);
  CHECK(SimulateAccepts(*pda, Str(g, "aabb"), 16) == SimOutcome::kAccept);
  CHECK(SimulateAccepts(*pda, Str(g, "aba"), 16) == SimOutcome::kReject);
  CHECK(SimulateAccepts(*pda, Str(g, ""), 16) == SimOutcome::kAccept);
  CHECK(SimulateAccepts(*pda, Str(g, "ab"), 16) == SimOutcome::kAccept);
  CHECK(SimulateAccepts(*pda, Str(g, "aab"), 16) == SimOutcome::kReject);
}

TEST_CASE("terminal transitions never touch the stack; push/pop are epsilon") {
  Cfg g = Builtin("G2");
  auto pda = CompileRtn(g);
  // structural inventory: one choice + one exit per production, one terminal
  // transition per terminal occurrence, one call/return pair per nonterminal
  // occurrence, plus the start transition
  size_t terminal_occurrences = 0, nonterminal_occurrences = 0;
  for (const Production& p : g.Productions()) {
    for (const SymbolId& s : p.rhs) {
      if (s.IsTerminal()) {
        ++terminal_occurrences;
      } else {
        ++nonterminal_occurrences;
      }
    }
  }
  CHECK(pda->TerminalTransitions().size() == terminal_occurrences);
  CHECK(pda->PushTransitions().size() == nonterminal_occurrences);
  CHECK(pda->PopTransitions().size() == nonterminal_occurrences);
  CHECK(pda->NoopTransitions().size() == 1 + 2 * g.Productions().size());
}

TEST_CASE("simulation agrees with the Earley and derivation oracles on random grammars") {
  for (uint64_t seed = 0; seed < 25; ++seed) {
    Cfg g = RandomReducedGrammar(seed);
    auto pda = CompileRtn(g);
    // all strings of length <= 4 over the alphabet
    std::vector<std::vector<uint32_t>> strings{{}};
    for (int len = 0; len < 4; ++len) {
      size_t begin = 0, end = strings.size();
      for (size_t i = begin; i < end; ++i) {
        if (strings[i].size() != static_cast<size_t>(len)) continue;
        for (uint32_t a = 0; a < g.NumTerminals(); ++a) {
          auto next = strings[i];
          next.push_back(a);
          strings.push_back(next);
        }
      }
    }
    for (const auto& w : strings) {
      SimOutcome sim = SimulateAccepts(*pda, w, 10, 100000);
      if (sim == SimOutcome::kBoundExceeded) continue;  // inconclusive, never silent
      bool member = DerivationOracle::LanguageMember(g, w);
      CHECK((sim == SimOutcome::kAccept) == member);
      CHECK(EarleyNextTerminals(g, w).member == member);
    }
  }
}

TEST_CASE("simulation agrees with the Earley recognizer on short strings") {
  for (const char* name : {"G1", "G2", "G3", "G4"}) {
    Cfg g = Builtin(name);
    auto pda = CompileRtn(g);
    std::vector<std::vector<uint32_t>> strings{{}};
    for (size_t i = 0; i < strings.size(); ++i) {
      if (strings[i].size() >= 6) continue;
      for (uint32_t a = 0; a < g.NumTerminals(); ++a) {
        auto next = strings[i];
        next.push_back(a);
        strings.push_back(next);
      }
    }
    for (const auto& w : strings) {
      SimOutcome sim = SimulateAccepts(*pda, w, 12, 100000);
      if (sim == SimOutcome::kBoundExceeded) continue;
      CHECK((sim == SimOutcome::kAccept) == EarleyNextTerminals(g, w).member);
    }
  }
}

TEST_CASE("dump JSON structure is stable") {
  Cfg g = Builtin("G1");
  auto pda = CompileRtn(g);
  nlohmann::json j = nlohmann::json::parse(pda->DumpJson());
  CHECK(j["kappa"] == 8);
  CHECK(j["states"].size() == 8);
  CHECK(j["states"][0]["role"] == "start");
  CHECK(j["initial"] == 0);
  size_t pushes = 0;
  for (const auto& t : j["transitions"]) {
    if (t["action"] == "push") ++pushes;
  }
  CHECK(pushes == 1);  // one nonterminal occurrence in G1
}
