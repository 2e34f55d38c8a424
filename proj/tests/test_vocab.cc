/*!
 *  Copyright (c) 2026 by Contributors
 * \file test_vocab.cc
 */
#include <doctest.h>

#include "gcd/oracles.h"
#include "gcd/vocab.h"

using namespace gcd;

namespace {
Cfg Builtin(const char* name) {
  return ReduceGrammar(LoadGrammar(std::string("builtin:") + name));
}
EngineState After(const Cfg& g, std::shared_ptr<const Npda> pda, const std::string& chars) {
  EngineState s = EngineState::Init(pda);
  for (char c : chars) s = s.StepTerminal(*g.FindTerminal(std::string(1, c)));
  return s;
}
}  // namespace

TEST_CASE("realize concatenates and eos contributes nothing") {
  Cfg g = Builtin("G1");
  Vocab v = Vocab::Singleton(g);
  uint32_t ta = 0, tb = 1;
  CHECK(v.Token(ta).name == "a");
  std::vector<uint32_t> r = Realize(v, {ta, ta, tb});
  CHECK(r == std::vector<uint32_t>{*g.FindTerminal("a"), *g.FindTerminal("a"),
                                   *g.FindTerminal("b")});
  CHECK(Realize(v, {v.EosId()}).empty());
}

TEST_CASE("multi-terminal tokens concatenate") {
  Cfg g = Builtin("G3");
  Vocab v = Vocab::FromJsonText(
      R"([{"id":0,"name":"t_ab","terminals":["a","b"]},{"id":1,"name":"<eos>"}])", g);
  std::vector<uint32_t> r = Realize(v, {0, 0});
  CHECK(r.size() == 4);
}

TEST_CASE("vocab validation") {
  Cfg g = Builtin("G1");
  CHECK_THROWS(Vocab::FromJsonText(R"([{"id":0,"name":"x","terminals":["z"]}])", g));
  CHECK_THROWS(Vocab::FromJsonText(R"([{"id":0,"name":"x","terminals":["a"]}])", g));  // no eos
  CHECK_THROWS(Vocab::FromJsonText(
      R"([{"id":0,"name":"<eos>"},{"id":2,"name":"x","terminals":["a"]}])", g));  // sparse ids
}

TEST_CASE("mean realization length averages over the whole vocabulary") {
  Cfg g = Builtin("G3");
  Vocab v = Vocab::FromJsonText(
      R"([{"id":0,"name":"a","terminals":["a"]},
          {"id":1,"name":"abab","terminals":["a","b","a","b"]},
          {"id":2,"name":"<eos>"}])",
      g);
  CHECK(v.MeanRealizationLength() == doctest::Approx(5.0 / 3.0));
}

TEST_CASE("token mask on G1 matches next-terminal examples") {
  Cfg g = Builtin("G1");
  auto pda = CompileRtn(g);
  Vocab v = Vocab::Singleton(g);
  TokenMask after_a = AdmissibleTokens(After(g, pda, "a"), v);
  CHECK(after_a.bits[0]);
  CHECK(after_a.bits[1]);
  CHECK_FALSE(after_a.eos_bit);
  TokenMask after_ab = AdmissibleTokens(After(g, pda, "ab"), v);
  CHECK(after_ab.CountAdmissible() == 0);
  CHECK(after_ab.eos_bit);
}

TEST_CASE("G3 admits every token including multi-terminal ones") {
  Cfg g = Builtin("G3");
  auto pda = CompileRtn(g);
  Vocab v = Vocab::FromJsonText(
      R"([{"id":0,"name":"a","terminals":["a"]},
          {"id":1,"name":"bb","terminals":["b","b"]},
          {"id":2,"name":"<eos>"}])",
      g);
  for (const char* prefix : {"", "ab", "bbba"}) {
    TokenMask m = AdmissibleTokens(After(g, pda, prefix), v);
    CHECK(m.bits[0]);
    CHECK(m.bits[1]);
    CHECK(m.eos_bit);
  }
}

TEST_CASE("singleton masks equal next_terminals exactly") {
  for (const char* name : {"G1", "G2", "G3", "G4"}) {
    Cfg g = Builtin(name);
    auto pda = CompileRtn(g);
    Vocab v = Vocab::Singleton(g);
    EngineState s = EngineState::Init(pda);
    for (int step = 0; step < 6; ++step) {
      TokenMask m = AdmissibleTokens(s, v);
      std::vector<uint32_t> from_mask;
      for (uint32_t t = 0; t < g.NumTerminals(); ++t) {
        if (m.bits[t]) from_mask.push_back(t);
      }
      CHECK(from_mask == s.NextTerminals());
      CHECK(m.eos_bit == s.EosAdmissible());
      auto next = s.NextTerminals();
      if (next.empty()) break;
      s = s.StepTerminal(next[step % next.size()]);
    }
  }
}

TEST_CASE("monotone soundness: every admissible token steps to a live state") {
  // more than a thousand random prefixes across grammars, every set bit probed
  size_t prefixes_checked = 0;
  for (uint64_t seed = 0; seed < 300; ++seed) {
    Cfg g = RandomReducedGrammar(seed);
    auto pda = CompileRtn(g);
    Vocab v = Vocab::Singleton(g);
    EngineState s = EngineState::Init(pda);
    // random walk over admissible tokens, checking every set bit as we go
    for (int step = 0; step < 8; ++step) {
      ++prefixes_checked;
      TokenMask m = AdmissibleTokens(s, v);
      std::vector<uint32_t> admissible;
      for (uint32_t id = 0; id < v.Size(); ++id) {
        if (id == v.EosId() || !m.bits[id]) continue;
        CHECK(StepToken(s, v, id).Live());
        admissible.push_back(id);
      }
      if (admissible.empty()) break;
      s = StepToken(s, v, admissible[(seed + step) % admissible.size()]);
    }
  }
  CHECK(prefixes_checked >= 1000);
}

TEST_CASE("speculative stepping counter counts terminals probed") {
  Cfg g = Builtin("G1");
  auto pda = CompileRtn(g);
  Vocab v = Vocab::Singleton(g);
  CounterVector counters;
  AdmissibleTokens(EngineState::Init(pda), v, &counters);
  // probing 'a' costs 1 step, probing 'b' costs 1 step; eos costs none
  CHECK(counters.speculative_token_steps == 2);
}
