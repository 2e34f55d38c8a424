/*!
 *  Copyright (c) 2026 by Contributors
 * \file test_conditional.cc
 */
#include <doctest.h>

#include <cmath>

#include "gcd/conditional.h"

using namespace gcd;

namespace {

Cfg Builtin(const char* name) {
  return ReduceGrammar(LoadGrammar(std::string("builtin:") + name));
}

// the two-string language {a, ba} with the probabilities from the separation
// construction: acceptance mass 0.06 via "a", 0.004 via "ba"
struct SepModel {
  Cfg grammar = ReduceGrammar(ParseGrammar("S -> 'a' | 'b' 'a'"));
  Vocab vocab = Vocab::Singleton(grammar);
  uint32_t a = *grammar.FindTerminal("a");
  uint32_t b = *grammar.FindTerminal("b");
  uint32_t eos = vocab.EosId();
  ToyLm lm = Build(grammar, vocab);

  static ToyLm Build(const Cfg& g, const Vocab& v) {
    uint32_t a = *g.FindTerminal("a"), b = *g.FindTerminal("b"), eos = v.EosId();
    auto row = [&](Rat pa, Rat pb, Rat pe) {
      std::vector<Rat> r(3);
      r[a] = pa;
      r[b] = pb;
      r[eos] = pe;
      return r;
    };
    ToyLm lm = ToyLm::Table(3, row(Rat(1, 3), Rat(1, 3), Rat(1, 3)));
    lm.AddRow({}, row(Rat(3, 5), Rat(2, 5), Rat(0)));
    lm.AddRow({a}, row(Rat(9, 10), Rat(0), Rat(1, 10)));
    lm.AddRow({b}, row(Rat(1, 100), Rat(99, 100), Rat(0)));
    lm.AddRow({b, a}, row(Rat(0), Rat(0), Rat(1)));
    return lm;
  }
};

}  // namespace

TEST_CASE("survival values on the separation model are exact") {
  SepModel m;
  ExactSurvival ev(m.lm, CompileRtn(m.grammar), m.vocab, {6, 2'000'000});
  CHECK(ev.Survival({}) == Rat(8, 125));            // 0.064
  CHECK(ev.Survival({m.a}) == Rat(1, 10));          // eos next with p=0.1
  CHECK(ev.Survival({m.b}) == Rat(1, 100));
  CHECK(ev.Survival({m.b, m.b}) == Rat(0));         // dead engine state
  CHECK(ev.Survival({m.a, m.eos}) == Rat(1));       // already accepted
}

TEST_CASE("doob distribution matches the separation numbers") {
  SepModel m;
  ExactSurvival ev(m.lm, CompileRtn(m.grammar), m.vocab, {6, 2'000'000});
  std::vector<Rat> doob = ev.DoobNextDist({});
  CHECK(doob[m.b] == Rat(1, 16));  // 0.0625
  CHECK(doob[m.a] == Rat(15, 16));
  CHECK(doob[m.eos] == Rat(0));
  Rat sum = doob[0] + doob[1] + doob[2];
  CHECK(sum == Rat(1));
  // single admissible token gets probability one
  std::vector<Rat> after_b = ev.DoobNextDist({m.b});
  CHECK(after_b[m.a] == Rat(1));
}

TEST_CASE("conditioning on a null event is an error") {
  SepModel m;
  ExactSurvival ev(m.lm, CompileRtn(m.grammar), m.vocab, {6, 2'000'000});
  CHECK_THROWS_AS(ev.DoobNextDist({m.b, m.b}), Error);
}

TEST_CASE("budget guard fires before enumeration") {
  SepModel m;
  CHECK_THROWS_AS(ExactSurvival(m.lm, CompileRtn(m.grammar), m.vocab, {40, 1000}), BudgetError);
}

TEST_CASE("h-recursion consistency on the double path") {
  Cfg g = Builtin("G1");
  Vocab v = Vocab::Singleton(g);
  auto pda = CompileRtn(g);
  for (uint64_t seed = 0; seed < 30; ++seed) {
    ToyLm lm = ToyLm::SeededRandom(v.Size(), seed);
    FloatSurvival ev(lm, pda, v, {6, 2'000'000});
    for (const std::vector<uint32_t>& prefix :
         {std::vector<uint32_t>{}, std::vector<uint32_t>{0}}) {
      double h = ev.Survival(prefix);
      std::vector<double> p = lm.NextDist(prefix);
      double recomposed = 0;
      for (uint32_t tok = 0; tok < v.Size(); ++tok) {
        std::vector<uint32_t> ext = prefix;
        ext.push_back(tok);
        recomposed += p[tok] * ev.Survival(ext);
      }
      CHECK(h == doctest::Approx(recomposed).epsilon(1e-12));
    }
  }
}

TEST_CASE("distortion report on the separation model") {
  SepModel m;
  ExactSurvival ev(m.lm, CompileRtn(m.grammar), m.vocab, {6, 2'000'000});
  DistortionReport rep = ev.Distortion({});
  REQUIRE(rep.admissible.size() == 2);  // a and b; eos not admissible at eps
  CHECK(rep.h_min == doctest::Approx(0.01));
  CHECK(rep.h_max == doctest::Approx(0.1));
  CHECK(rep.gamma == doctest::Approx(10.0));
  CHECK(rep.exact_gamma == "10");
  // q = (0.6, 0.4), pE = (0.9375, 0.0625)
  double kl = 0.6 * std::log(0.6 / 0.9375) + 0.4 * std::log(0.4 / 0.0625);
  CHECK(rep.kl == doctest::Approx(kl).epsilon(1e-12));
  double tv = 0.5 * (std::abs(0.6 - 0.9375) + std::abs(0.4 - 0.0625));
  CHECK(rep.tv == doctest::Approx(tv).epsilon(1e-12));
  CHECK(rep.kl <= rep.kl_bound);
  CHECK(rep.tv <= rep.tv_bound);
  CHECK_FALSE(rep.kl_violated);
  CHECK_FALSE(rep.tv_violated);
  CHECK_FALSE(rep.vacuous);
}

TEST_CASE("support identity: doob, hard mask, and admissible set coincide") {
  SepModel m;
  auto pda = CompileRtn(m.grammar);
  ExactSurvival ev(m.lm, pda, m.vocab, {6, 2'000'000});
  EngineState init = EngineState::Init(pda);
  TokenMask mask = AdmissibleTokens(init, m.vocab);
  std::vector<Rat> doob = ev.DoobNextDist({});
  for (uint32_t tok = 0; tok < m.vocab.Size(); ++tok) {
    bool admissible = tok == m.vocab.EosId() ? mask.eos_bit : mask.bits[tok];
    CHECK(doob[tok].Positive() == admissible);  // h > 0 here for all admissible
  }
}

TEST_CASE("equality condition is tight in both directions") {
  // constant-h model on Sigma*: free choice early, forced termination at the
  // horizon, so every admissible branch survives with probability one
  Cfg g3 = Builtin("G3");
  Vocab v = Vocab::Singleton(g3);
  uint32_t a = *g3.FindTerminal("a"), b = *g3.FindTerminal("b");
  const uint32_t horizon = 5;
  std::vector<Rat> eos_row(3);
  eos_row[v.EosId()] = Rat(1);
  ToyLm constant = ToyLm::Table(3, eos_row);
  std::vector<Rat> free_row(3);
  free_row[a] = Rat(3, 10);
  free_row[b] = Rat(3, 10);
  free_row[v.EosId()] = Rat(2, 5);
  std::vector<std::vector<uint32_t>> prefixes{{}};
  for (size_t i = 0; i < prefixes.size(); ++i) {
    std::vector<uint32_t> p = prefixes[i];
    if (p.size() + 2 > horizon) continue;  // length H-1 and beyond keep the eos row
    constant.AddRow(p, free_row);
    for (uint32_t tok : {a, b}) {
      p.push_back(tok);
      prefixes.push_back(p);
      p.pop_back();
    }
  }
  ExactSurvival ev(constant, CompileRtn(g3), v, {horizon, 2'000'000});
  CHECK(ev.Survival({}) == Rat(1));
  CHECK(ev.Survival({a}) == Rat(1));
  DistortionReport rep = ev.Distortion({});
  CHECK(rep.gamma == 1.0);
  CHECK(rep.kl == 0.0);
  CHECK(rep.tv == 0.0);

  // split-h model: the separation construction has strictly positive KL
  SepModel m;
  ExactSurvival ev2(m.lm, CompileRtn(m.grammar), m.vocab, {6, 2'000'000});
  CHECK(ev2.Distortion({}).kl > 0.0);
}

TEST_CASE("vacuous bounds when h_min is zero") {
  // after prefix a, only eos is admissible; build a model whose eos row kills
  // acceptance of one admissible branch at the empty prefix instead
  Cfg g = ReduceGrammar(ParseGrammar("S -> 'a' | 'b' 'a'"));
  Vocab v = Vocab::Singleton(g);
  uint32_t a = *g.FindTerminal("a"), b = *g.FindTerminal("b");
  auto row = [&](Rat pa, Rat pb, Rat pe) {
    std::vector<Rat> r(3);
    r[a] = pa;
    r[b] = pb;
    r[v.EosId()] = pe;
    return r;
  };
  ToyLm lm = ToyLm::Table(3, row(Rat(1, 2), Rat(1, 2), Rat(0)));
  lm.AddRow({b}, row(Rat(0), Rat(1), Rat(0)));  // from b, never reach 'a': h(b) = 0
  ExactSurvival ev(lm, CompileRtn(g), v, {6, 2'000'000});
  DistortionReport rep = ev.Distortion({});
  CHECK(rep.vacuous);
  CHECK(std::isinf(rep.gamma));
  CHECK_FALSE(rep.kl_violated);  // vacuous bounds never flag
}

TEST_CASE("distortion bounds hold across random models") {
  Cfg g = Builtin("G1");
  Vocab v = Vocab::Singleton(g);
  auto pda = CompileRtn(g);
  uint32_t a = *g.FindTerminal("a");
  for (uint64_t seed = 1000; seed < 1100; ++seed) {
    ToyLm lm = ToyLm::SeededRandom(v.Size(), seed);
    FloatSurvival ev(lm, pda, v, {6, 2'000'000});
    for (const std::vector<uint32_t>& prefix :
         {std::vector<uint32_t>{}, std::vector<uint32_t>{a}}) {
      DistortionReport rep = ev.Distortion(prefix);
      CHECK_FALSE(rep.kl_violated);
      CHECK_FALSE(rep.tv_violated);
      CHECK(rep.gamma >= 1.0);
    }
  }
}

TEST_CASE("rational arithmetic basics") {
  CHECK(Rat::FromDecimalString("0.6") == Rat(3, 5));
  CHECK(Rat::FromDecimalString("0.0625") == Rat(1, 16));
  CHECK(Rat::FromDecimalString("1e-2") == Rat(1, 100));
  CHECK(Rat::FromDecimalString("3/8") == Rat(3, 8));
  CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
  CHECK((Rat(2, 5) / Rat(1, 1)) == Rat(2, 5));
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(1, 3).ToString() == "1/3");
  CHECK_THROWS(Rat::FromDecimalString("abc"));
}
