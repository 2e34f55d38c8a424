/*!
 *  Copyright (c) 2026 by Contributors
 * \file acceptance.cc
 */
#include "gcd/acceptance.h"

#include <chrono>
#include <cmath>
#include <deque>
#include <ostream>
#include <sstream>

#include "gcd/chart.h"
#include "gcd/conditional.h"
#include "gcd/decode.h"
#include "gcd/oracles.h"
#include "gcd/perf.h"
#include "gcd/rewrite.h"

namespace gcd {

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  template <typename T, typename U>
  void Equal(const T& got, const U& want, const std::string& what) {
    if (!(got == static_cast<T>(want))) {
      ok = false;
      detail << what << ": got " << got << ", want " << want << "; ";
    }
  }
  void True(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << what << "; ";
    }
  }
  void Near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      ok = false;
      detail << what << ": got " << got << ", want " << want << " +/- " << tol << "; ";
    }
  }
};

Cfg Builtin(const std::string& name) { return ReduceGrammar(ParseGrammar(BuiltinGrammarText(name))); }

std::vector<uint32_t> Terminals(const Cfg& g, const std::string& chars) {
  std::vector<uint32_t> out;
  for (char c : chars) {
    auto t = g.FindTerminal(std::string(1, c));
    GCD_CHECK(t.has_value()) << "no terminal '" << c << "'";
    out.push_back(*t);
  }
  return out;
}

uint64_t Choose3(uint64_t n) { return n * (n - 1) * (n - 2) / 6; }
uint64_t Choose2(uint64_t n) { return n * (n - 1) / 2; }

// --- criterion 1: exact kappa and compiled state counts -----------------

CriterionResult Criterion1() {
  Check ck;
  Cfg g1 = Builtin("G1"), g2 = Builtin("G2"), g3 = Builtin("G3"), g4 = Builtin("G4");
  ck.Equal(Kappa(g1), 8u, "kappa(G1)");
  ck.Equal(Kappa(g2), 15u, "kappa(G2)");
  ck.Equal(Kappa(g3), 10u, "kappa(G3)");
  ck.Equal(Kappa(g4), 15u, "kappa(G4)");
  ck.Equal(CompileRtn(g1)->NumStates(), size_t{8}, "states(G1)");
  ck.Equal(CompileRtn(g2)->NumStates(), size_t{15}, "states(G2)");
  ck.True(15.0 / 8.0 == static_cast<double>(Kappa(g2)) / static_cast<double>(Kappa(g1)),
          "blowup ratio 15/8");
  return {1, "exact kappa: 8 vs 15, ratio 15/8", ck.ok, ck.detail.str(), 0};
}

// --- criterion 2: oracle invariance ---------------------------------------

CriterionResult Criterion2() {
  Check ck;
  for (auto [a, b] : {std::pair{"G1", "G2"}, std::pair{"G3", "G4"}}) {
    Cfg ga = Builtin(a), gb = Builtin(b);
    VocabSpec spec = VocabSpec::SingletonOverUnion(ga, gb);
    InvarianceReport rep = OracleInvarianceCheck(ga, gb, spec, 10);
    ck.True(!rep.mismatch, std::string(a) + " vs " + b + " mismatch: " + rep.detail);
    ck.True(rep.prefixes_checked > 0, "no prefixes checked");
  }
  return {2, "oracle invariance (G1,G2) and (G3,G4) to depth 10", ck.ok, ck.detail.str(), 0};
}

// --- criterion 3: cross-oracle equivalence --------------------------------

void CrossOracleCheck(const Cfg& g, uint32_t max_depth, bool literal_search, Check* ck,
                      uint64_t* prefixes, uint64_t* window_exceeded) {
  auto pda = CompileRtn(g);
  auto shared = std::make_shared<const Cfg>(g);
  struct Node {
    EngineState engine;
    EarleyChart earley;
    std::vector<uint32_t> prefix;
  };
  std::deque<Node> work;
  work.push_back({EngineState::Init(pda), EarleyChart(shared), {}});
  while (!work.empty()) {
    Node n = std::move(work.front());
    work.pop_front();
    ++*prefixes;
    std::vector<uint32_t> engine_next = n.engine.NextTerminals();
    std::vector<uint32_t> earley_next = n.earley.NextTerminals();
    std::vector<uint32_t> deriv_next = DerivationOracle::NextTerminals(g, n.prefix);
    if (engine_next != earley_next || engine_next != deriv_next) {
      ck->ok = false;
      ck->detail << "next-terminal sets disagree at a prefix of length " << n.prefix.size()
                 << "; ";
      return;
    }
    bool engine_eos = n.engine.EosAdmissible();
    bool earley_member = n.earley.Member();
    bool deriv_member = DerivationOracle::LanguageMember(g, n.prefix);
    if (engine_eos != earley_member || engine_eos != deriv_member) {
      ck->ok = false;
      ck->detail << "membership flags disagree at a prefix of length " << n.prefix.size() << "; ";
      return;
    }
    // bounded completion search: a found completion must mean admissible, a
    // dead branch must have none; a live branch whose shortest completion
    // exceeds the search window is reported, since the search is bounded
    for (uint32_t a = 0; a < g.NumTerminals(); ++a) {
      bool in_next =
          std::find(engine_next.begin(), engine_next.end(), a) != engine_next.end();
      std::vector<uint32_t> ext = n.prefix;
      ext.push_back(a);
      uint32_t window = 62 - static_cast<uint32_t>(ext.size());
      bool completable = CompletableWithin(g, ext, window);
      if (completable && !in_next) {
        ck->ok = false;
        ck->detail << "completion found for a branch the engines reject at depth " << ext.size()
                   << "; ";
        return;
      }
      if (!completable && in_next) ++*window_exceeded;
      if (literal_search) {
        bool enumerated = CompletableByEnumeration(g, ext, 10);
        if (enumerated != in_next) {
          ck->ok = false;
          ck->detail << "literal completion enumeration disagrees at depth " << ext.size()
                     << "; ";
          return;
        }
      }
    }
    if (n.prefix.size() >= max_depth) continue;
    for (uint32_t a : engine_next) {
      Node child{n.engine.StepTerminal(a), n.earley, n.prefix};
      child.earley.Extend(a);
      child.prefix.push_back(a);
      work.push_back(std::move(child));
    }
  }
}

CriterionResult Criterion3() {
  Check ck;
  uint64_t prefixes = 0, window_exceeded = 0;
  for (const char* name : {"G1", "G2", "G3", "G4"}) {
    // built-ins additionally get the literal string-enumeration search
    CrossOracleCheck(Builtin(name), 8, true, &ck, &prefixes, &window_exceeded);
  }
  ck.Equal(window_exceeded, 0u, "built-ins must never exceed the completion window");
  for (uint64_t seed = 0; seed < 100 && ck.ok; ++seed) {
    CrossOracleCheck(RandomReducedGrammar(seed), 8, false, &ck, &prefixes, &window_exceeded);
  }
  std::ostringstream extra;
  extra << ck.detail.str() << prefixes << " prefixes cross-checked";
  if (window_exceeded) {
    extra << "; " << window_exceeded
          << " live branches with shortest completion beyond the 62-position window";
  }
  return {3, "cross-oracle equivalence on built-ins + 100 random grammars", ck.ok, extra.str(), 0};
}

// --- criterion 4: Catalan ambiguity ----------------------------------------

CriterionResult Criterion4() {
  Check ck;
  Cfg g4 = Builtin("G4");
  const uint64_t catalan[] = {1,    1,    2,     5,     14,    42,
                              132,  429,  1430,  4862,  16796, 58786};
  for (uint32_t n = 1; n <= 12 && ck.ok; ++n) {
    for (uint64_t bits = 0; bits < (1ULL << n); ++bits) {
      std::string s;
      for (uint32_t i = 0; i < n; ++i) s += ((bits >> i) & 1) ? 'b' : 'a';
      BigUInt got = CountParseTrees(g4, Terminals(g4, s));
      if (!(got == BigUInt(catalan[n - 1]))) {
        ck.ok = false;
        ck.detail << "count(" << s << ") = " << got.ToString() << ", want " << catalan[n - 1]
                  << "; ";
        break;
      }
      // independent route: explicit tree enumeration at small sizes
      if (n <= 8) {
        size_t enumerated = EnumerateParseTrees(g4, Terminals(g4, s)).size();
        if (enumerated != catalan[n - 1]) {
          ck.ok = false;
          ck.detail << "enumeration(" << s << ") = " << enumerated << "; ";
          break;
        }
      }
    }
  }
  return {4, "Catalan parse counts on G4, n in [1,12]", ck.ok, ck.detail.str(), 0};
}

// --- criterion 5: forest density -------------------------------------------

CriterionResult Criterion5() {
  Check ck;
  Cfg g4 = Builtin("G4");
  uint32_t s_id = *g4.FindNonterminal("S");
  for (const std::string& base : {std::string("a"), std::string("ab")}) {
    PackedChartRun run(g4);
    uint64_t cum_packed = 0;
    for (uint32_t t = 1; t <= 64; ++t) {
      char c = base[(t - 1) % base.size()];
      SacSeries::Step st = run.Step(*g4.FindTerminal(std::string(1, c)));
      cum_packed += st.new_packed;
      if (st.new_packed != Choose2(t)) {
        ck.ok = false;
        ck.detail << "step " << t << " new packed " << st.new_packed << " != t(t-1)/2; ";
        break;
      }
    }
    ck.Equal(cum_packed, Choose3(65), "cumulative packed after n=64");
    ck.Equal(run.TotalPackedNodes(), Choose3(65), "total packed");
    ck.Equal(run.SymbolNodeCount(s_id), Choose2(65), "S symbol nodes");
    if (!ck.ok) break;
  }
  return {5, "packed-forest density on G4: C(n+1,3), C(n+1,2), t(t-1)/2", ck.ok,
          ck.detail.str(), 0};
}

// --- criterion 6: SAC exponents --------------------------------------------

CriterionResult Criterion6() {
  Check ck;
  Cfg g4 = Builtin("G4");
  Cfg g3 = Builtin("G3");
  std::vector<uint32_t> w4(256, *g4.FindTerminal("a"));
  SacSeries chart = SacMeasure(g4, w4, SacEngine::kPackedChart);
  std::vector<double> ts, step_packed, cum_packed;
  uint64_t cum = 0;
  for (uint32_t t = 1; t <= 256; ++t) {
    cum += chart.steps[t - 1].new_packed;
    if (t >= 16) {
      ts.push_back(t);
      step_packed.push_back(static_cast<double>(chart.steps[t - 1].new_packed));
      cum_packed.push_back(static_cast<double>(cum));
    }
  }
  double per_step_slope = LogLogSlope(ts, step_packed);
  double cumulative_slope = LogLogSlope(ts, cum_packed);
  ck.Near(per_step_slope, 2.0, 0.1, "G4 per-step packed slope");
  ck.Near(cumulative_slope, 3.0, 0.1, "G4 cumulative packed slope");

  std::vector<uint32_t> w3(256, *g3.FindTerminal("a"));
  SacSeries fast = SacMeasure(g3, w3, SacEngine::kRegularFastPath);
  std::vector<double> fast_delta;
  for (uint32_t t = 16; t <= 256; ++t) {
    fast_delta.push_back(static_cast<double>(fast.steps[t - 1].Total()));
  }
  double fast_slope = LogLogSlope(ts, fast_delta);
  ck.Near(fast_slope, 0.0, 0.1, "G3 fast-path slope");
  std::ostringstream extra;
  extra << ck.detail.str() << "slopes: step " << per_step_slope << ", cumulative "
        << cumulative_slope << ", fast " << fast_slope;
  return {6, "SAC exponents: 2.0 / 3.0 / 0.0 within 0.1", ck.ok, extra.str(), 0};
}

// --- criterion 7: separation numbers ---------------------------------------

struct SeparationFixture {
  Cfg grammar = ReduceGrammar(ParseGrammar("S -> 'a' | 'b' 'a'\n"));
  Vocab vocab = Vocab::Singleton(grammar);
  ToyLm lm = MakeLm(grammar, vocab);

  static ToyLm MakeLm(const Cfg& g, const Vocab& v) {
    uint32_t a = *g.FindTerminal("a");
    uint32_t b = *g.FindTerminal("b");
    uint32_t eos = v.EosId();
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

CriterionResult Criterion7() {
  Check ck;
  SeparationFixture fx;
  uint32_t a = *fx.grammar.FindTerminal("a");
  uint32_t b = *fx.grammar.FindTerminal("b");
  auto pda = CompileRtn(fx.grammar);

  // exact hard-masked first-token probability: restriction to {a, b}
  {
    auto exact = *fx.lm.NextDistExact({});
    EngineState init = EngineState::Init(pda);
    TokenMask mask = AdmissibleTokens(init, fx.vocab);
    ck.True(mask.bits[a] && mask.bits[b] && !mask.eos_bit, "mask at empty prefix");
    Rat mass = exact[a] + exact[b];
    Rat qb = exact[b] / mass;
    ck.True(qb == Rat(2, 5), "hard-masked P(b) != 2/5 exactly");
  }
  // exact Doob-conditioned first-token probability
  ExactSurvival survival(fx.lm, pda, fx.vocab, {6, 2'000'000});
  ck.True(survival.Survival({}) == Rat(8, 125), "h(empty) != 0.064 exactly");
  std::vector<Rat> doob = survival.DoobNextDist({});
  ck.True(doob[b] == Rat(1, 16), "Doob P(b) != 0.0625 exactly");

  // Monte Carlo: masked process and exact conditional sampler
  uint64_t masked_b = 0;
  const int kSamples = 100000;
  for (int i = 0; i < kSamples; ++i) {
    SampleResult s = SampleConstrained(fx.lm, pda, fx.vocab, {1, 8, static_cast<uint64_t>(i)});
    if (!s.tokens.empty() && s.tokens[0] == b) masked_b++;
  }
  ck.Near(static_cast<double>(masked_b) / kSamples, 0.4, 0.01, "masked MC P(first=b)");

  double pb = doob[b].ToDouble();
  uint64_t doob_b = 0;
  uint64_t rng = 0x2545F4914F6CDD1DULL;
  for (int i = 0; i < kSamples; ++i) {
    rng += 0x9e3779b97f4a7c15ULL;
    uint64_t x = rng;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    x ^= x >> 31;
    double u = static_cast<double>(x >> 11) * (1.0 / 9007199254740992.0);
    if (u < pb) doob_b++;
  }
  ck.Near(static_cast<double>(doob_b) / kSamples, 0.0625, 0.005, "Doob MC P(first=b)");
  return {7, "separation: masked P(b)=0.4, conditioned P(b)=0.0625", ck.ok, ck.detail.str(), 0};
}

// --- criterion 8: distortion bounds -----------------------------------------

CriterionResult Criterion8() {
  Check ck;
  Cfg g1 = Builtin("G1");
  Vocab vocab = Vocab::Singleton(g1);
  auto pda = CompileRtn(g1);
  uint32_t a = *g1.FindTerminal("a");
  uint64_t violations = 0, evaluated = 0;
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    ToyLm lm = ToyLm::SeededRandom(vocab.Size(), seed);
    FloatSurvival survival(lm, pda, vocab, {6, 2'000'000});
    for (const std::vector<uint32_t>& prefix :
         {std::vector<uint32_t>{}, std::vector<uint32_t>{a}, std::vector<uint32_t>{a, a}}) {
      DistortionReport rep = survival.Distortion(prefix);
      ++evaluated;
      if (rep.kl_violated || rep.tv_violated) ++violations;
    }
  }
  ck.Equal(violations, 0u, "bound violations");
  ck.Equal(evaluated, 3000u, "reports evaluated");

  // equality condition: a constant-h model (free choice early, forced
  // termination at the horizon, so h is identically one) has zero distortion
  Cfg g3 = Builtin("G3");
  Vocab v3 = Vocab::Singleton(g3);
  uint32_t ga = *g3.FindTerminal("a"), gb = *g3.FindTerminal("b");
  const uint32_t horizon = 5;
  std::vector<Rat> eos_row(3);
  eos_row[v3.EosId()] = Rat(1);
  ToyLm constant = ToyLm::Table(3, eos_row);
  std::vector<Rat> free_row(3);
  free_row[ga] = Rat(3, 10);
  free_row[gb] = Rat(3, 10);
  free_row[v3.EosId()] = Rat(2, 5);
  std::vector<std::vector<uint32_t>> prefixes{{}};
  for (size_t i = 0; i < prefixes.size(); ++i) {
    std::vector<uint32_t> p = prefixes[i];
    if (p.size() + 2 > horizon) continue;
    constant.AddRow(p, free_row);
    for (uint32_t tok : {ga, gb}) {
      p.push_back(tok);
      prefixes.push_back(p);
      p.pop_back();
    }
  }
  ExactSurvival s3(constant, CompileRtn(g3), v3, {horizon, 2'000'000});
  DistortionReport rep = s3.Distortion({});
  ck.True(rep.kl == 0.0, "constant-h KL not exactly 0");
  ck.True(rep.tv == 0.0, "constant-h TV not exactly 0");
  ck.True(rep.gamma == 1.0, "constant-h gamma not exactly 1");
  return {8, "distortion bounds: 0 violations in 1000 models; constant-h KL=0", ck.ok,
          ck.detail.str(), 0};
}

// --- criterion 9: soundness --------------------------------------------------

CriterionResult Criterion9() {
  Check ck;
  std::ostringstream note;
  for (const char* name : {"G1", "G2", "G3", "G4"}) {
    Cfg g = Builtin(name);
    Vocab vocab = Vocab::Singleton(g);
    auto pda = CompileRtn(g);
    uint64_t terminated = 0, unterminated = 0, accepted = 0;
    for (uint64_t seed = 0; terminated < 1000 && seed < 20000; ++seed) {
      ToyLm lm = ToyLm::SeededRandom(vocab.Size(), seed * 977 + 13);
      SampleResult s = SampleConstrained(lm, pda, vocab, {1, 48, seed});
      if (!s.terminated) {
        ++unterminated;  // excluded from the soundness count, reported below
        continue;
      }
      ++terminated;
      std::vector<uint32_t> tokens = s.tokens;
      tokens.pop_back();  // trailing eos realizes nothing
      EarleyResult res = EarleyNextTerminals(g, Realize(vocab, tokens));
      if (res.member) ++accepted;
    }
    ck.Equal(terminated, 1000u, std::string(name) + " terminated samples");
    ck.Equal(accepted, terminated, std::string(name) + " Earley-accepted");
    note << name << ":" << unterminated << " ";
  }
  return {9, "soundness: 1000 terminated samples per builtin pass Earley", ck.ok,
          ck.detail.str() + "max-length runs excluded per grammar: " + note.str(), 0};
}

// --- criterion 10: bitset overhead -------------------------------------------

CriterionResult Criterion10() {
  Check ck;
  for (auto [name, want] : {std::pair{"G1", 8u}, std::pair{"G2", 15u}}) {
    Cfg g = Builtin(name);
    CounterVector counters;
    BitsetScanEngine engine(CompileRtn(g), &counters);
    std::vector<uint32_t> w = Terminals(g, "aabb");
    for (uint32_t t : w) {
      uint64_t before = counters.bitset_slots_scanned;
      engine.StepTerminal(t);
      ck.Equal(counters.bitset_slots_scanned - before, want,
               std::string(name) + " slots per step");
    }
  }
  return {10, "bitset scan: exactly 8 (G1) vs 15 (G2) slots per step", ck.ok, ck.detail.str(), 0};
}

// --- criterion 11: beam additivity -------------------------------------------

CriterionResult Criterion11() {
  Check ck;
  Cfg g = Builtin("G4");
  Vocab vocab = Vocab::Singleton(g);
  auto pda = CompileRtn(g);
  ToyLm lm = ToyLm::SeededRandom(vocab.Size(), 7);
  for (uint32_t b : {1u, 2u, 4u, 8u}) {
    BeamResult res = BeamDecode(lm, pda, vocab, {b, 12, 0});
    ck.True(!res.step_records.empty(), "no steps recorded");
    for (const BeamStepRecord& rec : res.step_records) {
      CounterVector sum;
      for (const CounterVector& c : rec.per_hypothesis) sum.Add(c);
      ck.True(sum == rec.total, "beam B=" + std::to_string(b) + " additivity");
    }
  }
  return {11, "beam additivity for B in {1,2,4,8}", ck.ok, ck.detail.str(), 0};
}

// --- criterion 12: rewriter safety and selection ------------------------------

CriterionResult Criterion12() {
  Check ck;
  Cfg g2 = Builtin("G2");
  RewriteFamily family = EnumerateFamily(g2, 2, {10000, 0});
  ck.True(family.members.size() >= 2, "family(G2, 2) too small");
  uint64_t min_kappa = UINT64_MAX;
  for (const FamilyMember& m : family.members) {
    VocabSpec spec = VocabSpec::SingletonOverUnion(g2, m.grammar);
    InvarianceReport rep = OracleInvarianceCheck(g2, m.grammar, spec, 8);
    ck.True(!rep.mismatch, "family member changed the language: " + rep.detail);
    min_kappa = std::min(min_kappa, m.kappa);
  }
  ck.True(min_kappa < 15, "no member with kappa below 15");
  ck.Equal(min_kappa, 8u, "delegation-free member kappa");

  // selection over {G1, G2}
  Cfg g1 = Builtin("G1");
  RewriteFamily pair;
  pair.members.push_back({g1, {}, CanonicalForm(g1), Kappa(g1), 0});
  pair.members.push_back({g2, {}, CanonicalForm(g2), Kappa(g2), 0});
  std::vector<std::vector<std::string>> workload;
  for (int n : {1, 2, 3, 4}) {
    std::vector<std::string> w;
    for (int i = 0; i < n; ++i) w.push_back("a");
    for (int i = 0; i < n; ++i) w.push_back("b");
    workload.push_back(std::move(w));
  }
  SelectionResult sel = SelectMin(pair, workload, ParsePriority("sac,kappa"));
  ck.Equal(sel.winner, size_t{0}, "select_min({G1,G2}) winner");
  ck.True(sel.pointwise_minimal, "winner not pointwise minimal");
  return {12, "rewrite family safe to depth 8; select_min picks G1", ck.ok, ck.detail.str(), 0};
}

// --- criterion 13: affine fit recovery ----------------------------------------

CriterionResult Criterion13() {
  Check ck;
  std::vector<double> proxy, time_ns;
  uint64_t state = 42;
  auto gauss = [&]() {
    auto next = [&]() {
      state += 0x9e3779b97f4a7c15ULL;
      uint64_t x = state;
      x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
      x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
      return x ^ (x >> 31);
    };
    double u1 = (static_cast<double>(next() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    double u2 = static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  };
  for (int i = 1; i <= 16; ++i) {
    double s = 10.0 * i;
    proxy.push_back(s);
    time_ns.push_back(3.0 * s + 7.0 + 0.1 * gauss());
  }
  FitResult fit = FitAffine(proxy, time_ns);
  ck.Near(fit.a, 3.0, 0.15, "fitted a within 5%");
  ck.Near(fit.b, 7.0, 0.35, "fitted b within 5%");
  ck.True(fit.r_squared > 0.999, "r^2");
  return {13, "affine fit recovers (a=3, b=7) within 5%", ck.ok, ck.detail.str(), 0};
}

}  // namespace

std::vector<CriterionResult> RunAcceptance() {
  std::vector<CriterionResult> out;
  CriterionResult (*criteria[])() = {Criterion1, Criterion2, Criterion3,  Criterion4,
                                     Criterion5, Criterion6, Criterion7,  Criterion8,
                                     Criterion9, Criterion10, Criterion11, Criterion12,
                                     Criterion13};
  for (auto* fn : criteria) {
    auto begin = std::chrono::steady_clock::now();
    CriterionResult r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
      r.id = static_cast<int>(out.size()) + 1;
      r.name = "criterion " + std::to_string(r.id);
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    out.push_back(std::move(r));
  }
  return out;
}

bool RunAcceptance(std::ostream& os, std::ostream* timing) {
  bool all = true;
  for (const CriterionResult& r : RunAcceptance()) {
    os << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.name;
    if (!r.pass || !r.detail.empty()) os << "  -- " << r.detail;
    os << "\n";
    if (timing) {
      char buf[48];
      std::snprintf(buf, sizeof(buf), "criterion %d: %.2fs\n", r.id, r.seconds);
      *timing << buf;
    }
    all = all && r.pass;
  }
  os << (all ? "acceptance: all criteria passed\n" : "acceptance: FAILURES present\n");
  return all;
}

}  // namespace gcd
