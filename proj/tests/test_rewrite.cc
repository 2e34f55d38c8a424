/*!
 *  Copyright (c) 2026 by Contributors
 * \file test_rewrite.cc
 */
#include <doctest.h>

#include <set>

#include "gcd/error.h"
#include "gcd/rewrite.h"

using namespace gcd;

namespace {
Cfg Builtin(const char* name) {
  return ReduceGrammar(LoadGrammar(std::string("builtin:") + name));
}
}  // namespace

TEST_CASE("inlining A into S -> a A b produces the expected productions") {
  Cfg g2 = Builtin("G2");
  // production 0 is S -> a A b; occurrence 1 is A
  Cfg out = InlineNonterminal(g2, 0, 1);
  CHECK(out.NumNonterminals() == 2);  // A stays, re-referenced by S -> a a A b b
  std::set<std::string> bodies;
  for (const Production& p : out.Productions()) {
    std::string body = out.NonterminalNames()[p.lhs] + "->";
    for (const SymbolId& s : p.rhs) body += out.SymbolName(s);
    bodies.insert(body);
  }
  CHECK(bodies.count("S->aaAbb"));
  CHECK(bodies.count("S->ab"));
  CHECK(bodies.count("S->"));
  CHECK(bodies.count("A->aAb"));
  CHECK(bodies.count("A->"));
  CHECK(bodies.size() == 5);
}

TEST_CASE("inlining a single-alternative nonterminal keeps the production count") {
  Cfg g = ReduceGrammar(ParseGrammar("S -> A 'x'\nA -> 'a'"));
  Cfg out = InlineNonterminal(g, 0, 0);
  CHECK(out.Productions().size() == 1);  // A became unreachable and was reduced away
  CHECK(PrintGrammar(out) == "S -> 'a' 'x'\n");
}

TEST_CASE("unit delegation elimination is inlining at a unit production") {
  Cfg g = ReduceGrammar(ParseGrammar("S -> A\nA -> 'a' | 'b'"));
  Cfg out = InlineNonterminal(g, 0, 0);
  CHECK(out.NumNonterminals() == 1);
  CHECK(out.Productions().size() == 2);
}

TEST_CASE("inline preconditions") {
  Cfg g2 = Builtin("G2");
  CHECK_THROWS_AS(InlineNonterminal(g2, 0, 0), Error);  // position 0 holds a terminal
  CHECK_THROWS_AS(InlineNonterminal(g2, 0, 7), Error);  // out of range
  Cfg self = ReduceGrammar(ParseGrammar("S -> S 'a' | eps"));
  CHECK_THROWS_AS(InlineNonterminal(self, 0, 0), Error);  // start symbol
}

TEST_CASE("merging the duplicate nonterminal of G2 yields G1's shape") {
  Cfg g2 = Builtin("G2");
  uint32_t a_id = *g2.FindNonterminal("A");
  uint32_t s_id = *g2.FindNonterminal("S");
  Cfg merged = MergeDuplicateNonterminal(g2, a_id, s_id);
  CHECK(Kappa(merged) == 8);
  CHECK(CanonicalForm(merged) == CanonicalForm(Builtin("G1")));
  // non-duplicates refuse to merge
  Cfg g = ReduceGrammar(ParseGrammar("S -> A 'x' | eps\nA -> 'a'"));
  CHECK_THROWS_AS(MergeDuplicateNonterminal(g, *g.FindNonterminal("A"), 0), Error);
}

TEST_CASE("canonical form ignores nonterminal naming") {
  Cfg a = ReduceGrammar(ParseGrammar("S -> 'a' T | eps\nT -> 'b'"));
  Cfg b = ReduceGrammar(ParseGrammar("Root -> 'a' Leaf | eps\nLeaf -> 'b'"));
  CHECK(CanonicalForm(a) == CanonicalForm(b));
  Cfg c = ReduceGrammar(ParseGrammar("S -> 'a' T\nT -> 'b'"));
  CHECK(CanonicalForm(a) != CanonicalForm(c));
}

TEST_CASE("family with budget zero is the seed alone") {
  RewriteFamily family = EnumerateFamily(Builtin("G1"), 0);
  CHECK(family.members.size() == 1);
  CHECK(family.members[0].kappa == 8);
  CHECK_FALSE(family.partial);
}

TEST_CASE("family of G2 at budget one contains all single rewrites") {
  RewriteFamily family = EnumerateFamily(Builtin("G2"), 1);
  // seed, inline into S-production, self-inline in A, merge A into S
  CHECK(family.members.size() == 4);
  std::set<uint64_t> kappas;
  for (const FamilyMember& m : family.members) kappas.insert(m.kappa);
  CHECK(kappas.count(15));  // seed
  CHECK(kappas.count(8));   // merged duplicate = G1 shape
  for (const FamilyMember& m : family.members) {
    CHECK(m.depth <= 1);
    if (m.depth == 1) CHECK(m.path.size() == 1);
  }
}

TEST_CASE("family members are language-equivalent to the seed") {
  Cfg g2 = Builtin("G2");
  RewriteFamily family = EnumerateFamily(g2, 2);
  CHECK(family.members.size() >= 4);
  for (const FamilyMember& m : family.members) {
    VocabSpec spec = VocabSpec::SingletonOverUnion(g2, m.grammar);
    InvarianceReport rep = OracleInvarianceCheck(g2, m.grammar, spec, 6);
    CHECK_FALSE(rep.mismatch);
  }
}

TEST_CASE("member cap flags a partial family") {
  RewriteFamily family = EnumerateFamily(Builtin("G2"), 2, {3, 0});
  CHECK(family.partial);
  CHECK(family.members.size() == 3);
}

TEST_CASE("selection prefers G1 over G2 and G3 over G4") {
  std::vector<std::vector<std::string>> anbn_workload;
  for (int n : {1, 2, 3}) {
    std::vector<std::string> w;
    for (int i = 0; i < n; ++i) w.push_back("a");
    for (int i = 0; i < n; ++i) w.push_back("b");
    anbn_workload.push_back(std::move(w));
  }
  Cfg g1 = Builtin("G1"), g2 = Builtin("G2");
  RewriteFamily pair;
  pair.members.push_back({g2, {}, CanonicalForm(g2), Kappa(g2), 0});
  pair.members.push_back({g1, {}, CanonicalForm(g1), Kappa(g1), 0});
  SelectionResult sel = SelectMin(pair, anbn_workload, ParsePriority("sac,kappa"));
  CHECK(sel.winner == 1);
  CHECK(sel.pointwise_minimal);

  // G3 vs G4: the cubic-vs-quadratic chart gap widens with the workload
  Cfg g3 = Builtin("G3"), g4 = Builtin("G4");
  RewriteFamily pair34;
  pair34.members.push_back({g4, {}, CanonicalForm(g4), Kappa(g4), 0});
  pair34.members.push_back({g3, {}, CanonicalForm(g3), Kappa(g3), 0});
  std::vector<std::string> a32(32, "a");
  SelectionResult sel34 = SelectMin(pair34, {a32}, ParsePriority("sac,kappa"));
  CHECK(sel34.winner == 1);
  CHECK(sel34.costs[0].sac_units > 4 * sel34.costs[1].sac_units);
  std::vector<std::string> a64(64, "a");
  SelectionResult sel64 = SelectMin(pair34, {a64}, ParsePriority("sac,kappa"));
  CHECK(sel64.winner == 1);
  CHECK(sel64.costs[0].sac_units > 10 * sel64.costs[1].sac_units);
}

TEST_CASE("singleton family selects itself; determinism across runs") {
  Cfg g1 = Builtin("G1");
  RewriteFamily single;
  single.members.push_back({g1, {}, CanonicalForm(g1), Kappa(g1), 0});
  SelectionResult a = SelectMin(single, {{"a", "b"}}, ParsePriority(""));
  CHECK(a.winner == 0);
  SelectionResult b = SelectMin(single, {{"a", "b"}}, ParsePriority(""));
  CHECK(b.winner == a.winner);
  CHECK(b.costs[0].sac_units == a.costs[0].sac_units);
}

TEST_CASE("priority parsing") {
  auto p = ParsePriority("kappa,sac");
  REQUIRE(p.size() == 3);
  CHECK(p[0] == CostComponent::kKappa);
  CHECK(p[1] == CostComponent::kSac);
  CHECK(p[2] == CostComponent::kTokenizer);
  CHECK_THROWS_AS(ParsePriority("bogus"), Error);
}
