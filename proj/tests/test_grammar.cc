/*!
 *  Copyright (c) 2026 by Contributors
 * \file test_grammar.cc
 */
#include <doctest.h>

#include "gcd/error.h"
#include "gcd/grammar.h"

using namespace gcd;

TEST_CASE("parse G1 source") {
  Cfg g = ParseGrammar("S -> 'a' S 'b' | eps");
  CHECK(g.NumNonterminals() == 1);
  CHECK(g.NumTerminals() == 2);
  CHECK(g.Productions().size() == 2);
  CHECK(g.Productions()[0].rhs.size() == 3);
  CHECK(g.Productions()[1].rhs.empty());
  CHECK(g.Start() == 0);
}

TEST_CASE("parse epsilon-only grammar") {
  Cfg g = ParseGrammar("S -> eps");
  CHECK(g.NumNonterminals() == 1);
  CHECK(g.NumTerminals() == 0);
  CHECK(g.Productions().size() == 1);
  CHECK(g.Productions()[0].rhs.empty());
}

TEST_CASE("parse G4 source with semicolons") {
  Cfg g = ParseGrammar("S0 -> S | eps ; S -> S S | 'a' | 'b'");
  CHECK(g.NumNonterminals() == 2);
  CHECK(g.Productions().size() == 5);
  CHECK(g.NonterminalNames()[g.Start()] == "S0");
}

TEST_CASE("duplicate nonterminal definitions merge as alternation") {
  Cfg g = ParseGrammar("S -> 'a'\nS -> 'b'\n");
  CHECK(g.NumNonterminals() == 1);
  CHECK(g.Productions().size() == 2);
}

TEST_CASE("comments and blank lines are ignored") {
  Cfg g = ParseGrammar("# a comment\n\nS -> 'a' # trailing\n");
  CHECK(g.Productions().size() == 1);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    ParseGrammar("S -> 'a'\nT -> -> 'b'\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("undeclared bare identifier is rejected") {
  CHECK_THROWS_AS(ParseGrammar("S -> A 'a'"), ParseError);
}

TEST_CASE("eps must stand alone") {
  CHECK_THROWS_AS(ParseGrammar("S -> 'a' eps"), ParseError);
}

TEST_CASE("kappa closed form on the builtin family") {
  CHECK(Kappa(LoadGrammar("builtin:G1")) == 8);
  CHECK(Kappa(LoadGrammar("builtin:G2")) == 15);
  CHECK(Kappa(LoadGrammar("builtin:G3")) == 10);
  CHECK(Kappa(LoadGrammar("builtin:G4")) == 15);
}

TEST_CASE("print/parse round-trip is exact") {
  for (const char* name : {"G1", "G2", "G3", "G4"}) {
    Cfg g = LoadGrammar(std::string("builtin:") + name);
    std::string printed = PrintGrammar(g);
    Cfg reparsed = ParseGrammar(printed);
    CHECK(Kappa(reparsed) == Kappa(g));
    CHECK(PrintGrammar(reparsed) == printed);
    CHECK(reparsed == g);
  }
}

TEST_CASE("reduce keeps an already-reduced grammar unchanged") {
  Cfg g1 = LoadGrammar("builtin:G1");
  Cfg r = ReduceGrammar(g1);
  CHECK(r.IsReduced());
  CHECK(r == g1);
  CHECK(ReduceGrammar(r) == r);  // idempotent
}

TEST_CASE("grammar with no base case has an empty language") {
  CHECK_THROWS_AS(ReduceGrammar(ParseGrammar("S -> 'a' S")), EmptyLanguageError);
}

TEST_CASE("unproductive nonterminal is removed by the fixpoint") {
  Cfg r = ReduceGrammar(ParseGrammar("S -> A | 'a'\nA -> A\n"));
  CHECK(r.NumNonterminals() == 1);
  CHECK(r.Productions().size() == 1);
  CHECK(r.Productions()[0].rhs.size() == 1);
  CHECK(PrintGrammar(r) == "S -> 'a'\n");
}

TEST_CASE("unreachable nonterminal is removed") {
  Cfg r = ReduceGrammar(ParseGrammar("S -> 'a'\nB -> 'b'\n"));
  CHECK(r.NumNonterminals() == 1);
  CHECK(r.NumTerminals() == 1);
}

TEST_CASE("nullable set") {
  Cfg g = ParseGrammar("S -> A B\nA -> eps\nB -> 'b' | eps\n");
  auto nullable = g.NullableSet();
  CHECK(nullable[*g.FindNonterminal("S")]);
  CHECK(nullable[*g.FindNonterminal("A")]);
  CHECK(nullable[*g.FindNonterminal("B")]);
  Cfg g2 = ParseGrammar("S -> 'a' S | eps");
  CHECK(g2.NullableSet()[0]);
}

TEST_CASE("unknown builtin") { CHECK_THROWS_AS(LoadGrammar("builtin:G9"), Error); }
