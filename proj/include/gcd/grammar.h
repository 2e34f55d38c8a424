/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/grammar.h
 * \brief Context-free grammar representation, text format, reduction and the
 *        compiled control-state count kappa. Hosts the built-in grammar family
 *        G1..G4 used throughout the test and benchmark surface.
 */
#ifndef GCD_GRAMMAR_H_
#define GCD_GRAMMAR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gcd {

/*! \brief Dense id of a terminal or nonterminal. The two index spaces are disjoint. */
struct SymbolId {
  enum class Kind : uint8_t { kTerminal, kNonterminal };

  Kind kind;
  uint32_t index;

  bool IsTerminal() const { return kind == Kind::kTerminal; }
  bool IsNonterminal() const { return kind == Kind::kNonterminal; }

  friend bool operator==(const SymbolId&, const SymbolId&) = default;
};

inline SymbolId Terminal(uint32_t index) { return {SymbolId::Kind::kTerminal, index}; }
inline SymbolId Nonterminal(uint32_t index) { return {SymbolId::Kind::kNonterminal, index}; }

/*! \brief A production lhs -> rhs. Empty rhs encodes lhs -> epsilon. */
struct Production {
  uint32_t lhs;                 // nonterminal index
  std::vector<SymbolId> rhs;

  friend bool operator==(const Production&, const Production&) = default;
};

/*!
 * \brief An immutable context-free grammar.
 *
 * Symbol tables are deterministic: nonterminals in declaration order (the
 * first declared is the start symbol), terminals in order of first use.
 * All transforms return new values.
 */
class Cfg {
 public:
  Cfg(std::vector<std::string> nonterminal_names, std::vector<std::string> terminal_names,
      std::vector<Production> productions, uint32_t start);

  const std::vector<std::string>& NonterminalNames() const { return nonterminal_names_; }
  const std::vector<std::string>& TerminalNames() const { return terminal_names_; }
  const std::vector<Production>& Productions() const { return productions_; }
  uint32_t Start() const { return start_; }
  size_t NumNonterminals() const { return nonterminal_names_.size(); }
  size_t NumTerminals() const { return terminal_names_.size(); }

  const std::string& SymbolName(SymbolId s) const;
  std::optional<uint32_t> FindTerminal(const std::string& name) const;
  std::optional<uint32_t> FindNonterminal(const std::string& name) const;

  /*! \brief Production indices grouped by lhs nonterminal. */
  const std::vector<std::vector<uint32_t>>& ProductionsOf() const { return by_lhs_; }

  bool IsReduced() const { return reduced_; }
  void MarkReduced() { reduced_ = true; }

  /*! \brief Nonterminals that derive the empty string. */
  std::vector<bool> NullableSet() const;

  friend bool operator==(const Cfg& a, const Cfg& b);

 private:
  std::vector<std::string> nonterminal_names_;
  std::vector<std::string> terminal_names_;
  std::vector<Production> productions_;
  uint32_t start_;
  std::vector<std::vector<uint32_t>> by_lhs_;
  bool reduced_ = false;
};

/*!
 * \brief Parse the grammar text format.
 *
 * One rule per line (or `;`-separated): `NT -> alt1 | alt2`. Terminals are
 * quoted with single quotes, `eps` is the empty alternative, `#` starts a
 * comment. The first lhs is the start symbol. A nonterminal defined twice is
 * merged as alternation.
 */
Cfg ParseGrammar(const std::string& text);

/*! \brief Render a grammar in the same text format; parse(print(g)) round-trips. */
std::string PrintGrammar(const Cfg& g);

/*!
 * \brief Compiled control-state count: 1 + 2|N| + sum over productions of (|rhs|+1).
 */
uint64_t Kappa(const Cfg& g);

/*!
 * \brief Remove unproductive then unreachable nonterminals. Language preserved.
 * \throws EmptyLanguageError if the start symbol is unproductive.
 */
Cfg ReduceGrammar(const Cfg& g);

/*! \brief Resolve `builtin:G1`..`builtin:G4` or load grammar text from a file. */
Cfg LoadGrammar(const std::string& path_or_builtin);

/*! \brief Source text of a built-in grammar; name is one of G1..G4. */
const char* BuiltinGrammarText(const std::string& name);

}  // namespace gcd

#endif  // GCD_GRAMMAR_H_
