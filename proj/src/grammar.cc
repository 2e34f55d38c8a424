/*!
 *  Copyright (c) 2026 by Contributors
 * \file grammar.cc
 */
#include "gcd/grammar.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "gcd/error.h"

namespace gcd {

Cfg::Cfg(std::vector<std::string> nonterminal_names, std::vector<std::string> terminal_names,
         std::vector<Production> productions, uint32_t start)
    : nonterminal_names_(std::move(nonterminal_names)),
      terminal_names_(std::move(terminal_names)),
      productions_(std::move(productions)),
      start_(start) {
  GCD_CHECK(start_ < nonterminal_names_.size()) << "start symbol out of range";
  by_lhs_.resize(nonterminal_names_.size());
  for (uint32_t i = 0; i < productions_.size(); ++i) {
    const Production& p = productions_[i];
    GCD_CHECK(p.lhs < nonterminal_names_.size());
    for (const SymbolId& s : p.rhs) {
      if (s.IsTerminal()) {
        GCD_CHECK(s.index < terminal_names_.size()) << "undeclared terminal in production";
      } else {
        GCD_CHECK(s.index < nonterminal_names_.size()) << "undeclared nonterminal in production";
      }
    }
    by_lhs_[p.lhs].push_back(i);
  }
}

const std::string& Cfg::SymbolName(SymbolId s) const {
  return s.IsTerminal() ? terminal_names_[s.index] : nonterminal_names_[s.index];
}

std::optional<uint32_t> Cfg::FindTerminal(const std::string& name) const {
  for (uint32_t i = 0; i < terminal_names_.size(); ++i) {
    if (terminal_names_[i] == name) return i;
  }
  return std::nullopt;
}

std::optional<uint32_t> Cfg::FindNonterminal(const std::string& name) const {
  for (uint32_t i = 0; i < nonterminal_names_.size(); ++i) {
    if (nonterminal_names_[i] == name) return i;
  }
  return std::nullopt;
}

std::vector<bool> Cfg::NullableSet() const {
  std::vector<bool> nullable(NumNonterminals(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Production& p : productions_) {
      if (nullable[p.lhs]) continue;
      bool all = true;
      for (const SymbolId& s : p.rhs) {
        if (s.IsTerminal() || !nullable[s.index]) {
          all = false;
          break;
        }
      }
      if (all) {
        nullable[p.lhs] = true;
        changed = true;
      }
    }
  }
  return nullable;
}

bool operator==(const Cfg& a, const Cfg& b) {
  return a.nonterminal_names_ == b.nonterminal_names_ && a.terminal_names_ == b.terminal_names_ &&
         a.productions_ == b.productions_ && a.start_ == b.start_;
}

namespace {

struct Token {
  enum class Kind { kIdent, kTerminal, kArrow, kPipe, kSemi, kNewline, kEnd };
  Kind kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token Next() {
    // skip spaces and comments, not newlines
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        Advance();
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') Advance();
      } else {
        break;
      }
    }
    if (pos_ >= text_.size()) return {Token::Kind::kEnd, "", line_, col_};
    int line = line_, col = col_;
    char c = text_[pos_];
    if (c == '\n') {
      Advance();
      return {Token::Kind::kNewline, "\n", line, col};
    }
    if (c == ';') {
      Advance();
      return {Token::Kind::kSemi, ";", line, col};
    }
    if (c == '|') {
      Advance();
      return {Token::Kind::kPipe, "|", line, col};
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      Advance();
      Advance();
      return {Token::Kind::kArrow, "->", line, col};
    }
    if (c == '\'') {
      Advance();
      std::string name;
      while (pos_ < text_.size() && text_[pos_] != '\'' && text_[pos_] != '\n') {
        name.push_back(text_[pos_]);
        Advance();
      }
      if (pos_ >= text_.size() || text_[pos_] != '\'') {
        throw ParseError("unterminated terminal quote", line, col);
      }
      Advance();
      if (name.empty()) throw ParseError("empty terminal name", line, col);
      return {Token::Kind::kTerminal, name, line, col};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < text_.size()) {
        char d = text_[pos_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') {
          name.push_back(d);
          Advance();
        } else {
          break;
        }
      }
      return {Token::Kind::kIdent, name, line, col};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }

 private:
  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

// rhs symbol before name resolution
struct RawSymbol {
  bool is_terminal;
  std::string name;
  int line;
  int col;
};

}  // namespace

Cfg ParseGrammar(const std::string& text) {
  Lexer lex(text);
  struct RawRule {
    std::string lhs;
    std::vector<std::vector<RawSymbol>> alts;
  };
  std::vector<RawRule> rules;

  Token tok = lex.Next();
  auto skip_separators = [&]() {
    while (tok.kind == Token::Kind::kNewline || tok.kind == Token::Kind::kSemi) tok = lex.Next();
  };
  skip_separators();
  while (tok.kind != Token::Kind::kEnd) {
    if (tok.kind != Token::Kind::kIdent) {
      throw ParseError("expected nonterminal name at rule start", tok.line, tok.col);
    }
    RawRule rule;
    rule.lhs = tok.text;
    tok = lex.Next();
    if (tok.kind != Token::Kind::kArrow) throw ParseError("expected '->'", tok.line, tok.col);
    tok = lex.Next();
    std::vector<RawSymbol> alt;
    bool alt_has_eps = false;
    auto finish_alt = [&](int line, int col) {
      if (alt_has_eps && !alt.empty()) {
        throw ParseError("'eps' must stand alone in an alternative", line, col);
      }
      rule.alts.push_back(alt);
      alt.clear();
      alt_has_eps = false;
    };
    bool saw_any = false;
    while (true) {
      if (tok.kind == Token::Kind::kIdent && tok.text == "eps") {
        if (!alt.empty()) throw ParseError("'eps' must stand alone in an alternative", tok.line, tok.col);
        alt_has_eps = true;
        saw_any = true;
        tok = lex.Next();
      } else if (tok.kind == Token::Kind::kIdent) {
        if (alt_has_eps) throw ParseError("'eps' must stand alone in an alternative", tok.line, tok.col);
        alt.push_back({false, tok.text, tok.line, tok.col});
        saw_any = true;
        tok = lex.Next();
      } else if (tok.kind == Token::Kind::kTerminal) {
        if (alt_has_eps) throw ParseError("'eps' must stand alone in an alternative", tok.line, tok.col);
        alt.push_back({true, tok.text, tok.line, tok.col});
        saw_any = true;
        tok = lex.Next();
      } else if (tok.kind == Token::Kind::kPipe) {
        if (!saw_any && alt.empty()) throw ParseError("empty alternative", tok.line, tok.col);
        finish_alt(tok.line, tok.col);
        saw_any = false;
        tok = lex.Next();
      } else {
        // newline, semi or end closes the rule
        if (!saw_any && alt.empty()) {
          throw ParseError("empty alternative (use 'eps')", tok.line, tok.col);
        }
        finish_alt(tok.line, tok.col);
        break;
      }
    }
    rules.push_back(std::move(rule));
    skip_separators();
  }
  if (rules.empty()) throw ParseError("no rules in grammar", 1, 1);

  // nonterminals in declaration order; duplicate definitions merge
  std::vector<std::string> nt_names;
  std::unordered_map<std::string, uint32_t> nt_index;
  for (const auto& r : rules) {
    if (!nt_index.count(r.lhs)) {
      nt_index[r.lhs] = static_cast<uint32_t>(nt_names.size());
      nt_names.push_back(r.lhs);
    }
  }
  std::vector<std::string> t_names;
  std::unordered_map<std::string, uint32_t> t_index;
  std::vector<Production> prods;
  for (const auto& r : rules) {
    uint32_t lhs = nt_index.at(r.lhs);
    for (const auto& alt : r.alts) {
      Production p;
      p.lhs = lhs;
      for (const RawSymbol& s : alt) {
        if (s.is_terminal) {
          auto it = t_index.find(s.name);
          uint32_t ti;
          if (it == t_index.end()) {
            ti = static_cast<uint32_t>(t_names.size());
            t_index[s.name] = ti;
            t_names.push_back(s.name);
          } else {
            ti = it->second;
          }
          p.rhs.push_back(Terminal(ti));
        } else {
          auto it = nt_index.find(s.name);
          if (it == nt_index.end()) {
            throw ParseError("undeclared symbol '" + s.name + "' (nonterminals must be defined; terminals quoted)",
                             s.line, s.col);
          }
          p.rhs.push_back(Nonterminal(it->second));
        }
      }
      prods.push_back(std::move(p));
    }
  }
  return Cfg(std::move(nt_names), std::move(t_names), std::move(prods), 0);
}

std::string PrintGrammar(const Cfg& g) {
  std::ostringstream os;
  for (uint32_t nt = 0; nt < g.NumNonterminals(); ++nt) {
    const auto& prods = g.ProductionsOf()[nt];
    if (prods.empty()) continue;
    os << g.NonterminalNames()[nt] << " ->";
    bool first = true;
    for (uint32_t pi : prods) {
      os << (first ? " " : " | ");
      first = false;
      const Production& p = g.Productions()[pi];
      if (p.rhs.empty()) {
        os << "eps";
      } else {
        bool first_sym = true;
        for (const SymbolId& s : p.rhs) {
          if (!first_sym) os << " ";
          first_sym = false;
          if (s.IsTerminal()) {
            os << "'" << g.SymbolName(s) << "'";
          } else {
            os << g.SymbolName(s);
          }
        }
      }
    }
    os << "\n";
  }
  return os.str();
}

uint64_t Kappa(const Cfg& g) {
  uint64_t k = 1 + 2 * static_cast<uint64_t>(g.NumNonterminals());
  for (const Production& p : g.Productions()) {
    k += p.rhs.size() + 1;
  }
  return k;
}

Cfg ReduceGrammar(const Cfg& g) {
  // productive fixpoint
  std::vector<bool> productive(g.NumNonterminals(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Production& p : g.Productions()) {
      if (productive[p.lhs]) continue;
      bool all = true;
      for (const SymbolId& s : p.rhs) {
        if (s.IsNonterminal() && !productive[s.index]) {
          all = false;
          break;
        }
      }
      if (all) {
        productive[p.lhs] = true;
        changed = true;
      }
    }
  }
  if (!productive[g.Start()]) {
    throw EmptyLanguageError("empty language: start symbol '" +
                             g.NonterminalNames()[g.Start()] + "' derives no terminal string");
  }
  // reachable fixpoint over productive-only productions
  std::vector<bool> reachable(g.NumNonterminals(), false);
  reachable[g.Start()] = true;
  changed = true;
  while (changed) {
    changed = false;
    for (const Production& p : g.Productions()) {
      if (!reachable[p.lhs] || !productive[p.lhs]) continue;
      bool usable = true;
      for (const SymbolId& s : p.rhs) {
        if (s.IsNonterminal() && !productive[s.index]) {
          usable = false;
          break;
        }
      }
      if (!usable) continue;
      for (const SymbolId& s : p.rhs) {
        if (s.IsNonterminal() && !reachable[s.index]) {
          reachable[s.index] = true;
          changed = true;
        }
      }
    }
  }

  std::vector<bool> keep(g.NumNonterminals());
  for (size_t i = 0; i < keep.size(); ++i) keep[i] = productive[i] && reachable[i];

  std::vector<uint32_t> nt_map(g.NumNonterminals(), UINT32_MAX);
  std::vector<std::string> nt_names;
  for (uint32_t i = 0; i < g.NumNonterminals(); ++i) {
    if (keep[i]) {
      nt_map[i] = static_cast<uint32_t>(nt_names.size());
      nt_names.push_back(g.NonterminalNames()[i]);
    }
  }
  // keep only terminals still mentioned, in original order
  std::vector<bool> term_used(g.NumTerminals(), false);
  std::vector<Production> prods;
  for (const Production& p : g.Productions()) {
    if (!keep[p.lhs]) continue;
    bool usable = true;
    for (const SymbolId& s : p.rhs) {
      if (s.IsNonterminal() && !keep[s.index]) {
        usable = false;
        break;
      }
    }
    if (!usable) continue;
    for (const SymbolId& s : p.rhs) {
      if (s.IsTerminal()) term_used[s.index] = true;
    }
    prods.push_back(p);
  }
  std::vector<uint32_t> t_map(g.NumTerminals(), UINT32_MAX);
  std::vector<std::string> t_names;
  for (uint32_t i = 0; i < g.NumTerminals(); ++i) {
    if (term_used[i]) {
      t_map[i] = static_cast<uint32_t>(t_names.size());
      t_names.push_back(g.TerminalNames()[i]);
    }
  }
  for (Production& p : prods) {
    p.lhs = nt_map[p.lhs];
    for (SymbolId& s : p.rhs) {
      s.index = s.IsTerminal() ? t_map[s.index] : nt_map[s.index];
    }
  }
  Cfg out(std::move(nt_names), std::move(t_names), std::move(prods), nt_map[g.Start()]);
  out.MarkReduced();
  return out;
}

const char* BuiltinGrammarText(const std::string& name) {
  if (name == "G1") return "S -> 'a' S 'b' | eps\n";
  if (name == "G2") return "S -> 'a' A 'b' | eps\nA -> 'a' A 'b' | eps\n";
  if (name == "G3") return "S -> 'a' S | 'b' S | eps\n";
  if (name == "G4") return "S0 -> S | eps\nS -> S S | 'a' | 'b'\n";
  throw Error("unknown builtin grammar '" + name + "' (expected G1..G4)");
}

Cfg LoadGrammar(const std::string& path_or_builtin) {
  if (path_or_builtin.rfind("builtin:", 0) == 0) {
    return ParseGrammar(BuiltinGrammarText(path_or_builtin.substr(8)));
  }
  std::ifstream in(path_or_builtin, std::ios::binary);
  if (!in) throw Error("cannot open grammar file '" + path_or_builtin + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return ParseGrammar(os.str());
}

}  // namespace gcd
