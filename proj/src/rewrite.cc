/*!
 *  Copyright (c) 2026 by Contributors
 * \file rewrite.cc
 */
#include "gcd/rewrite.h"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "gcd/chart.h"
#include "gcd/error.h"
#include "gcd/vocab.h"

namespace gcd {

Cfg InlineNonterminal(const Cfg& g, uint32_t production, uint32_t occurrence) {
  GCD_CHECK(production < g.Productions().size()) << "production index out of range";
  const Production& p = g.Productions()[production];
  if (occurrence >= p.rhs.size() || !p.rhs[occurrence].IsNonterminal()) {
    throw Error("inline: rhs position " + std::to_string(occurrence) +
                " does not hold a nonterminal");
  }
  uint32_t a = p.rhs[occurrence].index;
  if (a == g.Start()) throw Error("inline: cannot inline the start symbol");

  std::vector<Production> prods;
  for (uint32_t pi = 0; pi < g.Productions().size(); ++pi) {
    if (pi != production) {
      prods.push_back(g.Productions()[pi]);
      continue;
    }
    for (uint32_t alt : g.ProductionsOf()[a]) {
      const Production& sub = g.Productions()[alt];
      Production replaced;
      replaced.lhs = p.lhs;
      replaced.rhs.insert(replaced.rhs.end(), p.rhs.begin(), p.rhs.begin() + occurrence);
      replaced.rhs.insert(replaced.rhs.end(), sub.rhs.begin(), sub.rhs.end());
      replaced.rhs.insert(replaced.rhs.end(), p.rhs.begin() + occurrence + 1, p.rhs.end());
      prods.push_back(std::move(replaced));
    }
  }
  Cfg out(g.NonterminalNames(), g.TerminalNames(), std::move(prods), g.Start());
  return ReduceGrammar(out);
}

namespace {

std::vector<std::vector<SymbolId>> SubstitutedRhsSet(const Cfg& g, uint32_t owner, uint32_t dup,
                                                     uint32_t into) {
  std::vector<std::vector<SymbolId>> set;
  for (uint32_t pi : g.ProductionsOf()[owner]) {
    std::vector<SymbolId> rhs = g.Productions()[pi].rhs;
    for (SymbolId& s : rhs) {
      if (s.IsNonterminal() && s.index == dup) s.index = into;
    }
    set.push_back(std::move(rhs));
  }
  auto key = [](const std::vector<SymbolId>& rhs) {
    std::string k;
    for (const SymbolId& s : rhs) {
      k += s.IsTerminal() ? 't' : 'n';
      k += std::to_string(s.index);
      k += ',';
    }
    return k;
  };
  std::sort(set.begin(), set.end(),
            [&](const auto& x, const auto& y) { return key(x) < key(y); });
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

}  // namespace

Cfg MergeDuplicateNonterminal(const Cfg& g, uint32_t dup, uint32_t into) {
  GCD_CHECK(dup < g.NumNonterminals() && into < g.NumNonterminals() && dup != into);
  if (dup == g.Start()) throw Error("merge: cannot remove the start symbol");
  if (SubstitutedRhsSet(g, dup, dup, into) != SubstitutedRhsSet(g, into, dup, into)) {
    throw Error("merge: production sets of '" + g.NonterminalNames()[dup] + "' and '" +
                g.NonterminalNames()[into] + "' are not identical under renaming");
  }
  std::vector<Production> prods;
  std::set<std::pair<uint32_t, std::string>> seen;
  for (const Production& p : g.Productions()) {
    if (p.lhs == dup) continue;
    Production q = p;
    std::string k;
    for (SymbolId& s : q.rhs) {
      if (s.IsNonterminal() && s.index == dup) s.index = into;
      k += s.IsTerminal() ? 't' : 'n';
      k += std::to_string(s.index);
      k += ',';
    }
    if (!seen.insert({q.lhs, k}).second) continue;
    prods.push_back(std::move(q));
  }
  Cfg out(g.NonterminalNames(), g.TerminalNames(), std::move(prods), g.Start());
  return ReduceGrammar(out);
}

std::string CanonicalForm(const Cfg& g) {
  // order nonterminals by first use, starting from the start symbol
  std::vector<uint32_t> order;
  std::vector<bool> seen(g.NumNonterminals(), false);
  std::deque<uint32_t> work{g.Start()};
  seen[g.Start()] = true;
  while (!work.empty()) {
    uint32_t nt = work.front();
    work.pop_front();
    order.push_back(nt);
    for (uint32_t pi : g.ProductionsOf()[nt]) {
      for (const SymbolId& s : g.Productions()[pi].rhs) {
        if (s.IsNonterminal() && !seen[s.index]) {
          seen[s.index] = true;
          work.push_back(s.index);
        }
      }
    }
  }
  std::vector<uint32_t> rank(g.NumNonterminals(), UINT32_MAX);
  for (uint32_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  std::ostringstream os;
  for (uint32_t nt : order) {
    std::vector<std::string> alts;
    for (uint32_t pi : g.ProductionsOf()[nt]) {
      std::string alt;
      for (const SymbolId& s : g.Productions()[pi].rhs) {
        if (s.IsTerminal()) {
          alt += "'" + g.TerminalNames()[s.index] + "' ";
        } else {
          alt += "N" + std::to_string(rank[s.index]) + " ";
        }
      }
      if (alt.empty()) alt = "eps ";
      alts.push_back(alt);
    }
    std::sort(alts.begin(), alts.end());
    os << "N" << rank[nt] << " ->";
    for (const std::string& a : alts) os << " | " << a;
    os << "\n";
  }
  return os.str();
}

namespace {

std::vector<std::pair<Cfg, std::string>> Neighbors(const Cfg& g) {
  std::vector<std::pair<Cfg, std::string>> out;
  for (uint32_t pi = 0; pi < g.Productions().size(); ++pi) {
    const Production& p = g.Productions()[pi];
    for (uint32_t occ = 0; occ < p.rhs.size(); ++occ) {
      if (!p.rhs[occ].IsNonterminal() || p.rhs[occ].index == g.Start()) continue;
      std::string desc = "inline " + g.NonterminalNames()[p.rhs[occ].index] + " in " +
                         g.NonterminalNames()[p.lhs] + " alt " + std::to_string(pi) + " pos " +
                         std::to_string(occ);
      out.push_back({InlineNonterminal(g, pi, occ), std::move(desc)});
    }
  }
  for (uint32_t dup = 0; dup < g.NumNonterminals(); ++dup) {
    if (dup == g.Start()) continue;
    for (uint32_t into = 0; into < g.NumNonterminals(); ++into) {
      if (into == dup) continue;
      if (SubstitutedRhsSet(g, dup, dup, into) != SubstitutedRhsSet(g, into, dup, into)) continue;
      std::string desc = "merge duplicate " + g.NonterminalNames()[dup] + " into " +
                         g.NonterminalNames()[into];
      out.push_back({MergeDuplicateNonterminal(g, dup, into), std::move(desc)});
    }
  }
  return out;
}

}  // namespace

RewriteFamily EnumerateFamily(const Cfg& g, uint32_t budget, const FamilyOptions& opts) {
  Cfg seed = g.IsReduced() ? g : ReduceGrammar(g);
  RewriteFamily family;
  std::set<std::string> known;
  FamilyMember root{seed, {}, CanonicalForm(seed), Kappa(seed), 0};
  known.insert(root.canonical);
  family.members.push_back(std::move(root));

  size_t frontier_begin = 0;
  for (uint32_t depth = 1; depth <= budget; ++depth) {
    size_t frontier_end = family.members.size();
    for (size_t mi = frontier_begin; mi < frontier_end; ++mi) {
      for (auto& [next, desc] : Neighbors(family.members[mi].grammar)) {
        std::string canon = CanonicalForm(next);
        if (known.count(canon)) continue;
        if (family.members.size() >= opts.member_cap) {
          family.partial = true;
          return family;
        }
        if (opts.verify_depth > 0) {
          VocabSpec spec =
              VocabSpec::SingletonOverUnion(family.members[mi].grammar, next);
          InvarianceReport rep = OracleInvarianceCheck(family.members[mi].grammar, next, spec,
                                                       opts.verify_depth);
          GCD_CHECK(!rep.mismatch)
              << "rewrite changed the language (" << desc << "): " << rep.detail;
        }
        known.insert(canon);
        FamilyMember member{next, family.members[mi].path, std::move(canon), Kappa(next), depth};
        member.path.push_back(desc);
        family.members.push_back(std::move(member));
      }
    }
    frontier_begin = frontier_end;
  }
  return family;
}

std::vector<CostComponent> ParsePriority(const std::string& text) {
  std::vector<CostComponent> out;
  std::set<int> seen;
  std::istringstream is(text);
  std::string part;
  auto push = [&](CostComponent c) {
    if (seen.insert(static_cast<int>(c)).second) out.push_back(c);
  };
  while (std::getline(is, part, ',')) {
    if (part == "sac") {
      push(CostComponent::kSac);
    } else if (part == "kappa") {
      push(CostComponent::kKappa);
    } else if (part == "tok" || part == "tokenizer") {
      push(CostComponent::kTokenizer);
    } else if (!part.empty()) {
      throw Error("unknown cost component '" + part + "' (expected sac, kappa, tok)");
    }
  }
  push(CostComponent::kSac);
  push(CostComponent::kKappa);
  push(CostComponent::kTokenizer);
  return out;
}

namespace {

CostVector MeasureCost(const Cfg& g, const std::vector<std::vector<std::string>>& workload) {
  CostVector cost;
  cost.kappa = Kappa(g);
  auto pda = CompileRtn(g);
  Vocab vocab = Vocab::Singleton(g);
  for (const auto& names : workload) {
    std::vector<uint32_t> w;
    for (const std::string& name : names) {
      auto t = g.FindTerminal(name);
      GCD_CHECK(t.has_value()) << "workload terminal '" << name
                               << "' missing from grammar alphabet";
      w.push_back(*t);
    }
    CounterVector chart_counters;
    SacMeasure(g, w, SacEngine::kPackedChart, &chart_counters);
    cost.sac_units += chart_counters.chart_symbol_nodes + chart_counters.chart_packed_nodes;
    cost.sac_steps += w.size();

    CounterVector tok_counters;
    EngineState s = EngineState::Init(pda);
    for (size_t i = 0; i <= w.size(); ++i) {
      AdmissibleTokens(s, vocab, &tok_counters);
      cost.tok_masks++;
      if (i < w.size() && s.Live()) s = s.StepTerminal(w[i]);
    }
    cost.tok_steps += tok_counters.speculative_token_steps;
  }
  return cost;
}

// exact comparison of unit ratios a/b vs c/d; empty denominators sort first
int CompareRatio(uint64_t a, uint64_t b, uint64_t c, uint64_t d) {
  __int128 lhs = static_cast<__int128>(a) * (d ? d : 1);
  __int128 rhs = static_cast<__int128>(c) * (b ? b : 1);
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

int CompareComponent(const CostVector& x, const CostVector& y, CostComponent c) {
  switch (c) {
    case CostComponent::kSac:
      return CompareRatio(x.sac_units, x.sac_steps, y.sac_units, y.sac_steps);
    case CostComponent::kKappa:
      return x.kappa < y.kappa ? -1 : (x.kappa > y.kappa ? 1 : 0);
    case CostComponent::kTokenizer:
      return CompareRatio(x.tok_steps, x.tok_masks, y.tok_steps, y.tok_masks);
  }
  return 0;
}

uint64_t GrammarSize(const Cfg& g) {
  uint64_t s = g.NumNonterminals();
  for (const Production& p : g.Productions()) s += p.rhs.size() + 1;
  return s;
}

}  // namespace

SelectionResult SelectMin(const RewriteFamily& family,
                          const std::vector<std::vector<std::string>>& workload,
                          const std::vector<CostComponent>& priority) {
  GCD_CHECK(!family.members.empty()) << "empty rewrite family";
  SelectionResult res;
  for (const FamilyMember& m : family.members) {
    res.costs.push_back(MeasureCost(m.grammar, workload));
  }
  auto less_than = [&](size_t i, size_t j) {
    for (CostComponent c : priority) {
      int cmp = CompareComponent(res.costs[i], res.costs[j], c);
      if (cmp != 0) return cmp < 0;
    }
    uint64_t si = GrammarSize(family.members[i].grammar);
    uint64_t sj = GrammarSize(family.members[j].grammar);
    if (si != sj) return si < sj;
    return family.members[i].canonical < family.members[j].canonical;
  };
  size_t best = 0;
  for (size_t i = 1; i < family.members.size(); ++i) {
    if (less_than(i, best)) best = i;
  }
  res.winner = best;
  // pointwise minimality: no member strictly beats the winner in every component
  res.pointwise_minimal = true;
  for (size_t i = 0; i < family.members.size(); ++i) {
    if (i == best) continue;
    bool dominates = true;
    for (CostComponent c :
         {CostComponent::kSac, CostComponent::kKappa, CostComponent::kTokenizer}) {
      if (CompareComponent(res.costs[i], res.costs[best], c) >= 0) {
        dominates = false;
        break;
      }
    }
    if (dominates) res.pointwise_minimal = false;
  }
  return res;
}

}  // namespace gcd
