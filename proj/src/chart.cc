/*!
 *  Copyright (c) 2026 by Contributors
 * \file chart.cc
 */
#include "gcd/chart.h"

#include <algorithm>
#include <map>
#include <set>

#include "gcd/error.h"

namespace gcd {

// ---------------------------------------------------------------------------
// Earley
// ---------------------------------------------------------------------------

EarleyChart::EarleyChart(std::shared_ptr<const Cfg> g) : g_(std::move(g)) {
  GCD_CHECK(g_->IsReduced()) << "EarleyChart requires a reduced grammar";
  nullable_ = g_->NullableSet();
  sets_.emplace_back();
  present_.emplace_back();
  for (uint32_t pi : g_->ProductionsOf()[g_->Start()]) {
    AddItem(0, {pi, 0, 0});
  }
  Close(0);
}

bool EarleyChart::AddItem(uint32_t pos, Item it) {
  if (!present_[pos].insert(it).second) return false;
  sets_[pos].push_back(it);
  return true;
}

void EarleyChart::Close(uint32_t pos) {
  // worklist over the set's own vector; indices stay valid as it grows
  for (size_t w = 0; w < sets_[pos].size(); ++w) {
    Item it = sets_[pos][w];
    const Production& p = g_->Productions()[it.prod];
    if (it.dot < p.rhs.size()) {
      const SymbolId& x = p.rhs[it.dot];
      if (x.IsNonterminal()) {
        for (uint32_t pi : g_->ProductionsOf()[x.index]) {
          AddItem(pos, {pi, 0, pos});
        }
        if (nullable_[x.index]) {
          AddItem(pos, {it.prod, it.dot + 1, it.origin});
        }
      }
    } else {
      // complete: lhs(p) spans [origin, pos)
      uint32_t lhs = p.lhs;
      const ItemSet& origin_set = sets_[it.origin];
      for (size_t k = 0; k < origin_set.size(); ++k) {
        Item cand = origin_set[k];
        const Production& q = g_->Productions()[cand.prod];
        if (cand.dot < q.rhs.size() && q.rhs[cand.dot].IsNonterminal() &&
            q.rhs[cand.dot].index == lhs) {
          AddItem(pos, {cand.prod, cand.dot + 1, cand.origin});
        }
      }
    }
  }
}

bool EarleyChart::Extend(uint32_t terminal) {
  uint32_t pos = static_cast<uint32_t>(sets_.size() - 1);
  sets_.emplace_back();
  present_.emplace_back();
  for (const Item& it : sets_[pos]) {
    const Production& p = g_->Productions()[it.prod];
    if (it.dot < p.rhs.size() && p.rhs[it.dot].IsTerminal() &&
        p.rhs[it.dot].index == terminal) {
      AddItem(pos + 1, {it.prod, it.dot + 1, it.origin});
    }
  }
  Close(pos + 1);
  return Live();
}

bool EarleyChart::Live() const { return !sets_.back().empty(); }

bool EarleyChart::Member() const {
  uint32_t n = static_cast<uint32_t>(sets_.size() - 1);
  for (const Item& it : sets_[n]) {
    const Production& p = g_->Productions()[it.prod];
    if (p.lhs == g_->Start() && it.origin == 0 && it.dot == p.rhs.size()) return true;
  }
  return false;
}

std::vector<uint32_t> EarleyChart::NextTerminals() const {
  std::set<uint32_t> out;
  for (const Item& it : sets_.back()) {
    const Production& p = g_->Productions()[it.prod];
    if (it.dot < p.rhs.size() && p.rhs[it.dot].IsTerminal()) {
      out.insert(p.rhs[it.dot].index);
    }
  }
  return {out.begin(), out.end()};
}

EarleyResult EarleyNextTerminals(const Cfg& g, const std::vector<uint32_t>& u) {
  auto shared = std::make_shared<const Cfg>(g.IsReduced() ? g : ReduceGrammar(g));
  EarleyChart chart(shared);
  for (uint32_t t : u) {
    if (!chart.Extend(t)) break;
  }
  if (!chart.Live()) return {{}, false, false};
  return {chart.NextTerminals(), chart.Member(), true};
}

// ---------------------------------------------------------------------------
// Packed chart
// ---------------------------------------------------------------------------

uint64_t SacSeries::CumulativeSymbol() const {
  uint64_t s = 0;
  for (const Step& st : steps) s += st.new_symbol;
  return s;
}
uint64_t SacSeries::CumulativePacked() const {
  uint64_t s = 0;
  for (const Step& st : steps) s += st.new_packed;
  return s;
}

namespace {
inline uint64_t SpanKey(uint32_t i, uint32_t j) {
  return (static_cast<uint64_t>(i) << 32) | j;
}
}  // namespace

PackedChartRun::PackedChartRun(const Cfg& g) { Build(g.IsReduced() ? g : ReduceGrammar(g)); }

void PackedChartRun::Build(const Cfg& g) {
  num_original_ = g.NumNonterminals();
  // binarize: A -> X1 .. Xm with m >= 3 becomes a right-leaning chain
  size_t next_fresh = num_original_;
  std::vector<BinProduction> bin;
  for (const Production& p : g.Productions()) {
    if (p.rhs.size() <= 2) {
      bin.push_back({p.lhs, p.rhs});
      continue;
    }
    uint32_t lhs = p.lhs;
    for (size_t i = 0; i + 2 < p.rhs.size(); ++i) {
      uint32_t fresh = static_cast<uint32_t>(next_fresh++);
      bin.push_back({lhs, {p.rhs[i], Nonterminal(fresh)}});
      lhs = fresh;
    }
    bin.push_back({lhs, {p.rhs[p.rhs.size() - 2], p.rhs[p.rhs.size() - 1]}});
  }
  num_extended_ = next_fresh;

  // nullable closure over the binarized grammar, then drop epsilon bodies
  std::vector<bool> nullable(num_extended_, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const BinProduction& p : bin) {
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
  std::set<std::pair<uint32_t, std::vector<uint64_t>>> dedup;
  auto add = [&](uint32_t lhs, std::vector<SymbolId> rhs) {
    if (rhs.empty()) return;
    std::vector<uint64_t> key;
    for (const SymbolId& s : rhs) {
      key.push_back((static_cast<uint64_t>(s.IsTerminal()) << 32) | s.index);
    }
    if (!dedup.insert({lhs, key}).second) return;
    prods_.push_back({lhs, std::move(rhs)});
  };
  for (const BinProduction& p : bin) {
    add(p.lhs, p.rhs);
    if (p.rhs.size() == 2) {
      if (p.rhs[0].IsNonterminal() && nullable[p.rhs[0].index]) add(p.lhs, {p.rhs[1]});
      if (p.rhs[1].IsNonterminal() && nullable[p.rhs[1].index]) add(p.lhs, {p.rhs[0]});
    }
  }
  // drop unit productions whose child can no longer produce anything
  // (a nonterminal that only derived epsilon has no bodies left)
  std::vector<bool> has_body(num_extended_, false);
  for (const BinProduction& p : prods_) has_body[p.lhs] = true;
  std::vector<BinProduction> kept;
  for (const BinProduction& p : prods_) {
    bool ok = true;
    for (const SymbolId& s : p.rhs) {
      if (s.IsNonterminal() && !has_body[s.index]) ok = false;
    }
    if (ok) kept.push_back(p);
  }
  prods_ = std::move(kept);

  size_t nt = num_extended_;
  leaf_rules_by_terminal_.resize(g.NumTerminals());
  tt_rules_by_second_.resize(g.NumTerminals());
  unit_rules_by_child_.resize(nt);
  binary_by_right_child_.resize(nt);
  for (uint32_t pi = 0; pi < prods_.size(); ++pi) {
    const BinProduction& p = prods_[pi];
    if (p.rhs.size() == 1) {
      if (p.rhs[0].IsTerminal()) {
        leaf_rules_by_terminal_[p.rhs[0].index].push_back(pi);
      } else {
        unit_rules_by_child_[p.rhs[0].index].push_back(pi);
      }
    } else {
      if (p.rhs[1].IsNonterminal()) {
        binary_by_right_child_[p.rhs[1].index].push_back(pi);
      } else if (p.rhs[0].IsTerminal()) {
        tt_rules_by_second_[p.rhs[1].index].push_back(pi);
      } else {
        // nonterminal then terminal: handled at the step that scans the terminal
        tt_rules_by_second_[p.rhs[1].index].push_back(pi);
      }
    }
  }
  span_set_.resize(nt);
  starts_by_end_.resize(nt);
  symbol_count_.assign(nt, 0);
}

void PackedChartRun::NewSymbol(uint32_t nt, uint32_t i, uint32_t j, CounterVector* counters) {
  if (!span_set_[nt].insert(SpanKey(i, j)).second) return;
  if (starts_by_end_[nt].size() <= j) starts_by_end_[nt].resize(j + 1);
  starts_by_end_[nt][j].push_back(i);
  symbol_count_[nt]++;
  total_symbol_++;
  step_symbol_++;
  if (counters) counters->chart_symbol_nodes++;
  worklist_.push_back({nt, i});
}

SacSeries::Step PackedChartRun::Step(uint32_t terminal, CounterVector* counters) {
  terminals_.push_back(terminal);
  consumed_++;
  uint32_t t = static_cast<uint32_t>(consumed_);
  step_symbol_ = 0;
  step_packed_ = 0;
  worklist_.clear();

  auto new_packed = [&](CounterVector* sink) {
    total_packed_++;
    step_packed_++;
    if (sink) sink->chart_packed_nodes++;
  };

  // leaves: A -> a for the terminal just scanned, spanning (t-1, t)
  for (uint32_t pi : leaf_rules_by_terminal_[terminal]) {
    NewSymbol(prods_[pi].lhs, t - 1, t, counters);
  }
  // two-symbol bodies whose right element is this terminal
  for (uint32_t pi : tt_rules_by_second_[terminal]) {
    const BinProduction& p = prods_[pi];
    if (p.rhs[0].IsTerminal()) {
      // t u : both terminals
      if (t >= 2 && terminals_[t - 2] == p.rhs[0].index) {
        new_packed(counters);
        NewSymbol(p.lhs, t - 2, t, counters);
      }
    } else {
      // B u : left child ends at t-1
      uint32_t b = p.rhs[0].index;
      if (starts_by_end_[b].size() > t - 1) {
        for (uint32_t i : starts_by_end_[b][t - 1]) {
          new_packed(counters);
          NewSymbol(p.lhs, i, t, counters);
        }
      }
    }
  }
  // close spans ending at t, bottom-up
  for (size_t w = 0; w < worklist_.size(); ++w) {
    auto [c, k_start] = worklist_[w];
    uint32_t i_right = k_start;  // the new node spans (k_start, t)
    // unit parents
    for (uint32_t pi : unit_rules_by_child_[c]) {
      NewSymbol(prods_[pi].lhs, i_right, t, counters);
    }
    // as right child of a binary rule: split at k_start
    for (uint32_t pi : binary_by_right_child_[c]) {
      const BinProduction& p = prods_[pi];
      if (p.rhs[0].IsTerminal()) {
        if (i_right >= 1 && terminals_[i_right - 1] == p.rhs[0].index) {
          new_packed(counters);
          NewSymbol(p.lhs, i_right - 1, t, counters);
        }
      } else {
        uint32_t b = p.rhs[0].index;
        if (starts_by_end_[b].size() > i_right) {
          for (uint32_t i : starts_by_end_[b][i_right]) {
            new_packed(counters);
            NewSymbol(p.lhs, i, t, counters);
          }
        }
      }
    }
  }
  return {step_symbol_, step_packed_};
}

uint64_t PackedChartRun::SymbolNodeCount(uint32_t original_nonterminal) const {
  GCD_CHECK(original_nonterminal < num_original_);
  return symbol_count_[original_nonterminal];
}

bool PackedChartRun::HasSpan(uint32_t original_nonterminal, uint32_t i, uint32_t j) const {
  GCD_CHECK(original_nonterminal < num_original_);
  return span_set_[original_nonterminal].count(SpanKey(i, j)) > 0;
}

// ---------------------------------------------------------------------------
// Right-linear fast path
// ---------------------------------------------------------------------------

bool IsRightLinearDeterministic(const Cfg& g) {
  std::set<std::pair<uint32_t, uint32_t>> seen;  // (nonterminal, first terminal)
  for (const Production& p : g.Productions()) {
    if (p.rhs.empty()) continue;
    if (p.rhs.size() == 1) {
      if (!p.rhs[0].IsTerminal()) return false;
    } else if (p.rhs.size() == 2) {
      if (!p.rhs[0].IsTerminal() || !p.rhs[1].IsNonterminal()) return false;
    } else {
      return false;
    }
    if (!seen.insert({p.lhs, p.rhs[0].index}).second) return false;
  }
  return true;
}

SacSeries SacMeasure(const Cfg& g, const std::vector<uint32_t>& w, SacEngine engine,
                     CounterVector* counters) {
  SacSeries series;
  if (engine == SacEngine::kPackedChart) {
    PackedChartRun run(g);
    for (uint32_t t : w) {
      series.steps.push_back(run.Step(t, counters));
    }
    return series;
  }
  if (!IsRightLinearDeterministic(g)) {
    throw Error("regular fast path requested for a grammar that is not right-linear deterministic");
  }
  const Cfg reduced = g.IsReduced() ? g : ReduceGrammar(g);
  // constant-size recognizer: the current nonterminal, or accept-only, or dead
  enum : int32_t { kDead = -1, kAcceptOnly = -2 };
  int32_t state = static_cast<int32_t>(reduced.Start());
  for (uint32_t t : w) {
    int32_t next = kDead;
    if (state >= 0) {
      for (uint32_t pi : reduced.ProductionsOf()[static_cast<uint32_t>(state)]) {
        const Production& p = reduced.Productions()[pi];
        if (!p.rhs.empty() && p.rhs[0].index == t) {
          next = (p.rhs.size() == 2) ? static_cast<int32_t>(p.rhs[1].index) : kAcceptOnly;
          break;
        }
      }
    }
    state = next;
    // one bookkeeping unit per step: the refreshed recognizer cell
    series.steps.push_back({1, 0});
    if (counters) counters->chart_symbol_nodes++;
  }
  return series;
}

// ---------------------------------------------------------------------------
// Parse-tree counting
// ---------------------------------------------------------------------------

namespace {

/*! \brief Edge A -> B when B can occupy the whole span of A (all siblings nullable). */
void CheckNoSpanPreservingCycle(const Cfg& g) {
  std::vector<bool> nullable = g.NullableSet();
  size_t n = g.NumNonterminals();
  std::vector<std::vector<uint32_t>> adj(n);
  for (const Production& p : g.Productions()) {
    for (size_t i = 0; i < p.rhs.size(); ++i) {
      if (!p.rhs[i].IsNonterminal()) continue;
      bool others_nullable = true;
      for (size_t k = 0; k < p.rhs.size(); ++k) {
        if (k == i) continue;
        if (p.rhs[k].IsTerminal() || !nullable[p.rhs[k].index]) {
          others_nullable = false;
          break;
        }
      }
      if (others_nullable) adj[p.lhs].push_back(p.rhs[i].index);
    }
  }
  // DFS cycle detection
  std::vector<int> color(n, 0);
  std::vector<std::pair<uint32_t, size_t>> stack;
  for (uint32_t s = 0; s < n; ++s) {
    if (color[s] != 0) continue;
    stack.push_back({s, 0});
    color[s] = 1;
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      if (idx < adj[v].size()) {
        uint32_t u = adj[v][idx++];
        if (color[u] == 1) {
          throw Error("infinite ambiguity: nonterminal '" + g.NonterminalNames()[u] +
                      "' can derive itself over an unchanged span");
        }
        if (color[u] == 0) {
          color[u] = 1;
          stack.push_back({u, 0});
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }
}

struct TreeCounter {
  const Cfg& g;
  const std::vector<uint32_t>& w;
  std::vector<bool> nullable;
  // suffix_nullable[pi][idx]: rhs[idx..] can derive the empty string
  std::vector<std::vector<bool>> suffix_nullable;
  // memo for (nonterminal, i, j) and for (production, rhs index, i, j)
  std::map<std::tuple<uint32_t, uint32_t, uint32_t>, BigUInt> nt_memo;
  std::map<std::tuple<uint32_t, uint32_t, uint32_t, uint32_t>, BigUInt> seq_memo;
  std::set<std::tuple<uint32_t, uint32_t, uint32_t>> in_progress;

  void Precompute() {
    nullable = g.NullableSet();
    suffix_nullable.resize(g.Productions().size());
    for (uint32_t pi = 0; pi < g.Productions().size(); ++pi) {
      const Production& p = g.Productions()[pi];
      suffix_nullable[pi].assign(p.rhs.size() + 1, true);
      for (size_t idx = p.rhs.size(); idx-- > 0;) {
        const SymbolId& s = p.rhs[idx];
        suffix_nullable[pi][idx] =
            suffix_nullable[pi][idx + 1] && s.IsNonterminal() && nullable[s.index];
      }
    }
  }

  BigUInt CountNt(uint32_t a, uint32_t i, uint32_t j) {
    auto key = std::make_tuple(a, i, j);
    auto it = nt_memo.find(key);
    if (it != nt_memo.end()) return it->second;
    GCD_CHECK(in_progress.insert(key).second)
        << "cycle reached during parse counting (missed by the detector)";
    BigUInt total;
    for (uint32_t pi : g.ProductionsOf()[a]) {
      total += CountSeq(pi, 0, i, j);
    }
    in_progress.erase(key);
    nt_memo[key] = total;
    return total;
  }

  BigUInt CountSeq(uint32_t pi, uint32_t idx, uint32_t i, uint32_t j) {
    const Production& p = g.Productions()[pi];
    if (idx == p.rhs.size()) return (i == j) ? BigUInt(1) : BigUInt(0);
    auto key = std::make_tuple(pi, idx, i, j);
    auto it = seq_memo.find(key);
    if (it != seq_memo.end()) return it->second;
    BigUInt total;
    const SymbolId& x = p.rhs[idx];
    if (x.IsTerminal()) {
      if (i < j && w[i] == x.index) total = CountSeq(pi, idx + 1, i + 1, j);
    } else {
      for (uint32_t k = i; k <= j; ++k) {
        // prune zero factors before recursing, so well-founded grammars never
        // revisit an in-progress (nonterminal, span) key
        if (k == i && !nullable[x.index]) continue;
        if (k == j && !suffix_nullable[pi][idx + 1]) continue;
        BigUInt left = CountNt(x.index, i, k);
        if (left.IsZero()) continue;
        total += left * CountSeq(pi, idx + 1, k, j);
      }
    }
    seq_memo[key] = total;
    return total;
  }
};

}  // namespace

BigUInt CountParseTrees(const Cfg& g, const std::vector<uint32_t>& w) {
  CheckNoSpanPreservingCycle(g);
  TreeCounter counter{g, w, {}, {}, {}, {}, {}};
  counter.Precompute();
  return counter.CountNt(g.Start(), 0, static_cast<uint32_t>(w.size()));
}

}  // namespace gcd
