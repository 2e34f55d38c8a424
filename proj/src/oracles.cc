/*!
 *  Copyright (c) 2026 by Contributors
 * \file oracles.cc
 */
#include "gcd/oracles.h"

#include <algorithm>
#include <map>

#include "gcd/error.h"

namespace gcd {

namespace {
constexpr uint64_t kOverflowBit = 1ULL << 63;
}

DerivationOracle::DerivationOracle(const Cfg& g, const std::vector<uint32_t>& x,
                                   uint32_t extra_wildcards)
    : g_(g), x_(x), window_(static_cast<uint32_t>(x.size()) + extra_wildcards) {
  GCD_CHECK(window_ <= 62) << "derivation oracle window supports at most 62 positions";
  productive_.assign(g.NumNonterminals(), false);
  bool grow = true;
  while (grow) {
    grow = false;
    for (const Production& p : g.Productions()) {
      if (productive_[p.lhs]) continue;
      bool all = true;
      for (const SymbolId& s : p.rhs) {
        if (s.IsNonterminal() && !productive_[s.index]) all = false;
      }
      if (all) {
        productive_[p.lhs] = true;
        grow = true;
      }
    }
  }
  reach_.assign(g.NumNonterminals(), std::vector<uint64_t>(window_ + 1, 0));
  bool changed = true;
  while (changed) {
    changed = false;
    for (uint32_t a = 0; a < g.NumNonterminals(); ++a) {
      for (uint32_t i = 0; i <= window_; ++i) {
        uint64_t acc = reach_[a][i];
        for (uint32_t pi : g.ProductionsOf()[a]) {
          acc |= Chain(1ULL << i, g.Productions()[pi]);
        }
        if (acc != reach_[a][i]) {
          reach_[a][i] = acc;
          changed = true;
        }
      }
    }
  }
}

uint64_t DerivationOracle::Chain(uint64_t positions, const Production& p) const {
  uint32_t n = static_cast<uint32_t>(x_.size());
  for (const SymbolId& s : p.rhs) {
    // past the window: any productive continuation stays past the window
    uint64_t next = 0;
    if ((positions & kOverflowBit) && (s.IsTerminal() || productive_[s.index])) {
      next = kOverflowBit;
    }
    if (s.IsTerminal()) {
      for (uint32_t j = 0; j < window_; ++j) {
        if ((positions >> j) & 1) {
          if (j >= n || x_[j] == s.index) next |= 1ULL << (j + 1);  // wildcard past |x|
        }
      }
      if ((positions >> window_) & 1) next |= kOverflowBit;
    } else {
      for (uint32_t j = 0; j <= window_; ++j) {
        if ((positions >> j) & 1) next |= reach_[s.index][j];
      }
    }
    positions = next;
    if (positions == 0) break;
  }
  return positions;
}

bool DerivationOracle::IsPrefix() const {
  uint64_t r = reach_[g_.Start()][0];
  for (uint32_t j = static_cast<uint32_t>(x_.size()); j <= window_; ++j) {
    if ((r >> j) & 1) return true;
  }
  return (r & kOverflowBit) != 0;
}

bool DerivationOracle::IsMember() const {
  return (reach_[g_.Start()][0] >> x_.size()) & 1;
}

std::optional<uint32_t> DerivationOracle::ShortestCompletion() const {
  uint64_t r = reach_[g_.Start()][0];
  for (uint32_t j = static_cast<uint32_t>(x_.size()); j <= window_; ++j) {
    if ((r >> j) & 1) return j - static_cast<uint32_t>(x_.size());
  }
  return std::nullopt;
}

std::vector<uint32_t> DerivationOracle::NextTerminals(const Cfg& g,
                                                      const std::vector<uint32_t>& x) {
  std::vector<uint32_t> out;
  for (uint32_t a = 0; a < g.NumTerminals(); ++a) {
    std::vector<uint32_t> xa = x;
    xa.push_back(a);
    if (DerivationOracle(g, xa).IsPrefix()) out.push_back(a);
  }
  return out;
}

bool CompletableWithin(const Cfg& g, const std::vector<uint32_t>& u, uint32_t bound) {
  return DerivationOracle(g, u, bound).ShortestCompletion().has_value();
}

namespace {

bool CompletionDfs(const Cfg& g, std::vector<uint32_t>& candidate, uint32_t remaining) {
  DerivationOracle oracle(g, candidate);
  if (oracle.IsMember()) return true;
  if (remaining == 0 || !oracle.IsPrefix()) return false;
  for (uint32_t a = 0; a < g.NumTerminals(); ++a) {
    candidate.push_back(a);
    bool found = CompletionDfs(g, candidate, remaining - 1);
    candidate.pop_back();
    if (found) return true;
  }
  return false;
}

}  // namespace

bool CompletableByEnumeration(const Cfg& g, const std::vector<uint32_t>& u, uint32_t bound) {
  std::vector<uint32_t> candidate = u;
  return CompletionDfs(g, candidate, bound);
}

namespace {

struct TreeEnumerator {
  const Cfg& g;
  const std::vector<uint32_t>& w;
  std::vector<bool> nullable;
  std::vector<std::vector<bool>> suffix_nullable;
  std::map<std::tuple<uint32_t, uint32_t, uint32_t>, std::vector<std::string>> memo;
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

  std::vector<std::string> Trees(uint32_t a, uint32_t i, uint32_t j) {
    auto key = std::make_tuple(a, i, j);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    if (!in_progress.insert(key).second) {
      throw Error("infinite ambiguity while enumerating trees for '" +
                  g.NonterminalNames()[a] + "'");
    }
    std::vector<std::string> out;
    for (uint32_t pi : g.ProductionsOf()[a]) {
      for (std::string& body : Bodies(pi, 0, i, j)) {
        out.push_back("(" + std::to_string(pi) + body + ")");
      }
    }
    in_progress.erase(key);
    memo[key] = out;
    return out;
  }

  std::vector<std::string> Bodies(uint32_t pi, uint32_t idx, uint32_t i, uint32_t j) {
    const Production& p = g.Productions()[pi];
    if (idx == p.rhs.size()) {
      if (i == j) return {""};
      return {};
    }
    std::vector<std::string> out;
    const SymbolId& s = p.rhs[idx];
    if (s.IsTerminal()) {
      if (i < j && w[i] == s.index) {
        for (std::string& rest : Bodies(pi, idx + 1, i + 1, j)) {
          out.push_back(" t" + std::to_string(s.index) + rest);
        }
      }
      return out;
    }
    for (uint32_t k = i; k <= j; ++k) {
      if (k == i && !nullable[s.index]) continue;
      if (k == j && !suffix_nullable[pi][idx + 1]) continue;
      std::vector<std::string> lefts = Trees(s.index, i, k);
      if (lefts.empty()) continue;
      std::vector<std::string> rests = Bodies(pi, idx + 1, k, j);
      for (const std::string& l : lefts) {
        for (const std::string& r : rests) {
          out.push_back(" " + l + r);
        }
      }
    }
    return out;
  }
};

}  // namespace

std::set<std::string> EnumerateParseTrees(const Cfg& g, const std::vector<uint32_t>& w) {
  TreeEnumerator e{g, w, {}, {}, {}, {}};
  e.Precompute();
  std::vector<std::string> trees = e.Trees(g.Start(), 0, static_cast<uint32_t>(w.size()));
  return {trees.begin(), trees.end()};
}

namespace {

struct Lcg {
  uint64_t state;
  uint32_t Next(uint32_t bound) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<uint32_t>((state >> 33) % bound);
  }
};

}  // namespace

Cfg RandomReducedGrammar(uint64_t seed, uint32_t max_nonterminals, uint32_t max_terminals) {
  for (uint64_t attempt = 0;; ++attempt) {
    Lcg rng{seed * 0x9e3779b97f4a7c15ULL + attempt + 1};
    uint32_t num_nt = 1 + rng.Next(max_nonterminals);
    uint32_t num_t = 1 + rng.Next(max_terminals);
    std::vector<std::string> nts, ts;
    for (uint32_t i = 0; i < num_nt; ++i) nts.push_back("N" + std::to_string(i));
    for (uint32_t i = 0; i < num_t; ++i) ts.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<Production> prods;
    for (uint32_t a = 0; a < num_nt; ++a) {
      uint32_t count = 1 + rng.Next(3);
      for (uint32_t c = 0; c < count; ++c) {
        Production p;
        p.lhs = a;
        uint32_t len = rng.Next(4);  // 0..3
        for (uint32_t i = 0; i < len; ++i) {
          if (rng.Next(10) < 6) {
            p.rhs.push_back(Terminal(rng.Next(num_t)));
          } else {
            p.rhs.push_back(Nonterminal(rng.Next(num_nt)));
          }
        }
        prods.push_back(std::move(p));
      }
    }
    try {
      Cfg g(std::move(nts), std::move(ts), std::move(prods), 0);
      Cfg reduced = ReduceGrammar(g);
      if (reduced.NumTerminals() == 0) continue;  // {eps}-only languages are dull
      return reduced;
    } catch (const EmptyLanguageError&) {
      continue;
    }
  }
}

}  // namespace gcd
