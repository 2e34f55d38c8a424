/*!
 *  Copyright (c) 2026 by Contributors
 * \file decode.cc
 */
#include "gcd/decode.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <set>

#include "gcd/error.h"

namespace gcd {

namespace {

uint64_t NowNs() {
  return static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                   std::chrono::steady_clock::now().time_since_epoch())
                                   .count());
}

class SplitMixRng {
 public:
  explicit SplitMixRng(uint64_t seed) : state_(seed) {}
  uint64_t Next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
  double NextUnit() { return static_cast<double>(Next() >> 11) * (1.0 / 9007199254740992.0); }

 private:
  uint64_t state_;
};

bool Admissible(const TokenMask& mask, uint32_t v, uint32_t eos_id) {
  return v == eos_id ? mask.eos_bit : mask.bits[v];
}

}  // namespace

std::vector<double> HardMask(const std::vector<double>& logits, const TokenMask& mask,
                             uint32_t eos_id) {
  GCD_CHECK(logits.size() == mask.bits.size()) << "logit/mask size mismatch";
  double mx = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (uint32_t v = 0; v < logits.size(); ++v) {
    if (Admissible(mask, v, eos_id)) {
      any = true;
      mx = std::max(mx, logits[v]);
    }
  }
  if (!any) throw DeadEndError("no admissible token (empty mask)");
  if (std::isinf(mx) && mx < 0) {
    throw DeadEndError("model assigns zero probability to every admissible token");
  }
  std::vector<double> out(logits.size(), 0.0);
  double z = 0;
  for (uint32_t v = 0; v < logits.size(); ++v) {
    if (Admissible(mask, v, eos_id) && !std::isinf(logits[v])) {
      out[v] = std::exp(logits[v] - mx);
      z += out[v];
    }
  }
  for (double& x : out) x /= z;
  return out;
}

SampleResult SampleConstrained(const ToyLm& lm, std::shared_ptr<const Npda> pda, const Vocab& v,
                               const DecodeConfig& cfg) {
  GCD_CHECK(lm.VocabSize() == v.Size()) << "model and vocab sizes differ";
  GCD_CHECK(cfg.max_len >= 1);
  SampleResult res;
  SplitMixRng rng(cfg.seed);
  EngineState state = EngineState::Init(pda, {}, &res.counters);
  GCD_CHECK(state.Live()) << "initial engine state dead (grammar not reduced?)";
  for (uint32_t t = 1; t <= cfg.max_len; ++t) {
    uint64_t mask_begin = NowNs();
    TokenMask mask = AdmissibleTokens(state, v, &res.counters);
    std::vector<double> logits = lm.NextLogits(res.tokens);
    std::vector<double> masked = HardMask(logits, mask, v.EosId());
    uint64_t mask_ns = NowNs() - mask_begin;

    double u = rng.NextUnit();
    uint32_t chosen = UINT32_MAX;
    double acc = 0;
    uint32_t last_positive = UINT32_MAX;
    for (uint32_t tok = 0; tok < masked.size(); ++tok) {
      if (masked[tok] <= 0) continue;
      last_positive = tok;
      acc += masked[tok];
      if (u < acc && chosen == UINT32_MAX) chosen = tok;
    }
    if (chosen == UINT32_MAX) chosen = last_positive;  // rounding tail

    std::vector<double> dist = lm.NextDist(res.tokens);
    uint64_t update_begin = NowNs();
    bool is_eos = (chosen == v.EosId());
    if (!is_eos) {
      state = StepToken(state, v, chosen, &res.counters);
      GCD_CHECK(state.Live()) << "admissible token led to a dead state";
    }
    uint64_t update_ns = NowNs() - update_begin;

    StepTrace tr;
    tr.t = t;
    tr.admissible_count =
        static_cast<uint32_t>(mask.CountAdmissible() + (mask.eos_bit ? 1 : 0));
    tr.chosen = chosen;
    tr.pre_mask_prob = dist[chosen];
    tr.post_mask_prob = masked[chosen];
    tr.counters = res.counters;
    tr.t_update_ns = update_ns;
    tr.t_mask_ns = mask_ns;
    res.tokens.push_back(chosen);
    res.traces.push_back(std::move(tr));
    if (is_eos) {
      res.terminated = true;
      break;
    }
  }
  return res;
}

BeamResult BeamDecode(const ToyLm& lm, std::shared_ptr<const Npda> pda, const Vocab& v,
                      const DecodeConfig& cfg) {
  GCD_CHECK(cfg.beam_width >= 1);
  GCD_CHECK(lm.VocabSize() == v.Size());
  struct LiveHyp {
    BeamHypothesis h;
    EngineState state;
  };
  BeamResult res;
  std::vector<LiveHyp> live;
  {
    // init saturation is setup cost, outside the per-step accounting
    LiveHyp h0{BeamHypothesis{}, EngineState::Init(pda)};
    GCD_CHECK(h0.state.Live()) << "initial engine state dead (grammar not reduced?)";
    live.push_back(std::move(h0));
  }
  std::vector<BeamHypothesis> finished;

  for (uint32_t t = 1; t <= cfg.max_len && !live.empty(); ++t) {
    struct Candidate {
      double score;
      uint32_t parent;
      uint32_t token;
    };
    std::vector<Candidate> cands;
    std::vector<TokenMask> masks(live.size());
    std::vector<std::vector<double>> masked(live.size());
    std::vector<std::vector<double>> dists(live.size());
    std::vector<std::pair<uint64_t, uint64_t>> phase_ns(live.size());
    BeamStepRecord record;
    record.per_hypothesis.resize(live.size());
    for (uint32_t i = 0; i < live.size(); ++i) {
      uint64_t mask_begin = NowNs();
      CounterVector before = live[i].h.counters;
      masks[i] = AdmissibleTokens(live[i].state, v, &live[i].h.counters);
      CounterVector delta = live[i].h.counters.Delta(before);
      dists[i] = lm.NextDist(live[i].h.tokens);
      masked[i] = HardMask(lm.NextLogits(live[i].h.tokens), masks[i], v.EosId());
      phase_ns[i] = {0, NowNs() - mask_begin};
      for (uint32_t tok = 0; tok < masked[i].size(); ++tok) {
        if (masked[i][tok] > 0) {
          cands.push_back({live[i].h.log_prob + std::log(masked[i][tok]), i, tok});
        }
      }
      record.per_hypothesis[i].Add(delta);
      record.total.Add(delta);
      res.total_counters.Add(delta);
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.score != b.score) return a.score > b.score;
      if (a.parent != b.parent) return a.parent < b.parent;
      return a.token < b.token;
    });

    std::vector<LiveHyp> next_live;
    std::vector<BeamHypothesis> next_finished = std::move(finished);
    size_t selected = 0;
    for (const Candidate& c : cands) {
      if (selected >= cfg.beam_width) break;
      ++selected;
      const LiveHyp& parent = live[c.parent];
      BeamHypothesis h = parent.h;
      h.log_prob = c.score;
      StepTrace tr;
      tr.t = t;
      tr.admissible_count =
          static_cast<uint32_t>(masks[c.parent].CountAdmissible() + (masks[c.parent].eos_bit ? 1 : 0));
      tr.chosen = c.token;
      tr.pre_mask_prob = dists[c.parent][c.token];
      tr.post_mask_prob = masked[c.parent][c.token];
      tr.t_update_ns = phase_ns[c.parent].first;
      tr.t_mask_ns = phase_ns[c.parent].second;
      h.tokens.push_back(c.token);
      if (c.token == v.EosId()) {
        h.terminated = true;
        tr.counters = h.counters;
        h.traces.push_back(std::move(tr));
        next_finished.push_back(std::move(h));
      } else {
        uint64_t update_begin = NowNs();
        CounterVector before = h.counters;
        EngineState st = StepToken(parent.state, v, c.token, &h.counters);
        GCD_CHECK(st.Live()) << "admissible token led to a dead state";
        CounterVector delta = h.counters.Delta(before);
        record.per_hypothesis[c.parent].Add(delta);
        record.total.Add(delta);
        res.total_counters.Add(delta);
        tr.t_update_ns = NowNs() - update_begin;
        tr.counters = h.counters;
        h.traces.push_back(std::move(tr));
        next_live.push_back({std::move(h), std::move(st)});
      }
    }
    res.step_records.push_back(std::move(record));
    finished = std::move(next_finished);
    live = std::move(next_live);
    // prune finished pool to the beam width, best first
    std::stable_sort(finished.begin(), finished.end(),
                     [](const BeamHypothesis& a, const BeamHypothesis& b) {
                       return a.log_prob > b.log_prob;
                     });
    if (finished.size() > cfg.beam_width) finished.resize(cfg.beam_width);
    // stop early when no live hypothesis can beat the worst kept finished one
    if (finished.size() == cfg.beam_width && !live.empty()) {
      double worst = finished.back().log_prob;
      bool can_improve = false;
      for (const LiveHyp& lh : live) {
        if (lh.h.log_prob > worst) can_improve = true;
      }
      if (!can_improve) live.clear();
    }
  }
  for (LiveHyp& lh : live) {
    res.hypotheses.push_back(std::move(lh.h));  // unterminated, reported as-is
  }
  for (BeamHypothesis& h : finished) res.hypotheses.push_back(std::move(h));
  std::stable_sort(res.hypotheses.begin(), res.hypotheses.end(),
                   [](const BeamHypothesis& a, const BeamHypothesis& b) {
                     return a.log_prob > b.log_prob;
                   });
  if (res.hypotheses.size() > cfg.beam_width) res.hypotheses.resize(cfg.beam_width);
  return res;
}

VocabSpec VocabSpec::SingletonOverUnion(const Cfg& g1, const Cfg& g2) {
  VocabSpec spec;
  std::set<std::string> seen;
  for (const std::string& t : g1.TerminalNames()) {
    if (seen.insert(t).second) spec.tokens.push_back({t, {t}});
  }
  for (const std::string& t : g2.TerminalNames()) {
    if (seen.insert(t).second) spec.tokens.push_back({t, {t}});
  }
  return spec;
}

namespace {

/*! \brief Bind a VocabSpec token to one grammar; nullopt when a terminal is unknown. */
std::vector<std::optional<std::vector<uint32_t>>> BindTokens(const VocabSpec& spec, const Cfg& g) {
  std::vector<std::optional<std::vector<uint32_t>>> out;
  for (const auto& tok : spec.tokens) {
    std::vector<uint32_t> ids;
    bool ok = true;
    for (const std::string& name : tok.terminal_names) {
      auto t = g.FindTerminal(name);
      if (!t) {
        ok = false;
        break;
      }
      ids.push_back(*t);
    }
    if (ok) {
      out.push_back(std::move(ids));
    } else {
      out.push_back(std::nullopt);
    }
  }
  return out;
}

struct BoundMask {
  std::vector<bool> bits;
  bool eos;
  friend bool operator==(const BoundMask&, const BoundMask&) = default;
};

BoundMask MaskFor(const EngineState& s,
                  const std::vector<std::optional<std::vector<uint32_t>>>& binding) {
  BoundMask m;
  m.bits.resize(binding.size(), false);
  for (size_t i = 0; i < binding.size(); ++i) {
    if (!binding[i]) continue;  // token mentions a terminal this grammar lacks
    EngineState cur = s;
    for (uint32_t t : *binding[i]) {
      if (!cur.Live()) break;
      cur = cur.StepTerminal(t);
    }
    m.bits[i] = cur.Live();
  }
  m.eos = s.EosAdmissible();
  return m;
}

}  // namespace

InvarianceReport OracleInvarianceCheck(const Cfg& g1, const Cfg& g2, const VocabSpec& spec,
                                       uint32_t max_depth) {
  Cfg r1 = g1.IsReduced() ? g1 : ReduceGrammar(g1);
  Cfg r2 = g2.IsReduced() ? g2 : ReduceGrammar(g2);
  auto pda1 = CompileRtn(r1);
  auto pda2 = CompileRtn(r2);
  auto bind1 = BindTokens(spec, r1);
  auto bind2 = BindTokens(spec, r2);

  struct Node {
    EngineState s1;
    EngineState s2;
    std::vector<std::string> prefix;
    uint32_t depth;
  };
  InvarianceReport report;
  std::deque<Node> work;
  work.push_back({EngineState::Init(pda1), EngineState::Init(pda2), {}, 0});
  while (!work.empty()) {
    Node n = std::move(work.front());
    work.pop_front();
    BoundMask m1 = MaskFor(n.s1, bind1);
    BoundMask m2 = MaskFor(n.s2, bind2);
    report.prefixes_checked++;
    if (!(m1 == m2)) {
      report.mismatch = true;
      report.prefix = n.prefix;
      std::string where = n.prefix.empty() ? "<empty>" : "";
      for (const std::string& p : n.prefix) where += p;
      for (size_t i = 0; i < spec.tokens.size(); ++i) {
        if (m1.bits[i] != m2.bits[i]) {
          report.detail = "token '" + spec.tokens[i].name + "' admissible in one grammar only at prefix \"" + where + "\"";
          return report;
        }
      }
      report.detail = "end-signal admissibility differs at prefix \"" + where + "\"";
      return report;
    }
    if (n.depth >= max_depth) continue;
    for (size_t i = 0; i < spec.tokens.size(); ++i) {
      if (!m1.bits[i]) continue;  // prune dead branches; masks agree here
      EngineState t1 = n.s1;
      for (uint32_t t : *bind1[i]) t1 = t1.StepTerminal(t);
      EngineState t2 = n.s2;
      for (uint32_t t : *bind2[i]) t2 = t2.StepTerminal(t);
      Node child{std::move(t1), std::move(t2), n.prefix, n.depth + 1};
      child.prefix.push_back(spec.tokens[i].name);
      work.push_back(std::move(child));
    }
  }
  return report;
}

}  // namespace gcd
