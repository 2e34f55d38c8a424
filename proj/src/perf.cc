/*!
 *  Copyright (c) 2026 by Contributors
 * \file perf.cc
 */
#include "gcd/perf.h"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "gcd/counters.h"

namespace gcd {

const std::array<std::string, CounterVector::kNumCounters>& CounterVector::Names() {
  static const std::array<std::string, kNumCounters> names = {
      "chart_symbol_nodes",  "chart_packed_nodes",     "engine_edges_touched",
      "saturation_iterations", "speculative_token_steps", "bitset_slots_scanned"};
  return names;
}

uint64_t CounterVector::Get(size_t i) const {
  switch (i) {
    case 0: return chart_symbol_nodes;
    case 1: return chart_packed_nodes;
    case 2: return engine_edges_touched;
    case 3: return saturation_iterations;
    case 4: return speculative_token_steps;
    case 5: return bitset_slots_scanned;
  }
  throw Error("counter index out of range");
}

uint64_t CounterVector::Get(const std::string& name) const {
  const auto& names = Names();
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return Get(i);
  }
  throw Error("unknown counter '" + name + "'");
}

void CounterVector::Set(size_t i, uint64_t v) {
  switch (i) {
    case 0: chart_symbol_nodes = v; return;
    case 1: chart_packed_nodes = v; return;
    case 2: engine_edges_touched = v; return;
    case 3: saturation_iterations = v; return;
    case 4: speculative_token_steps = v; return;
    case 5: bitset_slots_scanned = v; return;
  }
  throw Error("counter index out of range");
}

ProxyWeights ProxyWeights::Parse(const std::string& text) {
  ProxyWeights w;
  std::istringstream is(text);
  std::string part;
  while (std::getline(is, part, ',')) {
    if (part.empty()) continue;
    size_t eq = part.find('=');
    if (eq == std::string::npos) {
      w.weights.push_back({part, 1.0});
    } else {
      w.weights.push_back({part.substr(0, eq), std::stod(part.substr(eq + 1))});
    }
  }
  if (w.weights.empty()) throw Error("empty proxy weights");
  return w;
}

std::vector<double> Proxy(const std::vector<CounterVector>& per_step_deltas,
                          const ProxyWeights& weights) {
  bool any_positive = false;
  for (const auto& [name, alpha] : weights.weights) {
    GCD_CHECK(alpha >= 0) << "proxy weights must be nonnegative";
    if (alpha > 0) any_positive = true;
    CounterVector probe;
    probe.Get(name);  // throws on unknown counter name
  }
  GCD_CHECK(any_positive) << "at least one proxy weight must be positive";
  std::vector<double> out;
  out.reserve(per_step_deltas.size());
  for (const CounterVector& c : per_step_deltas) {
    double s = 0;
    for (const auto& [name, alpha] : weights.weights) {
      s += alpha * static_cast<double>(c.Get(name));
    }
    out.push_back(s);
  }
  return out;
}

FitResult FitAffine(const std::vector<double>& proxy, const std::vector<double>& time_ns) {
  GCD_CHECK(proxy.size() == time_ns.size());
  if (proxy.size() < 8) throw Error("affine fit needs at least 8 samples");
  std::set<double> distinct(proxy.begin(), proxy.end());
  if (distinct.size() < 4) {
    throw Error("degenerate design: affine fit needs at least 4 distinct proxy values");
  }
  size_t n = proxy.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += proxy[i];
    sy += time_ns[i];
    sxx += proxy[i] * proxy[i];
    sxy += proxy[i] * time_ns[i];
  }
  double denom = n * sxx - sx * sx;
  double a = (n * sxy - sx * sy) / denom;
  double b = (sy - a * sx) / n;
  if (a < 0) {
    a = 0;
    b = sy / n;
  }
  if (b < 0) {
    b = 0;
    a = sxx > 0 ? sxy / sxx : 0;
    if (a < 0) a = 0;
  }
  FitResult fit;
  fit.a = a;
  fit.b = b;
  fit.samples = n;
  double mean = sy / n;
  double ss_res = 0, ss_tot = 0, max_rel = 0;
  for (size_t i = 0; i < n; ++i) {
    double pred = a * proxy[i] + b;
    ss_res += (time_ns[i] - pred) * (time_ns[i] - pred);
    ss_tot += (time_ns[i] - mean) * (time_ns[i] - mean);
    double scale = std::max(std::abs(time_ns[i]), 1e-12);
    max_rel = std::max(max_rel, std::abs(pred - time_ns[i]) / scale);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.max_rel_error = max_rel;
  return fit;
}

double LogLogSlope(const std::vector<double>& x, const std::vector<double>& y) {
  GCD_CHECK(x.size() == y.size() && x.size() >= 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    GCD_CHECK(x[i] > 0 && y[i] > 0) << "log-log slope needs positive samples";
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double n = static_cast<double>(x.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SyntheticTimeModel SyntheticTimeModel::Parse(const std::string& spec) {
  SyntheticTimeModel m;
  if (spec.rfind("const:", 0) == 0) {
    m.c0 = std::stod(spec.substr(6));
    return m;
  }
  if (spec.rfind("linear:", 0) == 0) {
    std::string rest = spec.substr(7);
    size_t comma = rest.find(',');
    if (comma == std::string::npos) throw Error("linear time model needs c0,c1");
    m.c0 = std::stod(rest.substr(0, comma));
    m.c1 = std::stod(rest.substr(comma + 1));
    return m;
  }
  throw Error("unknown synthetic time model '" + spec + "' (const:X or linear:c0,c1)");
}

LatencyEnvelope Envelope(const std::vector<double>& mask_time_ns,
                         const std::vector<double>& admissible_counts,
                         const EnvelopeConfig& cfg) {
  GCD_CHECK(mask_time_ns.size() == admissible_counts.size());
  GCD_CHECK(cfg.beam_width >= 1);
  LatencyEnvelope env;
  for (uint32_t i = 0; i < mask_time_ns.size(); ++i) {
    uint32_t t = i + 1;
    LatencyEnvelope::StepRow row;
    row.t = t;
    row.t_nn_ns = cfg.t_nn.At(t);
    row.t_mask_ns = mask_time_ns[i];
    row.t_step_ns = std::max(row.t_nn_ns, row.t_mask_ns) + cfg.t_sync_ns + cfg.t_sel_ns;
    row.dense_ns = cfg.beam_width *
                   (row.t_step_ns + cfg.scan_cost_ns * static_cast<double>(cfg.vocab_size));
    row.sparse_ns = cfg.beam_width * (row.t_step_ns + cfg.scan_cost_ns * admissible_counts[i]);
    if (env.crossover_step < 0 && row.t_mask_ns > row.t_nn_ns) env.crossover_step = t;
    env.dense_total_ns += row.dense_ns;
    env.sparse_total_ns += row.sparse_ns;
    env.steps.push_back(row);
  }
  return env;
}

BitsetScanEngine::BitsetScanEngine(std::shared_ptr<const Npda> pda, CounterVector* counters)
    : state_(EngineState::Init(std::move(pda))), counters_(counters) {
  bitset_.assign((state_.Pda().NumStates() + 63) / 64, 0);
  Rescan();
}

bool BitsetScanEngine::StepTerminal(uint32_t terminal) {
  state_ = state_.StepTerminal(terminal, counters_);
  Rescan();
  return state_.Live();
}

void BitsetScanEngine::Rescan() {
  size_t universe = state_.Pda().NumStates();
  std::fill(bitset_.begin(), bitset_.end(), 0);
  for (uint32_t q = 0; q < universe; ++q) {
    if (state_.Configs().Inhabited(q)) bitset_[q / 64] |= (1ULL << (q % 64));
  }
  // the whole-universe scan of the premise: visit every slot, count live ones
  uint64_t live = 0;
  for (uint32_t q = 0; q < universe; ++q) {
    if (counters_) counters_->bitset_slots_scanned++;
    if (bitset_[q / 64] & (1ULL << (q % 64))) ++live;
  }
  live_states_ = live;
}

void WriteTraceJsonl(std::ostream& os, const std::vector<TraceRecord>& records) {
  for (const TraceRecord& r : records) {
    nlohmann::ordered_json j;
    j["t"] = r.t;
    nlohmann::ordered_json counters;
    const auto& names = CounterVector::Names();
    for (size_t i = 0; i < names.size(); ++i) counters[names[i]] = r.counters.Get(i);
    j["counters"] = counters;
    j["t_update_ns"] = r.t_update_ns;
    j["t_mask_ns"] = r.t_mask_ns;
    j["admissible"] = r.admissible_count;
    if (r.m_nodes || r.m_edges) {
      j["m_nodes"] = r.m_nodes;
      j["m_edges"] = r.m_edges;
    }
    os << j.dump() << "\n";
  }
}

std::vector<TraceRecord> ReadTraceJsonl(std::istream& is) {
  std::vector<TraceRecord> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    TraceRecord r;
    r.t = j.at("t").get<uint32_t>();
    const auto& names = CounterVector::Names();
    for (size_t i = 0; i < names.size(); ++i) {
      if (j.at("counters").contains(names[i])) {
        r.counters.Set(i, j.at("counters").at(names[i]).get<uint64_t>());
      }
    }
    r.t_update_ns = j.value("t_update_ns", 0ULL);
    r.t_mask_ns = j.value("t_mask_ns", 0ULL);
    r.admissible_count = j.value("admissible", 0U);
    r.m_nodes = j.value("m_nodes", 0ULL);
    r.m_edges = j.value("m_edges", 0ULL);
    out.push_back(r);
  }
  return out;
}

}  // namespace gcd
