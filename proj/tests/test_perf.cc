/*!
 *  Copyright (c) 2026 by Contributors
 * \file test_perf.cc
 */
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <sstream>

#include "gcd/chart.h"
#include "gcd/perf.h"

using namespace gcd;

namespace {
Cfg Builtin(const char* name) {
  return ReduceGrammar(LoadGrammar(std::string("builtin:") + name));
}
}  // namespace

TEST_CASE("proxy is the inner product over named counters") {
  std::vector<CounterVector> deltas(3);
  deltas[0].chart_packed_nodes = 10;
  deltas[1].chart_packed_nodes = 20;
  deltas[1].chart_symbol_nodes = 5;
  deltas[2].bitset_slots_scanned = 8;
  auto s = Proxy(deltas, ProxyWeights::UnitOn("chart_packed_nodes"));
  CHECK(s == std::vector<double>{10, 20, 0});
  auto mixed = Proxy(deltas, ProxyWeights::Parse("chart_packed_nodes=1,chart_symbol_nodes=2"));
  CHECK(mixed[1] == 30);
  // zero-extended weights over inactive counters change nothing
  auto extended =
      Proxy(deltas, ProxyWeights::Parse("chart_packed_nodes=1,engine_edges_touched=0"));
  CHECK(extended == s);
  CHECK_THROWS(Proxy(deltas, ProxyWeights::Parse("no_such_counter=1")));
  CHECK_THROWS(Proxy(deltas, ProxyWeights::Parse("chart_packed_nodes=0")));
}

TEST_CASE("proxy on the G4 chart equals t(t-1)/2") {
  Cfg g4 = Builtin("G4");
  std::vector<CounterVector> deltas;
  PackedChartRun run(g4);
  for (uint32_t t = 1; t <= 20; ++t) {
    CounterVector c;
    run.Step(*g4.FindTerminal("a"), &c);
    deltas.push_back(c);
  }
  auto s = Proxy(deltas, ProxyWeights::UnitOn("chart_packed_nodes"));
  for (uint32_t t = 1; t <= 20; ++t) {
    CHECK(s[t - 1] == static_cast<double>(t * (t - 1) / 2));
  }
}

TEST_CASE("affine fit recovers synthetic coefficients") {
  std::vector<double> proxy, time_ns;
  uint64_t state = 99;
  for (int i = 1; i <= 24; ++i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    double noise = (static_cast<double>(state >> 11) * (1.0 / 9007199254740992.0) - 0.5) * 0.2;
    proxy.push_back(5.0 * i);
    time_ns.push_back(3.0 * 5.0 * i + 7.0 + noise);
  }
  FitResult fit = FitAffine(proxy, time_ns);
  CHECK(fit.a == doctest::Approx(3.0).epsilon(0.05));
  CHECK(fit.b == doctest::Approx(7.0).epsilon(0.05));
  CHECK(fit.r_squared > 0.999);
  CHECK(fit.samples == 24);
}

TEST_CASE("degenerate fit designs are refused") {
  std::vector<double> same(10, 5.0), t(10, 1.0);
  CHECK_THROWS_AS(FitAffine(same, t), Error);
  std::vector<double> few{1, 2, 3, 4};
  CHECK_THROWS_AS(FitAffine(few, few), Error);
}

TEST_CASE("nonnegativity constraints clamp the fit") {
  // strongly decreasing data would want a < 0
  std::vector<double> proxy, t;
  for (int i = 1; i <= 10; ++i) {
    proxy.push_back(i);
    t.push_back(100.0 - 9.0 * i);
  }
  FitResult fit = FitAffine(proxy, t);
  CHECK(fit.a == 0.0);
  CHECK(fit.b == doctest::Approx(100.0 - 9.0 * 5.5));
}

TEST_CASE("log-log slope on exact power laws") {
  std::vector<double> x, y2, y3;
  for (int t = 16; t <= 256; ++t) {
    x.push_back(t);
    y2.push_back(0.5 * t * (t - 1));
    y3.push_back(static_cast<double>(t) * t * t / 6.0);
  }
  CHECK(LogLogSlope(x, y2) == doctest::Approx(2.0).epsilon(0.02));
  CHECK(LogLogSlope(x, y3) == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("bitset scan counts exactly kappa slots per step") {
  for (auto [name, kappa] : {std::pair{"G1", 8u}, std::pair{"G2", 15u}}) {
    Cfg g = Builtin(name);
    CounterVector counters;
    BitsetScanEngine engine(CompileRtn(g), &counters);
    uint64_t after_init = counters.bitset_slots_scanned;
    CHECK(after_init == kappa);  // one initial rescan
    engine.StepTerminal(*g.FindTerminal("a"));
    CHECK(counters.bitset_slots_scanned == after_init + kappa);
    engine.StepTerminal(*g.FindTerminal("b"));
    CHECK(counters.bitset_slots_scanned == after_init + 2 * kappa);
    CHECK(engine.LiveControlStates() > 0);
  }
}

TEST_CASE("slots-only proxy on the bitset engine is constant kappa") {
  Cfg g = Builtin("G2");
  CounterVector counters;
  BitsetScanEngine engine(CompileRtn(g), &counters);
  std::vector<CounterVector> deltas;
  CounterVector prev = counters;
  for (char c : std::string("aabb")) {
    engine.StepTerminal(*g.FindTerminal(std::string(1, c)));
    deltas.push_back(counters.Delta(prev));
    prev = counters;
  }
  std::vector<double> s = Proxy(deltas, ProxyWeights::UnitOn("bitset_slots_scanned"));
  for (double v : s) CHECK(v == 15.0);
}

TEST_CASE("envelope reproduces the critical-path formula exactly") {
  std::vector<double> mask{10, 20, 30};
  std::vector<double> kt{2, 2, 3};
  EnvelopeConfig cfg;
  cfg.vocab_size = 100;
  cfg.beam_width = 2;
  cfg.t_sync_ns = 1;
  cfg.t_sel_ns = 2;
  cfg.scan_cost_ns = 1.0;
  cfg.t_nn = SyntheticTimeModel::Parse("const:15");
  LatencyEnvelope env = Envelope(mask, kt, cfg);
  REQUIRE(env.steps.size() == 3);
  for (const auto& row : env.steps) {
    CHECK(row.t_step_ns == std::max(row.t_nn_ns, row.t_mask_ns) + 1 + 2);
    CHECK(row.dense_ns == 2 * (row.t_step_ns + 100));
  }
  CHECK(env.crossover_step == 2);  // first step where mask time exceeds 15
  // doubling the beam doubles both totals exactly
  cfg.beam_width = 4;
  LatencyEnvelope env2 = Envelope(mask, kt, cfg);
  CHECK(env2.dense_total_ns == doctest::Approx(2 * env.dense_total_ns));
  CHECK(env2.sparse_total_ns == doctest::Approx(2 * env.sparse_total_ns));
}

TEST_CASE("dense and sparse envelopes coincide when every token is admissible") {
  std::vector<double> mask{5, 5};
  std::vector<double> kt{30, 30};
  EnvelopeConfig cfg;
  cfg.vocab_size = 30;  // K_t == V
  cfg.t_nn = SyntheticTimeModel::Parse("const:1");
  LatencyEnvelope env = Envelope(mask, kt, cfg);
  CHECK(env.dense_total_ns == doctest::Approx(env.sparse_total_ns));
}

TEST_CASE("synthetic time model parsing") {
  CHECK(SyntheticTimeModel::Parse("const:5").At(10) == 5);
  CHECK(SyntheticTimeModel::Parse("linear:2,3").At(10) == 32);
  CHECK_THROWS(SyntheticTimeModel::Parse("quadratic:1"));
}

TEST_CASE("trace jsonl round-trips") {
  std::vector<TraceRecord> records(2);
  records[0].t = 1;
  records[0].counters.chart_packed_nodes = 3;
  records[0].t_mask_ns = 42;
  records[0].admissible_count = 2;
  records[1].t = 2;
  records[1].counters.chart_packed_nodes = 9;
  records[1].counters.engine_edges_touched = 4;
  records[1].t_update_ns = 7;
  std::ostringstream os;
  WriteTraceJsonl(os, records);
  std::istringstream is(os.str());
  std::vector<TraceRecord> back = ReadTraceJsonl(is);
  REQUIRE(back.size() == 2);
  CHECK(back[0].counters == records[0].counters);
  CHECK(back[1].counters == records[1].counters);
  CHECK(back[0].t_mask_ns == 42);
  CHECK(back[1].t_update_ns == 7);
  CHECK(back[0].admissible_count == 2);
}

TEST_CASE("counter deltas enforce monotonicity") {
  CounterVector a, b;
  b.chart_packed_nodes = 5;
  CHECK(b.Delta(a).chart_packed_nodes == 5);
  CHECK_THROWS(a.Delta(b));
}

TEST_CASE("wall-clock sanity: cumulative phase time is nondecreasing") {
  Cfg g4 = Builtin("G4");
  PackedChartRun run(g4);
  uint64_t cumulative = 0;
  for (int t = 0; t < 32; ++t) {
    auto begin = std::chrono::steady_clock::now();
    run.Step(*g4.FindTerminal("a"));
    auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                  std::chrono::steady_clock::now() - begin)
                  .count();
    uint64_t next = cumulative + static_cast<uint64_t>(ns);
    CHECK(next >= cumulative);
    cumulative = next;
  }
}
