/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd_main.cc
 * \brief Command-line entry point. Results go to stdout, diagnostics and the
 *        run manifest to stderr; `-` names stdout for any output path.
 */
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "gcd/acceptance.h"
#include "gcd/chart.h"
#include "gcd/conditional.h"
#include "gcd/decode.h"
#include "gcd/perf.h"
#include "gcd/rewrite.h"

namespace {

constexpr const char* kVersion = "0.1.0";

using gcd::Cfg;
using gcd::Error;

// ---------------------------------------------------------------------------
// manifest
// ---------------------------------------------------------------------------

class Manifest {
 public:
  Manifest(std::string subcommand, uint64_t seed) : seed_(seed) {
    j_["subcommand"] = std::move(subcommand);
    j_["version"] = kVersion;
    j_["started_unix_ns"] = NowNs();
  }

  void AddInput(const std::string& role, const std::string& path_or_builtin) {
    nlohmann::ordered_json e;
    e["path"] = path_or_builtin;
    e["fnv1a64"] = HashInput(path_or_builtin);
    j_["inputs"][role] = e;
  }

  void Emit() {
    j_["seed"] = seed_;
    j_["finished_unix_ns"] = NowNs();
    std::cerr << j_.dump() << "\n";
  }

 private:
  static uint64_t NowNs() {
    return static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                     std::chrono::system_clock::now().time_since_epoch())
                                     .count());
  }
  static std::string HashInput(const std::string& path_or_builtin) {
    std::string data;
    if (path_or_builtin.rfind("builtin:", 0) == 0) {
      data = gcd::BuiltinGrammarText(path_or_builtin.substr(8));
    } else {
      std::ifstream in(path_or_builtin, std::ios::binary);
      if (in) {
        std::ostringstream os;
        os << in.rdbuf();
        data = os.str();
      }
    }
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
  }

  nlohmann::ordered_json j_;
  uint64_t seed_;
};

// ---------------------------------------------------------------------------
// small helpers
// ---------------------------------------------------------------------------

std::unique_ptr<std::ofstream> owned_file;

std::ostream& OutputStream(const std::string& path) {
  if (path == "-" || path.empty()) return std::cout;
  owned_file = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*owned_file) throw Error("cannot open output file '" + path + "'");
  return *owned_file;
}

std::vector<std::string> SplitSymbols(const Cfg& g, const std::string& text) {
  bool all_single = true;
  for (const std::string& t : g.TerminalNames()) {
    if (t.size() != 1) all_single = false;
  }
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string chunk;
  while (is >> chunk) {
    if (g.FindTerminal(chunk)) {
      out.push_back(chunk);
    } else if (all_single) {
      for (char c : chunk) out.push_back(std::string(1, c));
    } else {
      throw Error("unknown terminal '" + chunk + "' in input string");
    }
  }
  return out;
}

std::vector<uint32_t> ParseTerminalString(const Cfg& g, const std::string& text) {
  std::vector<uint32_t> out;
  for (const std::string& name : SplitSymbols(g, text)) {
    auto t = g.FindTerminal(name);
    if (!t) throw Error("unknown terminal '" + name + "' in input string");
    out.push_back(*t);
  }
  return out;
}

std::string ReadInputString(const std::string& input, const std::string& input_file) {
  if (!input_file.empty()) {
    std::ifstream in(input_file, std::ios::binary);
    if (!in) throw Error("cannot open input file '" + input_file + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }
  return input;
}

gcd::Vocab LoadVocab(const std::string& path, const Cfg& g) {
  if (path.empty()) return gcd::Vocab::Singleton(g);
  return gcd::Vocab::FromJsonFile(path, g);
}

// ---------------------------------------------------------------------------

int Dispatch(CLI::App& app) {
  // ---- compile ----
  if (app.got_subcommand("compile")) {
    CLI::App* sub = app.get_subcommand("compile");
    std::string grammar = sub->get_option("--grammar")->as<std::string>();
    std::string dump = sub->get_option("--dump-pda")->as<std::string>();
    Manifest manifest("compile", 0);
    manifest.AddInput("grammar", grammar);
    Cfg g = gcd::ReduceGrammar(gcd::LoadGrammar(grammar));
    auto pda = gcd::CompileRtn(g);
    OutputStream(dump) << pda->DumpJson() << "\n";
    std::cerr << "kappa=" << gcd::Kappa(g) << " states=" << pda->NumStates() << "\n";
    manifest.Emit();
    return 0;
  }

  // ---- mask ----
  if (app.got_subcommand("mask")) {
    CLI::App* sub = app.get_subcommand("mask");
    std::string grammar = sub->get_option("--grammar")->as<std::string>();
    std::string prefix = sub->get_option("--prefix")->as<std::string>();
    Manifest manifest("mask", 0);
    manifest.AddInput("grammar", grammar);
    Cfg g = gcd::ReduceGrammar(gcd::LoadGrammar(grammar));
    auto pda = gcd::CompileRtn(g);
    gcd::EngineState s = gcd::EngineState::Init(pda);
    for (uint32_t t : ParseTerminalString(g, prefix)) s = s.StepTerminal(t);
    for (uint32_t t : s.NextTerminals()) std::cout << g.TerminalNames()[t] << "\n";
    std::cout << "eos=" << (s.EosAdmissible() ? "true" : "false") << "\n";
    manifest.Emit();
    return 0;
  }

  // ---- generate ----
  if (app.got_subcommand("generate")) {
    CLI::App* sub = app.get_subcommand("generate");
    std::string grammar = sub->get_option("--grammar")->as<std::string>();
    std::string lm_path = sub->get_option("--lm")->as<std::string>();
    std::string vocab_path = sub->get_option("--vocab")->as<std::string>();
    uint64_t seed = sub->get_option("--seed")->as<uint64_t>();
    uint32_t beam = sub->get_option("--beam")->as<uint32_t>();
    uint32_t max_len = sub->get_option("--max-len")->as<uint32_t>();
    std::string trace = sub->get_option("--trace")->as<std::string>();
    Manifest manifest("generate", seed);
    manifest.AddInput("grammar", grammar);
    if (!lm_path.empty()) manifest.AddInput("lm", lm_path);
    if (!vocab_path.empty()) manifest.AddInput("vocab", vocab_path);

    Cfg g = gcd::ReduceGrammar(gcd::LoadGrammar(grammar));
    gcd::Vocab vocab = LoadVocab(vocab_path, g);
    gcd::ToyLm lm = lm_path.empty() ? gcd::ToyLm::SeededRandom(vocab.Size(), seed)
                                    : gcd::ToyLm::FromJsonFile(lm_path, vocab);
    auto pda = gcd::CompileRtn(g);
    gcd::DecodeConfig cfg{beam, max_len, seed};

    std::vector<gcd::StepTrace> traces;
    if (beam <= 1) {
      gcd::SampleResult res = gcd::SampleConstrained(lm, pda, vocab, cfg);
      std::cout << "tokens:";
      for (uint32_t tok : res.tokens) std::cout << " " << vocab.Token(tok).name;
      std::cout << "\nrealization:";
      for (uint32_t t : gcd::Realize(vocab, res.tokens)) {
        std::cout << " " << g.TerminalNames()[t];
      }
      std::cout << "\nterminated: " << (res.terminated ? "true" : "false") << "\n";
      traces = res.traces;
    } else {
      gcd::BeamResult res = gcd::BeamDecode(lm, pda, vocab, cfg);
      for (size_t i = 0; i < res.hypotheses.size(); ++i) {
        const gcd::BeamHypothesis& h = res.hypotheses[i];
        std::cout << "hyp " << i << " logprob " << h.log_prob
                  << (h.terminated ? "" : " (unterminated)") << ":";
        for (uint32_t tok : h.tokens) std::cout << " " << vocab.Token(tok).name;
        std::cout << "\n";
        if (i == 0) traces = h.traces;
      }
    }
    if (!trace.empty()) {
      std::vector<gcd::TraceRecord> records;
      for (const gcd::StepTrace& t : traces) {
        records.push_back({t.t, t.counters, t.t_update_ns, t.t_mask_ns, t.admissible_count});
      }
      gcd::WriteTraceJsonl(OutputStream(trace), records);
    }
    manifest.Emit();
    return 0;
  }

  // ---- sac ----
  if (app.got_subcommand("sac")) {
    CLI::App* sub = app.get_subcommand("sac");
    std::string grammar = sub->get_option("--grammar")->as<std::string>();
    std::string input = sub->get_option("--input")->as<std::string>();
    std::string input_file = sub->get_option("--input-file")->as<std::string>();
    std::string engine = sub->get_option("--engine")->as<std::string>();
    std::string csv = sub->get_option("--csv")->as<std::string>();
    Manifest manifest("sac", 0);
    manifest.AddInput("grammar", grammar);
    if (!input_file.empty()) manifest.AddInput("input", input_file);
    Cfg g = gcd::ReduceGrammar(gcd::LoadGrammar(grammar));
    std::vector<uint32_t> w = ParseTerminalString(g, ReadInputString(input, input_file));
    gcd::SacEngine e;
    if (engine == "chart") {
      e = gcd::SacEngine::kPackedChart;
    } else if (engine == "fast") {
      e = gcd::SacEngine::kRegularFastPath;
    } else {
      throw Error("unknown sac engine '" + engine + "' (chart or fast)");
    }
    gcd::SacSeries series = gcd::SacMeasure(g, w, e);
    std::ostream& os = OutputStream(csv);
    os << "t,new_symbol,new_packed,cum_packed\n";
    uint64_t cum = 0;
    for (size_t i = 0; i < series.steps.size(); ++i) {
      cum += series.steps[i].new_packed;
      os << (i + 1) << "," << series.steps[i].new_symbol << "," << series.steps[i].new_packed
         << "," << cum << "\n";
    }
    manifest.Emit();
    return 0;
  }

  // ---- parses ----
  if (app.got_subcommand("parses")) {
    CLI::App* sub = app.get_subcommand("parses");
    std::string grammar = sub->get_option("--grammar")->as<std::string>();
    std::string input = sub->get_option("--input")->as<std::string>();
    Manifest manifest("parses", 0);
    manifest.AddInput("grammar", grammar);
    Cfg g = gcd::ReduceGrammar(gcd::LoadGrammar(grammar));
    std::cout << gcd::CountParseTrees(g, ParseTerminalString(g, input)).ToString() << "\n";
    manifest.Emit();
    return 0;
  }

  // ---- condition ----
  if (app.got_subcommand("condition")) {
    CLI::App* sub = app.get_subcommand("condition");
    std::string grammar = sub->get_option("--grammar")->as<std::string>();
    std::string lm_path = sub->get_option("--lm")->as<std::string>();
    std::string vocab_path = sub->get_option("--vocab")->as<std::string>();
    std::string prefix_text = sub->get_option("--prefix")->as<std::string>();
    uint32_t horizon = sub->get_option("--horizon")->as<uint32_t>();
    std::string report_path = sub->get_option("--report")->as<std::string>();
    Manifest manifest("condition", 0);
    manifest.AddInput("grammar", grammar);
    manifest.AddInput("lm", lm_path);
    if (!vocab_path.empty()) manifest.AddInput("vocab", vocab_path);

    Cfg g = gcd::ReduceGrammar(gcd::LoadGrammar(grammar));
    gcd::Vocab vocab = LoadVocab(vocab_path, g);
    gcd::ToyLm lm = gcd::ToyLm::FromJsonFile(lm_path, vocab);
    auto pda = gcd::CompileRtn(g);

    std::vector<uint32_t> prefix;
    {
      std::istringstream is(prefix_text);
      std::string word;
      while (is >> word) {
        bool found = false;
        for (uint32_t id = 0; id < vocab.Size(); ++id) {
          if (vocab.Token(id).name == word) {
            prefix.push_back(id);
            found = true;
            break;
          }
        }
        if (!found) throw Error("unknown token '" + word + "' in prefix");
      }
    }
    gcd::ExactSurvival survival(lm, pda, vocab, {horizon, 2'000'000});
    gcd::DistortionReport rep = survival.Distortion(prefix);
    nlohmann::ordered_json j;
    j["horizon"] = rep.horizon;
    j["h_prefix"] = rep.h_prefix;
    auto& adm = j["admissible"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < rep.admissible.size(); ++i) {
      nlohmann::ordered_json e;
      e["token"] = vocab.Token(rep.admissible[i]).name;
      e["h"] = rep.exact_h.empty() ? "" : rep.exact_h[i];
      adm.push_back(e);
    }
    j["h_min"] = rep.h_min;
    j["h_max"] = rep.h_max;
    j["gamma"] = rep.vacuous ? "inf" : rep.exact_gamma;
    j["vacuous"] = rep.vacuous;
    j["kl"] = rep.kl;
    j["tv"] = rep.tv;
    j["kl_bound_log_gamma"] = rep.kl_bound;
    j["tv_bound"] = rep.tv_bound;
    j["kl_violated"] = rep.kl_violated;
    j["tv_violated"] = rep.tv_violated;
    OutputStream(report_path) << j.dump(2) << "\n";
    manifest.Emit();
    return 0;
  }

  // ---- optimize ----
  if (app.got_subcommand("optimize")) {
    CLI::App* sub = app.get_subcommand("optimize");
    std::string grammar = sub->get_option("--grammar")->as<std::string>();
    uint32_t budget = sub->get_option("--budget")->as<uint32_t>();
    std::string workload_path = sub->get_option("--workload")->as<std::string>();
    std::string priority_text = sub->get_option("--priority")->as<std::string>();
    std::string out_path = sub->get_option("--out")->as<std::string>();
    std::string table_path = sub->get_option("--table")->as<std::string>();
    uint32_t verify_depth = sub->get_option("--verify-depth")->as<uint32_t>();
    Manifest manifest("optimize", 0);
    manifest.AddInput("grammar", grammar);
    manifest.AddInput("workload", workload_path);

    Cfg g = gcd::ReduceGrammar(gcd::LoadGrammar(grammar));
    std::vector<std::vector<std::string>> workload;
    {
      std::ifstream in(workload_path);
      if (!in) throw Error("cannot open workload file '" + workload_path + "'");
      std::string line;
      while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        workload.push_back(SplitSymbols(g, line));
      }
      if (workload.empty()) throw Error("workload file has no strings");
    }
    gcd::RewriteFamily family = gcd::EnumerateFamily(g, budget, {10000, verify_depth});
    gcd::SelectionResult sel =
        gcd::SelectMin(family, workload, gcd::ParsePriority(priority_text));
    // header states that costs are measured engine proxies, not intrinsic SAC
    std::cerr << "selection over " << family.members.size()
              << " members (measured engine proxies; minimal element of the finite family)"
              << (family.partial ? " [family truncated by member cap]" : "") << "\n";
    OutputStream(out_path) << gcd::PrintGrammar(family.members[sel.winner].grammar);
    {
      std::ostream& os = OutputStream(table_path);
      os << "# costs are measured engine proxies over the given workload, not intrinsic\n"
         << "# values; the winner is the minimal element of this finite family only\n";
      os << "index,depth,kappa,sac_units,sac_steps,sac_mean,tok_steps,tok_masks,tok_mean,winner,"
            "path\n";
      for (size_t i = 0; i < family.members.size(); ++i) {
        const gcd::CostVector& c = sel.costs[i];
        os << i << "," << family.members[i].depth << "," << c.kappa << "," << c.sac_units << ","
           << c.sac_steps << "," << c.SacMean() << "," << c.tok_steps << "," << c.tok_masks
           << "," << c.TokMean() << "," << (i == sel.winner ? 1 : 0) << ",\"";
        for (size_t k = 0; k < family.members[i].path.size(); ++k) {
          os << (k ? "; " : "") << family.members[i].path[k];
        }
        os << "\"\n";
      }
    }
    manifest.Emit();
    return 0;
  }

  // ---- bench ----
  if (app.got_subcommand("bench")) {
    CLI::App* sub = app.get_subcommand("bench");
    std::string grammar = sub->get_option("--grammar")->as<std::string>();
    std::string input = sub->get_option("--input")->as<std::string>();
    std::string input_file = sub->get_option("--input-file")->as<std::string>();
    std::string engine = sub->get_option("--engine")->as<std::string>();
    std::string trace_path = sub->get_option("--trace")->as<std::string>();
    Manifest manifest("bench", 0);
    manifest.AddInput("grammar", grammar);
    if (!input_file.empty()) manifest.AddInput("input", input_file);

    Cfg g = gcd::ReduceGrammar(gcd::LoadGrammar(grammar));
    std::vector<uint32_t> w = ParseTerminalString(g, ReadInputString(input, input_file));
    gcd::Vocab vocab = gcd::Vocab::Singleton(g);
    std::vector<gcd::TraceRecord> records;
    gcd::CounterVector counters;
    auto now = [] {
      return std::chrono::duration_cast<std::chrono::nanoseconds>(
                 std::chrono::steady_clock::now().time_since_epoch())
          .count();
    };
    if (engine == "chart") {
      gcd::PackedChartRun run(g);
      for (uint32_t t = 0; t < w.size(); ++t) {
        auto begin = now();
        run.Step(w[t], &counters);
        uint64_t ns = static_cast<uint64_t>(now() - begin);
        records.push_back({t + 1, counters, ns, ns, 0});
      }
    } else if (engine == "engine" || engine == "bitset") {
      auto pda = gcd::CompileRtn(g);
      std::unique_ptr<gcd::BitsetScanEngine> bitset;
      gcd::EngineState state = gcd::EngineState::Init(pda, {}, &counters);
      if (engine == "bitset") bitset = std::make_unique<gcd::BitsetScanEngine>(pda, &counters);
      // initialization work is setup, not step work
      const gcd::CounterVector setup = counters;
      for (uint32_t t = 0; t < w.size(); ++t) {
        auto begin = now();
        if (bitset) {
          bitset->StepTerminal(w[t]);
        } else {
          state = state.StepTerminal(w[t], &counters);
        }
        uint64_t update_ns = static_cast<uint64_t>(now() - begin);
        begin = now();
        const gcd::EngineState& s = bitset ? bitset->State() : state;
        gcd::TokenMask mask = gcd::AdmissibleTokens(s, vocab, &counters);
        uint64_t mask_ns = static_cast<uint64_t>(now() - begin);
        gcd::ConfigSet::Size size = s.Configs().RepresentationSize();
        records.push_back({t + 1, counters.Delta(setup), update_ns, mask_ns,
                           static_cast<uint32_t>(mask.CountAdmissible() + mask.eos_bit),
                           size.nodes, size.edges});
      }
    } else {
      throw Error("unknown bench engine '" + engine + "' (chart, engine, bitset)");
    }
    gcd::WriteTraceJsonl(OutputStream(trace_path), records);
    manifest.Emit();
    return 0;
  }

  // ---- fit ----
  if (app.got_subcommand("fit")) {
    CLI::App* sub = app.get_subcommand("fit");
    std::string trace_path = sub->get_option("--trace")->as<std::string>();
    std::string weights_text = sub->get_option("--weights")->as<std::string>();
    Manifest manifest("fit", 0);
    manifest.AddInput("trace", trace_path);
    std::ifstream in(trace_path);
    if (!in) throw Error("cannot open trace file '" + trace_path + "'");
    std::vector<gcd::TraceRecord> records = gcd::ReadTraceJsonl(in);
    std::vector<gcd::CounterVector> deltas;
    std::vector<double> times;
    gcd::CounterVector prev;
    for (const gcd::TraceRecord& r : records) {
      deltas.push_back(r.counters.Delta(prev));
      prev = r.counters;
      times.push_back(static_cast<double>(r.t_mask_ns));
    }
    gcd::ProxyWeights weights = gcd::ProxyWeights::Parse(weights_text);
    std::vector<double> proxy = gcd::Proxy(deltas, weights);
    gcd::FitResult fit = gcd::FitAffine(proxy, times);
    nlohmann::ordered_json j;
    j["a"] = fit.a;
    j["b"] = fit.b;
    j["r_squared"] = fit.r_squared;
    j["max_rel_error"] = fit.max_rel_error;
    j["samples"] = fit.samples;
    std::cout << j.dump(2) << "\n";
    manifest.Emit();
    return 0;
  }

  // ---- envelope ----
  if (app.got_subcommand("envelope")) {
    CLI::App* sub = app.get_subcommand("envelope");
    std::string fit_path = sub->get_option("--fit")->as<std::string>();
    std::string trace_path = sub->get_option("--trace")->as<std::string>();
    std::string vnn = sub->get_option("--vnn")->as<std::string>();
    std::string weights_text = sub->get_option("--weights")->as<std::string>();
    uint32_t beam = sub->get_option("--beam")->as<uint32_t>();
    uint64_t vocab_size = sub->get_option("--vocab-size")->as<uint64_t>();
    double tsync = sub->get_option("--tsync")->as<double>();
    double tsel = sub->get_option("--tsel")->as<double>();
    double lbar = sub->get_option("--lbar")->as<double>();
    Manifest manifest("envelope", 0);
    manifest.AddInput("trace", trace_path);
    if (!fit_path.empty()) manifest.AddInput("fit", fit_path);

    std::ifstream in(trace_path);
    if (!in) throw Error("cannot open trace file '" + trace_path + "'");
    std::vector<gcd::TraceRecord> records = gcd::ReadTraceJsonl(in);
    std::vector<double> mask_ns, kt;
    if (!fit_path.empty()) {
      std::ifstream fin(fit_path);
      if (!fin) throw Error("cannot open fit file '" + fit_path + "'");
      nlohmann::json fj = nlohmann::json::parse(fin);
      double a = fj.at("a").get<double>();
      double b = fj.at("b").get<double>();
      std::vector<gcd::CounterVector> deltas;
      gcd::CounterVector prev;
      for (const gcd::TraceRecord& r : records) {
        deltas.push_back(r.counters.Delta(prev));
        prev = r.counters;
      }
      for (double s : gcd::Proxy(deltas, gcd::ProxyWeights::Parse(weights_text))) {
        mask_ns.push_back(a * s + b);
      }
    } else {
      for (const gcd::TraceRecord& r : records) {
        mask_ns.push_back(static_cast<double>(r.t_mask_ns));
      }
    }
    for (const gcd::TraceRecord& r : records) {
      kt.push_back(r.admissible_count ? r.admissible_count : static_cast<double>(vocab_size));
    }
    gcd::EnvelopeConfig cfg;
    cfg.vocab_size = vocab_size;
    cfg.beam_width = beam;
    cfg.t_sync_ns = tsync;
    cfg.t_sel_ns = tsel;
    cfg.t_nn = gcd::SyntheticTimeModel::Parse(vnn);
    gcd::LatencyEnvelope env = gcd::Envelope(mask_ns, kt, cfg);
    nlohmann::ordered_json j;
    j["t_nn_model"] = vnn + " (synthetic)";
    j["beam"] = beam;
    j["vocab_size"] = vocab_size;
    j["mean_terminals_per_token"] = lbar;
    j["dense_total_ns"] = env.dense_total_ns;
    j["sparse_total_ns"] = env.sparse_total_ns;
    j["crossover_step"] = env.crossover_step;
    auto& steps = j["steps"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < env.steps.size(); ++i) {
      const auto& row = env.steps[i];
      nlohmann::ordered_json sj{{"t", row.t},
                                {"t_nn_ns", row.t_nn_ns},
                                {"t_mask_ns", row.t_mask_ns},
                                {"t_step_ns", row.t_step_ns},
                                {"dense_ns", row.dense_ns},
                                {"sparse_ns", row.sparse_ns}};
      if (records[i].m_nodes || records[i].m_edges) {
        sj["m_nodes"] = records[i].m_nodes;
        sj["m_edges"] = records[i].m_edges;
      }
      steps.push_back(sj);
    }
    std::cout << j.dump(2) << "\n";
    manifest.Emit();
    return 0;
  }

  // ---- invariance ----
  if (app.got_subcommand("invariance")) {
    CLI::App* sub = app.get_subcommand("invariance");
    std::string ga = sub->get_option("--g1")->as<std::string>();
    std::string gb = sub->get_option("--g2")->as<std::string>();
    uint32_t depth = sub->get_option("--depth")->as<uint32_t>();
    Manifest manifest("invariance", 0);
    manifest.AddInput("g1", ga);
    manifest.AddInput("g2", gb);
    Cfg g1 = gcd::ReduceGrammar(gcd::LoadGrammar(ga));
    Cfg g2 = gcd::ReduceGrammar(gcd::LoadGrammar(gb));
    gcd::VocabSpec spec = gcd::VocabSpec::SingletonOverUnion(g1, g2);
    gcd::InvarianceReport rep = gcd::OracleInvarianceCheck(g1, g2, spec, depth);
    if (rep.mismatch) {
      std::cout << "mismatch: " << rep.detail << "\n";
    } else {
      std::cout << "no mismatch (" << rep.prefixes_checked << " prefixes checked to depth "
                << depth << ")\n";
    }
    manifest.Emit();
    return 0;
  }

  // ---- selftest ----
  if (app.got_subcommand("selftest")) {
    Manifest manifest("selftest", 0);
    bool ok = gcd::RunAcceptance(std::cout, &std::cerr);
    manifest.Emit();
    return ok ? 0 : 1;
  }

  throw CLI::CallForHelp();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grammar-constrained decoding laboratory"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  CLI::App* compile = app.add_subcommand("compile", "compile a grammar to its pushdown engine");
  compile->add_option("--grammar", "grammar file or builtin:G1..G4")->required();
  compile->add_option("--dump-pda", "output path for the JSON dump (- for stdout)")
      ->default_val("-");

  CLI::App* mask = app.add_subcommand("mask", "print the next-terminal set after a prefix");
  mask->add_option("--grammar")->required();
  mask->add_option("--prefix")->default_val("");

  CLI::App* generate = app.add_subcommand("generate", "constrained sampling or beam search");
  generate->add_option("--grammar")->required();
  generate->add_option("--lm", "toy-lm JSON (omit for a seeded-random model)")->default_val("");
  generate->add_option("--vocab", "vocab JSON (omit for the singleton vocab)")->default_val("");
  generate->add_option("--seed")->default_val("0");
  generate->add_option("--beam")->default_val("1");
  generate->add_option("--max-len")->default_val("64");
  generate->add_option("--trace", "JSONL step trace output")->default_val("");

  CLI::App* sac = app.add_subcommand("sac", "per-step packed-structure growth");
  sac->add_option("--grammar")->required();
  sac->add_option("--input")->default_val("");
  sac->add_option("--input-file")->default_val("");
  sac->add_option("--engine", "chart or fast")->default_val("chart");
  sac->add_option("--csv")->default_val("-");

  CLI::App* parses = app.add_subcommand("parses", "exact parse-tree count");
  parses->add_option("--grammar")->required();
  parses->add_option("--input")->required();

  CLI::App* condition = app.add_subcommand("condition", "conditioning distortion report");
  condition->add_option("--grammar")->required();
  condition->add_option("--lm")->required();
  condition->add_option("--vocab")->default_val("");
  condition->add_option("--prefix", "token names, space separated")->default_val("");
  condition->add_option("--horizon")->default_val("6");
  condition->add_option("--report")->default_val("-");

  CLI::App* optimize = app.add_subcommand("optimize", "bounded rewrite search and selection");
  optimize->add_option("--grammar")->required();
  optimize->add_option("--budget")->default_val("2");
  optimize->add_option("--workload")->required();
  optimize->add_option("--priority")->default_val("sac,kappa,tok");
  optimize->add_option("--out")->default_val("-");
  optimize->add_option("--table")->default_val("-");
  optimize->add_option("--verify-depth")->default_val("4");

  CLI::App* bench = app.add_subcommand("bench", "instrumented engine run producing a trace");
  bench->add_option("--grammar")->required();
  bench->add_option("--input")->default_val("");
  bench->add_option("--input-file")->default_val("");
  bench->add_option("--engine", "chart, engine, or bitset")->default_val("chart");
  bench->add_option("--trace")->default_val("-");

  CLI::App* fit = app.add_subcommand("fit", "affine proxy-to-time fit from a trace");
  fit->add_option("--trace")->required();
  fit->add_option("--weights", "counter=weight list")
      ->default_val("chart_symbol_nodes,chart_packed_nodes,engine_edges_touched");

  CLI::App* envelope = app.add_subcommand("envelope", "latency envelope from a trace");
  envelope->add_option("--fit", "fit JSON; omit to use measured mask times")->default_val("");
  envelope->add_option("--trace")->required();
  envelope->add_option("--vnn", "synthetic model time: const:X or linear:c0,c1")
      ->default_val("const:1e6");
  envelope->add_option("--weights")
      ->default_val("chart_symbol_nodes,chart_packed_nodes,engine_edges_touched");
  envelope->add_option("--beam")->default_val("1");
  envelope->add_option("--vocab-size")->default_val("3");
  envelope->add_option("--tsync")->default_val("0");
  envelope->add_option("--tsel")->default_val("0");
  envelope->add_option("--lbar", "mean terminals per token, echoed into the report")
      ->default_val("1");

  CLI::App* invariance = app.add_subcommand("invariance", "differential mask check");
  invariance->add_option("--g1")->required();
  invariance->add_option("--g2")->required();
  invariance->add_option("--depth")->default_val("8");

  app.add_subcommand("selftest", "run the full acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return Dispatch(app);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
