/*!
 *  Copyright (c) 2026 by Contributors
 * \file test_cli.cc
 * \brief End-to-end checks of the gcd binary.
 */
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult Run(const std::string& args) {
  std::string cmd = std::string(GCD_BIN_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string TempPath(const std::string& name) {
  return std::string("/tmp/gcd_cli_test_") + name;
}

}  // namespace

TEST_CASE("version prints a single semver line") {
  RunResult r = Run("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0.1.0\n");
}

TEST_CASE("unknown flag exits with usage error") {
  RunResult r = Run("compile --grammar builtin:G1 --bogus-flag");
  CHECK(r.exit_code == 2);
}

TEST_CASE("compile dumps an 8-state pda for G1") {
  RunResult r = Run("compile --grammar builtin:G1 --dump-pda -");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["kappa"] == 8);
  CHECK(j["states"].size() == 8);
}

TEST_CASE("mask prints next terminals and the eos flag") {
  RunResult r = Run("mask --grammar builtin:G1 --prefix aab");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "b\neos=false\n");
  RunResult r2 = Run("mask --grammar builtin:G1 --prefix ab");
  CHECK(r2.out == "eos=true\n");
  RunResult r3 = Run("mask --grammar builtin:G1 --prefix \"\"");
  CHECK(r3.out == "a\neos=true\n");
}

TEST_CASE("invariance reports no mismatch for G3 vs G4") {
  RunResult r = Run("invariance --g1 builtin:G3 --g2 builtin:G4 --depth 6");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("no mismatch") == 0);
  RunResult r2 = Run("invariance --g1 builtin:G1 --g2 builtin:G3 --depth 4");
  CHECK(r2.exit_code == 0);
  CHECK(r2.out.find("mismatch") == 0);
}

TEST_CASE("parses prints exact Catalan counts") {
  RunResult r = Run("parses --grammar builtin:G4 --input abab");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "5\n");
}

TEST_CASE("sac csv has the declared columns") {
  RunResult r = Run("sac --grammar builtin:G4 --input aaaa --engine chart --csv -");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("t,new_symbol,new_packed,cum_packed\n") == 0);
  // step 4: 6 new packed (4*3/2), cumulative C(5,3) = 10; symbols for S and S0
  CHECK(r.out.find("4,8,6,10\n") != std::string::npos);
}

TEST_CASE("generate is deterministic and traceable") {
  std::string trace = TempPath("trace.jsonl");
  std::string cmd = "generate --grammar builtin:G1 --seed 7 --max-len 16 --trace " + trace;
  RunResult a = Run(cmd);
  RunResult b = Run(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("tokens:") == 0);
  std::ifstream in(trace);
  REQUIRE(in.good());
  std::string line;
  size_t lines = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      nlohmann::json j = nlohmann::json::parse(line);
      CHECK(j.contains("counters"));
      ++lines;
    }
  }
  CHECK(lines > 0);
  std::remove(trace.c_str());
}

TEST_CASE("domain errors exit with code 1") {
  RunResult r = Run("parses --grammar builtin:G4 --input xyz");
  CHECK(r.exit_code == 1);
  std::string bad = TempPath("bad.g");
  {
    std::ofstream out(bad);
    out << "S -> -> 'a'\n";
  }
  RunResult r2 = Run("compile --grammar " + bad);
  CHECK(r2.exit_code == 1);
  std::remove(bad.c_str());
}

TEST_CASE("bench, fit, and envelope pipeline runs end to end") {
  std::string trace = TempPath("bench.jsonl");
  std::string input(64, 'a');
  RunResult bench =
      Run("bench --grammar builtin:G4 --engine chart --input " + input + " --trace " + trace);
  CHECK(bench.exit_code == 0);
  RunResult fit = Run("fit --trace " + trace);
  CHECK(fit.exit_code == 0);
  nlohmann::json fj = nlohmann::json::parse(fit.out);
  CHECK(fj.contains("a"));
  CHECK(fj.contains("r_squared"));
  std::string fit_path = TempPath("fit.json");
  {
    std::ofstream out(fit_path);
    out << fit.out;
  }
  RunResult env = Run("envelope --fit " + fit_path + " --trace " + trace +
                      " --vnn const:1000 --beam 2 --vocab-size 3");
  CHECK(env.exit_code == 0);
  nlohmann::json ej = nlohmann::json::parse(env.out);
  CHECK(ej["beam"] == 2);
  CHECK(ej["dense_total_ns"].get<double>() > 0);
  std::remove(trace.c_str());
  std::remove(fit_path.c_str());
}

TEST_CASE("condition emits the distortion report fields") {
  std::string lm_path = TempPath("sep_lm.json");
  {
    std::ofstream out(lm_path);
    out << R"({"default": ["1/3", "1/3", "1/3"],
               "table": {"": [0.6, 0.4, 0],
                          "a": [0.9, 0, 0.1],
                          "b": [0.01, 0.99, 0],
                          "b a": [0, 0, 1]}})";
  }
  std::string grammar_path = TempPath("sep.g");
  {
    std::ofstream out(grammar_path);
    out << "S -> 'a' | 'b' 'a'\n";
  }
  RunResult r = Run("condition --grammar " + grammar_path + " --lm " + lm_path +
                    " --prefix \"\" --horizon 6 --report -");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["gamma"] == "10");
  CHECK(j["kl_violated"] == false);
  std::remove(lm_path.c_str());
  std::remove(grammar_path.c_str());
}

TEST_CASE("optimize writes the winner and a cost table") {
  std::string workload = TempPath("workload.txt");
  {
    std::ofstream out(workload);
    out << "ab\naabb\naaabbb\n";
  }
  std::string best = TempPath("best.cfg");
  std::string table = TempPath("costs.csv");
  RunResult r = Run("optimize --grammar builtin:G2 --budget 2 --workload " + workload +
                    " --priority sac,kappa --out " + best + " --table " + table);
  CHECK(r.exit_code == 0);
  std::ifstream bin(best);
  std::string grammar((std::istreambuf_iterator<char>(bin)), std::istreambuf_iterator<char>());
  CHECK(grammar.find("->") != std::string::npos);
  std::ifstream tin(table);
  std::string costs((std::istreambuf_iterator<char>(tin)), std::istreambuf_iterator<char>());
  CHECK(costs.find("# costs are measured engine proxies") == 0);
  CHECK(costs.find("index,") != std::string::npos);
  CHECK(costs.find(",1,") != std::string::npos);  // someone is the winner
  std::remove(workload.c_str());
  std::remove(best.c_str());
  std::remove(table.c_str());
}
