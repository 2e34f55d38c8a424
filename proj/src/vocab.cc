/*!
 *  Copyright (c) 2026 by Contributors
 * \file vocab.cc
 */
#include "gcd/vocab.h"

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "gcd/error.h"

namespace gcd {

Vocab::Vocab(std::vector<Entry> entries, uint32_t eos_id, const Cfg& g)
    : entries_(std::move(entries)), eos_id_(eos_id) {
  GCD_CHECK(!entries_.empty()) << "vocabulary must not be empty";
  GCD_CHECK(eos_id_ < entries_.size()) << "eos id out of range";
  GCD_CHECK(entries_[eos_id_].terminals.empty()) << "eos must realize the empty string";
  for (uint32_t id = 0; id < entries_.size(); ++id) {
    if (id != eos_id_ && entries_[id].terminals.empty() && entries_[id].name == "<eos>") {
      throw Error("vocabulary has more than one eos token");
    }
    for (uint32_t t : entries_[id].terminals) {
      GCD_CHECK(t < g.NumTerminals())
          << "token '" << entries_[id].name << "' uses a terminal not in the grammar";
    }
  }
}

Vocab Vocab::Singleton(const Cfg& g) {
  std::vector<Entry> entries;
  for (uint32_t t = 0; t < g.NumTerminals(); ++t) {
    entries.push_back({g.TerminalNames()[t], {t}});
  }
  entries.push_back({"<eos>", {}});
  return Vocab(std::move(entries), static_cast<uint32_t>(entries.size() - 1), g);
}

Vocab Vocab::FromJsonText(const std::string& text, const Cfg& g) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_array()) throw Error("vocab file must be a JSON array");
  std::vector<Entry> entries(j.size());
  std::vector<bool> seen(j.size(), false);
  int eos = -1;
  for (const auto& e : j) {
    uint32_t id = e.at("id").get<uint32_t>();
    if (id >= entries.size() || seen[id]) throw Error("vocab ids must be dense and unique");
    seen[id] = true;
    Entry entry;
    entry.name = e.at("name").get<std::string>();
    if (entry.name == "<eos>") {
      if (eos >= 0) throw Error("vocabulary has more than one eos token");
      eos = static_cast<int>(id);
    } else {
      for (const auto& tn : e.at("terminals")) {
        auto t = g.FindTerminal(tn.get<std::string>());
        if (!t) throw Error("vocab token '" + entry.name + "' uses unknown terminal '" +
                            tn.get<std::string>() + "'");
        entry.terminals.push_back(*t);
      }
    }
    entries[id] = std::move(entry);
  }
  if (eos < 0) throw Error("vocabulary must contain an <eos> token");
  return Vocab(std::move(entries), static_cast<uint32_t>(eos), g);
}

Vocab Vocab::FromJsonFile(const std::string& path, const Cfg& g) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open vocab file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return FromJsonText(os.str(), g);
}

const Vocab::Entry& Vocab::Token(uint32_t id) const {
  GCD_CHECK(id < entries_.size()) << "unknown token id " << id;
  return entries_[id];
}

double Vocab::MeanRealizationLength() const {
  double total = 0;
  for (const Entry& e : entries_) total += static_cast<double>(e.terminals.size());
  return total / static_cast<double>(entries_.size());
}

std::vector<uint32_t> Realize(const Vocab& v, const std::vector<uint32_t>& token_ids) {
  std::vector<uint32_t> out;
  for (uint32_t id : token_ids) {
    const Vocab::Entry& e = v.Token(id);
    out.insert(out.end(), e.terminals.begin(), e.terminals.end());
  }
  return out;
}

EngineState StepToken(const EngineState& s, const Vocab& v, uint32_t token_id,
                      CounterVector* counters) {
  EngineState cur = s;
  for (uint32_t t : v.Token(token_id).terminals) {
    if (!cur.Live()) break;
    cur = cur.StepTerminal(t, counters);
    if (counters) counters->speculative_token_steps++;
  }
  return cur;
}

TokenMask AdmissibleTokens(const EngineState& s, const Vocab& v, CounterVector* counters) {
  TokenMask mask;
  mask.bits.assign(v.Size(), false);
  for (uint32_t id = 0; id < v.Size(); ++id) {
    if (id == v.EosId()) continue;
    mask.bits[id] = StepToken(s, v, id, counters).Live();
  }
  mask.eos_bit = s.EosAdmissible();
  return mask;
}

}  // namespace gcd
