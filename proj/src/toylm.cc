/*!
 *  Copyright (c) 2026 by Contributors
 * \file toylm.cc
 */
#include "gcd/toylm.h"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "gcd/error.h"

namespace gcd {

namespace {

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<Rat> CheckRow(std::vector<Rat> row, size_t vocab_size) {
  GCD_CHECK(row.size() == vocab_size) << "distribution must cover all " << vocab_size << " tokens";
  Rat sum;
  for (const Rat& r : row) {
    GCD_CHECK(!(r < Rat(0))) << "probabilities must be nonnegative";
    sum += r;
  }
  GCD_CHECK(sum.Positive()) << "distribution must have positive total mass";
  if (!(sum == Rat(1))) {
    for (Rat& r : row) r = r / sum;
  }
  return row;
}

}  // namespace

ToyLm ToyLm::Table(size_t vocab_size, std::vector<Rat> default_row) {
  ToyLm lm(Variant::kTable, vocab_size);
  lm.default_row_ = CheckRow(std::move(default_row), vocab_size);
  return lm;
}

ToyLm ToyLm::SeededRandom(size_t vocab_size, uint64_t seed) {
  ToyLm lm(Variant::kSeededRandom, vocab_size);
  lm.seed_ = seed;
  return lm;
}

void ToyLm::AddRow(const std::vector<uint32_t>& prefix, std::vector<Rat> probs) {
  GCD_CHECK(variant_ == Variant::kTable) << "rows only apply to the table variant";
  table_[prefix] = CheckRow(std::move(probs), vocab_size_);
}

const std::vector<Rat>& ToyLm::TableRow(const std::vector<uint32_t>& prefix) const {
  auto it = table_.find(prefix);
  return it == table_.end() ? default_row_ : it->second;
}

std::vector<double> ToyLm::NextDist(const std::vector<uint32_t>& prefix) const {
  if (variant_ == Variant::kTable) {
    const std::vector<Rat>& row = TableRow(prefix);
    std::vector<double> out(row.size());
    for (size_t i = 0; i < row.size(); ++i) out[i] = row[i].ToDouble();
    return out;
  }
  // seeded-random: logits in [-2, 2), then softmax
  uint64_t h = seed_ ^ 0x8f1bbcdcbfa53e0bULL;
  for (uint32_t t : prefix) h = SplitMix64(h ^ (t + 0x165667b19e3779f9ULL));
  std::vector<double> logits(vocab_size_);
  double mx = -1e300;
  for (size_t v = 0; v < vocab_size_; ++v) {
    uint64_t r = SplitMix64(h ^ (0x9e3779b97f4a7c15ULL * (v + 1)));
    double u = static_cast<double>(r >> 11) * (1.0 / 9007199254740992.0);  // [0,1)
    logits[v] = -2.0 + 4.0 * u;
    mx = std::max(mx, logits[v]);
  }
  double z = 0;
  for (double& l : logits) {
    l = std::exp(l - mx);
    z += l;
  }
  for (double& l : logits) l /= z;
  return logits;
}

std::optional<std::vector<Rat>> ToyLm::NextDistExact(const std::vector<uint32_t>& prefix) const {
  if (variant_ != Variant::kTable) return std::nullopt;
  return TableRow(prefix);
}

std::vector<double> ToyLm::NextLogits(const std::vector<uint32_t>& prefix) const {
  std::vector<double> p = NextDist(prefix);
  for (double& x : p) {
    x = x > 0 ? std::log(x) : -std::numeric_limits<double>::infinity();
  }
  return p;
}

ToyLm ToyLm::FromJsonText(const std::string& text, const Vocab& v) {
  nlohmann::json j = nlohmann::json::parse(text);
  auto parse_row = [&](const nlohmann::json& arr) {
    if (!arr.is_array()) throw Error("toy-lm distribution must be an array");
    std::vector<Rat> row;
    for (const auto& x : arr) {
      // numbers round-trip through their shortest decimal form, so short
      // literals like 0.6 come back as the exact rational 3/5
      row.push_back(Rat::FromDecimalString(x.is_string() ? x.get<std::string>() : x.dump()));
    }
    return row;
  };
  if (!j.contains("default")) {
    throw Error("toy-lm file must declare a default distribution");
  }
  ToyLm lm = Table(v.Size(), parse_row(j.at("default")));
  auto name_to_id = [&](const std::string& name) -> uint32_t {
    for (uint32_t id = 0; id < v.Size(); ++id) {
      if (v.Token(id).name == name) return id;
    }
    throw Error("toy-lm prefix uses unknown token '" + name + "'");
  };
  if (j.contains("table")) {
    for (const auto& [key, arr] : j.at("table").items()) {
      std::vector<uint32_t> prefix;
      std::istringstream is(key);
      std::string word;
      while (is >> word) prefix.push_back(name_to_id(word));
      lm.AddRow(prefix, parse_row(arr));
    }
  }
  return lm;
}

ToyLm ToyLm::FromJsonFile(const std::string& path, const Vocab& v) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open toy-lm file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return FromJsonText(os.str(), v);
}

}  // namespace gcd
