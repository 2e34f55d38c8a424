/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/toylm.h
 * \brief Finite table-based and seeded-random autoregressive token models.
 */
#ifndef GCD_TOYLM_H_
#define GCD_TOYLM_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcd/rational.h"
#include "gcd/vocab.h"

namespace gcd {

/*!
 * \brief Toy next-token model over a fixed vocabulary.
 *
 * The table variant stores exact rational rows keyed by token-id prefix, with
 * a mandatory default row for unlisted prefixes. The seeded-random variant is
 * a pure function of (seed, prefix): splitmix-derived logits through a
 * softmax, identical across platforms.
 */
class ToyLm {
 public:
  enum class Variant { kTable, kSeededRandom };

  /*! \brief Table model with a default row; rows added via AddRow. */
  static ToyLm Table(size_t vocab_size, std::vector<Rat> default_row);
  static ToyLm SeededRandom(size_t vocab_size, uint64_t seed);
  /*! \brief JSON format: {"default": [...], "table": {"name name ...": [...]}}.
   *         Probabilities may be numbers or strings; either way they are read
   *         as exact decimals. */
  static ToyLm FromJsonFile(const std::string& path, const Vocab& v);
  static ToyLm FromJsonText(const std::string& text, const Vocab& v);

  void AddRow(const std::vector<uint32_t>& prefix, std::vector<Rat> probs);

  Variant variant() const { return variant_; }
  size_t VocabSize() const { return vocab_size_; }

  /*! \brief Next-token probabilities (length |V|, sums to 1). */
  std::vector<double> NextDist(const std::vector<uint32_t>& prefix) const;
  /*! \brief Exact probabilities; only the table variant has them. */
  std::optional<std::vector<Rat>> NextDistExact(const std::vector<uint32_t>& prefix) const;
  /*! \brief log p, with zero-probability entries mapped to -infinity. */
  std::vector<double> NextLogits(const std::vector<uint32_t>& prefix) const;

 private:
  ToyLm(Variant v, size_t vocab_size) : variant_(v), vocab_size_(vocab_size) {}

  const std::vector<Rat>& TableRow(const std::vector<uint32_t>& prefix) const;

  Variant variant_;
  size_t vocab_size_;
  std::map<std::vector<uint32_t>, std::vector<Rat>> table_;
  std::vector<Rat> default_row_;
  uint64_t seed_ = 0;
};

}  // namespace gcd

#endif  // GCD_TOYLM_H_
