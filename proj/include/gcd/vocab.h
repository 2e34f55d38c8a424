/*!
 *  Copyright (c) 2026 by Contributors
 * \file gcd/vocab.h
 * \brief Tokenizer homomorphism: vocabulary tokens mapped to terminal strings,
 *        and vocabulary-level admissibility masks.
 */
#ifndef GCD_VOCAB_H_
#define GCD_VOCAB_H_

#include <cstdint>
#include <string>
#include <vector>

#include "gcd/counters.h"
#include "gcd/grammar.h"
#include "gcd/reachability.h"

namespace gcd {

/*!
 * \brief Vocabulary bound to a grammar's terminal alphabet.
 *
 * Token ids are dense 0..|V|-1 and exactly one token is the end signal, whose
 * realization is the empty terminal string.
 */
class Vocab {
 public:
  struct Entry {
    std::string name;
    std::vector<uint32_t> terminals;  // realization, as grammar terminal ids
  };

  /*! \brief Build and validate against the grammar's terminal alphabet. */
  Vocab(std::vector<Entry> entries, uint32_t eos_id, const Cfg& g);

  /*! \brief One token per grammar terminal (same name), plus `<eos>` last. */
  static Vocab Singleton(const Cfg& g);

  /*! \brief Load the JSON vocabulary format (array of {id, name, terminals}). */
  static Vocab FromJsonFile(const std::string& path, const Cfg& g);
  static Vocab FromJsonText(const std::string& text, const Cfg& g);

  size_t Size() const { return entries_.size(); }
  uint32_t EosId() const { return eos_id_; }
  const Entry& Token(uint32_t id) const;
  const std::vector<Entry>& Tokens() const { return entries_; }

  /*! \brief Mean terminal-string length per token (the tokenizer's l-bar). */
  double MeanRealizationLength() const;

 private:
  std::vector<Entry> entries_;
  uint32_t eos_id_;
};

/*! \brief Admissibility bit per token, plus the end-signal bit. */
struct TokenMask {
  std::vector<bool> bits;
  bool eos_bit = false;

  size_t CountAdmissible() const {
    size_t n = 0;
    for (bool b : bits) n += b;
    return n;
  }
  friend bool operator==(const TokenMask&, const TokenMask&) = default;
};

/*! \brief Concatenated realization of a token sequence; eos contributes nothing. */
std::vector<uint32_t> Realize(const Vocab& v, const std::vector<uint32_t>& token_ids);

/*!
 * \brief Compute the admissible token set for the current engine state.
 *
 * Each non-eos token is probed by speculatively stepping through its
 * realization, exiting early on a dead state; prefix completability is
 * monotone along the realization, so early exit loses nothing. The eos bit is
 * set iff the consumed prefix is a language member. The input state is not
 * modified.
 */
TokenMask AdmissibleTokens(const EngineState& s, const Vocab& v,
                           CounterVector* counters = nullptr);

/*! \brief Step an engine state through a token's whole realization. */
EngineState StepToken(const EngineState& s, const Vocab& v, uint32_t token_id,
                      CounterVector* counters = nullptr);

}  // namespace gcd

#endif  // GCD_VOCAB_H_
